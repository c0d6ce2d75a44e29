use crate::error::{Result, precondition};
use crate::window::WindowedSet;

/// No `a, b, c ∈ A` with `a + c = 2b` and `a ≠ c`.
pub fn is_3ap_free(a: &WindowedSet) -> bool {
    let e = a.elements();
    for (i, &x) in e.iter().enumerate() {
        for &z in &e[i + 1..] {
            let s = x as i128 + z as i128;
            if s % 2 == 0 && a.contains((s / 2) as i64) {
                return false;
            }
        }
    }
    true
}

/// No `a, b, c ∈ A ⊆ Z_m` with `a + c ≡ 2b` other than `a = b = c`.
///
/// In Z_m with m even, `2a ≡ 2b` can hold with `a ≠ b`, so `(a, b, a)` counts as
/// a progression even though its ends coincide.
pub fn is_3ap_free_cyclic(a: &[usize], m: usize) -> Result<bool> {
    let member = residues(a, m)?;
    for &x in a {
        for &y in a {
            let z = (2 * y + m - x % m) % m;
            if member[z] && !(x == y && y == z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(A, A)` is co-minimal in Z_m iff `A + A = Z_m` and `A` is 3AP-free.
pub fn check_self_cominimal_cyclic(a: &[usize], m: usize) -> Result<bool> {
    let member = residues(a, m)?;
    if !member.iter().any(|&b| b) {
        return Ok(false);
    }
    let mut hit = vec![false; m];
    for &x in a {
        for &y in a {
            hit[(x + y) % m] = true;
        }
    }
    Ok(hit.iter().all(|&h| h) && is_3ap_free_cyclic(a, m)?)
}

fn residues(a: &[usize], m: usize) -> Result<Vec<bool>> {
    if m == 0 {
        return Err(precondition("modulus must be at least 1"));
    }
    let mut member = vec![false; m];
    for &x in a {
        if x >= m {
            return Err(precondition(format!("{x} is not a residue mod {m}")));
        }
        member[x] = true;
    }
    Ok(member)
}
