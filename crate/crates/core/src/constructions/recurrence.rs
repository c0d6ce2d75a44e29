//! Closed-form membership for the recursive families and their bitset generators.
//!
//! Every integer `x ≤ -1` lies in exactly one block `[-2^{m+1}, -2^m - 1]`
//! (`[-2, -1]` for `m = 0`); its position inside the block is the residue
//! `x + 1 + 2^{m+1} ∈ [1, 2^m]`.

use crate::error::{Result, precondition};
use crate::window::{IntegerWindow, WindowedSet};

/// Largest index for which whole-set generators are materialized.
pub const MAX_GEN_INDEX: u32 = 30;

#[inline]
fn p2(k: u32) -> i128 {
    1i128 << k
}

pub fn in_j(mut n: u32, mut x: i128) -> bool {
    loop {
        if n <= 1 {
            return x == 1;
        }
        if 1 <= x && x <= p2(n - 2) {
            return true;
        }
        x -= p2(n - 1);
        n -= 1;
    }
}

pub fn in_k(n: u32, x: i128) -> bool {
    match n {
        0 | 1 => x == 1,
        2 => x == 3,
        _ => (p2(n - 3) < x && x <= p2(n - 2)) || in_j(n - 2, x - p2(n - 1) - p2(n - 2)),
    }
}

/// Residues `r ∈ [1, 2^n]` of the block-`n` part of the U family.
pub fn in_u_residue(n: u32, r: i128) -> bool {
    match n {
        0 => r == 1 || r == 2,
        1 | 2 => false,
        3 => r == 6,
        4 => matches!(r, 3 | 4 | 14),
        _ => {
            let lower = p2(n - 3) < r && r <= p2(n - 2);
            let base = p2(n - 1) + p2(n - 2);
            lower || (base < r && r <= base + p2(n - 4))
        }
    }
}

/// Index of the block containing `x`, or `None` for `x ≥ 0`.
pub fn block_index(x: i64) -> Option<u32> {
    if x >= 0 {
        None
    } else if x >= -2 {
        Some(0)
    } else {
        // -x - 1 without overflow at i64::MIN.
        let v = (-(x as i128) - 1) as u128;
        Some(127 - v.leading_zeros())
    }
}

/// Block index and residue of `x ≤ -1`.
pub fn block_residue(x: i64) -> Option<(u32, i128)> {
    block_index(x).map(|m| (m, x as i128 + 1 + p2(m + 1)))
}

/// Bounds `(lo, hi)` of block `n` (`(-2, -1)` for `n = 0`), for `n ≤ 62`.
pub fn block_bounds(n: u32) -> (i64, i64) {
    assert!(n <= 62, "block index {n} exceeds 62");
    let lo = -p2(n + 1);
    let hi = if n == 0 { -1 } else { -p2(n) - 1 };
    (lo as i64, hi as i64)
}

/// Block `n` as a window.
pub fn block_window(n: u32) -> Result<IntegerWindow> {
    if n > 62 {
        return Err(precondition(format!("block index {n} exceeds 62")));
    }
    let (lo, hi) = block_bounds(n);
    IntegerWindow::new(lo, hi)
}

pub fn in_s(x: i64) -> bool {
    block_residue(x).is_some_and(|(m, r)| in_k(m, r))
}

pub fn in_u(x: i64) -> bool {
    block_residue(x).is_some_and(|(m, r)| in_u_residue(m, r))
}

pub fn in_i(n: u32, x: i64) -> bool {
    block_residue(x).is_some_and(|(m, r)| m == n && in_k(m, r))
}

pub fn in_u_n(n: u32, x: i64) -> bool {
    block_residue(x).is_some_and(|(m, r)| m == n && in_u_residue(m, r))
}

pub fn in_script_i(n: u32, x: i64) -> bool {
    block_index(x) == Some(n)
}

fn check_gen(n: u32) -> Result<()> {
    if n > MAX_GEN_INDEX {
        return Err(precondition(format!(
            "generator index {n} exceeds {MAX_GEN_INDEX}"
        )));
    }
    Ok(())
}

/// Window `[1, 2^n]` hosting `J_n` and `K_n`.
fn residue_window(n: u32) -> IntegerWindow {
    IntegerWindow::new(1, 1i64 << n).expect("residue window")
}

/// `J_n` on `[1, 2^n]`.
pub fn gen_j(n: u32) -> Result<WindowedSet> {
    check_gen(n)?;
    let mut s = WindowedSet::empty(residue_window(n));
    write_j(&mut s, n, 0);
    Ok(s)
}

/// Inserts `offset + J_n`, unrolling the recurrence into runs.
fn write_j(s: &mut WindowedSet, n: u32, offset: i64) {
    if n <= 1 {
        s.insert(offset + 1);
        return;
    }
    // J_n = ∪_{j=2..n} (2^n - 2^j + [1, 2^{j-2}]) ∪ {2^n - 1}
    let top = 1i64 << n;
    for j in 2..=n {
        let o = offset + top - (1i64 << j);
        s.set_range(o + 1, o + (1i64 << (j - 2)));
    }
    s.insert(offset + top - 1);
}

/// `K_n` on `[1, 2^n]`.
pub fn gen_k(n: u32) -> Result<WindowedSet> {
    check_gen(n)?;
    let mut s = WindowedSet::empty(residue_window(n));
    match n {
        0 | 1 => s.insert(1),
        2 => s.insert(3),
        _ => {
            s.set_range((1i64 << (n - 3)) + 1, 1i64 << (n - 2));
            write_j(&mut s, n - 2, (1i64 << (n - 1)) + (1i64 << (n - 2)));
        }
    }
    Ok(s)
}

/// `I_n = K_n - (1 + 2^{n+1})` on its block.
pub fn gen_i(n: u32) -> Result<WindowedSet> {
    gen_k(n)?.shift(-(1 + (1i64 << (n + 1))))
}

/// The whole block `{1..2^n} - (1 + 2^{n+1})`.
pub fn gen_script_i(n: u32) -> Result<WindowedSet> {
    check_gen(n)?;
    Ok(WindowedSet::full(block_window(n)?))
}

/// `U_n` on its block.
pub fn gen_u(n: u32) -> Result<WindowedSet> {
    check_gen(n)?;
    let w = block_window(n)?;
    let mut s = WindowedSet::empty(w);
    let off = -(1 + (1i64 << (n + 1)));
    match n {
        0 => s.set_range(-2, -1),
        1 | 2 => {}
        3 => s.insert(6 + off),
        4 => [3, 4, 14].into_iter().for_each(|r| s.insert(r + off)),
        _ => {
            s.set_range(off + (1i64 << (n - 3)) + 1, off + (1i64 << (n - 2)));
            let base = off + (1i64 << (n - 1)) + (1i64 << (n - 2));
            s.set_range(base + 1, base + (1i64 << (n - 4)));
        }
    }
    Ok(s)
}
