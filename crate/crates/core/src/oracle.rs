//! Brute-force references. Nothing here calls the fast paths it is used to check.

use std::collections::BTreeSet;

use crate::window::{IntegerWindow, WindowedSet};

/// All pairwise sums, clipped to `target`.
pub fn naive_sumset(a: &[i64], b: &[i64], target: IntegerWindow) -> WindowedSet {
    let mut sums = BTreeSet::new();
    for &x in a {
        for &y in b {
            let s = x + y;
            if target.contains(s) {
                sums.insert(s);
            }
        }
    }
    WindowedSet::from_clipped(target, sums)
}

/// Every `(x, y)` with `x + y = target`, sorted by `y` then `x`.
pub fn brute_reps(target: i64, a: &[i64], b: &[i64]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &x in a {
        for &y in b {
            if x.checked_add(y) == Some(target) {
                out.push((x, y));
            }
        }
    }
    out.sort_by_key(|p| (p.1, p.0));
    out.dedup();
    out
}

/// Membership by explicit scan of every block's residue set, built from the
/// recursive definitions with sets rather than closed forms.
pub fn naive_s_block(n: u32) -> Vec<i64> {
    fn j(n: u32) -> BTreeSet<i64> {
        if n <= 1 {
            return [1].into();
        }
        let mut s: BTreeSet<i64> = (1..=(1i64 << (n - 2))).collect();
        s.extend(j(n - 1).iter().map(|x| x + (1i64 << (n - 1))));
        s
    }
    let k: BTreeSet<i64> = match n {
        0 => [1].into(),
        1 => j(1),
        2 => j(2).into_iter().filter(|&x| x != 1).collect(),
        _ => {
            let mut s: BTreeSet<i64> = ((1i64 << (n - 3)) + 1..=(1i64 << (n - 2))).collect();
            s.extend(
                j(n - 2)
                    .iter()
                    .map(|x| x + (1i64 << (n - 1)) + (1i64 << (n - 2))),
            );
            s
        }
    };
    let off = 1 + (1i64 << (n + 1));
    k.into_iter().map(|x| x - off).collect()
}

fn cyclic_covers(a: &[usize], b: &[usize], m: usize) -> bool {
    let mut hit = vec![false; m];
    for &x in a {
        for &y in b {
            hit[(x + y) % m] = true;
        }
    }
    hit.iter().all(|&h| h)
}

fn members(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|&i| mask >> i & 1 == 1).collect()
}

/// No nonempty proper subset of `a` is still a complement of `b` in Z_m.
fn cyclic_minimal(a: &[usize], b: &[usize], m: usize) -> bool {
    let n = a.len();
    for sub in 1u32..(1u32 << n) - 1 {
        let part: Vec<usize> = (0..n)
            .filter(|&i| sub >> i & 1 == 1)
            .map(|i| a[i])
            .collect();
        if cyclic_covers(&part, b, m) {
            return false;
        }
    }
    true
}

/// Co-minimality of `(a, b)` in Z_m straight from the definition.
pub fn brute_is_cominimal(a: &[usize], b: &[usize], m: usize) -> bool {
    !a.is_empty()
        && !b.is_empty()
        && cyclic_covers(a, b, m)
        && cyclic_minimal(a, b, m)
        && cyclic_minimal(b, a, m)
}

/// Every co-minimal pair of Z_m, as bit masks of residues.
pub fn exhaustive_cyclic_cominimal(m: usize) -> Vec<(u32, u32)> {
    assert!((1..=14).contains(&m), "modulus must lie in 1..=14");
    let mut out = Vec::new();
    for ma in 1u32..(1 << m) {
        let a = members(ma, m);
        for mb in 1u32..(1 << m) {
            let b = members(mb, m);
            // Complements first: the minimality scans are the expensive part.
            if cyclic_covers(&a, &b, m) && cyclic_minimal(&a, &b, m) && cyclic_minimal(&b, &a, m) {
                out.push((ma, mb));
            }
        }
    }
    out
}

/// Sums of every pair of points, clipped to the box `lo[i] ≤ s[i] ≤ hi[i]`.
pub fn naive_lattice_sumset(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    lo: &[i64],
    hi: &[i64],
) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for p in a {
        for q in b {
            let s: Vec<i64> = p.iter().zip(q).map(|(x, y)| x + y).collect();
            if s.iter().zip(lo).zip(hi).all(|((v, l), h)| l <= v && v <= h) {
                out.insert(s);
            }
        }
    }
    out
}

/// Pairs `(p, q)` with `p + q = target`.
pub fn brute_lattice_reps(
    target: &[i64],
    a: &[Vec<i64>],
    b: &[Vec<i64>],
) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for p in a {
        for q in b {
            if p.iter().zip(q).zip(target).all(|((x, y), t)| x + y == *t) {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    out
}
