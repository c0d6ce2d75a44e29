use crate::error::{Error, Result};
use crate::window::{LatticeSet, LatticeWindow};

/// Calls `f(i, j)` for every pair with `a[i] + b[j]` inside `target`.
///
/// `b` is lexicographically sorted, so the admissible range for each axis is
/// found by binary search inside the current prefix group.
pub fn for_each_pair_in_box(
    a: &LatticeSet,
    b: &LatticeSet,
    target: &LatticeWindow,
    mut f: impl FnMut(usize, usize),
) {
    let d = a.dim();
    if b.dim() != d || target.dim() != d || b.is_empty() {
        return;
    }
    for (i, pa) in a.points().enumerate() {
        descend(b, target, pa, 0, 0, b.len(), &mut |j| f(i, j));
    }
}

fn descend(
    b: &LatticeSet,
    target: &LatticeWindow,
    pa: &[i64],
    depth: usize,
    start: usize,
    end: usize,
    f: &mut impl FnMut(usize),
) {
    let axis = target.axis(depth);
    let (lo, hi) = (
        axis.lo().saturating_sub(pa[depth]),
        axis.hi().saturating_sub(pa[depth]),
    );
    let (first, last) = b.axis_range(start, end, depth, lo, hi);
    if depth + 1 == pa.len() {
        (first..last).for_each(&mut *f);
        return;
    }
    let mut g = first;
    while g < last {
        let v = b.coord(g, depth);
        let (_, g_end) = b.axis_range(g, last, depth, v, v);
        descend(b, target, pa, depth + 1, g, g_end, f);
        g = g_end;
    }
}

/// `(a + b) ∩ target` in ℤ^d.
pub fn sumset_lattice(
    a: &LatticeSet,
    b: &LatticeSet,
    target: &LatticeWindow,
) -> Result<LatticeSet> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(a.dim(), b.dim()));
    }
    if a.dim() != target.dim() {
        return Err(Error::Dimension(a.dim(), target.dim()));
    }
    let mut sums: Vec<Vec<i64>> = Vec::new();
    for_each_pair_in_box(a, b, target, |i, j| {
        sums.push(
            a.point(i)
                .iter()
                .zip(b.point(j))
                .map(|(x, y)| x + y)
                .collect(),
        );
    });
    LatticeSet::new(target.clone(), sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::IntegerWindow;

    fn iw(lo: i64, hi: i64) -> IntegerWindow {
        IntegerWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn identity_and_products() {
        let b = LatticeWindow::cube(2, -3, 3).unwrap();
        let zero = LatticeSet::new(b.clone(), [[0, 0]]).unwrap();
        let x = LatticeSet::new(b.clone(), [[1, 2], [-3, 0], [2, -1]]).unwrap();
        assert!(sumset_lattice(&zero, &x, &b).unwrap().same_points(&x));
        let h = LatticeSet::new(b.clone(), [[0, 0], [1, 0]]).unwrap();
        let v = LatticeSet::new(b.clone(), [[0, 0], [0, 1]]).unwrap();
        let s = sumset_lattice(&h, &v, &b).unwrap();
        let pts: Vec<Vec<i64>> = s.points().map(|p| p.to_vec()).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn pruned_enumeration_matches_all_pairs() {
        let wide = LatticeWindow::new(vec![iw(-20, 20), iw(-20, 20), iw(-5, 5)]).unwrap();
        let mut pa = Vec::new();
        let mut pb = Vec::new();
        for x in -20i64..=20 {
            for y in -20i64..=20 {
                for z in -5i64..=5 {
                    if (x * 7 + y * 3 + z * 11).rem_euclid(23) == 0 {
                        pa.push([x, y, z]);
                    }
                    if (x * 5 - y * 2 + z).rem_euclid(17) == 1 {
                        pb.push([x, y, z]);
                    }
                }
            }
        }
        let a = LatticeSet::new(wide.clone(), &pa).unwrap();
        let b = LatticeSet::new(wide.clone(), &pb).unwrap();
        let target = LatticeWindow::new(vec![iw(-7, 9), iw(-3, 12), iw(-2, 2)]).unwrap();
        let fast = sumset_lattice(&a, &b, &target).unwrap();
        let mut all = Vec::new();
        for p in &pa {
            for q in &pb {
                let s = [p[0] + q[0], p[1] + q[1], p[2] + q[2]];
                if target.contains(&s) {
                    all.push(s);
                }
            }
        }
        assert_eq!(fast, LatticeSet::new(target, all).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let a = LatticeSet::empty(LatticeWindow::cube(2, 0, 1).unwrap());
        let b = LatticeSet::empty(LatticeWindow::cube(3, 0, 1).unwrap());
        assert!(matches!(
            sumset_lattice(&a, &b, a.window()),
            Err(Error::Dimension(2, 3))
        ));
    }
}
