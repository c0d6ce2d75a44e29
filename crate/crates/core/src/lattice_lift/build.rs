use std::collections::HashSet;

use super::matrix::{Block, BlockTriangularSpec, IntMatrix, eight_matrices};
use super::verify::{
    LatticePairReport, WITNESS_DILATION, combine_factor_reports, verify_cominimal_lattice,
};
use crate::constructions::{Base, FamilySpec};
use crate::error::{Error, Result, precondition};
use crate::window::{IntegerWindow, LatticeSet, LatticeWindow, WindowedSet};

/// How far beyond the checked box the factor sets are materialized,
/// relative to its centre. Twice the witness dilation.
pub const REACH_FACTOR: i64 = 2 * WITNESS_DILATION;
const SHIFTED_AXIS_REACH: i64 = 4 * REACH_FACTOR;

/// Refinement of S or U covering every element of magnitude at most `reach`.
pub fn refined_within(base: Base, reach: i64) -> Result<FamilySpec> {
    let count = base
        .spec()
        .materialize(IntegerWindow::new(-reach.max(1), -1)?)?
        .len();
    FamilySpec::refined(base, count)
}

fn symmetric(w: IntegerWindow) -> Result<IntegerWindow> {
    let r = w.lo().unsigned_abs().max(w.hi().unsigned_abs()).max(4) as i64;
    IntegerWindow::new(-r, r)
}

/// One-dimensional factor families for a diagonal block, and the families
/// its image under the block is claimed to equal.
///
/// Every diagonal sign matrix maps the symmetric `W × W` to itself.
pub fn block_families(
    block: &Block,
    axes: &[IntegerWindow],
) -> Result<(Vec<FamilySpec>, Vec<FamilySpec>)> {
    let reach = axes
        .iter()
        .map(|w| w.lo().unsigned_abs().max(w.hi().unsigned_abs()))
        .max()
        .unwrap_or(1) as i64;
    let w = |i: usize| -> Result<FamilySpec> { FamilySpec::w_greedy(symmetric(axes[i])?) };
    let rs = || refined_within(Base::S, reach);
    let ru = || refined_within(Base::U, reach);
    let m = match block {
        Block::Identity1 => return Ok((vec![w(0)?], vec![w(0)?])),
        Block::TwoByTwo(m) => m,
    };
    let [id, flip_y, flip_x, neg, swap, rot_ccw, rot_cw, anti] = eight_matrices();
    Ok(if *m == id || *m == flip_y || *m == flip_x || *m == neg {
        (vec![w(0)?, w(1)?], vec![w(0)?, w(1)?])
    } else if *m == swap {
        (vec![rs()?, FamilySpec::T], vec![FamilySpec::T, rs()?])
    } else if *m == rot_ccw {
        (
            vec![FamilySpec::V, ru()?],
            vec![ru()?.negated(), FamilySpec::V],
        )
    } else if *m == rot_cw {
        (
            vec![ru()?, FamilySpec::V],
            vec![FamilySpec::V, ru()?.negated()],
        )
    } else if *m == anti {
        (
            vec![rs()?.negated(), FamilySpec::T],
            vec![FamilySpec::T.negated(), rs()?],
        )
    } else {
        return Err(precondition(format!("unsupported diagonal block {m}")));
    })
}

fn product_family(parts: Vec<FamilySpec>) -> FamilySpec {
    FamilySpec::Product(parts)
}

/// The set `A` for the automorphism described by `spec`, materialized on `w`:
/// the product of the diagonal blocks' factor sets.
#[allow(non_snake_case)]
pub fn build_A_for_automorphism(
    spec: &BlockTriangularSpec,
    w: &LatticeWindow,
) -> Result<LatticeSet> {
    a_family(spec, w)?.materialize_lattice(w)
}

fn a_family(spec: &BlockTriangularSpec, w: &LatticeWindow) -> Result<FamilySpec> {
    if w.dim() != spec.matrix.n() {
        return Err(Error::Dimension(spec.matrix.n(), w.dim()));
    }
    let mut parts = Vec::new();
    for (b, o) in spec.blocks.iter().zip(spec.offsets()) {
        parts.extend(block_families(b, &w.axes()[o..o + b.size()])?.0);
    }
    Ok(product_family(parts))
}

/// The partner the construction predicts for a single diagonal block.
pub fn claimed_partner(
    spec: &BlockTriangularSpec,
    w: &LatticeWindow,
) -> Result<Option<LatticeSet>> {
    if !spec.is_block_diagonal() {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for (b, o) in spec.blocks.iter().zip(spec.offsets()) {
        parts.extend(block_families(b, &w.axes()[o..o + b.size()])?.1);
    }
    Ok(Some(product_family(parts).materialize_lattice(w)?))
}

/// `σ(A)` clipped to `w`.
pub fn apply_matrix(m: &IntMatrix, a: &LatticeSet, w: &LatticeWindow) -> Result<LatticeSet> {
    let image: Vec<Vec<i64>> = a.points().map(|p| m.apply(p)).collect::<Result<_>>()?;
    LatticeSet::new_clipped(w.clone(), image)
}

/// Builds `(A, σ(A))` for `matrix` and checks it on `window`.
pub fn build_pair_for_automorphism(
    matrix: &IntMatrix,
    window: &LatticeWindow,
) -> Result<LatticePairReport> {
    let spec = BlockTriangularSpec::infer(matrix)?;
    let reach = window.dilate(REACH_FACTOR)?;
    let a = build_A_for_automorphism(&spec, &reach)?;
    let b = apply_matrix(matrix, &a, &reach)?;
    let mut r = verify_cominimal_lattice(&a, &b, window)?;
    r.sigma = Some(matrix.clone());
    Ok(r)
}

/// `(A + C, B + D)` with `A, B` placed on `axis` and `C, D` lifting the quotient.
///
/// `C` and `D` must map injectively to the quotient by that axis.
pub fn product_pair(
    a: &WindowedSet,
    b: &WindowedSet,
    c: &LatticeSet,
    d: &LatticeSet,
    axis: usize,
) -> Result<(LatticeSet, LatticeSet)> {
    if c.dim() != d.dim() {
        return Err(Error::Dimension(c.dim(), d.dim()));
    }
    if axis >= c.dim() {
        return Err(precondition(format!(
            "axis {axis} is outside dimension {}",
            c.dim()
        )));
    }
    let lift = |base: &WindowedSet, up: &LatticeSet| -> Result<LatticeSet> {
        let mut seen = HashSet::new();
        for p in up.points() {
            let mut q = p.to_vec();
            q.remove(axis);
            if !seen.insert(q) {
                return Err(precondition(format!(
                    "two points of the lift share the quotient image of {p:?}"
                )));
            }
        }
        let mut dims = up.window().axes().to_vec();
        dims[axis] = dims[axis].sum(&base.window())?;
        let elems = base.elements();
        let pts = up.points().flat_map(|p| {
            elems.iter().map(move |&x| {
                let mut q = p.to_vec();
                q[axis] += x;
                q
            })
        });
        LatticeSet::new(LatticeWindow::new(dims)?, pts.collect::<Vec<_>>())
    };
    Ok((lift(a, c)?, lift(b, d)?))
}

/// The two plane pairs built from sequences `x_i`, `y_u`:
/// `{(x_i + s_j, s_i)}, {(y_u + 2^{v-1}, 2^{u-1})}` and
/// `{(x_i + 2^{j-1}, s_i)}, {(y_u + s_v, 2^{u-1})}`, clipped to `w`.
pub fn corollary_pairs(
    x_seq: &[i64],
    y_seq: &[i64],
    w: &LatticeWindow,
) -> Result<[(LatticeSet, LatticeSet); 2]> {
    if w.dim() != 2 {
        return Err(Error::Dimension(2, w.dim()));
    }
    let (w0, w1) = (w.axis(0), w.axis(1));
    let s_reach = w1.lo().unsigned_abs().max(1) as i64;
    let s_spec = refined_within(Base::S, s_reach)?;
    let s_rows: Vec<i64> = s_spec
        .materialize(IntegerWindow::new(w1.lo().min(-1), -1)?)?
        .elements()
        .into_iter()
        .rev()
        .collect();
    let t_rows: Vec<i64> = (0..62)
        .map(|k| 1i64 << k)
        .take_while(|&p| p <= w1.hi())
        .collect();
    let s_rows: Vec<i64> = s_rows.into_iter().filter(|&s| w1.contains(s)).collect();
    if x_seq.len() < s_rows.len() || y_seq.len() < t_rows.len() {
        return Err(precondition(format!(
            "need {} shifts for S rows and {} for T rows, got {} and {}",
            s_rows.len(),
            t_rows.len(),
            x_seq.len(),
            y_seq.len()
        )));
    }
    let rows = |shifts: &[i64], values: &[i64]| -> Result<LatticeSet> {
        let pts: Vec<Vec<i64>> = values
            .iter()
            .zip(shifts)
            .map(|(&v, &x)| vec![x, v])
            .collect();
        let lo = pts.iter().map(|p| p[0]).min().unwrap_or(0);
        let hi = pts.iter().map(|p| p[0]).max().unwrap_or(0);
        let win = LatticeWindow::new(vec![IntegerWindow::new(lo, hi)?, w1])?;
        LatticeSet::new(win, pts)
    };
    let c = rows(x_seq, &s_rows)?;
    let d = rows(y_seq, &t_rows)?;
    // The first coordinate of the shifted factor must still land in w0.
    let span = |set: &LatticeSet| -> Result<IntegerWindow> {
        let sh = set.window().axis(0);
        IntegerWindow::new(w0.lo() - sh.hi(), w0.hi() - sh.lo())
    };
    let s_on = |win: IntegerWindow| s_spec.materialize(win);
    let t_on = |win: IntegerWindow| FamilySpec::T.materialize(win);
    let (a1, b1) = product_pair(&s_on(span(&c)?)?, &t_on(span(&d)?)?, &c, &d, 0)?;
    let (a2, b2) = product_pair(&t_on(span(&c)?)?, &s_on(span(&d)?)?, &c, &d, 0)?;
    Ok([
        (a1.restrict(w)?, b1.restrict(w)?),
        (a2.restrict(w)?, b2.restrict(w)?),
    ])
}

/// Checks both row-shifted pairs built on the reach box of `window`.
///
/// Row shifts move first coordinates, so that axis gets a wider reach.
pub fn verify_corollary_pairs(
    x_seq: &[i64],
    y_seq: &[i64],
    window: &LatticeWindow,
) -> Result<[LatticePairReport; 2]> {
    if window.dim() != 2 {
        return Err(Error::Dimension(2, window.dim()));
    }
    let reach = LatticeWindow::new(vec![
        window.axis(0).dilate(SHIFTED_AXIS_REACH)?,
        window.axis(1).dilate(REACH_FACTOR)?,
    ])?;
    let [(a1, b1), (a2, b2)] = corollary_pairs(x_seq, y_seq, &reach)?;
    Ok([
        verify_cominimal_lattice(&a1, &b1, window)?,
        verify_cominimal_lattice(&a2, &b2, window)?,
    ])
}

/// Block-diagonal automorphism of `Z^{2d}` with `d` copies of `[[0,-1],[-1,0]]`.
pub fn quadrant_matrix(d: usize) -> IntMatrix {
    let anti = eight_matrices()[7].clone();
    IntMatrix::block_diagonal(&vec![anti; d])
}

/// `A = ((-S) × T)^d`, inside the all-positive quadrant, with its image pair.
///
/// For `d ≥ 2` each plane factor is checked on its own and the reports are combined.
pub fn build_quadrant_pair(d: usize, window: &LatticeWindow) -> Result<LatticePairReport> {
    if d == 0 || window.dim() != 2 * d {
        return Err(precondition(format!(
            "a {}-dimensional box does not split into {d} planes",
            window.dim()
        )));
    }
    let anti = eight_matrices()[7].clone();
    let mut parts = Vec::with_capacity(d);
    for k in 0..d {
        let plane = LatticeWindow::new(window.axes()[2 * k..2 * k + 2].to_vec())?;
        parts.push(build_pair_for_automorphism(&anti, &plane)?);
    }
    let mut r = if d == 1 {
        parts.pop().expect("one part")
    } else {
        combine_factor_reports(&parts)?
    };
    r.sigma = Some(quadrant_matrix(d));
    Ok(r)
}
