//! Named structural claims about S + T and U + V, each evaluated exactly on
//! truncations: blocks of index at most `max_index`, powers up to `2^max_exp`.
//!
//! Every check resolves to one of three shapes: a target window disjoint
//! from a sum, a target window contained in a sum, or a point outside a sum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ClaimResult, sort_results};
use crate::constructions::FamilySpec;
use crate::error::{Result, precondition};
use crate::sumset::sumset_union_family;
use crate::window::{IntegerWindow, WindowedSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub max_index: u32,
    pub max_exp: u32,
}

impl Truncation {
    pub fn st_default(n_hi: u32) -> Self {
        Truncation {
            max_index: n_hi + 4,
            max_exp: n_hi + 4,
        }
    }

    pub fn uv_default(n_hi: u32) -> Self {
        Truncation {
            max_index: n_hi + 4,
            max_exp: n_hi + 6,
        }
    }

    pub fn doubled(self) -> Self {
        Truncation {
            max_index: 2 * self.max_index,
            max_exp: 2 * self.max_exp,
        }
    }

    fn check(self) -> Result<()> {
        if self.max_index > 40 || self.max_exp > 61 {
            return Err(precondition(format!(
                "truncation {self:?} is beyond desk scale"
            )));
        }
        Ok(())
    }
}

/// `1 + 2^{n+1}`: subtracting it maps residues `1..=2^n` onto block `n`.
pub fn offset(n: u32) -> i64 {
    1 + (1i64 << (n + 1))
}

/// The integers of block `n` with residues `lo..=hi`.
pub fn residue_window(n: u32, lo: i64, hi: i64) -> Result<IntegerWindow> {
    IntegerWindow::new(lo - offset(n), hi - offset(n))
}

fn powers(max_exp: u32, signed: bool) -> Vec<i64> {
    let mut v = Vec::new();
    for k in 0..=max_exp {
        v.push(1i64 << k);
        if signed {
            v.push(-(1i64 << k));
        }
    }
    v
}

fn sums(blocks: &[FamilySpec], bs: &[i64], target: IntegerWindow) -> Result<WindowedSet> {
    sumset_union_family(blocks, bs, target)
}

fn disjoint(target: IntegerWindow, blocks: &[FamilySpec], bs: &[i64]) -> Result<Option<i64>> {
    Ok(sums(blocks, bs, target)?.min())
}

fn inside(target: IntegerWindow, parts: &[(&[FamilySpec], &[i64])]) -> Result<Option<i64>> {
    let mut acc = WindowedSet::empty(target);
    for (blocks, bs) in parts {
        acc = acc.union(&sums(blocks, bs, target)?)?;
    }
    Ok(acc.first_gap(target))
}

fn outside(y: i64, parts: &[(&[FamilySpec], &[i64])]) -> Result<Option<i64>> {
    let target = IntegerWindow::new(y, y)?;
    for (blocks, bs) in parts {
        if sums(blocks, bs, target)?.contains(y) {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

fn without(bs: &[i64], drop: i64) -> Vec<i64> {
    bs.iter().copied().filter(|&b| b != drop).collect()
}

/// Representations `(a, 2^k)` of `y` with `a` in a block of index ≤ `max_index`.
fn truncated_st_reps(y: i64, t: Truncation) -> Vec<(i64, i64)> {
    (0..=t.max_exp)
        .filter_map(|k| {
            let b = 1i64 << k;
            let a = y - b;
            let in_range = crate::constructions::block_index(a).is_some_and(|m| m <= t.max_index);
            (in_range && FamilySpec::S.member(a)).then_some((a, b))
        })
        .collect()
}

/// First `y` in `targets` whose truncated representations are not exactly `[(y - b, b)]`.
fn forced(targets: IntegerWindow, b: i64, t: Truncation) -> Option<i64> {
    targets
        .iter()
        .find(|&y| truncated_st_reps(y, t) != [(y - b, b)])
}

struct Blocks {
    uv: bool,
}

impl Blocks {
    fn one(&self, m: u32) -> FamilySpec {
        if self.uv {
            FamilySpec::U(m)
        } else {
            FamilySpec::I(m)
        }
    }

    fn range(&self, ms: impl Iterator<Item = u32>) -> Vec<FamilySpec> {
        ms.map(|m| self.one(m)).collect()
    }
}

fn st_for_n(n: u32, t: Truncation) -> Result<Vec<ClaimResult>> {
    let blocks = Blocks { uv: false };
    let tk = powers(t.max_exp, false);
    let h = 1i64 << (n - 1);
    let tr = Some(t);
    let mut out = Vec::new();
    let mut push = |id: &str, ce: Option<i64>, detail: String| {
        out.push(ClaimResult::new(id, Some(n), ce, tr, detail))
    };

    let rh = residue_window(n, h + 1, 2 * h)?;
    let far = blocks.range((0..=t.max_index).filter(|&m| m != n && m != n + 1));
    push(
        "st.right_half_excluded",
        disjoint(rh, &far, &tk)?,
        format!(
            "right half {rh} of block {n} avoids blocks other than {n}, {} plus T",
            n + 1
        ),
    );

    if n >= 3 {
        let q1 = residue_window(n, h + 1, h + h / 4)?;
        let q2 = residue_window(n, h + h / 4 + 1, h + h / 2)?;
        let own = [blocks.one(n)];
        let next = [blocks.one(n + 1)];
        push(
            "st.q2_right_half_not_from_next",
            disjoint(q2, &next, &tk)?,
            format!("{q2} avoids I_{} + T", n + 1),
        );
        push(
            "st.q2_right_half_needs_half_power",
            disjoint(q2, &own, &without(&tk, h))?,
            format!("{q2} avoids I_{n} + (T minus {h})"),
        );
        push(
            "st.q1_right_half_not_from_same",
            disjoint(q1, &own, &tk)?,
            format!("{q1} avoids I_{n} + T"),
        );
        push(
            "st.q1_right_half_needs_top_power",
            disjoint(q1, &next, &without(&tk, 2 * h))?,
            format!("{q1} avoids I_{} + (T minus {})", n + 1, 2 * h),
        );
        let cluster = residue_window(n, h / 4 + 1, h / 2)?;
        push(
            "st.left_half_cluster_forced",
            forced(q2, h, t),
            format!("each y in {q2} is reached only from {cluster} with shift {h}"),
        );
        let upper = residue_window(n + 1, 3 * h + 1, 3 * h + h / 4)?;
        push(
            "st.right_quarter_cluster_forced",
            forced(q1, 2 * h, t),
            format!(
                "each y in {q1} is reached only from {upper} with shift {}",
                2 * h
            ),
        );
        push(
            "st.cover.q2_right_half",
            inside(q2, &[(&own, &[h])])?,
            format!("{q2} inside I_{n} + {h}"),
        );
        push(
            "st.cover.q1_right_half",
            inside(q1, &[(&next, &[2 * h])])?,
            format!("{q1} inside I_{} + {}", n + 1, 2 * h),
        );
    }

    let lh = residue_window(n, 1, h)?;
    push(
        "st.cover.left_half",
        inside(lh, &[(&[blocks.one(n + 3)], &[16 * h])])?,
        format!("{lh} inside I_{} + {}", n + 3, 16 * h),
    );

    if n >= 4 {
        let rq = residue_window(n, h + h / 2 + 1, 2 * h)?;
        let small: Vec<i64> = powers(n - 4, false);
        push(
            "st.cover.right_quarter",
            inside(
                rq,
                &[(&[blocks.one(n + 1)], &[2 * h]), (&[blocks.one(n)], &small)],
            )?,
            format!(
                "{rq} inside (I_{} + {}) ∪ (I_{n} + powers up to 2^{})",
                n + 1,
                2 * h,
                n - 4
            ),
        );
    }
    Ok(out)
}

fn st_base(t: Truncation) -> Result<Vec<ClaimResult>> {
    let blocks = Blocks { uv: false };
    let all = blocks.range(0..=t.max_index);
    let tk = powers(t.max_exp, false);
    let mut ce = None;
    // {0} with blocks 0 and 1, the right half of block 2, the right quarter of block 3.
    for (lo, hi) in [(-4, 0), (-6, -5), (-10, -9)] {
        ce = ce.or(inside(IntegerWindow::new(lo, hi)?, &[(&all, &tk)])?);
    }
    let low_left = inside(IntegerWindow::new(-4, -4)?, &[(&[blocks.one(4)], &[16])])?;
    Ok(vec![
        ClaimResult::new(
            "st.cover.base",
            None,
            ce,
            Some(t),
            "[-4, 0], [-6, -5], [-10, -9] inside S + T".into(),
        ),
        ClaimResult::new(
            "st.cover.left_half",
            Some(1),
            low_left,
            Some(t),
            "[-4, -4] inside I_4 + 16".into(),
        ),
    ])
}

/// Structural claims about `S + T` for block indices `n_lo..=n_hi`.
pub fn check_claims_st(n_lo: u32, n_hi: u32) -> Result<Vec<ClaimResult>> {
    check_claims_st_with(n_lo, n_hi, Truncation::st_default(n_hi))
}

pub fn check_claims_st_with(n_lo: u32, n_hi: u32, t: Truncation) -> Result<Vec<ClaimResult>> {
    if !(2 <= n_lo && n_lo <= n_hi && n_hi <= 12) {
        return Err(precondition(format!(
            "need 2 <= n_lo <= n_hi <= 12, got {n_lo}..{n_hi}"
        )));
    }
    t.check()?;
    let per_n: Vec<Vec<ClaimResult>> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| st_for_n(n, t))
        .collect::<Result<_>>()?;
    let mut out: Vec<ClaimResult> = per_n.into_iter().flatten().collect();
    out.extend(st_base(t)?);
    sort_results(&mut out);
    Ok(out)
}

/// `(y, a0, b0)`: `y` is reached only as `a0 + b0`.
const UV_FORCED: [(&str, i64, i64, i64); 5] = [
    ("uv.two_forced", 1, -1, 2),
    ("uv.one_forced", -39, -40, 1),
    ("uv.minus_one_forced", -40, -39, -1),
    ("uv.minus_two_forced", -4, -2, -2),
    ("uv.minus_four_forced", -6, -2, -4),
];

fn uv_for_n(n: u32, t: Truncation) -> Result<Vec<ClaimResult>> {
    let blocks = Blocks { uv: true };
    let vk = powers(t.max_exp, true);
    let h = 1i64 << (n - 1);
    let tr = Some(t);
    let mut out = Vec::new();
    let mut push = |id: &str, ce: Option<i64>, detail: String| {
        out.push(ClaimResult::new(id, Some(n), ce, tr, detail))
    };

    let rh = residue_window(n, h + 1, 2 * h)?;
    let far = blocks.range(n + 2..=t.max_index);
    push(
        "uv.right_half_excluded_far",
        disjoint(rh, &far, &vk)?,
        format!("{rh} avoids U_m + V for {} <= m <= {}", n + 2, t.max_index),
    );
    if n >= 3 {
        push(
            "uv.right_half_needs_top_power",
            disjoint(rh, &[blocks.one(n + 1)], &without(&vk, 2 * h))?,
            format!("{rh} avoids U_{} + (V minus {})", n + 1, 2 * h),
        );
    }
    if n >= 5 {
        let y = h + h / 2 + h / 4 + h / 8 - offset(n);
        let b0 = h / 4;
        let others = blocks.range((0..=t.max_index).filter(|&m| m != n));
        push(
            "uv.positive_power_forced",
            outside(y, &[(&[blocks.one(n)], &without(&vk, b0)), (&others, &vk)])?,
            format!("{y} reached only through U_{n} + {b0}"),
        );
    }
    if n >= 6 {
        let y = 2 * h - 2 - offset(n);
        let b0 = -(h / 4);
        let all = blocks.range(0..=t.max_index);
        push(
            "uv.negative_power_forced",
            outside(y, &[(&all, &without(&vk, b0))])?,
            format!("{y} reached only with shift {b0}"),
        );
    }
    Ok(out)
}

fn uv_base(t: Truncation) -> Result<Vec<ClaimResult>> {
    let vk = powers(t.max_exp, true);
    let mut out = Vec::new();
    for (id, y, a0, b0) in UV_FORCED {
        let rest: Vec<FamilySpec> = (0..=t.max_index)
            .map(|m| FamilySpec::minus(FamilySpec::U(m), vec![a0]))
            .collect();
        let via_a0 = without(&vk, b0).contains(&(y - a0)).then_some(y);
        let ce = outside(y, &[(&rest, &vk)])?.or(via_a0);
        out.push(ClaimResult::new(
            id,
            None,
            ce,
            Some(t),
            format!("{y} reached only as {a0} + {b0}"),
        ));
    }
    Ok(out)
}

/// Structural claims about `U + V` for block indices `n_lo..=n_hi`.
pub fn check_claims_uv(n_lo: u32, n_hi: u32) -> Result<Vec<ClaimResult>> {
    check_claims_uv_with(n_lo, n_hi, Truncation::uv_default(n_hi))
}

pub fn check_claims_uv_with(n_lo: u32, n_hi: u32, t: Truncation) -> Result<Vec<ClaimResult>> {
    if !(2 <= n_lo && n_lo <= n_hi && n_hi <= 12) {
        return Err(precondition(format!(
            "need 2 <= n_lo <= n_hi <= 12, got {n_lo}..{n_hi}"
        )));
    }
    t.check()?;
    let per_n: Vec<Vec<ClaimResult>> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| uv_for_n(n, t))
        .collect::<Result<_>>()?;
    let mut out: Vec<ClaimResult> = per_n.into_iter().flatten().collect();
    out.extend(uv_base(t)?);
    sort_results(&mut out);
    Ok(out)
}

/// For `u` in block `m` and `|y| <= 2^{n-3}`, a shift `±2^k` can reach `y`
/// only if the interval `[lo_m + v, hi_m + v]` meets `[-2^{n-3}, 2^{n-3})`.
/// Returns the exponents above `max_exp` that could, which must be none.
fn unreachable_beyond(n: u32, m: u32, max_exp: u32) -> Vec<u32> {
    let (lo, hi) = crate::constructions::block_bounds(m);
    let ylo = -(1i128 << (n - 3));
    let yhi = (1i128 << (n - 3)) - 1;
    (max_exp + 1..=126)
        .filter(|&k| {
            [1i128, -1].iter().any(|s| {
                let v = s * (1i128 << k);
                lo as i128 + v <= yhi && hi as i128 + v >= ylo
            })
        })
        .collect()
}

/// `[-2^{n-3}, 2^{n-3})` avoids `U_m + V` for `n <= m <= max_index`.
///
/// Exponents up to `max_index + 2` are checked by sumset; every larger exponent
/// is excluded by an interval bound, so each verdict covers all of V.
pub fn check_uv_finiteness(n_lo: u32, n_hi: u32) -> Result<Vec<ClaimResult>> {
    check_uv_finiteness_with(n_lo, n_hi, n_hi + 6)
}

pub fn check_uv_finiteness_with(n_lo: u32, n_hi: u32, max_index: u32) -> Result<Vec<ClaimResult>> {
    if !(4 <= n_lo && n_lo <= n_hi && n_hi <= max_index && max_index <= 40) {
        return Err(precondition(format!(
            "need 4 <= n_lo <= n_hi <= max_index <= 40, got {n_lo}..{n_hi}, {max_index}"
        )));
    }
    let t = Truncation {
        max_index,
        max_exp: max_index + 2,
    };
    let vk = powers(t.max_exp, true);
    let mut out: Vec<ClaimResult> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let y = IntegerWindow::new(-(1i64 << (n - 3)), (1i64 << (n - 3)) - 1)?;
            let blocks: Vec<FamilySpec> = (n..=max_index).map(FamilySpec::U).collect();
            let stray: Vec<u32> = (n..=max_index).flat_map(|m| unreachable_beyond(n, m, t.max_exp)).collect();
            if !stray.is_empty() {
                return Err(precondition(format!("interval bound fails for exponents {stray:?}")));
            }
            let ce = disjoint(y, &blocks, &vk)?;
            Ok(ClaimResult::new(
                "uv.finiteness",
                Some(n),
                ce,
                Some(t),
                format!("{y} avoids U_m + V for {n} <= m <= {max_index}; exponents above {} excluded by bounds", t.max_exp),
            ))
        })
        .collect::<Result<_>>()?;
    sort_results(&mut out);
    Ok(out)
}
