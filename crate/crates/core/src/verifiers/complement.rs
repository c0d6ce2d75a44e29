use std::collections::BTreeMap;

use rayon::prelude::*;

use super::claims::{offset, residue_window};
use super::{Certification, ClaimResult, Direction, Witness, WitnessReport};
use crate::constructions::{Base, FamilySpec, bit_length};
use crate::error::{Result, precondition};
use crate::sumset::{MAX_HORIZON, default_horizon, representations, sumset_union_family};
use crate::window::IntegerWindow;

/// Puts the power-of-two family second.
fn orient<'a>(a: &'a FamilySpec, b: &'a FamilySpec) -> Result<(&'a FamilySpec, &'a FamilySpec)> {
    match (a.is_power_family(), b.is_power_family()) {
        (_, true) => Ok((a, b)),
        (true, false) => Ok((b, a)),
        _ => Err(precondition("one side of the pair must be T or V")),
    }
}

fn powers(max_exp: u32, signed: bool) -> Vec<i64> {
    let mut v = Vec::new();
    for k in 0..=max_exp.min(62) {
        v.push(1i64 << k);
        if signed {
            v.push(-(1i64 << k));
        }
    }
    v
}

fn window_horizon(w: IntegerWindow) -> Result<u32> {
    let reach = w.lo().unsigned_abs().max(w.hi().unsigned_abs());
    let h = bit_length(reach) + 8;
    if h > MAX_HORIZON {
        return Err(precondition(format!("window {w} is beyond desk scale")));
    }
    Ok(h)
}

/// Every `y ∈ w` is in `A + B`.
///
/// The bulk of the window is settled by one truncated sumset; anything left
/// over is re-examined with a full representation scan, which can still find
/// a representation through an infinite tail.
pub fn verify_complement_window(
    a: &FamilySpec,
    b: &FamilySpec,
    w: IntegerWindow,
) -> Result<ClaimResult> {
    let (fam, pow) = orient(a, b)?;
    let h = window_horizon(w)?;
    let bs = powers(h, *pow == FamilySpec::V);
    let covered = sumset_union_family(std::slice::from_ref(fam), &bs, w)?;
    let mut used_tail = false;
    let mut counterexample = None;
    let mut from = w.lo();
    while let Some(y) = covered.first_gap(IntegerWindow::new(from, w.hi())?) {
        let r = representations(y, fam, pow, default_horizon(y))?;
        if !r.is_covered() {
            counterexample = Some(y);
            used_tail = true;
            break;
        }
        used_tail = true;
        if y == w.hi() {
            break;
        }
        from = y + 1;
    }
    let detail = match counterexample {
        Some(y) => format!("{y} has no representation in {fam} + {pow}"),
        None => format!("{fam} + {pow} covers {w} (powers up to 2^{h})"),
    };
    let mut res = ClaimResult::new("complement", None, counterexample, None, detail);
    if used_tail {
        res.certification = Certification::WindowTail;
    }
    Ok(res)
}

/// Coverage of `w` by `(∪ blocks) + bs`, nothing outside the truncation considered.
pub fn verify_complement_truncated(
    blocks: &[FamilySpec],
    bs: &[i64],
    w: IntegerWindow,
) -> Result<ClaimResult> {
    let sum = sumset_union_family(blocks, bs, w)?;
    let gap = sum.first_gap(w);
    let detail = format!("{} blocks, {} shifts over {w}", blocks.len(), bs.len());
    Ok(ClaimResult::new(
        "complement.truncated",
        None,
        gap,
        None,
        detail,
    ))
}

fn base_of(f: &FamilySpec) -> Option<Base> {
    match f {
        FamilySpec::S => Some(Base::S),
        FamilySpec::UAll => Some(Base::U),
        FamilySpec::Refined { base, .. } => Some(*base),
        FamilySpec::Minus { base, .. } => base_of(base),
        _ => None,
    }
}

fn pair_base(a: &FamilySpec, b: &FamilySpec) -> Option<Base> {
    base_of(a).filter(|base| base.partner() == *b)
}

/// Targets whose only representations use `bv`, tried before the generic scan.
fn named_b_targets(base: Option<Base>, bv: i64) -> Vec<i64> {
    let pow = |b: i64| (b > 0 && (b as u64).is_power_of_two()).then(|| b.trailing_zeros());
    match base {
        Some(Base::S) => match bv {
            1 => vec![-1],
            2 => vec![-38],
            _ => match pow(bv) {
                Some(e) if (2..=40).contains(&e) => {
                    let n = e + 1;
                    let h = 1i64 << (n - 1);
                    residue_window(n, h + (h >> 2) + 1, h + (h >> 1))
                        .map(|w| w.iter().collect())
                        .unwrap_or_default()
                }
                _ => vec![],
            },
        },
        Some(Base::U) => match bv {
            2 => vec![1],
            1 => vec![-39],
            -1 => vec![-40],
            -2 => vec![-4],
            -4 => vec![-6],
            _ => {
                if let Some(e) = pow(bv).filter(|e| (2..=40).contains(e)) {
                    let n = e + 3;
                    vec![3 * (1i64 << (n - 2)) + 3 * (1i64 << (n - 4)) - offset(n)]
                } else if let Some(e) = bv
                    .checked_neg()
                    .and_then(pow)
                    .filter(|e| (3..=40).contains(e))
                {
                    let n = e + 3;
                    vec![(1i64 << n) - 2 - offset(n)]
                } else {
                    vec![]
                }
            }
        },
        None => vec![],
    }
}

fn named_a_targets(base: Option<Base>, av: i64) -> Vec<i64> {
    match (base, av) {
        (Some(Base::S), -4) => vec![-3],
        (Some(Base::S), -2) => vec![-1],
        (Some(Base::U), -40) => vec![-39],
        (Some(Base::U), -39) => vec![-40],
        (Some(Base::U), -1) => vec![1],
        (Some(Base::U), -2) => vec![-4, -6],
        _ => vec![],
    }
}

fn by_magnitude(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_by_key(|&y| (y.unsigned_abs(), y));
    v.dedup();
    v
}

fn find_witness(
    candidates: impl IntoIterator<Item = i64>,
    a: &FamilySpec,
    b: &FamilySpec,
    accept: impl Fn(&crate::sumset::RepresentationReport) -> bool,
) -> Result<Option<Witness>> {
    for y in candidates {
        let h = default_horizon(y);
        if h > MAX_HORIZON {
            continue;
        }
        let r = representations(y, a, b, h)?;
        if accept(&r) {
            return Ok(Some(Witness {
                target: y,
                tail_proven: r.tail.proven,
                horizon: h,
            }));
        }
    }
    Ok(None)
}

fn b_witness(a: &FamilySpec, b: &FamilySpec, bv: i64, w: IntegerWindow) -> Result<Option<Witness>> {
    let named: Vec<i64> = named_b_targets(pair_base(a, b), bv)
        .into_iter()
        .filter(|&y| w.contains(y))
        .collect();
    if let Some(found) = find_witness(named, a, b, |r| r.all_use_b(bv))? {
        return Ok(Some(found));
    }
    // Targets that lose a representation are exactly A + bv.
    let Ok(reach) = w.shift(-bv) else {
        return Ok(None);
    };
    let cands = by_magnitude(a.materialize(reach)?.iter().map(|x| x + bv).collect());
    find_witness(cands, a, b, |r| r.all_use_b(bv))
}

/// For each `bv` in `removable`, a target `y ∈ w` all of whose representations use `bv`.
pub fn verify_minimality(
    a: &FamilySpec,
    b: &FamilySpec,
    removable: &[i64],
    w: IntegerWindow,
) -> Result<WitnessReport> {
    if !b.is_power_family() {
        return Err(precondition("minimality is checked against T or V"));
    }
    if let Some(x) = removable.iter().find(|&&x| !b.member(x)) {
        return Err(precondition(format!("{x} is not an element of {b}")));
    }
    let found: Vec<(i64, Option<Witness>)> = removable
        .par_iter()
        .map(|&bv| b_witness(a, b, bv, w).map(|r| (bv, r)))
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    let mut unverified = Vec::new();
    for (bv, wit) in found {
        match wit {
            Some(x) => {
                entries.insert(bv, x);
            }
            None => unverified.push(bv),
        }
    }
    let horizon = entries.values().map(|x| x.horizon).max().unwrap_or(0);
    Ok(WitnessReport {
        direction: Direction::BMinOverA,
        entries,
        unverified,
        certification: Certification::WindowTail,
        window: w,
        horizon,
    })
}

/// A target `y ∈ w` lost when `av` is removed from `A`, if one exists in the window.
pub fn verify_element_necessity_a(
    a: &FamilySpec,
    b: &FamilySpec,
    av: i64,
    w: IntegerWindow,
) -> Result<Option<Witness>> {
    if !a.member(av) {
        return Err(precondition(format!("{av} is not an element of {a}")));
    }
    if !b.is_power_family() {
        return Err(precondition("necessity is checked against T or V"));
    }
    let named: Vec<i64> = named_a_targets(pair_base(a, b), av)
        .into_iter()
        .filter(|&y| w.contains(y))
        .collect();
    if let Some(found) = find_witness(named, a, b, |r| r.all_use_a(av))? {
        return Ok(Some(found));
    }
    let signed = *b == FamilySpec::V;
    let cands = by_magnitude(
        powers(62, signed)
            .into_iter()
            .filter_map(|p| av.checked_add(p))
            .filter(|&y| w.contains(y))
            .collect(),
    );
    find_witness(cands, a, b, |r| r.all_use_a(av))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(lo: i64, hi: i64) -> IntegerWindow {
        IntegerWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn complements_on_desk_windows() {
        let r = verify_complement_window(&FamilySpec::S, &FamilySpec::T, w(-4096, 4096)).unwrap();
        assert!(r.holds, "{r:?}");
        let r =
            verify_complement_window(&FamilySpec::UAll, &FamilySpec::V, w(-4096, 4096)).unwrap();
        assert!(r.holds, "{r:?}");
        let r = verify_complement_window(&FamilySpec::T, &FamilySpec::S, w(-100, 100)).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn removing_minus_two_uncovers_minus_one() {
        let a = FamilySpec::minus(FamilySpec::S, vec![-2]);
        let r = verify_complement_window(&a, &FamilySpec::T, w(-4, 0)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some(-1));
    }

    #[test]
    fn nonpower_pairs_are_rejected() {
        assert!(verify_complement_window(&FamilySpec::S, &FamilySpec::UAll, w(-4, 4)).is_err());
    }

    #[test]
    fn st_witnesses() {
        let r =
            verify_minimality(&FamilySpec::S, &FamilySpec::T, &[1, 2, 16], w(-4096, 4096)).unwrap();
        assert_eq!(r.entries[&1].target, -1);
        // -38 is also -39 + 1, so the scan falls through to -37.
        assert_eq!(r.entries[&2].target, -37);
        let q2 = residue_window(5, 16 + 4 + 1, 16 + 8).unwrap();
        assert!(q2.contains(r.entries[&16].target));
        assert!(r.all_witnessed());
    }

    #[test]
    fn uv_witnesses() {
        let r = verify_minimality(
            &FamilySpec::UAll,
            &FamilySpec::V,
            &[2, 1, -1, -2, -4],
            w(-4096, 4096),
        )
        .unwrap();
        let targets: Vec<i64> = [2, 1, -1, -2, -4]
            .iter()
            .map(|b| r.entries[b].target)
            .collect();
        assert_eq!(targets, vec![1, -39, -40, -4, -6]);
    }

    #[test]
    fn a_side_witnesses() {
        let win = w(-4096, 4096);
        let t = |a: &FamilySpec, b: &FamilySpec, x| {
            verify_element_necessity_a(a, b, x, win)
                .unwrap()
                .unwrap()
                .target
        };
        assert_eq!(t(&FamilySpec::S, &FamilySpec::T, -4), -3);
        assert_eq!(t(&FamilySpec::S, &FamilySpec::T, -2), -1);
        assert_eq!(t(&FamilySpec::UAll, &FamilySpec::V, -40), -39);
        assert!(verify_element_necessity_a(&FamilySpec::S, &FamilySpec::T, -3, win).is_err());
    }

    #[test]
    fn removable_must_belong_to_b() {
        assert!(verify_minimality(&FamilySpec::S, &FamilySpec::T, &[3], w(-10, 10)).is_err());
    }
}
