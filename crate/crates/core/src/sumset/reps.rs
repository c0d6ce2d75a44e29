use serde::{Deserialize, Serialize};

use crate::constructions::{
    DEFAULT_TAIL_SPAN, FamilySpec, MAX_TAIL_EXPONENT, Membership, Sign, TailClass, bit_length,
    earliest_threshold, tail_membership,
};
use crate::error::{Result, precondition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    None,
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    pub kind: TailKind,
    /// For infinite tails, the exponent from which the extra representations persist.
    pub k0: u32,
    pub desc: String,
    /// True when the tail verdict follows from a bound rather than a stabilized scan.
    pub proven: bool,
}

/// All `(a, b)` with `a + b = y`, `b = ±2^k`, `k ≤ horizon`, plus a tail verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub y: i64,
    pub pairs: Vec<(i64, i64)>,
    pub tail: Tail,
    pub horizon: u32,
}

impl RepresentationReport {
    /// True when `y` has at least one representation (listed or in the tail).
    pub fn is_covered(&self) -> bool {
        !self.pairs.is_empty() || self.tail.kind == TailKind::Infinite
    }

    /// True when every representation (listed and tail) has second coordinate `b`.
    pub fn all_use_b(&self, b: i64) -> bool {
        self.tail.kind == TailKind::None
            && !self.pairs.is_empty()
            && self.pairs.iter().all(|p| p.1 == b)
    }

    /// True when every representation has first coordinate `a`.
    pub fn all_use_a(&self, a: i64) -> bool {
        self.tail.kind == TailKind::None
            && !self.pairs.is_empty()
            && self.pairs.iter().all(|p| p.0 == a)
    }
}

pub const DEFAULT_HORIZON_MARGIN: u32 = 8;

pub fn min_horizon(y: i64) -> u32 {
    bit_length(y.unsigned_abs()) + 6
}

pub fn default_horizon(y: i64) -> u32 {
    bit_length(y.unsigned_abs()) + DEFAULT_HORIZON_MARGIN
}

/// Largest horizon leaving room for the tail scan.
pub const MAX_HORIZON: u32 = MAX_TAIL_EXPONENT - DEFAULT_TAIL_SPAN - 1;

/// Representations of `y` in `A + B` where `B` is one of the power-of-two families.
///
/// If `A` is the power family and `B` is not, the roles are swapped and the
/// pairs are reported in the caller's `(a, b)` order.
pub fn representations(
    y: i64,
    a: &FamilySpec,
    b: &FamilySpec,
    horizon: u32,
) -> Result<RepresentationReport> {
    if a.is_power_family() && !b.is_power_family() {
        let mut r = representations(y, b, a, horizon)?;
        r.pairs = r.pairs.into_iter().map(|(x, z)| (z, x)).collect();
        r.pairs.sort_by_key(|p| (p.1, p.0));
        return Ok(r);
    }
    if !b.is_power_family() {
        return Err(precondition("the enumerated side must be T or V"));
    }
    if a.dim() != 1 {
        return Err(precondition(
            "representations need a one-dimensional family",
        ));
    }
    representations_with(y, a, a.tail_class(), *b == FamilySpec::V, horizon)
}

/// Core enumeration over any membership test, with the tail behaviour supplied by the caller.
pub fn representations_with(
    y: i64,
    a: &impl Membership,
    class: TailClass,
    signed: bool,
    horizon: u32,
) -> Result<RepresentationReport> {
    // For subsets of U against V the tail bound needs only 2^{h-3} > |y|.
    let floor = if signed && class == TailClass::SubsetOfU {
        bit_length(y.unsigned_abs()) + 4
    } else {
        min_horizon(y)
    };
    if horizon < floor {
        return Err(precondition(format!(
            "horizon {horizon} is below {floor} for y = {y}"
        )));
    }
    if horizon > MAX_HORIZON {
        return Err(precondition(format!(
            "horizon {horizon} exceeds {MAX_HORIZON}"
        )));
    }
    let mut pairs = Vec::new();
    for k in 0..=horizon {
        let p = 1i64 << k;
        let signs: &[i64] = if signed { &[1, -1] } else { &[1] };
        for &s in signs {
            let bv = s * p;
            if let Some(av) = y.checked_sub(bv)
                && a.contains(av)
            {
                pairs.push((av, bv));
            }
        }
    }
    pairs.sort_by_key(|p| p.1);
    let tail = classify_tail(y, a, class, signed, horizon)?;
    Ok(RepresentationReport {
        y,
        pairs,
        tail,
        horizon,
    })
}

fn classify_tail(
    y: i64,
    a: &impl Membership,
    class: TailClass,
    signed: bool,
    horizon: u32,
) -> Result<Tail> {
    let beyond = 1i128 << (horizon + 1);
    match class {
        TailClass::Bounded(lo, hi) => {
            let reach = (y as i128 - lo as i128)
                .abs()
                .max((y as i128 - hi as i128).abs());
            if beyond > reach {
                return Ok(Tail {
                    kind: TailKind::None,
                    k0: horizon + 1,
                    desc: format!(
                        "family lies in [{lo}, {hi}]; |b| ≥ 2^{} cannot reach it",
                        horizon + 1
                    ),
                    proven: true,
                });
            }
        }
        TailClass::SubsetOfU if signed && (1i128 << (horizon - 3)) > (y as i128).abs() => {
            return Ok(Tail {
                kind: TailKind::None,
                k0: horizon + 1,
                desc: format!(
                    "2^{} > |y|: no representation with |b| > 2^{horizon}",
                    horizon - 3
                ),
                proven: true,
            });
        }
        _ => {}
    }
    let k0 = horizon + 1;
    let signs: &[Sign] = if signed {
        &[Sign::Plus, Sign::Minus]
    } else {
        &[Sign::Plus]
    };
    let mut infinite: Option<u32> = None;
    for &sign in signs {
        let v = tail_membership(a, y, sign, k0, DEFAULT_TAIL_SPAN)?;
        if v.value {
            let t = earliest_threshold(a, y, sign, &v, 0);
            infinite = Some(infinite.map_or(t, |x: u32| x.min(t)));
        }
    }
    let end = k0 + DEFAULT_TAIL_SPAN;
    Ok(match infinite {
        Some(t) => Tail {
            kind: TailKind::Infinite,
            k0: t,
            desc: format!(
                "y - b is a member for every b = 2^k with k ≥ {t} (stabilized on [{k0}, {end}])"
            ),
            proven: false,
        },
        None => Tail {
            kind: TailKind::None,
            k0,
            desc: format!("no member y - b for |b| = 2^k, k in [{k0}, {end}] (stabilized)"),
            proven: false,
        },
    })
}
