//! Greedy minimalization of S against T and of U against V.
//!
//! Elements are visited by increasing magnitude. An element is dropped only
//! when every target it helps to cover, `s0 + b` for `b` in the partner, keeps
//! another representation in the current set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    Base, DEFAULT_TAIL_SPAN, FamilySpec, Membership, bit_length, block_window,
};
use crate::error::{Result, precondition};
use crate::verifiers::Certification;
use crate::window::IntegerWindow;

/// Exponents scanned past `bit_length(|s0|)` when listing affected targets.
pub const REMOVAL_HORIZON_MARGIN: u32 = 12;
const ALT_HORIZON_MARGIN: u32 = 8;
const ALT_HORIZON_FLOOR: u32 = 12;
const MAX_EXPONENT: u32 = 62;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementResult {
    pub base: FamilySpec,
    pub partner: FamilySpec,
    pub retained: Vec<i64>,
    pub removed: Vec<i64>,
    pub budget: usize,
    pub certification: Certification,
    /// Retained only because a check could not be completed.
    pub flagged: Vec<i64>,
}

impl RefinementResult {
    /// The refined family: the processed prefix minus removals, then the untouched base.
    pub fn family(&self) -> Result<FamilySpec> {
        Ok(FamilySpec::Refined {
            base: base_of(&self.base)?,
            budget: self.budget,
            removed: self.removed.clone(),
        })
    }
}

/// Outcome of testing one removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalCheck {
    Safe,
    /// This target would lose its last representation.
    Lost(i64),
    /// Arithmetic left the representable range before the scan finished.
    Inconclusive,
}

fn base_of(f: &FamilySpec) -> Result<Base> {
    match f {
        FamilySpec::S => Ok(Base::S),
        FamilySpec::UAll => Ok(Base::U),
        _ => Err(precondition(format!("refinement acts on S or U, not {f}"))),
    }
}

/// The first `count` elements of the base, by increasing magnitude.
pub fn base_prefix(base: Base, count: usize) -> Result<Vec<i64>> {
    let spec = base.spec();
    let mut out = Vec::with_capacity(count);
    let mut m = 0;
    while out.len() < count {
        let block = block_window(m)?;
        let mut e = spec.materialize(block)?.elements();
        e.reverse();
        out.extend(e.into_iter().take(count - out.len()));
        m += 1;
    }
    Ok(out)
}

fn shifts(max_exp: u32, signed: bool) -> impl Iterator<Item = i64> {
    (0..=max_exp).flat_map(move |k| {
        let p = 1i64 << k;
        if signed { vec![p, -p] } else { vec![p] }
    })
}

/// Whether `y` keeps a representation in `current + partner`.
///
/// Looks at shifts up to `max(bit_length(y) + 8, 12)`, capped so the tail scan
/// stays below 2^62. Failing that, accepts only an infinite tail that persists
/// over the next `DEFAULT_TAIL_SPAN` exponents.
fn still_covered(current: &impl Membership, y: i64, signed: bool) -> Option<bool> {
    let bits = bit_length(y.unsigned_abs());
    let h = (bits + ALT_HORIZON_MARGIN).clamp(ALT_HORIZON_FLOOR, MAX_EXPONENT - DEFAULT_TAIL_SPAN);
    if h < bits + 2 {
        return None;
    }
    let hit = |b: i64| y.checked_sub(b).is_some_and(|a| current.contains(a));
    if shifts(h, signed).any(hit) {
        return Some(true);
    }
    let tail =
        (h + 1..=h + DEFAULT_TAIL_SPAN).all(|k| hit(1i64 << k) || (signed && hit(-(1i64 << k))));
    Some(tail)
}

/// Full decision for removing `s0` from `current` (which must not already exclude it).
pub fn check_removal(current: &impl Membership, s0: i64, partner: &FamilySpec) -> RemovalCheck {
    let signed = *partner == FamilySpec::V;
    let h = bit_length(s0.unsigned_abs()) + REMOVAL_HORIZON_MARGIN + DEFAULT_TAIL_SPAN;
    if h > MAX_EXPONENT {
        return RemovalCheck::Inconclusive;
    }
    let without = |a: i64| a != s0 && current.contains(a);
    for b in shifts(h, signed) {
        let Some(y) = s0.checked_add(b) else {
            return RemovalCheck::Inconclusive;
        };
        match still_covered(&without, y, signed) {
            Some(true) => {}
            Some(false) => return RemovalCheck::Lost(y),
            None => return RemovalCheck::Inconclusive,
        }
    }
    RemovalCheck::Safe
}

/// True only when every affected target is re-covered without `s0`.
pub fn removal_is_certified_safe(
    current: &impl Membership,
    s0: i64,
    partner: &FamilySpec,
) -> Result<bool> {
    if !current.contains(s0) {
        return Err(precondition(format!("{s0} is not in the current set")));
    }
    Ok(check_removal(current, s0, partner) == RemovalCheck::Safe)
}

/// Processes the first `budget` elements of `base` in order of increasing magnitude.
pub fn refine_greedy(
    base: &FamilySpec,
    partner: &FamilySpec,
    budget: usize,
    w: IntegerWindow,
) -> Result<RefinementResult> {
    let b = base_of(base)?;
    if *partner != b.partner() {
        return Err(precondition(format!(
            "{base} is refined against {}, not {partner}",
            b.partner()
        )));
    }
    let order = base_prefix(b, budget)?;
    if let Some(x) = order.iter().find(|&&x| !w.contains(x)) {
        return Err(precondition(format!(
            "element {x} of the first {budget} lies outside {w}"
        )));
    }
    let mut removed = BTreeSet::new();
    let mut retained = Vec::new();
    let mut flagged = Vec::new();
    for s0 in order {
        let current = |a: i64| base.member(a) && !removed.contains(&a);
        match check_removal(&current, s0, partner) {
            RemovalCheck::Safe => {
                removed.insert(s0);
            }
            RemovalCheck::Lost(_) => retained.push(s0),
            RemovalCheck::Inconclusive => {
                retained.push(s0);
                flagged.push(s0);
            }
        }
    }
    retained.sort_unstable();
    Ok(RefinementResult {
        base: base.clone(),
        partner: partner.clone(),
        retained,
        removed: removed.into_iter().collect(),
        budget,
        certification: Certification::WindowTail,
        flagged,
    })
}

/// Refinement on the smallest symmetric window holding the prefix.
pub fn refine_greedy_default(base: Base, budget: usize) -> Result<RefinementResult> {
    let reach = base_prefix(base, budget)?
        .last()
        .map_or(1, |x| x.unsigned_abs() as i64);
    refine_greedy(
        &base.spec(),
        &base.partner(),
        budget,
        IntegerWindow::new(-reach, reach)?,
    )
}
