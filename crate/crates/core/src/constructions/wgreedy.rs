use std::collections::HashSet;

use crate::error::{Error, Result, precondition};
use crate::window::{IntegerWindow, WindowedSet};

/// Symmetric 3AP-free set whose sumset with itself covers the middle half of `w`.
///
/// Candidates are scanned as pairs `{-m, m}` for `m = 1, 2, …`; a pair is added when it
/// covers some uncovered middle-half target and keeps the set free of progressions.
/// Zero is never a candidate: with `0` present every pair `±m` forms `(-m, 0, m)`.
pub fn gen_w_greedy(w: IntegerWindow) -> Result<WindowedSet> {
    if w.lo().checked_neg() != Some(w.hi()) {
        return Err(precondition(format!(
            "W needs a window symmetric around 0, got {w}"
        )));
    }
    if w.width() < 8 {
        return Err(precondition("W needs a window of width at least 8"));
    }
    let target = w.middle_half();
    let mut covered = WindowedSet::empty(target);
    let mut members: Vec<i64> = Vec::new();
    let mut lookup: HashSet<i64> = HashSet::new();

    for m in 1..=w.hi() {
        let pair = [-m, m];
        let mut gains = false;
        for &x in &pair {
            for &y in members.iter().chain(&pair) {
                let s = x + y;
                if target.contains(s) && !covered.contains(s) {
                    gains = true;
                }
            }
        }
        if !gains || creates_progression(&lookup, &members, &pair) {
            continue;
        }
        for &x in &pair {
            members.push(x);
            lookup.insert(x);
        }
        for &x in &pair {
            for &y in &members {
                if target.contains(x + y) {
                    covered.insert(x + y);
                }
            }
        }
        if covered.len() == target.width() {
            break;
        }
    }

    if let Some(y) = covered.first_gap(target) {
        return Err(Error::Construction(format!(
            "greedy W leaves {y} uncovered in {target}"
        )));
    }
    WindowedSet::from_elements(w, members)
}

/// True if adding `new` to `members` creates a nontrivial solution of `a + c = 2b`.
fn creates_progression(lookup: &HashSet<i64>, members: &[i64], new: &[i64]) -> bool {
    let has = |v: i64| lookup.contains(&v) || new.contains(&v);
    let all: Vec<i64> = members.iter().chain(new).copied().collect();
    for &x in new {
        for &a in &all {
            if a == x {
                continue;
            }
            if (x + a) % 2 == 0 && has((x + a) / 2) {
                return true;
            }
            if has(2 * x - a) {
                return true;
            }
        }
    }
    false
}
