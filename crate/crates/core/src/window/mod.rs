//! Exact finite set arithmetic over integer intervals and boxes.

pub(crate) mod bits;
mod lattice;

pub use lattice::{LatticeSet, LatticeSetJson, LatticeWindow};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, precondition};
use bits::{WORD, clear_tail, or_bits, valid_mask, words_for};

/// Largest number of points a single window may hold.
pub const MAX_WIDTH: u128 = 1 << 36;

/// Closed interval `[lo, hi]` of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct IntegerWindow {
    lo: i64,
    hi: i64,
}

impl TryFrom<[i64; 2]> for IntegerWindow {
    type Error = Error;
    fn try_from(v: [i64; 2]) -> Result<Self> {
        IntegerWindow::new(v[0], v[1])
    }
}

impl From<IntegerWindow> for [i64; 2] {
    fn from(w: IntegerWindow) -> Self {
        [w.lo, w.hi]
    }
}

impl IntegerWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        let width = (hi as i128 - lo as i128 + 1) as u128;
        if width > MAX_WIDTH {
            return Err(Error::WindowTooWide(width));
        }
        Ok(IntegerWindow { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo) as usize + 1
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_window(&self, other: &IntegerWindow) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &IntegerWindow) -> Result<IntegerWindow> {
        IntegerWindow::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &IntegerWindow) -> Option<IntegerWindow> {
        let (lo, hi) = (self.lo.max(other.lo), self.hi.min(other.hi));
        (lo <= hi).then_some(IntegerWindow { lo, hi })
    }

    pub fn shift(&self, c: i64) -> Result<IntegerWindow> {
        let lo = self
            .lo
            .checked_add(c)
            .ok_or(Error::Overflow("window shift"))?;
        let hi = self
            .hi
            .checked_add(c)
            .ok_or(Error::Overflow("window shift"))?;
        Ok(IntegerWindow { lo, hi })
    }

    pub fn reflect(&self) -> Result<IntegerWindow> {
        let lo = self
            .hi
            .checked_neg()
            .ok_or(Error::Overflow("window reflection"))?;
        let hi = self
            .lo
            .checked_neg()
            .ok_or(Error::Overflow("window reflection"))?;
        Ok(IntegerWindow { lo, hi })
    }

    /// Minkowski sum `[lo1+lo2, hi1+hi2]`.
    pub fn sum(&self, other: &IntegerWindow) -> Result<IntegerWindow> {
        let lo = self
            .lo
            .checked_add(other.lo)
            .ok_or(Error::Overflow("window sum"))?;
        let hi = self
            .hi
            .checked_add(other.hi)
            .ok_or(Error::Overflow("window sum"))?;
        IntegerWindow::new(lo, hi)
    }

    /// Central half: trims a quarter of the width (rounded down) from each side.
    pub fn middle_half(&self) -> IntegerWindow {
        let q = (self.width() / 4) as i64;
        IntegerWindow {
            lo: self.lo + q,
            hi: self.hi - q,
        }
    }

    /// Scales the distances from the centre by `factor`.
    pub fn dilate(&self, factor: i64) -> Result<IntegerWindow> {
        let c = (self.lo as i128 + self.hi as i128).div_euclid(2);
        let lo = c - (c - self.lo as i128) * factor as i128;
        let hi = c + (self.hi as i128 - c) * factor as i128;
        let lo = i64::try_from(lo).map_err(|_| Error::Overflow("window dilation"))?;
        let hi = i64::try_from(hi).map_err(|_| Error::Overflow("window dilation"))?;
        IntegerWindow::new(lo, hi)
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl std::fmt::Display for IntegerWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Sub-intervals of a contiguous run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    LeftHalf,
    RightHalf,
    Q1,
    Q2,
    Q3,
    Q4,
}

/// Dense membership bitset over an [`IntegerWindow`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindowedSet {
    window: IntegerWindow,
    bits: Vec<u64>,
}

impl WindowedSet {
    pub fn empty(window: IntegerWindow) -> Self {
        WindowedSet {
            window,
            bits: vec![0; words_for(window.width())],
        }
    }

    pub fn full(window: IntegerWindow) -> Self {
        let mut bits = vec![u64::MAX; words_for(window.width())];
        clear_tail(&mut bits, window.width());
        WindowedSet { window, bits }
    }

    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        Ok(Self::full(IntegerWindow::new(lo, hi)?))
    }

    pub fn from_elements<I: IntoIterator<Item = i64>>(
        window: IntegerWindow,
        elements: I,
    ) -> Result<Self> {
        let mut s = Self::empty(window);
        for x in elements {
            if !window.contains(x) {
                return Err(Error::OutOfWindow {
                    x,
                    lo: window.lo,
                    hi: window.hi,
                });
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Elements of `elements` inside `window`; the rest are dropped.
    pub fn from_clipped<I: IntoIterator<Item = i64>>(window: IntegerWindow, elements: I) -> Self {
        let mut s = Self::empty(window);
        for x in elements {
            if window.contains(x) {
                s.insert(x);
            }
        }
        s
    }

    /// Builds the set by testing every point of the window.
    pub fn from_predicate(window: IntegerWindow, mut pred: impl FnMut(i64) -> bool) -> Self {
        let mut s = Self::empty(window);
        for x in window.iter() {
            if pred(x) {
                s.insert(x);
            }
        }
        s
    }

    /// Smallest window holding all elements (`[0,0]` with no elements if empty).
    pub fn from_sorted_tight(elements: &[i64]) -> Result<Self> {
        match (elements.first(), elements.last()) {
            (Some(&lo), Some(&hi)) => {
                Self::from_elements(IntegerWindow::new(lo, hi)?, elements.iter().copied())
            }
            _ => Ok(Self::empty(IntegerWindow { lo: 0, hi: 0 })),
        }
    }

    pub(crate) fn from_raw(window: IntegerWindow, mut bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(window.width()));
        clear_tail(&mut bits, window.width());
        WindowedSet { window, bits }
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.bits
    }

    pub(crate) fn insert(&mut self, x: i64) {
        let i = (x - self.window.lo) as usize;
        self.bits[i / WORD] |= 1 << (i % WORD);
    }

    pub(crate) fn remove(&mut self, x: i64) {
        if self.window.contains(x) {
            let i = (x - self.window.lo) as usize;
            self.bits[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub(crate) fn set_range(&mut self, lo: i64, hi: i64) {
        if lo > hi {
            return;
        }
        let Some(r) = self.window.intersect(&IntegerWindow { lo, hi }) else {
            return;
        };
        let ones = vec![u64::MAX; words_for(r.width())];
        or_bits(
            &mut self.bits,
            (r.lo - self.window.lo) as usize,
            &ones,
            0,
            r.width(),
        );
    }

    /// ORs the members of `other` that fall inside this window.
    pub(crate) fn or_from(&mut self, other: &WindowedSet) {
        if let Some(common) = self.window.intersect(&other.window) {
            or_bits(
                &mut self.bits,
                (common.lo - self.window.lo) as usize,
                &other.bits,
                (common.lo - other.window.lo) as usize,
                common.width(),
            );
        }
    }

    pub fn window(&self) -> IntegerWindow {
        self.window
    }

    pub fn contains(&self, x: i64) -> bool {
        if !self.window.contains(x) {
            return false;
        }
        let i = (x - self.window.lo) as usize;
        self.bits[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Ascending element iterator.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let lo = self.window.lo;
        self.bits.iter().enumerate().flat_map(move |(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(lo + (wi * WORD + t) as i64)
            })
        })
    }

    pub fn elements(&self) -> Vec<i64> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<i64> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<i64> {
        let lo = self.window.lo;
        self.bits
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(wi, w)| lo + (wi * WORD + 63 - w.leading_zeros() as usize) as i64)
    }

    /// Maximal runs of consecutive members as `(start, len)`.
    pub fn runs(&self) -> Vec<(i64, u64)> {
        let mut out: Vec<(i64, u64)> = Vec::new();
        for x in self.iter() {
            match out.last_mut() {
                Some((s, l)) if *s + *l as i64 == x => *l += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn from_runs(window: IntegerWindow, runs: &[(i64, u64)]) -> Result<Self> {
        let mut s = Self::empty(window);
        for &(start, len) in runs {
            if len == 0 {
                continue;
            }
            let end = start
                .checked_add(len as i64 - 1)
                .ok_or(Error::Overflow("run length"))?;
            for x in [start, end] {
                if !window.contains(x) {
                    return Err(Error::OutOfWindow {
                        x,
                        lo: window.lo,
                        hi: window.hi,
                    });
                }
            }
            s.set_range(start, end);
        }
        Ok(s)
    }

    /// The same members viewed on another window (members outside it are dropped).
    pub fn rewindow(&self, window: IntegerWindow) -> WindowedSet {
        let mut out = WindowedSet::empty(window);
        if let Some(common) = self.window.intersect(&window) {
            or_bits(
                &mut out.bits,
                (common.lo - window.lo) as usize,
                &self.bits,
                (common.lo - self.window.lo) as usize,
                common.width(),
            );
        }
        out
    }

    /// Members inside `window`, on that window.
    pub fn restrict(&self, window: IntegerWindow) -> WindowedSet {
        self.rewindow(window)
    }

    pub fn shift(&self, c: i64) -> Result<WindowedSet> {
        Ok(WindowedSet {
            window: self.window.shift(c)?,
            bits: self.bits.clone(),
        })
    }

    pub fn negate(&self) -> Result<WindowedSet> {
        let window = self.window.reflect()?;
        let width = self.window.width();
        let rev: Vec<u64> = self.bits.iter().rev().map(|w| w.reverse_bits()).collect();
        let pad = rev.len() * WORD - width;
        let mut bits = vec![0; rev.len()];
        or_bits(&mut bits, 0, &rev, pad, width);
        Ok(WindowedSet { window, bits })
    }

    fn combine(&self, other: &WindowedSet, op: impl Fn(u64, u64) -> u64) -> Result<WindowedSet> {
        let hull = self.window.hull(&other.window)?;
        let mut a = self.rewindow(hull);
        let b = other.rewindow(hull);
        for (x, y) in a.bits.iter_mut().zip(&b.bits) {
            *x = op(*x, *y);
        }
        clear_tail(&mut a.bits, hull.width());
        Ok(a)
    }

    pub fn union(&self, other: &WindowedSet) -> Result<WindowedSet> {
        self.combine(other, |x, y| x | y)
    }

    pub fn intersect(&self, other: &WindowedSet) -> Result<WindowedSet> {
        self.combine(other, |x, y| x & y)
    }

    pub fn difference(&self, other: &WindowedSet) -> Result<WindowedSet> {
        self.combine(other, |x, y| x & !y)
    }

    pub fn is_subset(&self, other: &WindowedSet) -> bool {
        let Some(common) = self.window.intersect(&other.window) else {
            return self.is_empty();
        };
        if self.restrict(common).len() != self.len() {
            return false;
        }
        let mine = self.restrict(common);
        let theirs = other.restrict(common);
        mine.bits.iter().zip(&theirs.bits).all(|(x, y)| x & !y == 0)
    }

    /// Same members, regardless of windows.
    pub fn same_members(&self, other: &WindowedSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    /// True when the members form one contiguous run.
    pub fn is_interval(&self) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => self.len() as i64 == hi - lo + 1,
            _ => false,
        }
    }

    /// A half or quarter of a contiguous run `{a..b}`.
    pub fn half_or_quarter(&self, which: Part) -> Result<WindowedSet> {
        if !self.is_interval() {
            return Err(precondition(
                "halves and quarters need a nonempty contiguous run",
            ));
        }
        let (a, b) = (self.min().unwrap(), self.max().unwrap());
        let (lo, hi) = part_bounds(a, b, which)?;
        WindowedSet::interval(lo, hi)
    }

    pub fn count_in(&self, window: IntegerWindow) -> usize {
        self.restrict(window).len()
    }

    /// True when every point of `window` is a member.
    pub fn covers(&self, window: IntegerWindow) -> bool {
        self.window.contains_window(&window) && self.count_in(window) == window.width()
    }

    /// Smallest point of `window` that is not a member.
    pub fn first_gap(&self, window: IntegerWindow) -> Option<i64> {
        let view = self.rewindow(window);
        for (wi, &w) in view.bits.iter().enumerate() {
            let missing = !w & valid_mask(window.width(), wi);
            if missing != 0 {
                return Some(window.lo + (wi * WORD + missing.trailing_zeros() as usize) as i64);
            }
        }
        None
    }

    pub fn to_json(&self) -> SetJson {
        SetJson::Elements {
            window: self.window,
            elements: self.elements(),
        }
    }

    pub fn to_runs_json(&self) -> SetJson {
        SetJson::Runs {
            window: self.window,
            runs: self.runs(),
        }
    }
}

/// Bounds of a half or quarter of `{a..b}`.
pub fn part_bounds(a: i64, b: i64, which: Part) -> Result<(i64, i64)> {
    let len = b - a + 1;
    let need = match which {
        Part::LeftHalf | Part::RightHalf => 2,
        _ => 4,
    };
    if len <= 0 || len % need != 0 {
        return Err(precondition(format!(
            "run of length {len} does not split into {need} equal parts"
        )));
    }
    let (h, q) = (len / 2, len / 4);
    Ok(match which {
        Part::LeftHalf => (a, a + h - 1),
        Part::RightHalf => (a + h, b),
        Part::Q1 => (a, a + q - 1),
        Part::Q2 => (a + q, a + 2 * q - 1),
        Part::Q3 => (a + 2 * q, a + 3 * q - 1),
        Part::Q4 => (a + 3 * q, b),
    })
}

/// Wire forms of a [`WindowedSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetJson {
    Elements {
        window: IntegerWindow,
        elements: Vec<i64>,
    },
    Runs {
        window: IntegerWindow,
        runs: Vec<(i64, u64)>,
    },
}

impl TryFrom<SetJson> for WindowedSet {
    type Error = Error;
    fn try_from(j: SetJson) -> Result<Self> {
        match j {
            SetJson::Elements { window, elements } => WindowedSet::from_elements(window, elements),
            SetJson::Runs { window, runs } => WindowedSet::from_runs(window, &runs),
        }
    }
}

impl Serialize for WindowedSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WindowedSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SetJson::deserialize(d)?;
        WindowedSet::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(lo: i64, hi: i64) -> IntegerWindow {
        IntegerWindow::new(lo, hi).unwrap()
    }

    fn set(lo: i64, hi: i64, xs: &[i64]) -> WindowedSet {
        WindowedSet::from_elements(w(lo, hi), xs.iter().copied()).unwrap()
    }

    #[test]
    fn shift_translates_window_and_members() {
        let s = set(1, 3, &[1, 3]).shift(-17).unwrap();
        assert_eq!(s.window(), w(-16, -14));
        assert_eq!(s.elements(), vec![-16, -14]);
        let e = WindowedSet::empty(w(0, 0)).shift(5).unwrap();
        assert_eq!(e.window(), w(5, 5));
        assert!(e.is_empty());
    }

    #[test]
    fn shift_overflow_is_reported() {
        let s = set(i64::MAX - 1, i64::MAX, &[i64::MAX]);
        assert_eq!(s.shift(1), Err(Error::Overflow("window shift")));
    }

    #[test]
    fn negate_reflects() {
        assert_eq!(
            set(-2, -1, &[-2, -1]).negate().unwrap().elements(),
            vec![1, 2]
        );
        assert_eq!(set(0, 0, &[0]).negate().unwrap().elements(), vec![0]);
        let n = set(-3, 70, &[-3, 0, 5, 64, 70]).negate().unwrap();
        assert_eq!(n.window(), w(-70, 3));
        assert_eq!(n.elements(), vec![-70, -64, -5, 0, 3]);
    }

    #[test]
    fn set_algebra_examples() {
        let a = set(-16, -9, &[-15, -10]);
        let script = WindowedSet::interval(-16, -9).unwrap();
        assert_eq!(a.intersect(&script).unwrap().elements(), vec![-15, -10]);
        assert_eq!(
            set(1, 3, &[1, 2, 3])
                .difference(&set(2, 2, &[2]))
                .unwrap()
                .elements(),
            vec![1, 3]
        );
        assert!(WindowedSet::empty(w(0, 0)).is_subset(&set(5, 9, &[7])));
        assert!(!set(0, 10, &[10]).is_subset(&set(0, 5, &[1])));
    }

    #[test]
    fn halves_and_quarters() {
        let s = WindowedSet::interval(1, 8).unwrap();
        assert_eq!(
            s.half_or_quarter(Part::LeftHalf).unwrap().elements(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(s.half_or_quarter(Part::Q2).unwrap().elements(), vec![3, 4]);
        let i3 = WindowedSet::interval(-16, -9).unwrap();
        assert_eq!(
            i3.half_or_quarter(Part::RightHalf).unwrap().elements(),
            vec![-12, -11, -10, -9]
        );
        assert!(
            WindowedSet::interval(1, 6)
                .unwrap()
                .half_or_quarter(Part::Q1)
                .is_err()
        );
        assert!(
            WindowedSet::interval(1, 7)
                .unwrap()
                .half_or_quarter(Part::LeftHalf)
                .is_err()
        );
        assert!(set(1, 4, &[1, 3]).half_or_quarter(Part::LeftHalf).is_err());
    }

    #[test]
    fn json_forms_round_trip() {
        let s = set(-5, 200, &[-5, -4, -3, 7, 128, 129, 200]);
        for j in [s.to_json(), s.to_runs_json()] {
            let text = serde_json::to_string(&j).unwrap();
            let back: WindowedSet = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
        }
        assert_eq!(
            serde_json::to_string(&s.to_runs_json()).unwrap(),
            r#"{"window":[-5,200],"runs":[[-5,3],[7,1],[128,2],[200,1]]}"#
        );
        assert!(serde_json::from_str::<WindowedSet>(r#"{"window":[0,3],"elements":[4]}"#).is_err());
        assert!(serde_json::from_str::<WindowedSet>(r#"{"window":[3,0],"elements":[]}"#).is_err());
    }

    #[test]
    fn window_helpers() {
        assert_eq!(w(-64, 64).middle_half(), w(-32, 32));
        assert_eq!(w(-64, 64).dilate(2).unwrap(), w(-128, 128));
        assert_eq!(w(0, 10).dilate(1).unwrap(), w(0, 10));
        assert!(IntegerWindow::new(0, 1 << 40).is_err());
        assert_eq!(set(0, 200, &[0, 1, 199]).first_gap(w(0, 200)), Some(2));
        assert_eq!(
            WindowedSet::interval(0, 200).unwrap().first_gap(w(3, 150)),
            None
        );
        assert_eq!(set(0, 200, &[5, 130]).max(), Some(130));
    }

    fn arb_set() -> impl Strategy<Value = (i64, i64, BTreeSet<i64>)> {
        (-300i64..300, 0i64..400).prop_flat_map(|(lo, len)| {
            let hi = lo + len;
            (
                Just(lo),
                Just(hi),
                proptest::collection::btree_set(lo..=hi, 0..60),
            )
        })
    }

    proptest! {
        #[test]
        fn shift_round_trip((lo, hi, xs) in arb_set(), c in -1000i64..1000) {
            let s = WindowedSet::from_elements(w(lo, hi), xs).unwrap();
            prop_assert_eq!(s.shift(c).unwrap().shift(-c).unwrap(), s);
        }

        #[test]
        fn negate_involution((lo, hi, xs) in arb_set()) {
            let s = WindowedSet::from_elements(w(lo, hi), xs.iter().copied()).unwrap();
            let n = s.negate().unwrap();
            prop_assert_eq!(n.negate().unwrap(), s);
            prop_assert_eq!(n.elements(), xs.iter().rev().map(|x| -x).collect::<Vec<_>>());
        }

        #[test]
        fn quarters_partition(a in -500i64..500, k in 1i64..50) {
            let s = WindowedSet::interval(a, a + 4 * k - 1).unwrap();
            let parts: Vec<_> = [Part::Q1, Part::Q2, Part::Q3, Part::Q4, Part::LeftHalf, Part::RightHalf]
                .iter().map(|&p| s.half_or_quarter(p).unwrap()).collect();
            prop_assert!(parts[0].union(&parts[1]).unwrap().same_members(&parts[4]));
            prop_assert!(parts[2].union(&parts[3]).unwrap().same_members(&parts[5]));
            let total: usize = parts[..4].iter().map(|p| p.len()).sum();
            prop_assert_eq!(total, s.len());
            let all = parts[..4].iter().fold(WindowedSet::empty(s.window()), |acc, p| acc.union(p).unwrap());
            prop_assert!(all.same_members(&s));
        }

        #[test]
        fn algebra_matches_sorted_lists((l1, h1, x1) in arb_set(), (l2, h2, x2) in arb_set()) {
            let a = WindowedSet::from_elements(w(l1, h1), x1.iter().copied()).unwrap();
            let b = WindowedSet::from_elements(w(l2, h2), x2.iter().copied()).unwrap();
            let u: Vec<i64> = x1.union(&x2).copied().collect();
            let i: Vec<i64> = x1.intersection(&x2).copied().collect();
            let d: Vec<i64> = x1.difference(&x2).copied().collect();
            prop_assert_eq!(a.union(&b).unwrap().elements(), u);
            prop_assert_eq!(a.intersect(&b).unwrap().elements(), i);
            prop_assert_eq!(a.difference(&b).unwrap().elements(), d);
            prop_assert_eq!(a.is_subset(&b), x1.is_subset(&x2));
            prop_assert_eq!(a.runs().iter().map(|r| r.1 as usize).sum::<usize>(), x1.len());
        }
    }
}
