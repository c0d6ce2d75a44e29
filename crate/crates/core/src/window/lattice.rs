use serde::{Deserialize, Serialize};

use super::{IntegerWindow, WindowedSet};
use crate::error::{Error, Result, precondition};

/// Axis-aligned box in ℤ^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<IntegerWindow>", into = "Vec<IntegerWindow>")]
pub struct LatticeWindow {
    dims: Vec<IntegerWindow>,
}

impl TryFrom<Vec<IntegerWindow>> for LatticeWindow {
    type Error = Error;
    fn try_from(dims: Vec<IntegerWindow>) -> Result<Self> {
        LatticeWindow::new(dims)
    }
}

impl From<LatticeWindow> for Vec<IntegerWindow> {
    fn from(w: LatticeWindow) -> Self {
        w.dims
    }
}

impl LatticeWindow {
    pub fn new(dims: Vec<IntegerWindow>) -> Result<Self> {
        if dims.is_empty() {
            return Err(precondition("a lattice window needs at least one axis"));
        }
        Ok(LatticeWindow { dims })
    }

    /// The cube `[lo, hi]^d`.
    pub fn cube(d: usize, lo: i64, hi: i64) -> Result<Self> {
        LatticeWindow::new(vec![IntegerWindow::new(lo, hi)?; d])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn axes(&self) -> &[IntegerWindow] {
        &self.dims
    }

    pub fn axis(&self, i: usize) -> IntegerWindow {
        self.dims[i]
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dims.len() && self.dims.iter().zip(p).all(|(w, &x)| w.contains(x))
    }

    pub fn volume(&self) -> u128 {
        self.dims.iter().map(|w| w.width() as u128).product()
    }

    pub fn middle_half(&self) -> LatticeWindow {
        LatticeWindow {
            dims: self.dims.iter().map(|w| w.middle_half()).collect(),
        }
    }

    pub fn dilate(&self, factor: i64) -> Result<LatticeWindow> {
        Ok(LatticeWindow {
            dims: self
                .dims
                .iter()
                .map(|w| w.dilate(factor))
                .collect::<Result<_>>()?,
        })
    }

    pub fn hull(&self, other: &LatticeWindow) -> Result<LatticeWindow> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        Ok(LatticeWindow {
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a.hull(b))
                .collect::<Result<_>>()?,
        })
    }

    /// Concatenates the axes of two boxes.
    pub fn concat(&self, other: &LatticeWindow) -> LatticeWindow {
        LatticeWindow {
            dims: self.dims.iter().chain(&other.dims).copied().collect(),
        }
    }

    /// Dense row-major index of `p` (which must lie inside the box).
    pub fn index_of(&self, p: &[i64]) -> usize {
        let mut idx = 0usize;
        for (w, &x) in self.dims.iter().zip(p) {
            idx = idx * w.width() + (x - w.lo()) as usize;
        }
        idx
    }

    pub fn point_at(&self, mut idx: usize) -> Vec<i64> {
        let mut p = vec![0; self.dims.len()];
        for (i, w) in self.dims.iter().enumerate().rev() {
            p[i] = w.lo() + (idx % w.width()) as i64;
            idx /= w.width();
        }
        p
    }
}

impl std::fmt::Display for LatticeWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|w| format!("{}..{}", w.lo(), w.hi()))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Finite subset of a box in ℤ^d, stored as lexicographically sorted points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    window: LatticeWindow,
    coords: Vec<i64>,
}

impl LatticeSet {
    pub fn empty(window: LatticeWindow) -> Self {
        LatticeSet {
            window,
            coords: Vec::new(),
        }
    }

    pub fn new<I, P>(window: LatticeWindow, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[i64]>,
    {
        let d = window.dim();
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for p in points {
            let p = p.as_ref();
            if p.len() != d {
                return Err(Error::Dimension(d, p.len()));
            }
            if !window.contains(p) {
                return Err(precondition(format!(
                    "point {p:?} lies outside box {window}"
                )));
            }
            pts.push(p.to_vec());
        }
        pts.sort_unstable();
        pts.dedup();
        Ok(LatticeSet {
            window,
            coords: pts.concat(),
        })
    }

    /// Points inside `window`; the rest are dropped.
    pub fn new_clipped<I, P>(window: LatticeWindow, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[i64]>,
    {
        let kept: Vec<Vec<i64>> = points
            .into_iter()
            .filter(|p| window.contains(p.as_ref()))
            .map(|p| p.as_ref().to_vec())
            .collect();
        LatticeSet::new(window, kept)
    }

    /// Cartesian product of one-dimensional sets, in axis order.
    pub fn product_of(factors: &[&WindowedSet]) -> Result<Self> {
        let window = LatticeWindow::new(factors.iter().map(|f| f.window()).collect())?;
        let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
        for f in factors {
            let elems = f.elements();
            pts = pts
                .iter()
                .flat_map(|p| {
                    elems.iter().map(move |&x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        // Product order is already lexicographic.
        Ok(LatticeSet {
            window,
            coords: pts.concat(),
        })
    }

    /// Cartesian product of lattice sets, axes concatenated.
    pub fn product(&self, other: &LatticeSet) -> LatticeSet {
        let window = self.window.concat(&other.window);
        let mut coords = Vec::with_capacity(self.len() * other.len() * window.dim());
        for p in self.points() {
            for q in other.points() {
                coords.extend_from_slice(p);
                coords.extend_from_slice(q);
            }
        }
        LatticeSet { window, coords }
    }

    pub fn window(&self) -> &LatticeWindow {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn points(&self) -> std::slice::ChunksExact<'_, i64> {
        self.coords.chunks_exact(self.dim())
    }

    pub fn point(&self, i: usize) -> &[i64] {
        let d = self.dim();
        &self.coords[i * d..(i + 1) * d]
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.position(p).is_some()
    }

    pub fn position(&self, p: &[i64]) -> Option<usize> {
        if p.len() != self.dim() {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Index range of points whose first `depth` coordinates equal `prefix`
    /// restricted to `[start, end)`, and whose coordinate `depth` lies in `[lo, hi]`.
    pub(crate) fn axis_range(
        &self,
        start: usize,
        end: usize,
        depth: usize,
        lo: i64,
        hi: i64,
    ) -> (usize, usize) {
        let key = |i: usize| self.coords[i * self.dim() + depth];
        let first = partition(start, end, |i| key(i) < lo);
        let last = partition(first, end, |i| key(i) <= hi);
        (first, last)
    }

    pub(crate) fn coord(&self, i: usize, axis: usize) -> i64 {
        self.coords[i * self.dim() + axis]
    }

    pub fn restrict(&self, window: &LatticeWindow) -> Result<LatticeSet> {
        LatticeSet::new_clipped(window.clone(), self.points())
    }

    /// Same points, regardless of windows.
    pub fn same_points(&self, other: &LatticeSet) -> bool {
        self.dim() == other.dim() && self.coords == other.coords
    }

    pub fn to_json(&self) -> LatticeSetJson {
        LatticeSetJson {
            dims: self.window.clone(),
            points: self.points().map(|p| p.to_vec()).collect(),
        }
    }
}

fn partition(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSetJson {
    pub dims: LatticeWindow,
    pub points: Vec<Vec<i64>>,
}

impl Serialize for LatticeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LatticeSetJson::deserialize(d)?;
        LatticeSet::new(j.dims, j.points).map_err(serde::de::Error::custom)
    }
}
