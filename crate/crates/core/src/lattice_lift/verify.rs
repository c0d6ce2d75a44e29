use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result, precondition};
use crate::sumset::for_each_pair_in_box;
use crate::verifiers::Certification;
use crate::window::{LatticeSet, LatticeWindow};

/// Witness targets may lie this many times farther out than the checked box.
/// Witnesses for powers of two against U sit up to about 8|x| away.
pub const WITNESS_DILATION: i64 = 8;
const MAX_TARGET_VOLUME: u128 = 1 << 26;
const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWitness {
    pub element: Vec<i64>,
    /// Every representation of this target uses `element`.
    pub target: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// One pass over all pairs in the dilated box.
    Direct,
    /// Product of independent factor checks.
    Factorwise,
}

/// Co-minimality of `(a, b)` checked on the middle half of `window`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePairReport {
    pub sigma: Option<IntMatrix>,
    /// The checked box; `a` and `b` are restricted to it.
    pub window: LatticeWindow,
    pub a: crate::window::LatticeSetJson,
    pub b: crate::window::LatticeSetJson,
    pub coverage_ok: bool,
    pub first_uncovered: Option<Vec<i64>>,
    pub a_witnesses: Vec<LatticeWitness>,
    pub b_witnesses: Vec<LatticeWitness>,
    /// Elements in the middle half with no witness target inside the dilated box.
    pub a_missing: Vec<Vec<i64>>,
    pub b_missing: Vec<Vec<i64>>,
    pub certification: Certification,
    pub method: Method,
}

impl LatticePairReport {
    pub fn minimality_ok(&self) -> bool {
        self.a_missing.is_empty() && self.b_missing.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.coverage_ok && self.minimality_ok()
    }
}

/// Per target: which element of each side its first representation used, and
/// whether a later representation used a different one.
struct Usage {
    first_a: Vec<u32>,
    first_b: Vec<u32>,
    mixed_a: Vec<bool>,
    mixed_b: Vec<bool>,
}

fn tally(a: &LatticeSet, b: &LatticeSet, region: &LatticeWindow) -> Result<Usage> {
    let vol = region.volume();
    if vol > MAX_TARGET_VOLUME {
        return Err(precondition(format!(
            "target box {region} is too large for a dense tally"
        )));
    }
    if a.len() >= NONE as usize || b.len() >= NONE as usize {
        return Err(precondition("too many points for a dense tally"));
    }
    let vol = vol as usize;
    let mut u = Usage {
        first_a: vec![NONE; vol],
        first_b: vec![NONE; vol],
        mixed_a: vec![false; vol],
        mixed_b: vec![false; vol],
    };
    let mut t = vec![0i64; region.dim()];
    for_each_pair_in_box(a, b, region, |i, j| {
        for (k, (x, y)) in a.point(i).iter().zip(b.point(j)).enumerate() {
            t[k] = x + y;
        }
        let idx = region.index_of(&t);
        let (i, j) = (i as u32, j as u32);
        if u.first_a[idx] == NONE {
            u.first_a[idx] = i;
            u.first_b[idx] = j;
        } else {
            u.mixed_a[idx] |= u.first_a[idx] != i;
            u.mixed_b[idx] |= u.first_b[idx] != j;
        }
    });
    Ok(u)
}

fn point_add(p: &[i64], q: &[i64]) -> Vec<i64> {
    p.iter().zip(q).map(|(x, y)| x + y).collect()
}

fn middle_points(w: &LatticeWindow) -> impl Iterator<Item = Vec<i64>> + '_ {
    (0..w.volume() as usize).map(|i| w.point_at(i))
}

/// Coverage of the middle half and a lost target for every element there.
///
/// `a` and `b` must already contain everything relevant to the dilated box;
/// points beyond their windows are simply absent, so the verdict is window-only.
pub fn verify_cominimal_lattice(
    a: &LatticeSet,
    b: &LatticeSet,
    window: &LatticeWindow,
) -> Result<LatticePairReport> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(a.dim(), b.dim()));
    }
    if a.dim() != window.dim() {
        return Err(Error::Dimension(a.dim(), window.dim()));
    }
    let region = window.dilate(WITNESS_DILATION)?;
    let mid = window.middle_half();
    let u = tally(a, b, &region)?;
    let first_uncovered = middle_points(&mid).find(|p| u.first_a[region.index_of(p)] == NONE);

    let side = |own: &LatticeSet, other: &LatticeSet, first: &[u32], mixed: &[bool]| {
        let mut found = Vec::new();
        let mut missing = Vec::new();
        for (i, p) in own.points().enumerate() {
            if !mid.contains(p) {
                continue;
            }
            let hit = other.points().map(|q| point_add(p, q)).find(|t| {
                region.contains(t) && {
                    let idx = region.index_of(t);
                    first[idx] == i as u32 && !mixed[idx]
                }
            });
            match hit {
                Some(t) => found.push(LatticeWitness {
                    element: p.to_vec(),
                    target: t,
                }),
                None => missing.push(p.to_vec()),
            }
        }
        (found, missing)
    };
    let (a_witnesses, a_missing) = side(a, b, &u.first_a, &u.mixed_a);
    let (b_witnesses, b_missing) = side(b, a, &u.first_b, &u.mixed_b);
    Ok(LatticePairReport {
        sigma: None,
        window: window.clone(),
        a: a.restrict(window)?.to_json(),
        b: b.restrict(window)?.to_json(),
        coverage_ok: first_uncovered.is_none(),
        first_uncovered,
        a_witnesses,
        b_witnesses,
        a_missing,
        b_missing,
        certification: Certification::WindowOnly,
        method: Method::Direct,
    })
}

fn cartesian(lists: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    lists.iter().fold(vec![Vec::new()], |acc, l| {
        acc.iter()
            .flat_map(|p| {
                l.iter().map(move |q| {
                    let mut r = p.clone();
                    r.extend_from_slice(q);
                    r
                })
            })
            .collect()
    })
}

fn merge_witnesses(parts: &[&[LatticeWitness]]) -> Vec<LatticeWitness> {
    parts.iter().fold(
        vec![LatticeWitness {
            element: Vec::new(),
            target: Vec::new(),
        }],
        |acc, ws| {
            acc.iter()
                .flat_map(|w| {
                    ws.iter().map(move |x| {
                        let mut e = w.element.clone();
                        e.extend_from_slice(&x.element);
                        let mut t = w.target.clone();
                        t.extend_from_slice(&x.target);
                        LatticeWitness {
                            element: e,
                            target: t,
                        }
                    })
                })
                .collect()
        },
    )
}

/// Combines reports for `(A_i, B_i)` into one for `(∏ A_i, ∏ B_i)`.
///
/// Representations in a product are products of factor representations, so a
/// target built from factor witnesses is lost exactly when its element is.
pub fn combine_factor_reports(parts: &[LatticePairReport]) -> Result<LatticePairReport> {
    let Some(first) = parts.first() else {
        return Err(precondition("no factors to combine"));
    };
    let mut window = first.window.clone();
    for p in &parts[1..] {
        window = window.concat(&p.window);
    }
    let sets =
        |pick: fn(&LatticePairReport) -> &crate::window::LatticeSetJson| -> Result<LatticeSet> {
            let mut acc: Option<LatticeSet> = None;
            for p in parts {
                let j = pick(p);
                let s = LatticeSet::new(j.dims.clone(), &j.points)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.product(&s),
                });
            }
            Ok(acc.expect("nonempty"))
        };
    let a = sets(|p| &p.a)?;
    let b = sets(|p| &p.b)?;
    let coverage_ok = parts.iter().all(|p| p.coverage_ok);
    let first_uncovered = if coverage_ok {
        None
    } else {
        let pieces: Vec<Vec<Vec<i64>>> = parts
            .iter()
            .map(|p| {
                vec![
                    p.first_uncovered
                        .clone()
                        .unwrap_or_else(|| p.window.middle_half().point_at(0)),
                ]
            })
            .collect();
        cartesian(&pieces).into_iter().next()
    };
    let missing = |get: fn(&LatticePairReport) -> &Vec<LatticeWitness>,
                   miss: fn(&LatticePairReport) -> &Vec<Vec<i64>>| {
        // An element is missing when any of its coordinates blocks is.
        let mut out = Vec::new();
        for k in 0..parts.len() {
            if miss(&parts[k]).is_empty() {
                continue;
            }
            let lists: Vec<Vec<Vec<i64>>> = parts
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    if i == k {
                        miss(p).clone()
                    } else {
                        get(p)
                            .iter()
                            .map(|w| w.element.clone())
                            .chain(miss(p).iter().cloned())
                            .collect()
                    }
                })
                .collect();
            out.extend(cartesian(&lists));
        }
        out.sort();
        out.dedup();
        out
    };
    let a_parts: Vec<&[LatticeWitness]> = parts.iter().map(|p| p.a_witnesses.as_slice()).collect();
    let b_parts: Vec<&[LatticeWitness]> = parts.iter().map(|p| p.b_witnesses.as_slice()).collect();
    Ok(LatticePairReport {
        sigma: None,
        window: window.clone(),
        a: a.to_json(),
        b: b.to_json(),
        coverage_ok,
        first_uncovered,
        a_witnesses: merge_witnesses(&a_parts),
        b_witnesses: merge_witnesses(&b_parts),
        a_missing: missing(|p| &p.a_witnesses, |p| &p.a_missing),
        b_missing: missing(|p| &p.b_witnesses, |p| &p.b_missing),
        certification: Certification::WindowOnly,
        method: Method::Factorwise,
    })
}

/// Every coordinate axis has one strict sign across all points.
pub fn is_in_quadrant(x: &LatticeSet) -> Result<bool> {
    let Some(first) = x.points().next() else {
        return Err(precondition("an empty set lies in no quadrant"));
    };
    let signs: Vec<i64> = first.iter().map(|v| v.signum()).collect();
    if signs.contains(&0) {
        return Ok(false);
    }
    Ok(x.points()
        .all(|p| p.iter().zip(&signs).all(|(v, s)| v.signum() == *s)))
}
