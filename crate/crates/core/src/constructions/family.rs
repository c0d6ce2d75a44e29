use serde::{Deserialize, Serialize};

use super::recurrence::{self as rec, MAX_GEN_INDEX, block_bounds, block_index};
use super::wgreedy::gen_w_greedy;
use crate::error::{Error, Result, precondition};
use crate::window::{IntegerWindow, LatticeSet, LatticeWindow, WindowedSet};

/// Anything with an exact membership test on ℤ.
pub trait Membership {
    fn contains(&self, x: i64) -> bool;
}

impl<F: Fn(i64) -> bool> Membership for F {
    fn contains(&self, x: i64) -> bool {
        self(x)
    }
}

/// The two infinite base families that the greedy refinement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    S,
    U,
}

impl Base {
    pub fn spec(self) -> FamilySpec {
        match self {
            Base::S => FamilySpec::S,
            Base::U => FamilySpec::UAll,
        }
    }

    /// Power-of-two family paired with this base.
    pub fn partner(self) -> FamilySpec {
        match self {
            Base::S => FamilySpec::T,
            Base::U => FamilySpec::V,
        }
    }
}

/// Symbolic handle to a structured subset of ℤ (or of ℤ^d for products).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub enum FamilySpec {
    J(u32),
    K(u32),
    I(u32),
    ScriptI(u32),
    S,
    T,
    U(u32),
    UAll,
    V,
    /// Greedy refinement prefix of S or U: `budget` elements processed, `removed` sorted.
    Refined {
        base: Base,
        budget: usize,
        removed: Vec<i64>,
    },
    /// Symmetric 3AP-free greedy basis on a window.
    WGreedy {
        window: IntegerWindow,
        elements: Vec<i64>,
    },
    /// `base` with finitely many points removed (`removed` sorted).
    Minus {
        base: Box<FamilySpec>,
        removed: Vec<i64>,
    },
    Negated(Box<FamilySpec>),
    Shifted(Box<FamilySpec>, i64),
    Product(Vec<FamilySpec>),
}

/// How the far tail of a family behaves, for representation enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailClass {
    /// Contained in `[lo, hi]`.
    Bounded(i64, i64),
    /// Subset of S: tails are classified empirically.
    SubsetOfS,
    /// Subset of U: reps with `|b| ≥ 2^{n-3} > |y|` are provably absent.
    SubsetOfU,
    Unknown,
}

impl FamilySpec {
    pub fn refined(base: Base, budget: usize) -> Result<FamilySpec> {
        let r = crate::refinement::refine_greedy_default(base, budget)?;
        Ok(FamilySpec::Refined {
            base,
            budget,
            removed: r.removed,
        })
    }

    pub fn w_greedy(window: IntegerWindow) -> Result<FamilySpec> {
        Ok(FamilySpec::WGreedy {
            window,
            elements: gen_w_greedy(window)?.elements(),
        })
    }

    pub fn minus(base: FamilySpec, mut removed: Vec<i64>) -> FamilySpec {
        removed.sort_unstable();
        removed.dedup();
        FamilySpec::Minus {
            base: Box::new(base),
            removed,
        }
    }

    pub fn negated(self) -> FamilySpec {
        FamilySpec::Negated(Box::new(self))
    }

    pub fn shifted(self, c: i64) -> FamilySpec {
        FamilySpec::Shifted(Box::new(self), c)
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilySpec::Product(fs) => fs.iter().map(|f| f.dim()).sum(),
            _ => 1,
        }
    }

    /// Exact membership for one-dimensional families (always false for products).
    pub fn member(&self, x: i64) -> bool {
        match self {
            FamilySpec::J(n) => x >= 1 && rec::in_j(*n, x as i128),
            FamilySpec::K(n) => x >= 1 && rec::in_k(*n, x as i128),
            FamilySpec::I(n) => rec::in_i(*n, x),
            FamilySpec::ScriptI(n) => rec::in_script_i(*n, x),
            FamilySpec::S => rec::in_s(x),
            FamilySpec::T => x > 0 && (x as u64).is_power_of_two(),
            FamilySpec::U(n) => rec::in_u_n(*n, x),
            FamilySpec::UAll => rec::in_u(x),
            FamilySpec::V => x != 0 && x.unsigned_abs().is_power_of_two(),
            FamilySpec::Refined { base, removed, .. } => {
                base.spec().member(x) && removed.binary_search(&x).is_err()
            }
            FamilySpec::WGreedy { elements, .. } => elements.binary_search(&x).is_ok(),
            FamilySpec::Minus { base, removed } => {
                base.member(x) && removed.binary_search(&x).is_err()
            }
            FamilySpec::Negated(b) => x.checked_neg().is_some_and(|y| b.member(y)),
            FamilySpec::Shifted(b, c) => x.checked_sub(*c).is_some_and(|y| b.member(y)),
            FamilySpec::Product(_) => false,
        }
    }

    /// Membership of a point of ℤ^d; one-dimensional families accept 1-tuples.
    pub fn member_point(&self, p: &[i64]) -> bool {
        match self {
            FamilySpec::Product(fs) => {
                if p.len() != self.dim() {
                    return false;
                }
                let mut at = 0;
                fs.iter().all(|f| {
                    let d = f.dim();
                    let ok = f.member_point(&p[at..at + d]);
                    at += d;
                    ok
                })
            }
            _ => p.len() == 1 && self.member(p[0]),
        }
    }

    /// Exactly `self ∩ w`.
    pub fn materialize(&self, w: IntegerWindow) -> Result<WindowedSet> {
        match self {
            FamilySpec::J(n) | FamilySpec::K(n) if *n <= MAX_GEN_INDEX => {
                let g = if matches!(self, FamilySpec::J(_)) {
                    rec::gen_j(*n)?
                } else {
                    rec::gen_k(*n)?
                };
                Ok(g.rewindow(w))
            }
            FamilySpec::I(n) | FamilySpec::ScriptI(n) | FamilySpec::U(n) => {
                let mut out = WindowedSet::empty(w);
                self.materialize_block(*n, &mut out)?;
                Ok(out)
            }
            FamilySpec::S | FamilySpec::UAll => {
                let mut out = WindowedSet::empty(w);
                if w.lo() <= -1 {
                    let hi = block_index(w.hi().min(-1)).unwrap();
                    let lo = block_index(w.lo()).unwrap();
                    for m in hi..=lo {
                        self.materialize_block(m, &mut out)?;
                    }
                }
                Ok(out)
            }
            FamilySpec::T | FamilySpec::V => {
                let mut out = WindowedSet::empty(w);
                for k in 0..63 {
                    let p = 1i64 << k;
                    if w.contains(p) {
                        out.insert(p);
                    }
                    if matches!(self, FamilySpec::V) && w.contains(-p) {
                        out.insert(-p);
                    }
                }
                Ok(out)
            }
            FamilySpec::WGreedy { elements, .. } => {
                Ok(WindowedSet::from_clipped(w, elements.iter().copied()))
            }
            FamilySpec::Refined { base, removed, .. } => {
                let mut out = base.spec().materialize(w)?;
                removed.iter().for_each(|&x| out.remove(x));
                Ok(out)
            }
            FamilySpec::Minus { base, removed } => {
                let mut out = base.materialize(w)?;
                removed.iter().for_each(|&x| out.remove(x));
                Ok(out)
            }
            FamilySpec::Negated(b) => b.materialize(w.reflect()?)?.negate(),
            FamilySpec::Shifted(b, c) => {
                let back = c.checked_neg().ok_or(Error::Overflow("shift"))?;
                b.materialize(w.shift(back)?)?.shift(*c)
            }
            FamilySpec::Product(_) => Err(precondition("products materialize on lattice boxes")),
            _ => Ok(WindowedSet::from_predicate(w, |x| self.member(x))),
        }
    }

    /// ORs `self ∩ block m ∩ out.window` into `out`, for block-structured families.
    fn materialize_block(&self, m: u32, out: &mut WindowedSet) -> Result<()> {
        if m > 62 {
            return Ok(());
        }
        let (blo, bhi) = block_bounds(m);
        let (lo, hi) = (blo.max(out.window().lo()), bhi.min(out.window().hi()));
        if lo > hi {
            return Ok(());
        }
        let part = IntegerWindow::new(lo, hi)?;
        let block_width = (bhi as i128 - blo as i128 + 1) as u128;
        let dense = m <= MAX_GEN_INDEX && block_width <= 4 * part.width() as u128 + 4096;
        let in_block = |x: i64| match self {
            FamilySpec::ScriptI(n) => rec::in_script_i(*n, x),
            FamilySpec::I(n) => rec::in_i(*n, x),
            FamilySpec::U(n) => rec::in_u_n(*n, x),
            FamilySpec::S => rec::in_i(m, x),
            _ => rec::in_u_n(m, x),
        };
        let own_index = match self {
            FamilySpec::ScriptI(n) | FamilySpec::I(n) | FamilySpec::U(n) => *n,
            _ => m,
        };
        if own_index != m {
            return Ok(());
        }
        if dense {
            let g = match self {
                FamilySpec::ScriptI(_) => rec::gen_script_i(m)?,
                FamilySpec::I(_) | FamilySpec::S => rec::gen_i(m)?,
                _ => rec::gen_u(m)?,
            };
            out.or_from(&g);
        } else {
            for x in part.iter() {
                if in_block(x) {
                    out.insert(x);
                }
            }
        }
        Ok(())
    }

    /// Materializes a product (or a one-dimensional family on a 1-axis box).
    pub fn materialize_lattice(&self, b: &LatticeWindow) -> Result<LatticeSet> {
        if b.dim() != self.dim() {
            return Err(Error::Dimension(self.dim(), b.dim()));
        }
        let mut sets = Vec::new();
        self.collect_factors(b.axes(), &mut sets)?;
        LatticeSet::product_of(&sets.iter().collect::<Vec<_>>())
    }

    fn collect_factors(&self, axes: &[IntegerWindow], out: &mut Vec<WindowedSet>) -> Result<()> {
        match self {
            FamilySpec::Product(fs) => {
                let mut at = 0;
                for f in fs {
                    f.collect_factors(&axes[at..at + f.dim()], out)?;
                    at += f.dim();
                }
                Ok(())
            }
            _ => {
                out.push(self.materialize(axes[0])?);
                Ok(())
            }
        }
    }

    /// Smallest interval containing the family, when it is finite.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        match self {
            FamilySpec::J(n) | FamilySpec::K(n) => {
                Some((1, 1i64.checked_shl(*n).filter(|&v| v > 0)?))
            }
            FamilySpec::I(n) | FamilySpec::ScriptI(n) | FamilySpec::U(n) => {
                (*n <= 62).then(|| block_bounds(*n))
            }
            FamilySpec::WGreedy { elements, .. } => match (elements.first(), elements.last()) {
                (Some(&a), Some(&b)) => Some((a, b)),
                _ => Some((0, 0)),
            },
            FamilySpec::Minus { base, .. } => base.bounds(),
            FamilySpec::Negated(b) => b
                .bounds()
                .and_then(|(lo, hi)| Some((hi.checked_neg()?, lo.checked_neg()?))),
            FamilySpec::Shifted(b, c) => b
                .bounds()
                .and_then(|(lo, hi)| Some((lo.checked_add(*c)?, hi.checked_add(*c)?))),
            _ => None,
        }
    }

    pub fn tail_class(&self) -> TailClass {
        if let Some((lo, hi)) = self.bounds() {
            return TailClass::Bounded(lo, hi);
        }
        match self {
            FamilySpec::S | FamilySpec::Refined { base: Base::S, .. } => TailClass::SubsetOfS,
            FamilySpec::UAll | FamilySpec::Refined { base: Base::U, .. } => TailClass::SubsetOfU,
            FamilySpec::Minus { base, .. } => base.tail_class(),
            _ => TailClass::Unknown,
        }
    }

    /// True for the power-of-two families usable as the enumerated side of a sum.
    pub fn is_power_family(&self) -> bool {
        matches!(self, FamilySpec::T | FamilySpec::V)
    }

    /// Parses JSON (`{"kind":…}`) or a shorthand such as `S`, `I:3`, `W:-64..64`, `RS:200`.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()));
        }
        if let Some(rest) = t.strip_prefix('-') {
            return Ok(FamilySpec::parse(rest)?.negated());
        }
        let (head, arg) = match t.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (t, None),
        };
        let index = || -> Result<u32> {
            arg.ok_or_else(|| Error::Parse(format!("{head} needs an index, e.g. {head}:3")))?
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad index in {t:?}: {e}")))
        };
        let budget = || -> Result<usize> {
            arg.ok_or_else(|| Error::Parse(format!("{head} needs a budget, e.g. {head}:200")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad budget in {t:?}: {e}")))
        };
        Ok(match (head, arg.is_some()) {
            ("S", false) => FamilySpec::S,
            ("T", false) => FamilySpec::T,
            ("U", false) => FamilySpec::UAll,
            ("V", false) => FamilySpec::V,
            ("J", true) => FamilySpec::J(index()?),
            ("K", true) => FamilySpec::K(index()?),
            ("I", true) => FamilySpec::I(index()?),
            ("SI", true) => FamilySpec::ScriptI(index()?),
            ("U", true) => FamilySpec::U(index()?),
            ("RS", true) => FamilySpec::refined(Base::S, budget()?)?,
            ("RU", true) => FamilySpec::refined(Base::U, budget()?)?,
            ("W", true) => FamilySpec::w_greedy(parse_window(arg.unwrap())?)?,
            _ => return Err(Error::Parse(format!("unknown family {t:?}"))),
        })
    }
}

/// Parses `LO..HI`.
pub fn parse_window(text: &str) -> Result<IntegerWindow> {
    let (a, b) = text
        .trim()
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected LO..HI, got {text:?}")))?;
    let lo = a
        .trim()
        .parse::<i64>()
        .map_err(|e| Error::Parse(format!("{a:?}: {e}")))?;
    let hi = b
        .trim()
        .parse::<i64>()
        .map_err(|e| Error::Parse(format!("{b:?}: {e}")))?;
    IntegerWindow::new(lo, hi)
}

impl Membership for FamilySpec {
    fn contains(&self, x: i64) -> bool {
        self.member(x)
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilySpec::J(n) => write!(f, "J:{n}"),
            FamilySpec::K(n) => write!(f, "K:{n}"),
            FamilySpec::I(n) => write!(f, "I:{n}"),
            FamilySpec::ScriptI(n) => write!(f, "SI:{n}"),
            FamilySpec::S => write!(f, "S"),
            FamilySpec::T => write!(f, "T"),
            FamilySpec::U(n) => write!(f, "U:{n}"),
            FamilySpec::UAll => write!(f, "U"),
            FamilySpec::V => write!(f, "V"),
            FamilySpec::Refined {
                base: Base::S,
                budget,
                ..
            } => write!(f, "RS:{budget}"),
            FamilySpec::Refined {
                base: Base::U,
                budget,
                ..
            } => write!(f, "RU:{budget}"),
            FamilySpec::WGreedy { window, .. } => write!(f, "W:{}..{}", window.lo(), window.hi()),
            FamilySpec::Minus { base, removed } => write!(f, "({base})∖{removed:?}"),
            FamilySpec::Negated(b) => write!(f, "-{b}"),
            FamilySpec::Shifted(b, c) => write!(f, "({b})+{c}"),
            FamilySpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join("×"))
            }
        }
    }
}

/// Wire form of [`FamilySpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FamilyJson {
    J {
        n: u32,
    },
    K {
        n: u32,
    },
    I {
        n: u32,
    },
    #[serde(rename = "script_I")]
    ScriptI {
        n: u32,
    },
    S,
    T,
    U {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
    },
    V,
    #[serde(rename = "refined")]
    Refined {
        base: Base,
        budget: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        removed: Option<Vec<i64>>,
    },
    W {
        window: IntegerWindow,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        elements: Option<Vec<i64>>,
    },
    #[serde(rename = "minus")]
    Minus {
        base: Box<FamilyJson>,
        removed: Vec<i64>,
    },
    #[serde(rename = "neg")]
    Negated {
        base: Box<FamilyJson>,
    },
    #[serde(rename = "shift")]
    Shifted {
        base: Box<FamilyJson>,
        c: i64,
    },
    #[serde(rename = "product")]
    Product {
        factors: Vec<FamilyJson>,
    },
}

impl TryFrom<FamilyJson> for FamilySpec {
    type Error = Error;
    fn try_from(j: FamilyJson) -> Result<FamilySpec> {
        Ok(match j {
            FamilyJson::J { n } => FamilySpec::J(n),
            FamilyJson::K { n } => FamilySpec::K(n),
            FamilyJson::I { n } => FamilySpec::I(n),
            FamilyJson::ScriptI { n } => FamilySpec::ScriptI(n),
            FamilyJson::S => FamilySpec::S,
            FamilyJson::T => FamilySpec::T,
            FamilyJson::U { n: Some(n) } => FamilySpec::U(n),
            FamilyJson::U { n: None } => FamilySpec::UAll,
            FamilyJson::V => FamilySpec::V,
            FamilyJson::Refined {
                base,
                budget,
                removed: None,
            } => FamilySpec::refined(base, budget)?,
            FamilyJson::Refined {
                base,
                budget,
                removed: Some(mut removed),
            } => {
                removed.sort_unstable();
                removed.dedup();
                FamilySpec::Refined {
                    base,
                    budget,
                    removed,
                }
            }
            FamilyJson::W {
                window,
                elements: None,
            } => FamilySpec::w_greedy(window)?,
            FamilyJson::W {
                window,
                elements: Some(mut elements),
            } => {
                elements.sort_unstable();
                elements.dedup();
                if elements.iter().any(|&x| !window.contains(x)) {
                    return Err(precondition("W elements must lie inside its window"));
                }
                FamilySpec::WGreedy { window, elements }
            }
            FamilyJson::Minus { base, removed } => {
                FamilySpec::minus(FamilySpec::try_from(*base)?, removed)
            }
            FamilyJson::Negated { base } => FamilySpec::try_from(*base)?.negated(),
            FamilyJson::Shifted { base, c } => FamilySpec::try_from(*base)?.shifted(c),
            FamilyJson::Product { factors } => {
                if factors.is_empty() {
                    return Err(precondition("a product needs at least one factor"));
                }
                FamilySpec::Product(
                    factors
                        .into_iter()
                        .map(FamilySpec::try_from)
                        .collect::<Result<_>>()?,
                )
            }
        })
    }
}

impl From<FamilySpec> for FamilyJson {
    fn from(f: FamilySpec) -> FamilyJson {
        match f {
            FamilySpec::J(n) => FamilyJson::J { n },
            FamilySpec::K(n) => FamilyJson::K { n },
            FamilySpec::I(n) => FamilyJson::I { n },
            FamilySpec::ScriptI(n) => FamilyJson::ScriptI { n },
            FamilySpec::S => FamilyJson::S,
            FamilySpec::T => FamilyJson::T,
            FamilySpec::U(n) => FamilyJson::U { n: Some(n) },
            FamilySpec::UAll => FamilyJson::U { n: None },
            FamilySpec::V => FamilyJson::V,
            FamilySpec::Refined {
                base,
                budget,
                removed,
            } => FamilyJson::Refined {
                base,
                budget,
                removed: Some(removed),
            },
            FamilySpec::WGreedy { window, elements } => FamilyJson::W {
                window,
                elements: Some(elements),
            },
            FamilySpec::Minus { base, removed } => FamilyJson::Minus {
                base: Box::new((*base).into()),
                removed,
            },
            FamilySpec::Negated(b) => FamilyJson::Negated {
                base: Box::new((*b).into()),
            },
            FamilySpec::Shifted(b, c) => FamilyJson::Shifted {
                base: Box::new((*b).into()),
                c,
            },
            FamilySpec::Product(fs) => FamilyJson::Product {
                factors: fs.into_iter().map(Into::into).collect(),
            },
        }
    }
}
