use serde::{Deserialize, Serialize};

use super::family::Membership;
use crate::error::{Error, Result, precondition};

pub const DEFAULT_TAIL_SPAN: u32 = 16;

/// Largest exponent probed by a tail scan (keeps `y ± 2^k` inside i64).
pub const MAX_TAIL_EXPONENT: u32 = 61;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn apply(self, v: i64) -> i64 {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

/// `member(y - sign·2^k)` held the constant `value` for every `k ∈ [threshold, threshold + checked_span]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailVerdict {
    pub threshold: u32,
    pub value: bool,
    pub checked_span: u32,
}

/// Default starting exponent for a tail scan of `y`.
pub fn default_k0(y: i64) -> u32 {
    bit_length(y.unsigned_abs()) + 4
}

pub fn bit_length(v: u64) -> u32 {
    64 - v.leading_zeros()
}

pub(crate) fn tail_probe(f: &impl Membership, y: i64, sign: Sign, k: u32) -> bool {
    let a = y as i128 - sign.apply(1) as i128 * (1i128 << k);
    i64::try_from(a).is_ok_and(|a| f.contains(a))
}

/// Evaluates `P(k) = member(f, y - sign·2^k)` on `[k0, k0 + span]` and requires it constant.
pub fn tail_membership(
    f: &impl Membership,
    y: i64,
    sign: Sign,
    k0: u32,
    span: u32,
) -> Result<TailVerdict> {
    if span < 8 {
        return Err(precondition(format!("tail span {span} is below 8")));
    }
    let k_end = k0
        .checked_add(span)
        .filter(|&e| e <= MAX_TAIL_EXPONENT)
        .ok_or_else(|| {
            precondition(format!(
                "tail scan must stay below exponent {MAX_TAIL_EXPONENT}"
            ))
        })?;
    let value = tail_probe(f, y, sign, k0);
    if (k0..=k_end).any(|k| tail_probe(f, y, sign, k) != value) {
        return Err(Error::Stabilization { y, k0, k_end });
    }
    Ok(TailVerdict {
        threshold: k0,
        value,
        checked_span: span,
    })
}

/// Walks the threshold of a verdict back while the predicate keeps its value.
pub fn earliest_threshold(
    f: &impl Membership,
    y: i64,
    sign: Sign,
    verdict: &TailVerdict,
    floor: u32,
) -> u32 {
    let mut k = verdict.threshold;
    while k > floor && tail_probe(f, y, sign, k - 1) == verdict.value {
        k -= 1;
    }
    k
}
