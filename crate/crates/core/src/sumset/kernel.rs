use rayon::prelude::*;

use crate::constructions::FamilySpec;
use crate::error::Result;
use crate::window::bits::{extract, valid_mask, words_for};
use crate::window::{IntegerWindow, WindowedSet};

/// Target words per parallel chunk.
const CHUNK_WORDS: usize = 1 << 13;

/// `(a + b) ∩ target` by shifted OR of the larger operand over the smaller one's elements.
///
/// Output words that become full are dropped from the work list, so dense sums
/// stop paying for the parts of the target that are already covered.
pub fn sumset(a: &WindowedSet, b: &WindowedSet, target: IntegerWindow) -> WindowedSet {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let elems = small.elements();
    let nwords = words_for(target.width());
    let mut out = vec![0u64; nwords];
    if elems.is_empty() || large.is_empty() {
        return WindowedSet::from_raw(target, out);
    }
    if nwords >= 2 * CHUNK_WORDS && elems.len() >= 32 {
        out.par_chunks_mut(CHUNK_WORDS)
            .enumerate()
            .for_each(|(ci, chunk)| shift_or(chunk, ci * CHUNK_WORDS, &elems, large, target));
    } else {
        shift_or(&mut out, 0, &elems, large, target);
    }
    WindowedSet::from_raw(target, out)
}

/// Fills `out` (target words `word_base..word_base + out.len()`) with `∪_e (large + e)`.
fn shift_or(
    out: &mut [u64],
    word_base: usize,
    elems: &[i64],
    large: &WindowedSet,
    target: IntegerWindow,
) {
    let width = target.width();
    let src = large.raw();
    let lw = large.window().width() as i128;
    let full: Vec<u64> = (0..out.len())
        .map(|i| valid_mask(width, word_base + i))
        .collect();
    let mut active: Vec<usize> = (0..out.len()).filter(|&i| full[i] != 0).collect();
    let base_bit = (word_base * 64) as i128;
    let last = out.len() as i128 - 1;
    for &e in elems {
        if active.is_empty() {
            break;
        }
        // Target bit p reads large bit p + off.
        let off = target.lo() as i128 - e as i128 - large.window().lo() as i128;
        let w_lo = ((-off - base_bit).div_euclid(64)).max(0);
        let w_hi = ((lw - 1 - off - base_bit).div_euclid(64)).min(last);
        if w_lo > w_hi {
            continue;
        }
        let start = active.partition_point(|&i| (i as i128) < w_lo);
        let mut saturated = false;
        for &i in &active[start..] {
            if i as i128 > w_hi {
                break;
            }
            let pos = (base_bit + (i as i128) * 64 + off) as i64;
            out[i] |= extract(src, pos) & full[i];
            saturated |= out[i] == full[i];
        }
        if saturated {
            active.retain(|&i| out[i] != full[i]);
        }
    }
}

/// `(∪ families + bs) ∩ target`, materializing each family only where it can contribute.
pub fn sumset_union_family(
    families: &[FamilySpec],
    bs: &[i64],
    target: IntegerWindow,
) -> Result<WindowedSet> {
    let mut out = WindowedSet::empty(target);
    for &b in bs {
        let Ok(reach) = target.shift(-b) else {
            continue;
        };
        for f in families {
            let part = f.materialize(reach)?;
            if !part.is_empty() {
                out.or_from(&part.shift(b)?);
            }
        }
    }
    Ok(out)
}
