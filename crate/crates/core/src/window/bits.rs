//! Word-level helpers shared by the bitset and the sumset kernel.

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(width: usize) -> usize {
    width.div_ceil(WORD)
}

/// Mask of the valid bits in word `w` of a bitset holding `width` bits.
#[inline]
pub(crate) fn valid_mask(width: usize, w: usize) -> u64 {
    let start = w * WORD;
    if start + WORD <= width {
        u64::MAX
    } else if start >= width {
        0
    } else {
        (1u64 << (width - start)) - 1
    }
}

#[inline]
fn word_or_zero(words: &[u64], i: i64) -> u64 {
    if i < 0 {
        0
    } else {
        words.get(i as usize).copied().unwrap_or(0)
    }
}

/// Bits `[pos, pos + 64)` of `words`, with zeros outside the stored range.
#[inline]
pub(crate) fn extract(words: &[u64], pos: i64) -> u64 {
    let wi = pos.div_euclid(WORD as i64);
    let sh = pos.rem_euclid(WORD as i64) as u32;
    let lo = word_or_zero(words, wi);
    if sh == 0 {
        lo
    } else {
        (lo >> sh) | (word_or_zero(words, wi + 1) << (64 - sh))
    }
}

/// ORs `len` bits of `src` starting at `src_off` into `dst` starting at `dst_off`.
pub(crate) fn or_bits(dst: &mut [u64], dst_off: usize, src: &[u64], src_off: usize, len: usize) {
    let mut done = 0usize;
    while done < len {
        let d = dst_off + done;
        let (dw, ds) = (d / WORD, d % WORD);
        let take = (WORD - ds).min(len - done);
        let mut chunk = extract(src, (src_off + done) as i64);
        if take < WORD {
            chunk &= (1u64 << take) - 1;
        }
        dst[dw] |= chunk << ds;
        done += take;
    }
}

/// Clears every bit beyond `width` in the final word.
pub(crate) fn clear_tail(words: &mut [u64], width: usize) {
    if let Some(last) = words.last_mut() {
        *last &= valid_mask(width, words_for(width) - 1);
    }
}
