//! Word-packed bit tables indexed by points of `F_2^n`.
//!
//! Bit `x` of a table lives in word `x >> 6` at position `x & 63`.

pub fn words_for(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

#[inline]
pub fn get(words: &[u64], x: u32) -> bool {
    (words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], x: u32, v: bool) {
    let w = &mut words[(x >> 6) as usize];
    let bit = 1u64 << (x & 63);
    if v {
        *w |= bit;
    } else {
        *w &= !bit;
    }
}

// Masks selecting the bit positions whose index has bit j clear.
const SWAP_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Permutes the bits of one word by position XOR with `c` (`c < 64`).
#[inline]
fn xor_permute_word(mut w: u64, c: u32) -> u64 {
    for j in 0..6 {
        if (c >> j) & 1 == 1 {
            let s = 1 << j;
            let m = SWAP_MASKS[j as usize];
            w = ((w >> s) & m) | ((w & m) << s);
        }
    }
    w
}

/// Returns the table `out[x] = in[x ^ a]`.
pub fn xor_translate(words: &[u64], a: u32) -> Vec<u64> {
    let hi = (a >> 6) as usize;
    let lo = a & 63;
    (0..words.len())
        .map(|i| xor_permute_word(words[i ^ hi], lo))
        .collect()
}

/// True iff `in[x] == in[x ^ a]` for all `x` (no allocation).
pub fn invariant_under_xor(words: &[u64], a: u32) -> bool {
    let hi = (a >> 6) as usize;
    let lo = a & 63;
    words
        .iter()
        .enumerate()
        .all(|(i, &w)| w == xor_permute_word(words[i ^ hi], lo))
}

pub fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}
