//! Randomized equality testing and equality search over the public channel.
//!
//! One test round has each party announce the inner product mod 2 of her
//! string with the same public random string (2 bits per round). Equal
//! strings always match; unequal strings match with probability exactly 1/2
//! per round, so `reps` rounds drive the false-equal probability below
//! `2^-reps`. The search runs a boosted test on the whole string and then
//! binary-searches on halves; the final candidate index is re-verified by
//! exchanging the two actual bits, so a returned index is always correct
//! and all error is on the "equal" side.

use crate::channel::{Message, Party, SharedRandomness, Transcript};
use crate::error::{Error, Result};

/// A fixed-length bit string, bit `i` of word `i / 64` at position `i % 64`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> BitString {
        BitString {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> BitString {
        let mut s = BitString::zeros(len);
        for i in 0..len {
            if f(i) {
                s.set(i, true);
            }
        }
        s
    }

    pub fn from_bits(bits: &[bool]) -> BitString {
        BitString::from_fn(bits.len(), |i| bits[i])
    }

    /// Parses `"0101..."`.
    pub fn parse_binary(s: &str) -> Result<BitString> {
        let mut out = BitString::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => out.set(i, true),
                _ => return Err(Error::Parse(format!("bit string has non-binary char {ch:?}"))),
            }
        }
        Ok(out)
    }

    pub fn to_binary_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        if bit {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bitwise complement of the same length.
    pub fn complement(&self) -> BitString {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        BitString { len: self.len, words }
    }

    /// Up to 64 bits starting at `pos` (little-endian), zero-padded.
    fn bits_at(&self, pos: usize, count: usize) -> u64 {
        debug_assert!(count <= 64 && pos + count <= self.len);
        if count == 0 {
            return 0;
        }
        let word = pos / 64;
        let off = pos % 64;
        let mut chunk = self.words[word] >> off;
        if off != 0 && word + 1 < self.words.len() {
            chunk |= self.words[word + 1] << (64 - off);
        }
        if count < 64 {
            chunk &= (1u64 << count) - 1;
        }
        chunk
    }

    /// Parity of the inner product of `self[lo..hi)` with the random bits
    /// (bit `i - lo` of `rand_words`).
    fn range_parity(&self, lo: usize, hi: usize, rand_words: &[u64]) -> bool {
        let mut acc = 0u64;
        let mut pos = lo;
        let mut w = 0;
        while pos < hi {
            let take = (hi - pos).min(64);
            acc ^= self.bits_at(pos, take) & rand_words[w];
            pos += take;
            w += 1;
        }
        acc.count_ones() % 2 == 1
    }
}

fn check_lengths(x1: &BitString, x2: &BitString) -> Result<()> {
    if x1.len() != x2.len() {
        return Err(Error::Precondition(format!(
            "bit strings have different lengths: {} vs {}",
            x1.len(),
            x2.len()
        )));
    }
    Ok(())
}

/// One boosted equality test over `x1[lo..hi)` vs `x2[lo..hi)`. Always runs
/// exactly `reps` rounds (2 bits each) so transcript costs depend only on
/// the parameters, not the data.
fn eq_test_range(
    x1: &BitString,
    x2: &BitString,
    lo: usize,
    hi: usize,
    reps: u32,
    rand: &mut SharedRandomness,
    transcript: &mut Transcript,
) -> bool {
    let mut all_match = true;
    for _ in 0..reps {
        let r = rand.draw_words(hi - lo);
        let b1 = x1.range_parity(lo, hi, &r);
        let b2 = x2.range_parity(lo, hi, &r);
        transcript.send(Party::P1, Message::Bit(b1));
        transcript.send(Party::P2, Message::Bit(b2));
        if b1 != b2 {
            all_match = false;
        }
    }
    all_match
}

/// Boosted equality test on whole strings: "equal" iff all `reps` rounds
/// match. On unequal inputs the false-equal probability is at most
/// `2^-reps`; on equal inputs the answer is always "equal".
pub fn eq_test(
    x1: &BitString,
    x2: &BitString,
    reps: u32,
    rand: &mut SharedRandomness,
    transcript: &mut Transcript,
) -> Result<bool> {
    check_lengths(x1, x2)?;
    Ok(eq_test_range(x1, x2, 0, x1.len(), reps, rand, transcript))
}

/// Rounds per test call used by [`eq_search`]: the smallest `r` with
/// `2^r * (1 - confidence) >= levels + 1`, so the union bound over all
/// calls stays within `1 - confidence`.
pub fn search_reps(len: usize, confidence: f64) -> u32 {
    let calls = (levels_for(len) + 1) as f64;
    let budget = 1.0 - confidence;
    let mut reps = 1u32;
    while reps < 63 && ((1u64 << reps) as f64) * budget < calls {
        reps += 1;
    }
    reps
}

fn levels_for(len: usize) -> u32 {
    if len <= 1 {
        0
    } else {
        usize::BITS - (len - 1).leading_zeros()
    }
}

/// Finds an index where the strings differ, or decides they are equal.
///
/// Binary search over halves with per-call tests boosted to error at most
/// `(1 - confidence) / (levels + 1)`; the candidate index is re-verified by
/// exchanging the two bits, so `Some(j)` always satisfies
/// `x1[j] != x2[j]`, and only the `None` answer can be wrong (with
/// probability at most `1 - confidence` on unequal inputs).
pub fn eq_search(
    x1: &BitString,
    x2: &BitString,
    confidence: f64,
    rand: &mut SharedRandomness,
    transcript: &mut Transcript,
) -> Result<Option<usize>> {
    check_lengths(x1, x2)?;
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::Precondition(format!(
            "confidence {confidence} outside (0, 1)"
        )));
    }
    let len = x1.len();
    if len == 0 {
        return Ok(None);
    }
    let reps = search_reps(len, confidence);
    if eq_test_range(x1, x2, 0, len, reps, rand, transcript) {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0usize, len);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if eq_test_range(x1, x2, lo, mid, reps, rand, transcript) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // exchange the candidate bits; a returned index is always correct
    let b1 = x1.get(lo);
    let b2 = x2.get(lo);
    transcript.send(Party::P1, Message::Bit(b1));
    transcript.send(Party::P2, Message::Bit(b2));
    Ok(if b1 != b2 { Some(lo) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fresh(seed: u64) -> (SharedRandomness, Transcript) {
        (SharedRandomness::new(seed), Transcript::with_seed(0, 64, "eq test", seed))
    }

    #[test]
    fn bitstring_basics() {
        let s = BitString::parse_binary("0110").unwrap();
        assert_eq!(s.len(), 4);
        assert!(!s.get(0) && s.get(1) && s.get(2) && !s.get(3));
        assert_eq!(s.complement().to_binary_string(), "1001");
        assert_eq!(s.complement().complement(), s);
        assert!(BitString::parse_binary("01x").is_err());

        let long = BitString::from_fn(130, |i| i % 3 == 0);
        assert_eq!(long.complement().complement(), long);
        assert_eq!(long.count_ones() + long.complement().count_ones(), 130);
    }

    #[test]
    fn equal_strings_always_test_equal() {
        let x = BitString::parse_binary("10110010").unwrap();
        for seed in 0..50 {
            let (mut rand, mut t) = fresh(seed);
            assert!(eq_test(&x, &x, 3, &mut rand, &mut t).unwrap());
        }
    }

    #[test]
    fn one_round_match_probability_is_exactly_half() {
        // enumerate every random string for a fixed unequal pair
        let x1 = BitString::parse_binary("0001").unwrap();
        let x2 = BitString::parse_binary("0000").unwrap();
        let mut matches = 0;
        for r in 0u64..16 {
            let b1 = x1.range_parity(0, 4, &[r]);
            let b2 = x2.range_parity(0, 4, &[r]);
            if b1 == b2 {
                matches += 1;
            }
        }
        assert_eq!(matches, 8);
    }

    #[test]
    fn boosted_test_detects_inequality() {
        let x1 = BitString::parse_binary("0001").unwrap();
        let x2 = BitString::parse_binary("0000").unwrap();
        let mut unequal = 0;
        for seed in 0..1000 {
            let (mut rand, mut t) = fresh(seed);
            if !eq_test(&x1, &x2, 10, &mut rand, &mut t).unwrap() {
                unequal += 1;
            }
            assert_eq!(t.total_bits(), 20);
        }
        assert!(unequal >= 990, "only {unequal}/1000 detected");
    }

    #[test]
    fn search_on_equal_strings_returns_none() {
        let x = BitString::from_fn(16, |i| i % 2 == 0);
        for seed in 0..20 {
            let (mut rand, mut t) = fresh(seed);
            assert_eq!(eq_search(&x, &x, 0.95, &mut rand, &mut t).unwrap(), None);
        }
    }

    #[test]
    fn returned_index_is_always_correct() {
        let x1 = BitString::parse_binary("0001").unwrap();
        let x2 = BitString::parse_binary("0000").unwrap();
        for seed in 0..200 {
            let (mut rand, mut t) = fresh(seed);
            if let Some(j) = eq_search(&x1, &x2, 0.9, &mut rand, &mut t).unwrap() {
                assert_eq!(j, 3);
            }
        }
    }

    #[test]
    fn search_succeeds_at_the_stated_confidence() {
        use rand::Rng;
        use rand::SeedableRng;
        let len = 1 << 10;
        let mut found = 0;
        let trials = 500;
        for seed in 0..trials {
            let mut gen = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
            let x1 = BitString::from_fn(len, |_| gen.gen_bool(0.5));
            let mut x2 = x1.clone();
            let flip = gen.gen_range(0..len);
            x2.set(flip, !x2.get(flip));
            let (mut rand, mut t) = fresh(seed);
            if let Some(j) = eq_search(&x1, &x2, 0.95, &mut rand, &mut t).unwrap() {
                assert_eq!(j, flip);
                found += 1;
            }
        }
        assert!(found as f64 >= 0.95 * trials as f64, "found {found}/{trials}");
    }

    #[test]
    fn length_mismatch_rejected() {
        let (mut rand, mut t) = fresh(0);
        let a = BitString::zeros(3);
        let b = BitString::zeros(4);
        assert!(eq_test(&a, &b, 1, &mut rand, &mut t).is_err());
        assert!(eq_search(&a, &b, 0.9, &mut rand, &mut t).is_err());
    }
}
