//! Two-party channel substrate: typed messages, bit-cost accounting, and
//! shared public-coin randomness.
//!
//! The cost of a message depends only on its kind and the instance
//! parameters: a bundle or a two-player allocation costs `m` bits, a value
//! costs `vsize` bits, a ratio of two values costs `2 * vsize`, a single
//! bit costs 1, and final outcome declarations cost 0 (the protocol cost
//! bounds count only transmitted bundles, values and bits). `vsize` is an
//! accounting parameter: a rational whose minimal encoding exceeds it is
//! still charged `vsize`, and the transcript records a warning.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bundle::{Allocation, Bundle};
use crate::value::Value;

pub const DEFAULT_VSIZE: u32 = 64;

/// The two protocol parties.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Party {
    P1,
    P2,
}

impl Party {
    pub fn index(self) -> usize {
        match self {
            Party::P1 => 0,
            Party::P2 => 1,
        }
    }
}

/// A protocol's declared output: either a fair allocation at the target
/// level, or "none exists" with the optimum `c*` and an allocation
/// achieving it when the protocol computes them (the deterministic
/// protocols always do; the randomized one declares bare nonexistence).
#[derive(Clone, Debug)]
pub enum Verdict {
    FairFound {
        allocation: Allocation,
        achieved_c: Value,
    },
    NoneExists {
        claimed_c_star: Option<Value>,
        best: Option<Allocation>,
    },
}

impl Verdict {
    pub fn is_fair_found(&self) -> bool {
        matches!(self, Verdict::FairFound { .. })
    }
}

/// One typed message.
#[derive(Clone, Debug)]
pub enum Message {
    /// A bundle, `m` bits.
    Bundle(Bundle),
    /// One exact value, `vsize` bits.
    Value(Value),
    /// A ratio transmitted as its two component values, `2 * vsize` bits.
    Ratio(Value, Value),
    /// A two-player allocation, `m` bits (the second bundle is implied).
    Allocation(Allocation),
    /// A single bit.
    Bit(bool),
    /// Final outcome declaration, 0 bits.
    Outcome(Verdict),
}

/// Bits needed for the minimal encoding of a value: bit lengths of the
/// reduced numerator and denominator.
pub fn min_encoding_bits(v: &Value) -> u64 {
    v.numer().bits() + v.denom().bits()
}

/// Kind-determined cost of a message.
pub fn message_cost(msg: &Message, m: usize, vsize: u32) -> u64 {
    match msg {
        Message::Bundle(_) | Message::Allocation(_) => m as u64,
        Message::Value(_) => vsize as u64,
        Message::Ratio(_, _) => 2 * vsize as u64,
        Message::Bit(_) => 1,
        Message::Outcome(_) => 0,
    }
}

/// Append-only record of one protocol execution.
#[derive(Clone, Debug)]
pub struct Transcript {
    m: usize,
    vsize: u32,
    label: String,
    seed: Option<u64>,
    entries: Vec<(Party, Message)>,
    total_bits: u64,
    warnings: Vec<String>,
}

impl Transcript {
    pub fn new(m: usize, vsize: u32, label: impl Into<String>) -> Transcript {
        Transcript {
            m,
            vsize,
            label: label.into(),
            seed: None,
            entries: Vec::new(),
            total_bits: 0,
            warnings: Vec::new(),
        }
    }

    pub fn with_seed(m: usize, vsize: u32, label: impl Into<String>, seed: u64) -> Transcript {
        let mut t = Transcript::new(m, vsize, label);
        t.seed = Some(seed);
        t
    }

    /// Appends a message, charging exactly its kind-determined cost.
    pub fn send(&mut self, sender: Party, msg: Message) {
        self.total_bits += message_cost(&msg, self.m, self.vsize);
        let oversized = match &msg {
            Message::Value(v) => min_encoding_bits(v) > self.vsize as u64,
            Message::Ratio(a, b) => {
                min_encoding_bits(a) > self.vsize as u64
                    || min_encoding_bits(b) > self.vsize as u64
            }
            _ => false,
        };
        if oversized {
            self.warnings.push(format!(
                "message {} carries a value whose minimal encoding exceeds vsize = {}",
                self.entries.len(),
                self.vsize
            ));
        }
        self.entries.push((sender, msg));
    }

    pub fn total_bits(&self) -> u64 {
        self.total_bits
    }

    pub fn entries(&self) -> &[(Party, Message)] {
        &self.entries
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vsize(&self) -> u32 {
        self.vsize
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Re-derives the total from the entries; cost additivity check.
    pub fn verify_total(&self) -> bool {
        let sum: u64 = self
            .entries
            .iter()
            .map(|(_, msg)| message_cost(msg, self.m, self.vsize))
            .sum();
        sum == self.total_bits
    }
}

/// A seeded public-coin stream; both parties observe the same bits, and the
/// same seed replays the same stream.
pub struct SharedRandomness {
    rng: ChaCha8Rng,
    seed: u64,
}

impl SharedRandomness {
    pub fn new(seed: u64) -> SharedRandomness {
        SharedRandomness {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The next `nbits` public coins, packed little-endian into words.
    pub fn draw_words(&mut self, nbits: usize) -> Vec<u64> {
        let nwords = nbits.div_ceil(64);
        let mut words: Vec<u64> = (0..nwords).map(|_| self.rng.next_u64()).collect();
        let tail = nbits % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        words
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn costs_by_kind() {
        let mut t = Transcript::new(5, 64, "test");
        t.send(Party::P1, Message::Bundle(Bundle::from_mask(0b10101)));
        assert_eq!(t.total_bits(), 5);
        t.send(Party::P2, Message::Ratio(Value::from_int(1), Value::from_int(2)));
        assert_eq!(t.total_bits(), 5 + 128);
        t.send(
            Party::P1,
            Message::Outcome(Verdict::NoneExists {
                claimed_c_star: None,
                best: None,
            }),
        );
        assert_eq!(t.total_bits(), 5 + 128);
        t.send(Party::P1, Message::Bit(true));
        assert_eq!(t.total_bits(), 5 + 128 + 1);
        assert!(t.verify_total());
        assert!(t.warnings().is_empty());
    }

    #[test]
    fn oversized_value_warns_but_charges_vsize() {
        let mut t = Transcript::new(3, 4, "tiny vsize");
        t.send(Party::P1, Message::Value(Value::from_int(1 << 20)));
        assert_eq!(t.total_bits(), 4);
        assert_eq!(t.warnings().len(), 1);
    }

    #[test]
    fn shared_randomness_replays() {
        let a: Vec<u64> = SharedRandomness::new(7).draw_words(130);
        let b: Vec<u64> = SharedRandomness::new(7).draw_words(130);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_eq!(a[2] >> 2, 0, "tail bits masked");
        let c: Vec<u64> = SharedRandomness::new(8).draw_words(130);
        assert_ne!(a, c);
    }
}
