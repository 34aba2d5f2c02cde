//! Fair division of indivisible goods between two parties that only
//! communicate, with bit-exact cost accounting.
//!
//! The crate provides:
//!
//! - exact-rational valuations over item subsets ([`valuation`], [`value`],
//!   [`bundle`]) and exhaustive valuation-class checks ([`classcheck`]);
//! - fairness predicates for envy-freeness, proportionality and maximin
//!   share, per-bundle optima, minimal bundles and the minimal-bundle graph
//!   ([`fairness`], [`minimal`]);
//! - brute-force oracles for existence, the optimum `c*`, and maximin
//!   shares ([`oracle`]);
//! - three executable protocols over a costed two-party channel: the
//!   prefix-delta proportionality protocol, the minimal-bundle protocol,
//!   and a randomized equality-search protocol ([`channel`], [`protocols`]);
//! - generators and verifiers for the hard-instance valuation families and
//!   random test instances ([`instances`]);
//! - JSON interchange formats for instances, transcripts and graphs
//!   ([`json`]).
//!
//! All fairness comparisons are exact (big-rational cross-multiplication);
//! all randomness is seeded and replayable.

pub mod bundle;
pub mod channel;
pub mod classcheck;
pub mod error;
pub mod fairness;
pub mod minimal;
pub mod oracle;
pub mod valuation;
pub mod value;

#[cfg(test)]
pub(crate) mod testutil;

pub use bundle::{Allocation, Bundle};
pub use error::{Error, Result};
pub use fairness::{FairnessSpec, Property};
pub use valuation::Valuation;
pub use value::Value;
