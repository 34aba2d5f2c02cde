//! Executable two-party protocols.
//!
//! All three protocols share the same skeleton: a free local step-1 search
//! for a split player 1 likes either way, and (for the deterministic ones)
//! a final resolution step that pins down the exact optimum `c*` from the
//! two players' best unhappy bundles. Only transmitted objects are charged;
//! local computation and outcome declarations are free, matching the
//! communication-only cost model.

pub mod eq;
mod mbp;
mod prop1;
mod randomized;

pub use eq::{eq_search, eq_test, search_reps, BitString};
pub use mbp::{run_minimal_bundle, MbpConfig};
pub use prop1::{run_prop1, Prop1Config};
pub use randomized::{run_randomized, RandConfig};

use crate::bundle::Allocation;
use crate::channel::{Transcript, Verdict};
use crate::error::{Error, Result};
use crate::fairness::{is_happy, s_star, FairnessSpec, Property};
use crate::valuation::Valuation;
use crate::value::Value;

/// Whether a protocol precondition is verified up front or trusted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyMode {
    Check,
    Trust,
}

/// A protocol's declared output together with its costed transcript.
#[derive(Clone, Debug)]
pub struct ProtocolOutcome {
    pub verdict: Verdict,
    pub transcript: Transcript,
}

impl ProtocolOutcome {
    pub fn total_bits(&self) -> u64 {
        self.transcript.total_bits()
    }
}

fn same_items(v1: &Valuation, v2: &Valuation) -> Result<usize> {
    if v1.m() != v2.m() {
        return Err(Error::Precondition(format!(
            "players disagree on the item count: {} vs {}",
            v1.m(),
            v2.m()
        )));
    }
    Ok(v1.m())
}

/// Step-4 resolution: the best unhappy bundle of each player, the happier
/// one (ties to player 1) keeping hers. Returns `(c*, allocation)`.
fn resolve_c_star(
    v1: &Valuation,
    v2: &Valuation,
    property: Property,
    c: &Value,
) -> Result<(Value, Allocation)> {
    let m = v1.m();
    let (s1, b1) = s_star(v1, property, c, 2)?;
    let (s2, b2) = s_star(v2, property, c, 2)?;
    if b1 >= b2 {
        Ok((b1, Allocation::split(s1, m)))
    } else {
        Ok((b2, Allocation::split(s2, m).reversed()))
    }
}

/// Re-verifies a declared outcome against the fairness definitions:
/// a found allocation must make both players happy at the declared level,
/// and a claimed `c*` allocation must be `c*`-fair.
fn verify_verdict(
    v1: &Valuation,
    v2: &Valuation,
    property: Property,
    verdict: &Verdict,
) -> Result<()> {
    let (alloc, level) = match verdict {
        Verdict::FairFound {
            allocation,
            achieved_c,
        } => (allocation, achieved_c),
        Verdict::NoneExists {
            claimed_c_star: Some(cs),
            best: Some(best),
        } => (best, cs),
        Verdict::NoneExists { .. } => return Ok(()),
    };
    let spec = FairnessSpec::new(property, level.clone(), 2)?;
    for (i, v) in [v1, v2].iter().enumerate() {
        if !is_happy(v, i, alloc, &spec, None)? {
            return Err(Error::Internal(format!(
                "declared outcome fails re-verification: player {} unhappy with {} at c = {}",
                i + 1,
                alloc,
                level
            )));
        }
    }
    Ok(())
}
