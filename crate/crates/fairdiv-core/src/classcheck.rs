//! Exhaustive valuation-class checking.
//!
//! Verifies monotonicity, normalization, subadditivity and submodularity by
//! enumeration, returning the first violating witness for any failed flag.
//! Subadditivity is checked over disjoint pairs when the valuation is
//! monotone (overlapping pairs then follow), and submodularity through the
//! pairwise exchange condition `v(S+g) - v(S) >= v(S+h+g) - v(S+h)`, which
//! is equivalent to the nested-set definition.

use serde::Serialize;

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::valuation::Valuation;
use crate::value::Value;

/// Cap for the exhaustive checks; subadditivity enumerates `3^m` pairs.
pub const CLASS_CHECK_MAX_ITEMS: usize = 16;

/// Outcome of [`check_class`]; `false` flags carry a witness.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub monotone: bool,
    pub normalized: bool,
    pub subadditive: bool,
    pub submodular: bool,
    /// `(S, g)` with `v(S + g) < v(S)`.
    pub monotone_witness: Option<(Bundle, usize)>,
    /// Disjoint `(S, T)` with `v(S + T) > v(S) + v(T)`.
    pub subadditive_witness: Option<(Bundle, Bundle)>,
    /// `(X, Y, g)` with `X` a subset of `Y`, `g` outside `Y`, and
    /// `marginal(X, g) < marginal(Y, g)`.
    pub submodular_witness: Option<(Bundle, Bundle, usize)>,
}

/// Exhaustively classifies a valuation with `m <= 16`.
pub fn check_class(v: &Valuation) -> Result<ClassReport> {
    let m = v.m();
    if m > CLASS_CHECK_MAX_ITEMS {
        return Err(Error::CapExceeded {
            what: "class check items",
            requested: m as u64,
            limit: CLASS_CHECK_MAX_ITEMS as u64,
        });
    }
    let size = 1usize << m;
    let table: Vec<Value> = (0..size)
        .map(|mask| v.eval(Bundle::from_mask(mask as u32)))
        .collect();

    let normalized = table[0].is_zero();

    let mut monotone = true;
    let mut monotone_witness = None;
    'mono: for mask in 0..size {
        for g in 1..=m {
            let bit = 1usize << (g - 1);
            if mask & bit == 0 && table[mask | bit] < table[mask] {
                monotone = false;
                monotone_witness = Some((Bundle::from_mask(mask as u32), g));
                break 'mono;
            }
        }
    }

    let (subadditive, subadditive_witness) = check_subadditive(&table, size, monotone);
    let (submodular, submodular_witness) = check_submodular(&table, m);

    Ok(ClassReport {
        monotone,
        normalized,
        subadditive,
        submodular,
        monotone_witness,
        subadditive_witness,
        submodular_witness,
    })
}

fn check_subadditive(
    table: &[Value],
    size: usize,
    monotone: bool,
) -> (bool, Option<(Bundle, Bundle)>) {
    if monotone {
        // Disjoint pairs suffice: for overlapping S, T monotonicity gives
        // v(S+T) <= v(S) + v(T \ S) <= v(S) + v(T).
        for s in 1..size {
            let rest = (size - 1) & !s;
            let mut t = rest;
            while t != 0 {
                if table[s | t] > &table[s] + &table[t] {
                    return (false, Some((Bundle::from_mask(s as u32), Bundle::from_mask(t as u32))));
                }
                t = (t - 1) & rest;
            }
        }
    } else {
        for s in 1..size {
            for t in 1..size {
                if table[s | t] > &table[s] + &table[t] {
                    return (false, Some((Bundle::from_mask(s as u32), Bundle::from_mask(t as u32))));
                }
            }
        }
    }
    (true, None)
}

fn check_submodular(table: &[Value], m: usize) -> (bool, Option<(Bundle, Bundle, usize)>) {
    let size = 1usize << m;
    for s in 0..size {
        for g in 1..=m {
            let gbit = 1usize << (g - 1);
            if s & gbit != 0 {
                continue;
            }
            for h in 1..=m {
                let hbit = 1usize << (h - 1);
                if h == g || s & hbit != 0 {
                    continue;
                }
                // marginal of g on S vs on S+h
                let lhs_hi = &table[s | gbit];
                let lhs_lo = &table[s];
                let rhs_hi = &table[s | hbit | gbit];
                let rhs_lo = &table[s | hbit];
                // v(S+g) - v(S) >= v(S+h+g) - v(S+h), cross-added to avoid
                // signed differences
                if lhs_hi + rhs_lo < rhs_hi + lhs_lo {
                    return (
                        false,
                        Some((
                            Bundle::from_mask(s as u32),
                            Bundle::from_mask((s | hbit) as u32),
                            g,
                        )),
                    );
                }
            }
        }
    }
    (true, None)
}
