//! Valuations: exact set functions over the item set.
//!
//! A valuation is either an explicit table of `2^m` values (indexed by
//! subset mask) or a lazily evaluated formula, used by the constructed
//! instance families so that no `2^m` table has to be materialized.
//! Tables are validated on load: `v(empty) = 0`, monotone, `v(M) > 0`.
//! Formula-backed valuations are monotone by construction and get the two
//! cheap endpoint checks only.

use std::fmt;
use std::sync::Arc;

use crate::bundle::{Bundle, MAX_ITEMS};
use crate::error::{Error, Result};
use crate::value::Value;

#[derive(Clone)]
enum Backing {
    Table(Arc<Vec<Value>>),
    Func {
        label: Arc<str>,
        f: Arc<dyn Fn(Bundle) -> Value + Send + Sync>,
    },
}

/// An immutable valuation over `[m]`. Cheap to clone and safe to share
/// across threads; evaluation never mutates.
#[derive(Clone)]
pub struct Valuation {
    m: usize,
    backing: Backing,
}

impl Valuation {
    /// Builds a table valuation, validating normalization, monotonicity and
    /// `v(M) > 0`.
    pub fn from_table(m: usize, values: Vec<Value>) -> Result<Valuation> {
        if m > MAX_ITEMS {
            return Err(Error::CapExceeded {
                what: "table valuation items",
                requested: m as u64,
                limit: MAX_ITEMS as u64,
            });
        }
        let size = 1usize << m;
        if values.len() != size {
            return Err(Error::InvalidValuation(format!(
                "table has {} entries, expected 2^{m} = {size}",
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidValuation(format!(
                "v(empty) = {}, expected 0",
                values[0]
            )));
        }
        for mask in 0..size {
            for g in 1..=m {
                let bit = 1usize << (g - 1);
                if mask & bit == 0 && values[mask | bit] < values[mask] {
                    return Err(Error::InvalidValuation(format!(
                        "not monotone: v({} + g{g}) = {} < {} = v({})",
                        Bundle::from_mask(mask as u32),
                        values[mask | bit],
                        values[mask],
                        Bundle::from_mask(mask as u32),
                    )));
                }
            }
        }
        if values[size - 1].is_zero() {
            return Err(Error::InvalidValuation("v(M) = 0".into()));
        }
        Ok(Valuation {
            m,
            backing: Backing::Table(Arc::new(values)),
        })
    }

    /// Wraps an evaluation formula. The formula must be monotone and defined
    /// on every subset of `[m]`; only `v(empty) = 0` and `v(M) > 0` are
    /// checked here.
    pub fn from_fn<F>(m: usize, label: &str, f: F) -> Result<Valuation>
    where
        F: Fn(Bundle) -> Value + Send + Sync + 'static,
    {
        if m > MAX_ITEMS {
            return Err(Error::CapExceeded {
                what: "valuation items",
                requested: m as u64,
                limit: MAX_ITEMS as u64,
            });
        }
        if !f(Bundle::EMPTY).is_zero() {
            return Err(Error::InvalidValuation(format!(
                "{label}: v(empty) != 0"
            )));
        }
        if f(Bundle::full(m)).is_zero() {
            return Err(Error::InvalidValuation(format!("{label}: v(M) = 0")));
        }
        Ok(Valuation {
            m,
            backing: Backing::Func {
                label: label.into(),
                f: Arc::new(f),
            },
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self) -> &str {
        match &self.backing {
            Backing::Table(_) => "table",
            Backing::Func { label, .. } => label,
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.backing, Backing::Table(_))
    }

    /// `v(S)`. Panics if `S` is not a subset of `[m]`.
    pub fn eval(&self, s: Bundle) -> Value {
        assert!(s.in_range(self.m), "bundle {s} leaves [{}]", self.m);
        match &self.backing {
            Backing::Table(t) => t[s.mask() as usize].clone(),
            Backing::Func { f, .. } => f(s),
        }
    }

    /// `v(M)`.
    pub fn grand_value(&self) -> Value {
        self.eval(Bundle::full(self.m))
    }

    /// Marginal value `v(S + g) - v(S)`. Panics if `g` is already in `S`.
    pub fn marginal(&self, s: Bundle, g: usize) -> Value {
        assert!(
            g >= 1 && g <= self.m && !s.contains(g),
            "item g{g} must be outside {s} and inside [{}]",
            self.m
        );
        self.eval(s.with(g))
            .checked_sub(&self.eval(s))
            .expect("monotone valuation has nonnegative marginals")
    }

    /// Per-position marginals of `S` along `ordering` (a permutation of
    /// `1..=m`): position `k` holds `v(S_<=k) - v(S_<=k-1)`, which is zero
    /// whenever the item at position `k` is outside `S`.
    pub fn prefix_deltas(&self, s: Bundle, ordering: &[usize]) -> Result<PrefixDeltas> {
        if !is_permutation(ordering, self.m) {
            return Err(Error::Precondition(format!(
                "ordering {ordering:?} is not a permutation of 1..={}",
                self.m
            )));
        }
        let mut deltas = Vec::with_capacity(self.m);
        let mut prefix = Bundle::EMPTY;
        let mut prev = Value::zero();
        for &g in ordering {
            if s.contains(g) {
                prefix = prefix.with(g);
                let cur = self.eval(prefix);
                deltas.push(
                    cur.checked_sub(&prev)
                        .expect("monotone valuation has nonnegative marginals"),
                );
                prev = cur;
            } else {
                deltas.push(Value::zero());
            }
        }
        Ok(PrefixDeltas {
            ordering: ordering.to_vec(),
            deltas,
        })
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({}, m={})", self.label(), self.m)
    }
}

/// The identity ordering `1..=m`.
pub fn natural_ordering(m: usize) -> Vec<usize> {
    (1..=m).collect()
}

fn is_permutation(ordering: &[usize], m: usize) -> bool {
    ordering.len() == m && {
        let mut seen = vec![false; m + 1];
        ordering.iter().all(|&g| {
            (1..=m).contains(&g) && !std::mem::replace(&mut seen[g], true)
        })
    }
}

/// Marginals of a bundle along a fixed ordering; they sum to `v(S)`.
#[derive(Clone, Debug)]
pub struct PrefixDeltas {
    ordering: Vec<usize>,
    deltas: Vec<Value>,
}

impl PrefixDeltas {
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn deltas(&self) -> &[Value] {
        &self.deltas
    }

    pub fn sum(&self) -> Value {
        let mut acc = Value::zero();
        for d in &self.deltas {
            acc += d;
        }
        acc
    }

    /// The additive proxy built from these deltas: the sum over positions
    /// whose item lies in `S`.
    pub fn proxy_sum(&self, s: Bundle) -> Value {
        let mut acc = Value::zero();
        for (pos, &g) in self.ordering.iter().enumerate() {
            if s.contains(g) {
                acc += &self.deltas[pos];
            }
        }
        acc
    }
}
