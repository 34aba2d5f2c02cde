//! Shared fixtures for unit tests.

use crate::valuation::Valuation;
use crate::value::Value;

pub fn table_from_ints(m: usize, vals: &[u64]) -> Valuation {
    Valuation::from_table(m, vals.iter().map(|&x| Value::from_int(x)).collect()).unwrap()
}

/// Three goods with prefix values 2, 2, 3 along the natural order, so the
/// delta row is (2, 0, 1).
pub fn ramp_valuation() -> Valuation {
    table_from_ints(3, &[0, 2, 1, 2, 1, 2, 2, 3])
}

/// Three goods with singleton values 2, 4, 5 and v(M) = 10; submodular.
pub fn staircase_valuation() -> Valuation {
    table_from_ints(3, &[0, 2, 4, 6, 5, 7, 9, 10])
}

/// Two goods; player 1 weighs them 7/2 (9 together), player 2 weighs them
/// 4/1 (4 together). No 1/2-EF or 2/3-Prop allocation exists.
pub fn lopsided_pair() -> (Valuation, Valuation) {
    (table_from_ints(2, &[0, 7, 2, 9]), table_from_ints(2, &[0, 4, 1, 4]))
}

/// Three goods; v(S) = 10 when g1 is present, |S| otherwise. Submodular,
/// with a single heavy item.
pub fn dominant_item_valuation() -> Valuation {
    table_from_ints(3, &[0, 10, 1, 10, 1, 10, 2, 10])
}
