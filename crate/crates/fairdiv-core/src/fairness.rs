//! Fairness properties, happiness predicates, and per-bundle optima.
//!
//! A player is `(c,P)`-happy with an allocation when her side of the
//! fairness condition holds at level `c`:
//!
//! - EF:   `v_i(A_i) >= c * v_i(A_j)` for every other player `j`
//! - Prop: `n * v_i(A_i) >= c * v_i(M)`
//! - MMS:  `v_i(A_i) >= c * mms_i` (the maximin share comes from the oracle)
//!
//! For two players, happiness with a bundle `S` means happiness with the
//! allocation `(S, M \ S)` from the owner's seat.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bundle::{Allocation, Bundle};
use crate::error::{Error, Result};
use crate::valuation::Valuation;
use crate::value::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Ef,
    Prop,
    Mms,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Ef => "EF",
            Property::Prop => "Prop",
            Property::Mms => "MMS",
        })
    }
}

/// A fairness target: property, approximation constant `c` in `[0,1]`, and
/// player count.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FairnessSpec {
    pub property: Property,
    pub c: Value,
    pub n: usize,
}

impl FairnessSpec {
    pub fn new(property: Property, c: Value, n: usize) -> Result<FairnessSpec> {
        if c > Value::one() {
            return Err(Error::InvalidValue(format!("c = {c} exceeds 1")));
        }
        if n < 2 {
            return Err(Error::Precondition(format!("n = {n} players, need >= 2")));
        }
        Ok(FairnessSpec { property, c, n })
    }
}

/// Whether `player` is `(c,P)`-happy with `alloc`. For MMS the player's
/// maximin share must be supplied.
pub fn is_happy(
    v: &Valuation,
    player: usize,
    alloc: &Allocation,
    spec: &FairnessSpec,
    mms: Option<&Value>,
) -> Result<bool> {
    if alloc.n() != spec.n {
        return Err(Error::InvalidAllocation(format!(
            "allocation has {} bundles, spec says {}",
            alloc.n(),
            spec.n
        )));
    }
    if player >= alloc.n() {
        return Err(Error::Precondition(format!(
            "player {player} out of range for n = {}",
            alloc.n()
        )));
    }
    let own = v.eval(alloc.bundle(player));
    match spec.property {
        Property::Ef => {
            for j in 0..alloc.n() {
                if j != player && own < &spec.c * &v.eval(alloc.bundle(j)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Property::Prop => Ok(own.scaled(spec.n as u64) >= &spec.c * &v.grand_value()),
        Property::Mms => {
            let mms = mms.ok_or_else(|| {
                Error::Precondition("MMS happiness needs the player's maximin share".into())
            })?;
            Ok(own >= &spec.c * mms)
        }
    }
}

/// Two-player EF happiness with own bundle `s`: `v(s) >= c * v(M \ s)`.
pub fn happy_ef2(v: &Valuation, s: Bundle, c: &Value) -> bool {
    v.eval(s) >= c * &v.eval(s.complement(v.m()))
}

/// Prop happiness with own bundle `s` among `n` players:
/// `n * v(s) >= c * v(M)`.
pub fn happy_prop(v: &Valuation, s: Bundle, c: &Value, n: usize) -> bool {
    v.eval(s).scaled(n as u64) >= c * &v.grand_value()
}

/// Bundle-level happiness (two-player shorthand for EF, any `n` for Prop).
pub fn happy_with_bundle(
    v: &Valuation,
    s: Bundle,
    property: Property,
    c: &Value,
    n: usize,
) -> Result<bool> {
    match property {
        Property::Ef => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "bundle-level EF happiness is a two-player notion".into(),
                ));
            }
            Ok(happy_ef2(v, s, c))
        }
        Property::Prop => Ok(happy_prop(v, s, c, n)),
        Property::Mms => Err(Error::Unsupported(
            "bundle-level MMS happiness needs the maximin share; use the oracle".into(),
        )),
    }
}

/// The maximum `c' <= 1` at which the player is `c'`-happy with `s`.
///
/// EF (two players): `min(1, v(s) / v(M \ s))` with `0/0` counted as fully
/// non-envious, so 1. Prop: `min(1, n * v(s) / v(M))`.
pub fn bestc(v: &Valuation, s: Bundle, property: Property, n: usize) -> Result<Value> {
    match property {
        Property::Ef => {
            if n != 2 {
                return Err(Error::Unsupported("bestc for EF is two-player".into()));
            }
            let num = v.eval(s);
            let den = v.eval(s.complement(v.m()));
            Ok(match num.checked_div(&den) {
                Some(ratio) => ratio.capped_at_one(),
                None => Value::one(),
            })
        }
        Property::Prop => {
            let num = v.eval(s).scaled(n as u64);
            let den = v.grand_value();
            Ok(num
                .checked_div(&den)
                .expect("v(M) > 0 by valuation invariant")
                .capped_at_one())
        }
        Property::Mms => Err(Error::Unsupported("bestc is defined for EF and Prop".into())),
    }
}

/// Among bundles the player is not `c`-happy with (`bestc < c`), the one she
/// is happiest with, plus that `bestc`. Ties break to the lexicographically
/// smallest bundle. Fails for `c = 0`, where the domain is empty.
pub fn s_star(
    v: &Valuation,
    property: Property,
    c: &Value,
    n: usize,
) -> Result<(Bundle, Value)> {
    if c.is_zero() {
        return Err(Error::EmptyDomain(
            "every bundle is 0-happy; s_star undefined at c = 0".into(),
        ));
    }
    let mut best: Option<(Bundle, Value)> = None;
    for s in Bundle::all(v.m()) {
        let b = bestc(v, s, property, n)?;
        if b < *c {
            match &best {
                Some((_, cur)) if *cur >= b => {}
                _ => best = Some((s, b)),
            }
        }
    }
    best.ok_or_else(|| Error::Internal("no bundle with bestc < c, yet c > 0".into()))
}

/// The fairness level guaranteed for `P` when each player's bundle is worth
/// at least `alpha` times the other bundle: `eta_EF(alpha) = alpha` and
/// `eta_Prop(alpha) = 2*alpha / (alpha + 1)`.
pub fn eta(property: Property, alpha: &Value) -> Result<Value> {
    if alpha.is_zero() || *alpha > Value::one() {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} outside (0, 1]"
        )));
    }
    match property {
        Property::Ef => Ok(alpha.clone()),
        Property::Prop => {
            let num = alpha.scaled(2);
            let den = alpha + &Value::one();
            Ok(num.checked_div(&den).expect("alpha + 1 > 0"))
        }
        Property::Mms => Err(Error::Unsupported("eta is defined for EF and Prop".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{dominant_item_valuation, lopsided_pair};

    #[test]
    fn happiness_examples() {
        let (v1, v2) = lopsided_pair();
        let a = Allocation::new(vec![Bundle::singleton(2), Bundle::singleton(1)], 2).unwrap();
        let ef = FairnessSpec::new(Property::Ef, Value::new(2, 7).unwrap(), 2).unwrap();
        assert!(is_happy(&v1, 0, &a, &ef, None).unwrap());

        let prop = FairnessSpec::new(Property::Prop, Value::new(1, 2).unwrap(), 2).unwrap();
        let b = Allocation::new(vec![Bundle::singleton(1), Bundle::singleton(2)], 2).unwrap();
        assert!(is_happy(&v2, 1, &b, &prop, None).unwrap());

        // a player holding everything is happy under any property and c
        let all = Allocation::new(vec![Bundle::full(2), Bundle::EMPTY], 2).unwrap();
        for p in [Property::Ef, Property::Prop] {
            let spec = FairnessSpec::new(p, Value::one(), 2).unwrap();
            assert!(is_happy(&v1, 0, &all, &spec, None).unwrap());
        }
        let mms_spec = FairnessSpec::new(Property::Mms, Value::one(), 2).unwrap();
        assert!(is_happy(&v1, 0, &all, &mms_spec, Some(&Value::from_int(2))).unwrap());
        assert!(is_happy(&v1, 0, &all, &mms_spec, None).is_err());
    }

    #[test]
    fn bestc_examples() {
        let (v1, v2) = lopsided_pair();
        assert_eq!(
            bestc(&v1, Bundle::singleton(2), Property::Ef, 2).unwrap(),
            Value::new(2, 7).unwrap()
        );
        assert_eq!(
            bestc(&v2, Bundle::singleton(2), Property::Prop, 2).unwrap(),
            Value::new(1, 2).unwrap()
        );
        for p in [Property::Ef, Property::Prop] {
            assert_eq!(bestc(&v1, Bundle::full(2), p, 2).unwrap(), Value::one());
        }
        // 0/0 counts as fully non-envious
        let v = Valuation::from_table(
            2,
            vec![Value::zero(), Value::zero(), Value::zero(), Value::one()],
        )
        .unwrap();
        assert_eq!(bestc(&v, Bundle::EMPTY, Property::Ef, 2).unwrap(), Value::zero());
        assert_eq!(
            bestc(&v, Bundle::singleton(1), Property::Ef, 2).unwrap(),
            Value::one()
        );
    }

    #[test]
    fn s_star_examples() {
        let (v1, _) = lopsided_pair();
        let (s, b) = s_star(&v1, Property::Ef, &Value::new(1, 2).unwrap(), 2).unwrap();
        assert_eq!(s, Bundle::singleton(2));
        assert_eq!(b, Value::new(2, 7).unwrap());

        // one item, positive value: only the empty bundle stays below c = 1
        let v = Valuation::from_table(1, vec![Value::zero(), Value::one()]).unwrap();
        let (s, b) = s_star(&v, Property::Prop, &Value::one(), 2).unwrap();
        assert_eq!(s, Bundle::EMPTY);
        assert_eq!(b, Value::zero());

        let dom = dominant_item_valuation();
        let (s, b) = s_star(&dom, Property::Ef, &Value::new(1, 2).unwrap(), 2).unwrap();
        assert_eq!(s, Bundle::from_items(&[2, 3]));
        assert_eq!(b, Value::new(2, 10).unwrap());

        assert!(s_star(&v1, Property::Ef, &Value::zero(), 2).is_err());
    }

    #[test]
    fn eta_examples() {
        let half = Value::new(1, 2).unwrap();
        assert_eq!(eta(Property::Ef, &half).unwrap(), half);
        assert_eq!(eta(Property::Prop, &half).unwrap(), Value::new(2, 3).unwrap());
        assert_eq!(eta(Property::Prop, &Value::one()).unwrap(), Value::one());
        assert!(eta(Property::Ef, &Value::zero()).is_err());
        assert!(eta(Property::Ef, &Value::from_int(2)).is_err());
    }
}
