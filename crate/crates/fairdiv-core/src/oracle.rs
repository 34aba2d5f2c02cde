//! Brute-force ground truth.
//!
//! Deliberately naive: every query enumerates all `n^m` ordered item
//! assignments (an assignment code's base-`n` digit `k` names the player
//! receiving item `k+1`), so the results serve as the reference the
//! protocols are tested against. No pruning.

use crate::bundle::{Allocation, Bundle};
use crate::error::{Error, Result};
use crate::fairness::{FairnessSpec, Property};
use crate::valuation::Valuation;
use crate::value::Value;

/// Cap on `n^m` enumeration size.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 1 << 24;

/// Result of an exhaustive search: whether a `c`-fair allocation exists (and
/// the first one in assignment order), plus the optimum `c*` with an
/// allocation achieving it.
#[derive(Clone, Debug)]
pub struct OracleVerdict {
    pub exists: bool,
    pub witness: Option<Allocation>,
    pub c_star: Value,
    pub best: Allocation,
}

fn assignment_count(n: usize, m: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..m {
        total = total
            .checked_mul(n as u64)
            .filter(|&t| t <= DEFAULT_ASSIGNMENT_CAP)
            .ok_or(Error::CapExceeded {
                what: "oracle assignments",
                requested: u64::MAX,
                limit: DEFAULT_ASSIGNMENT_CAP,
            })?;
    }
    Ok(total)
}

fn decode_allocation(code: u64, n: usize, m: usize) -> Allocation {
    let mut masks = vec![0u32; n];
    let mut rest = code;
    for item in 0..m {
        let player = (rest % n as u64) as usize;
        rest /= n as u64;
        masks[player] |= 1 << item;
    }
    Allocation::new(masks.into_iter().map(Bundle::from_mask).collect(), m)
        .expect("decoded assignment is a partition")
}

/// Iterates all ordered allocations in ascending assignment-code order.
pub fn all_allocations(n: usize, m: usize) -> Result<impl Iterator<Item = Allocation>> {
    let total = assignment_count(n, m)?;
    Ok((0..total).map(move |code| decode_allocation(code, n, m)))
}

/// The best fairness level a player gets from an allocation, capped at 1.
fn player_score(
    v: &Valuation,
    player: usize,
    alloc: &Allocation,
    property: Property,
    n: usize,
    mms: Option<&Value>,
) -> Value {
    let own = v.eval(alloc.bundle(player));
    match property {
        Property::Ef => {
            let mut score = Value::one();
            for j in 0..alloc.n() {
                if j == player {
                    continue;
                }
                let other = v.eval(alloc.bundle(j));
                let ratio = match own.checked_div(&other) {
                    Some(r) => r.capped_at_one(),
                    None => Value::one(), // v_i(A_j) = 0 never causes envy
                };
                score = score.min(ratio);
            }
            score
        }
        Property::Prop => own
            .scaled(n as u64)
            .checked_div(&v.grand_value())
            .expect("v(M) > 0")
            .capped_at_one(),
        Property::Mms => {
            let mms = mms.expect("mms precomputed by caller");
            match own.checked_div(mms) {
                Some(r) => r.capped_at_one(),
                None => Value::one(), // a zero maximin share is always met
            }
        }
    }
}

fn scan(
    vs: &[Valuation],
    property: Property,
    c: &Value,
    n: usize,
    mms: Option<&[Value]>,
) -> Result<OracleVerdict> {
    let m = vs[0].m();
    for v in vs {
        if v.m() != m {
            return Err(Error::Precondition("valuations disagree on m".into()));
        }
    }
    if vs.len() != n {
        return Err(Error::Precondition(format!(
            "{} valuations for n = {n}",
            vs.len()
        )));
    }
    let mut witness: Option<Allocation> = None;
    let mut best: Option<(Value, Allocation)> = None;
    for alloc in all_allocations(n, m)? {
        let mut score: Option<Value> = None;
        for (i, v) in vs.iter().enumerate() {
            let s = player_score(v, i, &alloc, property, n, mms.map(|mm| &mm[i]));
            score = Some(match score {
                None => s,
                Some(cur) => cur.min(s),
            });
        }
        let score = score.expect("n >= 1");
        if witness.is_none() && score >= *c {
            witness = Some(alloc.clone());
        }
        match &best {
            Some((cur, _)) if *cur >= score => {}
            _ => best = Some((score, alloc)),
        }
    }
    let (c_star, best) = best.expect("at least one allocation");
    Ok(OracleVerdict {
        exists: witness.is_some(),
        witness,
        c_star,
        best,
    })
}

/// Exhaustive search for a `c`-`P` allocation; also reports `c*`. For MMS
/// specs the maximin shares are computed first.
pub fn exists_fair(vs: &[Valuation], spec: &FairnessSpec) -> Result<OracleVerdict> {
    match spec.property {
        Property::Mms => {
            if spec.n != vs.len() {
                return Err(Error::Precondition(format!(
                    "{} valuations for n = {}",
                    vs.len(),
                    spec.n
                )));
            }
            exists_mms(vs, &spec.c)
        }
        p => scan(vs, p, &spec.c, spec.n, None),
    }
}

/// The optimum `c*` for `P` and an allocation achieving it.
pub fn c_star(vs: &[Valuation], property: Property, n: usize) -> Result<(Value, Allocation)> {
    let spec = FairnessSpec::new(property, Value::zero(), n)?;
    let verdict = exists_fair(vs, &spec)?;
    Ok((verdict.c_star, verdict.best))
}

/// The player's maximin share over `n` bundles: the max over ordered
/// partitions of the minimum bundle value.
pub fn mms_value(v: &Valuation, n: usize) -> Result<Value> {
    let mut best = Value::zero();
    for alloc in all_allocations(n, v.m())? {
        let worst = (0..n)
            .map(|i| v.eval(alloc.bundle(i)))
            .min()
            .expect("n >= 1");
        best = best.max(worst);
    }
    Ok(best)
}

/// Exhaustive `c`-MMS search: computes each player's maximin share, then
/// scans allocations for `v_i(A_i) >= c * mms_i` for all `i`.
pub fn exists_mms(vs: &[Valuation], c: &Value) -> Result<OracleVerdict> {
    let n = vs.len();
    let mms: Vec<Value> = vs
        .iter()
        .map(|v| mms_value(v, n))
        .collect::<Result<_>>()?;
    scan(vs, Property::Mms, c, n, Some(&mms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{lopsided_pair, staircase_valuation};

    #[test]
    fn one_item_two_players_has_no_fair_allocation() {
        let v = Valuation::from_table(1, vec![Value::zero(), Value::one()]).unwrap();
        let spec = FairnessSpec::new(Property::Prop, Value::one(), 2).unwrap();
        let verdict = exists_fair(&[v.clone(), v], &spec).unwrap();
        assert!(!verdict.exists);
        assert_eq!(verdict.c_star, Value::zero());
    }

    #[test]
    fn twin_staircase_has_proportional_split() {
        let v = staircase_valuation();
        let spec = FairnessSpec::new(Property::Prop, Value::one(), 2).unwrap();
        let verdict = exists_fair(&[v.clone(), v], &spec).unwrap();
        assert!(verdict.exists);
        let w = verdict.witness.unwrap();
        assert_eq!(w.bundle(0), Bundle::singleton(3));
        assert_eq!(w.bundle(1), Bundle::from_items(&[1, 2]));
    }

    #[test]
    fn lopsided_pair_optima() {
        let (v1, v2) = lopsided_pair();
        let (c_ef, best_ef) = c_star(&[v1.clone(), v2.clone()], Property::Ef, 2).unwrap();
        assert_eq!(c_ef, Value::new(2, 7).unwrap());
        assert_eq!(best_ef.bundle(0), Bundle::singleton(2));
        let (c_prop, best_prop) = c_star(&[v1, v2], Property::Prop, 2).unwrap();
        assert_eq!(c_prop, Value::new(1, 2).unwrap());
        assert_eq!(best_prop.bundle(0), Bundle::singleton(1));
    }

    #[test]
    fn mms_examples() {
        let single = Valuation::from_table(1, vec![Value::zero(), Value::one()]).unwrap();
        assert_eq!(mms_value(&single, 2).unwrap(), Value::zero());

        let (v1, _) = lopsided_pair();
        assert_eq!(mms_value(&v1, 2).unwrap(), Value::from_int(2));

        let ones =
            Valuation::from_fn(2, "ones", |s| Value::from_int(s.len() as u64)).unwrap();
        let verdict = exists_mms(&[ones.clone(), ones], &Value::one()).unwrap();
        assert!(verdict.exists);
    }

    #[test]
    fn witnesses_reverify() {
        let (v1, v2) = lopsided_pair();
        let spec = FairnessSpec::new(Property::Ef, Value::new(2, 7).unwrap(), 2).unwrap();
        let verdict = exists_fair(&[v1.clone(), v2.clone()], &spec).unwrap();
        let w = verdict.witness.unwrap();
        for (i, v) in [v1, v2].iter().enumerate() {
            assert!(crate::fairness::is_happy(v, i, &w, &spec, None).unwrap());
        }
    }

    #[test]
    fn cap_enforced() {
        let v = Valuation::from_fn(20, "wide", |s| Value::from_int(s.len() as u64)).unwrap();
        assert!(matches!(
            exists_fair(&[v.clone(), v.clone(), v], &FairnessSpec::new(Property::Prop, Value::one(), 3).unwrap()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
