//! Minimal bundles, the minimal-bundle graph, and the cut conditions.
//!
//! A bundle is minimal for a player when she is `c`-happy with it but not
//! with any single-item deletion. The graph on minimal bundles has an edge
//! `(S, T)` whenever some `g` in `S` satisfies `T subset (M \ S) + {g}`;
//! under the cut-failed condition the witnessing item is unique, lies in
//! `T`, and edges come in labelled symmetric pairs. Special edges are those
//! whose labelled item has marginal value at least `((1-c)/2) * v(M)` when
//! re-added to its bundle.

use num::BigInt;
use num::One;

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::fairness::{happy_with_bundle, Property};
use crate::valuation::Valuation;
use crate::value::Value;

/// Cap for subset enumerations (`2^m` happiness tests).
pub const ENUMERATION_MAX_ITEMS: usize = 20;

fn check_enumeration_cap(m: usize) -> Result<()> {
    if m > ENUMERATION_MAX_ITEMS {
        return Err(Error::CapExceeded {
            what: "subset enumeration items",
            requested: m as u64,
            limit: ENUMERATION_MAX_ITEMS as u64,
        });
    }
    Ok(())
}

/// The player's minimal bundles, deduplicated and in ascending mask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBundleSet {
    bundles: Vec<Bundle>,
}

impl MinimalBundleSet {
    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn len(&self) -> usize {
        self.bundles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bundles.is_empty()
    }

    pub fn contains(&self, s: Bundle) -> bool {
        self.bundles.binary_search(&s).is_ok()
    }
}

/// Enumerates all minimal bundles of `v` for `(property, c)` with `n`
/// players (EF requires `n = 2`).
pub fn minimal_bundles(
    v: &Valuation,
    property: Property,
    c: &Value,
    n: usize,
) -> Result<MinimalBundleSet> {
    check_enumeration_cap(v.m())?;
    let mut bundles = Vec::new();
    for s in Bundle::all(v.m()) {
        if !happy_with_bundle(v, s, property, c, n)? {
            continue;
        }
        let mut minimal = true;
        for g in s.items() {
            if happy_with_bundle(v, s.without(g), property, c, n)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            bundles.push(s);
        }
    }
    Ok(MinimalBundleSet { bundles })
}

/// For every split, the player is happy with at least one side.
pub fn check_condition1(v: &Valuation, property: Property, c: &Value, n: usize) -> Result<bool> {
    check_enumeration_cap(v.m())?;
    for s in Bundle::all(v.m()) {
        if !happy_with_bundle(v, s, property, c, n)?
            && !happy_with_bundle(v, s.complement(v.m()), property, c, n)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No split leaves the player happy with both sides (the cut-failed
/// condition; protocols fall through step 1 exactly when this holds).
pub fn check_condition2(v: &Valuation, property: Property, c: &Value, n: usize) -> Result<bool> {
    Ok(find_double_happy(v, property, c, n)?.is_none())
}

/// The lexicographically smallest bundle the player is happy to keep either
/// side of, if any.
pub fn find_double_happy(
    v: &Valuation,
    property: Property,
    c: &Value,
    n: usize,
) -> Result<Option<Bundle>> {
    check_enumeration_cap(v.m())?;
    for s in Bundle::all(v.m()) {
        if happy_with_bundle(v, s, property, c, n)?
            && happy_with_bundle(v, s.complement(v.m()), property, c, n)?
        {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A directed edge of the minimal-bundle graph.
#[derive(Clone, Debug)]
pub struct MbEdge {
    pub from: Bundle,
    pub to: Bundle,
    /// The witnessing item `g(S,T)`; smallest valid one if ambiguous.
    pub label: usize,
    /// More than one item witnesses the containment (cannot happen under
    /// the cut-failed condition).
    pub label_ambiguous: bool,
    /// Whether `marginal(from \ {label}, label) >= ((1-c)/2) * v(M)`.
    pub special: bool,
}

#[derive(Clone, Debug)]
pub struct MinimalBundleGraph {
    pub vertices: Vec<Bundle>,
    pub edges: Vec<MbEdge>,
    /// `((1-c)/2) * v(M)`, the special-edge marginal threshold.
    pub special_threshold: Value,
    /// Label-ambiguity diagnostics; nonempty only when the cut-failed
    /// condition does not hold.
    pub diagnostics: Vec<String>,
}

impl MinimalBundleGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn special_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.special).count()
    }

    pub fn out_degree(&self, s: Bundle) -> usize {
        self.edges.iter().filter(|e| e.from == s).count()
    }
}

/// Builds the minimal-bundle graph for `(property, c)` with two players.
/// Self-loops are kept (a singleton minimal bundle always has one).
pub fn build_mb_graph(
    v: &Valuation,
    property: Property,
    c: &Value,
) -> Result<MinimalBundleGraph> {
    let set = minimal_bundles(v, property, c, 2)?;
    let grand = v.grand_value();
    let one_minus_c = Value::one()
        .checked_sub(c)
        .ok_or_else(|| Error::InvalidValue(format!("c = {c} exceeds 1")))?;
    let special_threshold = &(one_minus_c * Value::new(1, 2).unwrap()) * &grand;

    let mut edges = Vec::new();
    let mut diagnostics = Vec::new();
    for &s in set.bundles() {
        for &t in set.bundles() {
            // T subset (M \ S) + {g} for some g in S  <=>  T & S subset {g}
            let overlap = t.intersection(s);
            let label = match overlap.len() {
                0 => {
                    // any item of S witnesses; ambiguous unless |S| = 1
                    match s.items().next() {
                        Some(g) => {
                            if s.len() > 1 {
                                diagnostics.push(format!(
                                    "edge ({s}, {t}) has {} witnessing items",
                                    s.len()
                                ));
                            }
                            Some((g, s.len() > 1))
                        }
                        None => None,
                    }
                }
                1 => overlap.items().next().map(|g| (g, false)),
                _ => None,
            };
            if let Some((g, ambiguous)) = label {
                let special = {
                    let from_side = v.marginal(s.without(g), g);
                    from_side >= special_threshold
                };
                edges.push(MbEdge {
                    from: s,
                    to: t,
                    label: g,
                    label_ambiguous: ambiguous,
                    special,
                });
            }
        }
    }
    Ok(MinimalBundleGraph {
        vertices: set.bundles.clone(),
        edges,
        special_threshold,
        diagnostics,
    })
}

/// Structural facts that hold for the graph under the cut-failed condition
/// (plus submodularity where noted); each violation is reported as text.
#[derive(Clone, Debug, Default)]
pub struct GraphLemmaReport {
    pub violations: Vec<String>,
}

impl GraphLemmaReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, on a built graph: label membership `g(S,T) in T`, label
/// uniqueness, edge symmetry with equal labels, `out-degree(S) >= |S|`,
/// `|E+| >= |E| / 2`, and the marginal lower bound
/// `max(marginal(S \ {g}, g), marginal(M \ S, g)) >= ((1-c)/2) * v(M)`
/// for every minimal `S` and `g in S`.
pub fn verify_graph_lemmas(v: &Valuation, graph: &MinimalBundleGraph) -> GraphLemmaReport {
    let mut report = GraphLemmaReport::default();
    let m = v.m();

    for e in &graph.edges {
        if e.label_ambiguous {
            report
                .violations
                .push(format!("edge ({}, {}) label not unique", e.from, e.to));
        }
        if !e.to.contains(e.label) {
            report.violations.push(format!(
                "edge ({}, {}) label g{} is outside the target",
                e.from, e.to, e.label
            ));
        }
        let reverse = graph
            .edges
            .iter()
            .find(|r| r.from == e.to && r.to == e.from);
        match reverse {
            None => report.violations.push(format!(
                "edge ({}, {}) has no reverse edge",
                e.from, e.to
            )),
            Some(r) if r.label != e.label => report.violations.push(format!(
                "edge ({}, {}) labelled g{}, reverse labelled g{}",
                e.from, e.to, e.label, r.label
            )),
            _ => {}
        }
    }

    for &s in &graph.vertices {
        if graph.out_degree(s) < s.len() {
            report.violations.push(format!(
                "vertex {s} has out-degree {} < |S| = {}",
                graph.out_degree(s),
                s.len()
            ));
        }
        for g in s.items() {
            let near = v.marginal(s.without(g), g);
            let far = v.marginal(s.complement(m), g);
            if near.max(far) < graph.special_threshold {
                report.violations.push(format!(
                    "minimal bundle {s}, item g{g}: both marginals fall below the threshold {}",
                    graph.special_threshold
                ));
            }
        }
    }

    if graph.special_edge_count() * 2 < graph.edge_count() {
        report.violations.push(format!(
            "only {} of {} edges are special",
            graph.special_edge_count(),
            graph.edge_count()
        ));
    }

    report
}

/// Whether `count < 2 * (m+1)^(8/(1-c))`, evaluated exactly: with
/// `c = p/q` in lowest terms the test is
/// `count^(q-p) < 2^(q-p) * (m+1)^(8q)`.
pub fn count_bound_holds(count: usize, m: usize, c: &Value) -> bool {
    let p = c.numer().clone();
    let q = c.denom().clone();
    let gap = &q - &p; // q * (1 - c)
    if gap <= BigInt::from(0) {
        // c = 1: the bound is vacuous (infinite exponent)
        return true;
    }
    let gap_u = gap
        .to_biguint()
        .expect("q > p for c < 1")
        .try_into()
        .unwrap_or(u32::MAX);
    let eight_q: u32 = (BigInt::from(8) * &q)
        .to_biguint()
        .expect("positive")
        .try_into()
        .unwrap_or(u32::MAX);
    let lhs = BigInt::from(count).pow(gap_u);
    let rhs = (BigInt::one() << gap_u as usize) * BigInt::from(m as u64 + 1).pow(eight_q);
    lhs < rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{dominant_item_valuation, staircase_valuation};

    #[test]
    fn staircase_minimal_bundles() {
        let v = staircase_valuation();
        let set = minimal_bundles(&v, Property::Prop, &Value::one(), 2).unwrap();
        assert_eq!(
            set.bundles(),
            &[Bundle::from_items(&[1, 2]), Bundle::singleton(3)]
        );
    }

    #[test]
    fn all_ones_additive_minimal_bundles_are_halves() {
        let m = 4;
        let v = Valuation::from_fn(m, "ones", |s| Value::from_int(s.len() as u64)).unwrap();
        let set = minimal_bundles(&v, Property::Ef, &Value::one(), 2).unwrap();
        assert_eq!(set.len(), 6);
        assert!(set.bundles().iter().all(|s| s.len() == 2));
    }

    #[test]
    fn dominant_item_minimal_bundle_and_loop() {
        let v = dominant_item_valuation();
        let c = Value::new(1, 2).unwrap();
        let set = minimal_bundles(&v, Property::Ef, &c, 2).unwrap();
        assert_eq!(set.bundles(), &[Bundle::singleton(1)]);

        let g = build_mb_graph(&v, Property::Ef, &c).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.edges.len(), 1);
        let e = &g.edges[0];
        assert_eq!((e.from, e.to, e.label), (Bundle::singleton(1), Bundle::singleton(1), 1));
        assert!(!e.label_ambiguous);
        assert!(verify_graph_lemmas(&v, &g).ok());
    }

    #[test]
    fn single_item_self_loop() {
        let v = Valuation::from_table(1, vec![Value::zero(), Value::one()]).unwrap();
        let g = build_mb_graph(&v, Property::Prop, &Value::one(), ).unwrap();
        assert_eq!(g.vertices, vec![Bundle::singleton(1)]);
        assert_eq!(g.edges.len(), 1);
    }

    #[test]
    fn conditions_examples() {
        let v = staircase_valuation();
        // subadditive valuations always satisfy condition 1 for Prop
        assert!(check_condition1(&v, Property::Prop, &Value::one(), 2).unwrap());
        // the split ({g3}, {g1,g2}) makes both sides happy
        assert!(!check_condition2(&v, Property::Prop, &Value::one(), 2).unwrap());

        let dom = dominant_item_valuation();
        assert!(check_condition2(&dom, Property::Ef, &Value::new(1, 2).unwrap(), 2).unwrap());
    }

    #[test]
    fn count_bound_examples() {
        // c = 1/2 -> exponent 16
        assert!(count_bound_holds(1, 3, &Value::new(1, 2).unwrap()));
        let m = 4usize;
        // 2 * 5^16 is astronomically larger than any minimal-bundle count here
        assert!(count_bound_holds(1 << m, m, &Value::new(9, 10).unwrap()));
        // tight check: count = 2*(m+1)^16 must fail for c = 1/2
        let bound = 2u128 * 5u128.pow(16);
        assert!(!count_bound_holds(bound as usize, 4, &Value::new(1, 2).unwrap()));
        assert!(count_bound_holds((bound - 1) as usize, 4, &Value::new(1, 2).unwrap()));
    }
}
