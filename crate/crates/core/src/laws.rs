//! Exhaustive law suites over a finite boolean inverse monoid.
//!
//! Each law is checked on every instance (pair, triple, filter, ...) and the
//! report keeps a bounded number of counterexamples per law.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::filter::{
    all_filters, enumerate_ultrafilters, idempotent_part_is_ultra, set_product, Filter,
    UltrafilterGroupoid,
};
use crate::monoid::InverseMonoid;

/// Counterexamples kept per law.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub elements: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub name: String,
    pub instances: u64,
    pub failure_count: u64,
    pub failures: Vec<Witness>,
}

impl LawResult {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            instances: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    /// Records one instance; the witness is only built on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> (Vec<usize>, String)) {
        self.instances += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_WITNESSES {
                let (elements, detail) = witness();
                self.failures.push(Witness { elements, detail });
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn push(&mut self, law: LawResult) {
        self.laws.push(law);
    }

    pub fn extend(&mut self, other: LawReport) {
        self.laws.extend(other.laws);
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn failure_count(&self) -> u64 {
        self.laws.iter().map(|l| l.failure_count).sum()
    }

    pub fn instance_count(&self) -> u64 {
        self.laws.iter().map(|l| l.instances).sum()
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    /// Keeps only the named laws.
    pub fn only(mut self, names: &[&str]) -> Self {
        self.laws.retain(|l| names.contains(&l.name.as_str()));
        self
    }
}

/// Names of the order-theoretic laws, in report order.
pub const ORDER_LAWS: &[&str] = &[
    "compatible-meet-ends",
    "join-ends",
    "meet-translation",
    "down-set-boolean",
    "relative-complement-unique",
    "disjoint-witness",
    "compatible-join-formula",
];

/// Names of the filter laws, in report order.
pub const FILTER_LAWS: &[&str] = &[
    "ultrafilter-criterion",
    "ultrafilter-existence",
    "ultrafilter-intersection",
    "filter-coset",
    "filter-product-smallest",
    "filter-domain-coset",
    "idempotent-filter-subsemigroup",
    "filter-cancellation",
    "filter-semigroup",
    "ultrafilter-equivalences",
    "ultrafilter-prime",
];

/// Order laws followed by filter laws. Requires a boolean inverse monoid.
pub fn algebra_suite(m: &InverseMonoid) -> Result<LawReport> {
    let mut report = order_laws(m)?;
    report.extend(filter_laws(m)?);
    Ok(report)
}

pub fn order_laws(m: &InverseMonoid) -> Result<LawReport> {
    m.require_boolean()?;
    let mut report = LawReport::default();
    let n = m.size();

    let mut law = LawResult::new("compatible-meet-ends");
    for s in 0..n {
        for t in 0..n {
            let rhs = m.meet(s, t).is_some_and(|w| {
                m.dom(w) == m.mul(m.dom(s), m.dom(t)) && m.ran(w) == m.mul(m.ran(s), m.ran(t))
            });
            law.check(m.compatible(s, t) == rhs, || {
                (
                    vec![s, t],
                    "compatibility disagrees with the meet condition".into(),
                )
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("join-ends");
    for s in 0..n {
        for t in 0..n {
            if let Some(j) = m.join(s, t) {
                let ok = m.join(m.dom(s), m.dom(t)) == Some(m.dom(j))
                    && m.join(m.ran(s), m.ran(t)) == Some(m.ran(j));
                law.check(ok, || {
                    (
                        vec![s, t, j],
                        "ends of the join are not joins of ends".into(),
                    )
                });
            }
        }
    }
    report.push(law);

    let mut law = LawResult::new("meet-translation");
    for s in 0..n {
        for t in s..n {
            let Some(w) = m.meet(s, t) else { continue };
            for u in 0..n {
                law.check(
                    m.meet(m.mul(u, s), m.mul(u, t)) == Some(m.mul(u, w)),
                    || {
                        (
                            vec![u, s, t],
                            "left translation does not preserve the meet".into(),
                        )
                    },
                );
                law.check(
                    m.meet(m.mul(s, u), m.mul(t, u)) == Some(m.mul(w, u)),
                    || {
                        (
                            vec![s, t, u],
                            "right translation does not preserve the meet".into(),
                        )
                    },
                );
            }
        }
    }
    report.push(law);

    let mut law = LawResult::new("down-set-boolean");
    let order = m.order();
    for s in 0..n {
        let ds = m.dom(s);
        let below: Vec<usize> = order.down[s].ones().collect();
        let images: Vec<usize> = below.iter().map(|&x| m.dom(x)).collect();
        let target: Vec<usize> = order.down[ds].ones().collect();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let bijective = sorted.len() == below.len() && sorted == target;
        let monotone = below.iter().zip(&images).all(|(&x, &dx)| {
            below
                .iter()
                .zip(&images)
                .all(|(&y, &dy)| m.leq(x, y) == m.leq(dx, dy))
        });
        let complemented = target.iter().all(|&e| {
            target
                .iter()
                .any(|&f| m.mul(e, f) == m.zero() && m.join(e, f) == Some(ds))
        });
        law.check(bijective && monotone && complemented, || {
            (
                vec![s],
                "down-set is not order-isomorphic to a boolean algebra".into(),
            )
        });
    }
    report.push(law);

    let mut law = LawResult::new("relative-complement-unique");
    for t in 0..n {
        for s in order.down[t].ones() {
            let c = m.relative_complement(s, t)?;
            let fits = |x: usize| m.leq(x, t) && m.orthogonal(s, x) && m.join(s, x) == Some(t);
            let unique = order.down[t].ones().filter(|&x| fits(x)).eq([c]);
            law.check(fits(c) && unique, || {
                (
                    vec![s, t, c],
                    "relative complement is missing or not unique".into(),
                )
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("disjoint-witness");
    for s in 0..n {
        if s == m.zero() {
            continue;
        }
        for t in 0..n {
            if m.leq(s, t) {
                continue;
            }
            let ok = m
                .meet(s, t)
                .and_then(|w| m.relative_complement(w, s).ok())
                .is_some_and(|x| x != m.zero() && m.leq(x, s) && m.meet(x, t) == Some(m.zero()));
            law.check(ok, || {
                (vec![s, t], "s ∖ (s∧t) is not a disjoint witness".into())
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("compatible-join-formula");
    for s in 0..n {
        for t in s..n {
            if !m.compatible(s, t) {
                continue;
            }
            let joined = m.join(s, t);
            law.check(
                joined.is_some() && joined == m.join_by_orthogonal_pieces(s, t),
                || {
                    (
                        vec![s, t],
                        format!("join {joined:?} differs from the orthogonal-piece formula"),
                    )
                },
            );
        }
    }
    report.push(law);

    Ok(report)
}

fn bits(set: &FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}

pub fn filter_laws(m: &InverseMonoid) -> Result<LawReport> {
    m.require_boolean()?;
    let mut report = LawReport::default();
    let filters = all_filters(m);
    let index: HashMap<&FixedBitSet, usize> = filters
        .iter()
        .enumerate()
        .map(|(i, f)| (f.members(), i))
        .collect();
    let ultrafilters = enumerate_ultrafilters(m)?;

    let mut law = LawResult::new("ultrafilter-criterion");
    for f in filters.iter().filter(|f| f.is_proper()) {
        law.check(f.is_ultrafilter() == f.is_maximal_proper(), || {
            (
                bits(f.members()),
                "criterion disagrees with maximality".into(),
            )
        });
    }
    report.push(law);

    let mut law = LawResult::new("ultrafilter-existence");
    for s in m.elements().filter(|&s| s != m.zero()) {
        law.check(ultrafilters.iter().any(|u| u.contains(s)), || {
            (vec![s], "no ultrafilter contains this element".into())
        });
    }
    report.push(law);

    let mut law = LawResult::new("ultrafilter-intersection");
    for a in m.elements().filter(|&s| s != m.zero()) {
        let mut meet = FixedBitSet::with_capacity(m.size());
        meet.insert_range(..);
        for u in ultrafilters.iter().filter(|u| u.contains(a)) {
            meet.intersect_with(u.members());
        }
        law.check(&meet == filters[a].members(), || {
            (
                vec![a],
                "intersection of ultrafilters through a is not a↑".into(),
            )
        });
    }
    report.push(law);

    let inverses: Vec<Filter<'_>> = filters.iter().map(Filter::inverse).collect();

    let mut law = LawResult::new("filter-coset");
    for (f, fi) in filters.iter().zip(&inverses) {
        let ffi = set_product(m, f.members(), fi.members());
        law.check(&set_product(m, &ffi, f.members()) == f.members(), || {
            (bits(f.members()), "F ≠ F F⁻¹ F".into())
        });
    }
    report.push(law);

    let mut law = LawResult::new("filter-product-smallest");
    let mut product = vec![usize::MAX; filters.len() * filters.len()];
    for (i, a) in filters.iter().enumerate() {
        for (j, b) in filters.iter().enumerate() {
            let raw = set_product(m, a.members(), b.members());
            let closed = a.product(b);
            let is_filter = Filter::new(m, closed.members().clone()).is_ok();
            let smallest = filters
                .iter()
                .filter(|d| raw.is_subset(d.members()))
                .all(|d| closed.members().is_subset(d.members()));
            if let Some(&k) = index.get(closed.members()) {
                product[i * filters.len() + j] = k;
            }
            law.check(
                is_filter && raw.is_subset(closed.members()) && smallest,
                || {
                    (
                        vec![a.generator(), b.generator()],
                        "(AB)↑ is not the least filter over AB".into(),
                    )
                },
            );
        }
    }
    report.push(law);

    let mut law = LawResult::new("filter-domain-coset");
    for f in &filters {
        let h = f.domain();
        let hm = h.members();
        let submonoid = Filter::new(m, hm.clone()).is_ok()
            && set_product(m, hm, hm).is_subset(hm)
            && h.inverse().members() == hm
            && h.contains(m.one());
        let cosets = f.elements().all(|a| {
            let mut seed = FixedBitSet::with_capacity(m.size());
            seed.insert(a);
            &m.up_closure(&set_product(m, &seed, hm)) == f.members()
        });
        law.check(submonoid && cosets, || {
            (
                bits(f.members()),
                "F⁻¹·F is not an inverse submonoid with F = (aH)↑".into(),
            )
        });
    }
    report.push(law);

    let mut law = LawResult::new("idempotent-filter-subsemigroup");
    for (f, fi) in filters.iter().zip(&inverses) {
        let closed = set_product(m, f.members(), f.members()).is_subset(f.members())
            && fi.members() == f.members();
        law.check(f.is_idempotent() == closed, || {
            (
                bits(f.members()),
                "idempotent filter iff inverse subsemigroup fails".into(),
            )
        });
    }
    report.push(law);

    let domains: Vec<Filter<'_>> = filters.iter().map(Filter::domain).collect();
    let mut law = LawResult::new("filter-cancellation");
    for (i, a) in filters.iter().enumerate() {
        for (j, b) in filters.iter().enumerate() {
            if a.members().is_disjoint(b.members()) || domains[i] != domains[j] {
                continue;
            }
            law.check(i == j, || {
                (
                    vec![a.generator(), b.generator()],
                    "meeting filters with equal domains differ".into(),
                )
            });
        }
    }
    report.push(law);

    report.push(filter_semigroup_law(m, &filters, &product));

    let mut law = LawResult::new("ultrafilter-equivalences");
    for f in filters.iter().filter(|f| f.is_proper()) {
        let h = &domains[index[f.members()]];
        let first = f.is_ultrafilter();
        let second = h.is_idempotent() && h.is_ultrafilter();
        let third = idempotent_part_is_ultra(h);
        law.check(first == second && second == third, || {
            (
                bits(f.members()),
                format!("ultra {first}, domain ultra {second}, idempotent part ultra {third}"),
            )
        });
    }
    let groupoid = UltrafilterGroupoid::new(m);
    law.check(groupoid.is_ok(), || {
        (
            vec![],
            format!("ultrafilters do not form a groupoid: {:?}", groupoid.err()),
        )
    });
    report.push(law);

    let mut law = LawResult::new("ultrafilter-prime");
    for u in &ultrafilters {
        law.check(u.is_prime(), || {
            (
                bits(u.members()),
                "a join lies in U but neither part does".into(),
            )
        });
    }
    report.push(law);

    Ok(report)
}

/// The filters form an inverse semigroup under `·` with the filter inverse,
/// whose idempotents are the idempotent filters and whose natural order is
/// reverse inclusion.
fn filter_semigroup_law(m: &InverseMonoid, filters: &[Filter<'_>], product: &[usize]) -> LawResult {
    let k = filters.len();
    let mul = |a: usize, b: usize| product[a * k + b];
    let mut law = LawResult::new("filter-semigroup");
    let closed = product.iter().all(|&p| p != usize::MAX);
    law.check(closed, || {
        (vec![], "product of filters left the filter list".into())
    });
    if !closed {
        return law;
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                law.check(mul(mul(a, b), c) == mul(a, mul(b, c)), || {
                    (vec![a, b, c], "filter product is not associative".into())
                });
            }
        }
    }
    let inv: Vec<usize> = filters.iter().map(|f| f.inverse().generator()).collect();
    for a in 0..k {
        let partners: Vec<usize> = (0..k)
            .filter(|&b| mul(mul(a, b), a) == a && mul(mul(b, a), b) == b)
            .collect();
        law.check(partners == [inv[a]], || {
            (
                vec![a],
                format!("inverses {partners:?}, expected only {}", inv[a]),
            )
        });
        law.check((mul(a, a) == a) == filters[a].is_idempotent(), || {
            (
                vec![a],
                "idempotents of the filter semigroup are not the idempotent filters".into(),
            )
        });
    }
    for a in 0..k {
        let da = mul(inv[a], a);
        for b in 0..k {
            let natural = mul(b, da) == a;
            let reverse = filters[b].members().is_subset(filters[a].members());
            law.check(natural == reverse, || {
                (vec![a, b], "natural order is not reverse inclusion".into())
            });
        }
    }
    debug_assert_eq!(k, m.size());
    law
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::examples::*;

    #[test]
    fn i2_passes_everything() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let report = algebra_suite(&m).unwrap();
        for law in &report.laws {
            assert!(law.passed(), "{}: {:?}", law.name, law.failures);
            assert!(
                law.instances > 0 || law.name == "filter-cancellation",
                "{}",
                law.name
            );
        }
        assert_eq!(report.laws.len(), ORDER_LAWS.len() + FILTER_LAWS.len());
        for (law, name) in report.laws.iter().zip(ORDER_LAWS.iter().chain(FILTER_LAWS)) {
            assert_eq!(&law.name, name);
        }
    }

    #[test]
    fn group_with_zero_passes() {
        let m = group_with_zero(3).unwrap();
        assert!(algebra_suite(&m).unwrap().passed());
    }

    #[test]
    fn non_boolean_input_is_an_error() {
        let m = chain_monoid(3).unwrap();
        assert!(order_laws(&m).is_err());
    }

    #[test]
    fn witness_cap() {
        let mut law = LawResult::new("x");
        for i in 0..20 {
            law.check(false, || (vec![i], String::new()));
        }
        assert_eq!(law.failure_count, 20);
        assert_eq!(law.failures.len(), MAX_WITNESSES);
    }
}
