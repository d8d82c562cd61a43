//! The two contravariant constructions `S ↦ G(S)` and `G ↦ A(G)` and the
//! round trips between them, certified on the explicit canonical maps
//! `s ↦ K_s` and `g ↦ F_g`. No isomorphism is ever searched for.

mod certificate;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use certificate::CertificateBuilder;
pub use certificate::{CheckedLaw, IsoCertificate};

use crate::error::{Error, Result};
use crate::filter::{enumerate_ultrafilters, Filter, UltrafilterGroupoid};
use crate::groupoid::{
    all_bisections_monoid_bounded, bisections_by_injections, is_bisection, pullback_bisections,
    Bisection, BisectionViolation, CoveringFunctor, FiniteGroupoid, DEFAULT_BISECTION_BOUND,
    FINITE_TOPOLOGY_NOTE,
};
use crate::laws::{LawReport, LawResult};
use crate::monoid::{InverseMonoid, MonoidConfig};
use crate::morphism::MonoidMorphism;

/// Names of the basic-open laws, in report order.
pub const K_LAWS: &[&str] = &[
    "k-bisection",
    "k-intersection",
    "k-inverse",
    "k-product",
    "k-order",
    "k-injective",
    "k-join",
    "k-union-bisection",
    "k-exhaustive",
    "k-multiplication-preimage",
    "k-clopen",
    "ultrafilters-separated",
];

const CLOPEN_NOTE: &str =
    "every K_s is clopen: its complement is the union of the K_t with s ∧ t = 0";
const STONE_NOTE: &str = "the identities of G(S) form the finite discrete Stone space of E(S)";

/// `K_s = {A ∈ G(S) : s ∈ A}` as a set of arrow indices.
pub fn basic_open_set(gs: &UltrafilterGroupoid<'_>, s: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(gs.len());
    for (i, u) in gs.ultrafilters().iter().enumerate() {
        if u.contains(s) {
            out.insert(i);
        }
    }
    out
}

/// `K_s`, validated as a bisection of G(S).
pub fn basic_open(gs: &UltrafilterGroupoid<'_>, s: usize) -> Result<Bisection> {
    Bisection::new(gs.groupoid(), basic_open_set(gs, s))
}

fn arrow_product(g: &FiniteGroupoid, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.len());
    for x in a.ones() {
        for y in b.ones() {
            if let Some(xy) = g.compose(x, y) {
                out.insert(xy);
            }
        }
    }
    out
}

fn arrow_inverse(g: &FiniteGroupoid, a: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.len());
    for x in a.ones() {
        out.insert(g.inv(x));
    }
    out
}

fn union(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.union_with(b);
    out
}

/// Exhaustive check of the basic-open laws on a boolean inverse monoid.
pub fn verify_k_laws(m: &InverseMonoid) -> Result<LawReport> {
    let gs = UltrafilterGroupoid::new(m)?;
    let g = gs.groupoid();
    let n = m.size();
    let k: Vec<FixedBitSet> = m.elements().map(|s| basic_open_set(&gs, s)).collect();
    let mut report = LawReport::default();

    let mut law = LawResult::new("k-bisection");
    for (s, ks) in k.iter().enumerate() {
        law.check(is_bisection(g, ks).is_ok(), || {
            (vec![s], "K_s is not a bisection".into())
        });
    }
    report.push(law);

    let mut law = LawResult::new("k-intersection");
    for s in 0..n {
        for t in 0..n {
            let mut both = k[s].clone();
            both.intersect_with(&k[t]);
            let ok = m.meet(s, t).is_some_and(|w| both == k[w]);
            law.check(ok, || (vec![s, t], "K_s ∩ K_t ≠ K_(s∧t)".into()));
        }
    }
    report.push(law);

    let mut law = LawResult::new("k-inverse");
    for s in 0..n {
        law.check(arrow_inverse(g, &k[s]) == k[m.inv(s)], || {
            (vec![s], "K_s⁻¹ ≠ K_(s⁻¹)".into())
        });
    }
    report.push(law);

    let mut law = LawResult::new("k-product");
    for s in 0..n {
        for t in 0..n {
            law.check(arrow_product(g, &k[s], &k[t]) == k[m.mul(s, t)], || {
                (vec![s, t], "K_s K_t ≠ K_(st)".into())
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("k-order");
    for s in 0..n {
        for t in 0..n {
            law.check(k[s].is_subset(&k[t]) == m.leq(s, t), || {
                (
                    vec![s, t],
                    "inclusion of basic opens disagrees with the order".into(),
                )
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("k-injective");
    for s in 0..n {
        for t in 0..n {
            law.check((k[s] == k[t]) == (s == t), || {
                (vec![s, t], "K_s = K_t with s ≠ t".into())
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("k-join");
    for s in 0..n {
        for t in 0..n {
            if let Some(j) = m.join(s, t) {
                law.check(union(&k[s], &k[t]) == k[j], || {
                    (vec![s, t, j], "K_s ∪ K_t ≠ K_(s∨t)".into())
                });
            }
        }
    }
    report.push(law);

    let mut law = LawResult::new("k-union-bisection");
    for s in 0..n {
        for t in 0..n {
            let probe = k_union_probe(&gs, s, t);
            law.check(probe.consistent(), || {
                (
                    vec![s, t],
                    format!(
                        "union is a bisection: {}, join exists: {}",
                        probe.is_bisection,
                        probe.join.is_some()
                    ),
                )
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("k-exhaustive");
    let bisections = bisections_by_injections(g, g.len())?;
    for b in &bisections {
        law.check(k.contains(b.members()), || {
            (
                b.arrows().collect(),
                "bisection of G(S) is not a basic open".into(),
            )
        });
    }
    law.check(bisections.len() == n, || {
        (
            vec![],
            format!("{} bisections for {n} elements", bisections.len()),
        )
    });
    report.push(law);

    report.push(multiplication_preimage_law(m, &gs, &k));

    let mut law = LawResult::new("k-clopen");
    for s in (0..n).filter(|&s| s != m.zero()) {
        for f in (0..gs.len()).filter(|&f| !k[s].contains(f)) {
            let separated = gs.ultrafilters()[f]
                .elements()
                .any(|t| k[t].is_disjoint(&k[s]));
            law.check(separated, || {
                (vec![s, f], "no basic open around F misses K_s".into())
            });
        }
    }
    report.push(law);

    let mut law = LawResult::new("ultrafilters-separated");
    for (i, a) in gs.ultrafilters().iter().enumerate() {
        for (j, b) in gs.ultrafilters().iter().enumerate().skip(i + 1) {
            let ok = a
                .elements()
                .any(|s| b.elements().any(|t| m.meet(s, t) == Some(m.zero())));
            law.check(ok, || {
                (vec![i, j], "distinct ultrafilters are not separated".into())
            });
        }
    }
    report.push(law);

    Ok(report)
}

/// `μ⁻¹(K_a)` equals the composable part of `⋃ K_b × K_c` over `0 ≠ bc ≤ a`.
fn multiplication_preimage_law(
    m: &InverseMonoid,
    gs: &UltrafilterGroupoid<'_>,
    k: &[FixedBitSet],
) -> LawResult {
    let g = gs.groupoid();
    let arrows = g.len();
    let pair = |x: usize, y: usize| x * arrows + y;
    let mut covered: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(arrows * arrows); m.size()];
    for b in m.elements() {
        for c in m.elements() {
            let bc = m.mul(b, c);
            if bc == m.zero() {
                continue;
            }
            let mut pairs = FixedBitSet::with_capacity(arrows * arrows);
            for x in k[b].ones() {
                for y in k[c].ones() {
                    if g.compose(x, y).is_some() {
                        pairs.insert(pair(x, y));
                    }
                }
            }
            for a in m.order().up[bc].ones() {
                covered[a].union_with(&pairs);
            }
        }
    }
    let mut law = LawResult::new("k-multiplication-preimage");
    for a in m.elements() {
        let mut preimage = FixedBitSet::with_capacity(arrows * arrows);
        for x in 0..arrows {
            for y in 0..arrows {
                if g.compose(x, y).is_some_and(|xy| k[a].contains(xy)) {
                    preimage.insert(pair(x, y));
                }
            }
        }
        law.check(preimage == covered[a], || {
            (
                vec![a],
                "preimage of K_a under composition is not the union of basic boxes".into(),
            )
        });
    }
    law
}

/// Outcome of testing whether `K_s ∪ K_t` is a bisection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KUnionProbe {
    pub s: usize,
    pub t: usize,
    pub is_bisection: bool,
    pub join: Option<usize>,
    /// Two ultrafilters in the union sharing a domain or a range.
    pub violation: Option<BisectionViolation>,
}

impl KUnionProbe {
    /// The union is a bisection exactly when the join exists.
    pub fn consistent(&self) -> bool {
        self.is_bisection == self.join.is_some()
    }
}

pub fn k_union_probe(gs: &UltrafilterGroupoid<'_>, s: usize, t: usize) -> KUnionProbe {
    let both = union(&basic_open_set(gs, s), &basic_open_set(gs, t));
    let violation = is_bisection(gs.groupoid(), &both).err();
    KUnionProbe {
        s,
        t,
        is_bisection: violation.is_none(),
        join: gs.monoid().join(s, t),
        violation,
    }
}

/// Certifies `s ↦ K_s` as an isomorphism `S ≅ A(G(S))`.
pub fn round_trip_monoid(m: &InverseMonoid, config: &MonoidConfig) -> Result<IsoCertificate> {
    let mut cert = CertificateBuilder::start();
    let gs = UltrafilterGroupoid::new(m)?;
    let ag = all_bisections_monoid_bounded(gs.groupoid(), DEFAULT_BISECTION_BOUND, config)?;
    let a = ag.monoid();
    let n = m.size();
    cert.law("cardinality", [a.size() == n], |_| {
        format!("|A(G(S))| = {} but |S| = {n}", a.size())
    })?;
    let forward = m
        .elements()
        .map(|s| {
            ag.index_of(&basic_open_set(&gs, s))
                .ok_or_else(|| Error::Invariant(format!("K_{s} is not a bisection of G(S)")))
        })
        .collect::<Result<Vec<_>>>()?;
    let backward = invert(&forward, a.size())?;
    cert.law(
        "bijection",
        (0..n).map(|s| backward[forward[s]] == s),
        |s| format!("element {s} is not recovered"),
    )?;
    let f = |s: usize| forward[s];
    let pairs = || (0..n).flat_map(move |s| (0..n).map(move |t| (s, t)));
    let at = |i: usize| (i / n, i % n);
    cert.law(
        "multiplication",
        pairs().map(|(s, t)| f(m.mul(s, t)) == a.mul(f(s), f(t))),
        |i| format!("product of {:?} not preserved", at(i)),
    )?;
    cert.law("inverse", (0..n).map(|s| f(m.inv(s)) == a.inv(f(s))), |s| {
        format!("inverse of {s} not preserved")
    })?;
    cert.law(
        "zero-and-identity",
        [f(m.zero()) == a.zero(), f(m.one()) == a.one()],
        |i| ["zero", "identity"][i].to_string(),
    )?;
    cert.law(
        "order",
        pairs().map(|(s, t)| m.leq(s, t) == a.leq(f(s), f(t))),
        |i| format!("order at {:?} not preserved", at(i)),
    )?;
    cert.law(
        "meet",
        pairs().map(|(s, t)| m.meet(s, t).map(f) == a.meet(f(s), f(t))),
        |i| format!("meet of {:?} not preserved", at(i)),
    )?;
    cert.law(
        "join",
        pairs().map(|(s, t)| m.join(s, t).map(f) == a.join(f(s), f(t))),
        |i| format!("join of {:?} not preserved", at(i)),
    )?;
    Ok(cert.finish(
        "s -> K_s",
        forward,
        backward,
        vec![
            FINITE_TOPOLOGY_NOTE.into(),
            CLOPEN_NOTE.into(),
            STONE_NOTE.into(),
        ],
    ))
}

/// Certifies `g ↦ F_g` as an isomorphism `G ≅ G(A(G))`.
pub fn round_trip_groupoid(g: &FiniteGroupoid, config: &MonoidConfig) -> Result<IsoCertificate> {
    let mut cert = CertificateBuilder::start();
    let ag = all_bisections_monoid_bounded(g, DEFAULT_BISECTION_BOUND, config)?;
    let gag = UltrafilterGroupoid::new(ag.monoid())?;
    let h = gag.groupoid();
    let n = g.len();
    cert.law("cardinality", [h.len() == n], |_| {
        format!("|G(A(G))| = {} but |G| = {n}", h.len())
    })?;
    let point_filters = g
        .arrows()
        .map(|x| ag.ultrafilter_of_point(x))
        .collect::<Result<Vec<_>>>()?;
    cert.law(
        "point-filters-ultra",
        point_filters.iter().map(Filter::is_ultrafilter),
        |x| format!("F_{x} is not an ultrafilter"),
    )?;
    let forward = point_filters
        .iter()
        .map(|f| {
            gag.index_of(f)
                .ok_or_else(|| Error::Invariant(format!("{f:?} missing from G(A(G))")))
        })
        .collect::<Result<Vec<_>>>()?;
    let backward = invert(&forward, n)?;
    cert.law(
        "bijection",
        (0..n).map(|x| backward[forward[x]] == x),
        |x| format!("arrow {x} is not recovered"),
    )?;
    let f = |x: usize| forward[x];
    cert.law(
        "ends",
        g.arrows()
            .map(|x| f(g.d(x)) == h.d(f(x)) && f(g.r(x)) == h.r(f(x))),
        |x| format!("ends of {x} not preserved"),
    )?;
    cert.law(
        "inverse",
        g.arrows().map(|x| f(g.inv(x)) == h.inv(f(x))),
        |x| format!("inverse of {x} not preserved"),
    )?;
    cert.law(
        "composition",
        g.arrows()
            .flat_map(|x| g.arrows().map(move |y| (x, y)))
            .map(|(x, y)| g.compose(x, y).map(f) == h.compose(f(x), f(y))),
        |i| format!("composition of ({}, {}) not preserved", i / n, i % n),
    )?;
    cert.law(
        "basic-open-correspondence",
        ag.bisections().iter().enumerate().map(|(u, b)| {
            let image: FixedBitSet = {
                let mut set = FixedBitSet::with_capacity(n);
                for x in b.arrows() {
                    set.insert(f(x));
                }
                set
            };
            image == basic_open_set(&gag, u)
        }),
        |u| format!("image of bisection {u} is not K_U"),
    )?;
    Ok(cert.finish(
        "g -> F_g",
        forward,
        backward,
        vec![FINITE_TOPOLOGY_NOTE.into()],
    ))
}

fn invert(forward: &[usize], size: usize) -> Result<Vec<usize>> {
    if forward.len() != size {
        return Err(Error::Invariant(format!(
            "cannot invert a map of {} points onto {size}",
            forward.len()
        )));
    }
    let mut backward = vec![usize::MAX; size];
    for (i, &x) in forward.iter().enumerate() {
        if backward[x] != usize::MAX {
            return Err(Error::Invariant(format!(
                "{} and {i} have the same image",
                backward[x]
            )));
        }
        backward[x] = i;
    }
    Ok(backward)
}

/// `G(θ) = θ⁻¹ : G(T) → G(S)` for a morphism `θ : S → T`, validated as a
/// covering functor.
pub fn functor_g_on_morphism<'g>(
    theta: &MonoidMorphism<'_>,
    gt: &'g UltrafilterGroupoid<'_>,
    gs: &'g UltrafilterGroupoid<'_>,
) -> Result<CoveringFunctor<'g>> {
    if !std::ptr::eq(gt.monoid(), theta.target()) || !std::ptr::eq(gs.monoid(), theta.source()) {
        return Err(Error::Malformed(
            "ultrafilter groupoids were not built from the morphism's monoids".into(),
        ));
    }
    theta.validate().map_err(Error::Morphism)?;
    let map = gt
        .ultrafilters()
        .iter()
        .map(|u| {
            let pre = theta.preimage(u.members());
            gs.index_of_members(&pre)
                .ok_or_else(|| Error::NotAnUltrafilter(format!("preimage of {u:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, u) in gt.ultrafilters().iter().enumerate() {
        // θ⁻¹(A⁻¹·A) = θ⁻¹(A)⁻¹·θ⁻¹(A)
        let pulled = &gs.ultrafilters()[map[i]];
        if map[gt.d(i)] != gs.index_of(&pulled.domain()).unwrap_or(usize::MAX) {
            return Err(Error::Invariant(format!("domain of {u:?} not pulled back")));
        }
    }
    let f = CoveringFunctor::new(gt.groupoid(), gs.groupoid(), map)?;
    f.check_covering().map_err(Error::NotCovering)?;
    Ok(f)
}

/// Checks that `s ↦ K_s` is natural: pulling `K_s` back along `G(θ)` gives
/// `K_θ(s)`. Returns the number of elements checked.
pub fn naturality_check(theta: &MonoidMorphism<'_>, config: &MonoidConfig) -> Result<u64> {
    let gs = UltrafilterGroupoid::new(theta.source())?;
    let gt = UltrafilterGroupoid::new(theta.target())?;
    let f = functor_g_on_morphism(theta, &gt, &gs)?;
    let ags = all_bisections_monoid_bounded(gs.groupoid(), DEFAULT_BISECTION_BOUND, config)?;
    let agt = all_bisections_monoid_bounded(gt.groupoid(), DEFAULT_BISECTION_BOUND, config)?;
    let pull = pullback_bisections(&f, &ags, &agt)?;
    let mut checked = 0;
    for s in theta.source().elements() {
        let ks = ags.index_of(&basic_open_set(&gs, s));
        let kt = agt.index_of(&basic_open_set(&gt, theta.apply(s)));
        match (ks, kt) {
            (Some(a), Some(b)) if pull.apply(a) == b => checked += 1,
            _ => {
                return Err(Error::Invariant(format!(
                    "naturality square fails at element {s}"
                )))
            }
        }
    }
    Ok(checked)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordReport {
    pub is_clifford: bool,
    /// An element with `d(s) ≠ r(s)` when the monoid is not Clifford.
    pub witness: Option<usize>,
    pub ultrafilters_checked: usize,
    /// Whether `d = r` on every arrow of G(S); absent when not applicable.
    pub d_equals_r: Option<bool>,
    /// Number of groups in the resulting group bundle.
    pub components: usize,
}

impl CliffordReport {
    pub fn holds(&self) -> bool {
        self.is_clifford && self.d_equals_r == Some(true)
    }
}

/// For Clifford monoids, checks `A⁻¹·A = A·A⁻¹` on every ultrafilter and
/// `d = r` on every arrow of G(S).
pub fn clifford_check(m: &InverseMonoid) -> Result<CliffordReport> {
    m.require_boolean()?;
    let witness = m.clifford_witness();
    if witness.is_some() {
        return Ok(CliffordReport {
            is_clifford: false,
            witness,
            ultrafilters_checked: 0,
            d_equals_r: None,
            components: 0,
        });
    }
    let gs = UltrafilterGroupoid::new(m)?;
    let filters_agree = gs.ultrafilters().iter().all(|u| u.domain() == u.range());
    let arrows_agree = (0..gs.len()).all(|i| gs.d(i) == gs.r(i));
    Ok(CliffordReport {
        is_clifford: true,
        witness: None,
        ultrafilters_checked: gs.len(),
        d_equals_r: Some(filters_agree && arrows_agree && gs.groupoid().is_group_bundle()),
        components: gs.groupoid().identities().len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlaggedUltrafilter {
    pub generator: usize,
    pub preimage: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakPullbackReport {
    pub idempotent_checked: usize,
    /// Idempotent ultrafilters whose preimage is not an idempotent ultrafilter.
    pub idempotent_failures: Vec<usize>,
    pub non_idempotent_checked: usize,
    /// Non-idempotent ultrafilters whose preimage is not an ultrafilter.
    pub flagged: Vec<FlaggedUltrafilter>,
}

impl WeakPullbackReport {
    /// Idempotent ultrafilters always pull back to idempotent ultrafilters.
    pub fn idempotent_claim_holds(&self) -> bool {
        self.idempotent_failures.is_empty()
    }
}

/// Pulls every ultrafilter of the target back along a map satisfying only
/// the homomorphism, M1 and M2 conditions.
pub fn weak_morphism_pullback(theta: &MonoidMorphism<'_>) -> Result<WeakPullbackReport> {
    theta.validate_weak().map_err(Error::Morphism)?;
    let source = theta.source();
    let mut report = WeakPullbackReport::default();
    for u in enumerate_ultrafilters(theta.target())? {
        let pre = theta.preimage(u.members());
        let pulled = Filter::new(source, pre.clone()).ok();
        let ultra = pulled.as_ref().is_some_and(Filter::is_ultrafilter);
        if u.is_idempotent() {
            report.idempotent_checked += 1;
            if !(ultra && pulled.as_ref().is_some_and(Filter::is_idempotent)) {
                report.idempotent_failures.push(u.generator());
            }
        } else {
            report.non_idempotent_checked += 1;
            if !ultra {
                report.flagged.push(FlaggedUltrafilter {
                    generator: u.generator(),
                    preimage: pre.ones().collect(),
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::examples::*;

    fn cfg() -> MonoidConfig {
        MonoidConfig::default()
    }

    #[test]
    fn basic_open_examples() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let gs = UltrafilterGroupoid::new(&m).unwrap();
        assert!(basic_open(&gs, m.zero()).unwrap().is_empty());
        let one = basic_open(&gs, m.one()).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one.arrows().all(|i| gs.groupoid().is_identity(i)));
        let atom = m.find_label("{1->2}").unwrap();
        assert_eq!(basic_open(&gs, atom).unwrap().len(), 1);
    }

    #[test]
    fn k_laws_on_small_monoids() {
        for m in [
            symmetric_inverse_monoid(2).unwrap(),
            boolean_algebra(1).unwrap(),
            group_with_zero(2).unwrap(),
        ] {
            let report = verify_k_laws(&m).unwrap();
            assert!(report.passed(), "{:?}", report);
            let names: Vec<&str> = report.laws.iter().map(|l| l.name.as_str()).collect();
            assert_eq!(names, K_LAWS);
        }
    }

    #[test]
    fn incompatible_union_is_not_a_bisection() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let gs = UltrafilterGroupoid::new(&m).unwrap();
        let s = m.find_label("{1->1}").unwrap();
        let t = m.find_label("{1->2}").unwrap();
        let probe = k_union_probe(&gs, s, t);
        assert!(!probe.is_bisection);
        assert_eq!(probe.join, None);
        assert!(matches!(
            probe.violation,
            Some(BisectionViolation::Domain { .. })
        ));
    }

    #[test]
    fn round_trips() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let cert = round_trip_monoid(&m, &cfg()).unwrap();
        assert_eq!((cert.source_size, cert.target_size), (7, 7));
        assert_eq!(cert.law("multiplication").unwrap().instances, 49);
        let t = FiniteGroupoid::trivial();
        let cert = round_trip_groupoid(&t, &cfg()).unwrap();
        assert_eq!(cert.forward, vec![0]);
        let z2 = FiniteGroupoid::cyclic_group(2).unwrap();
        let u = FiniteGroupoid::disjoint_union(&[z2.clone(), z2]).unwrap();
        assert_eq!(round_trip_groupoid(&u, &cfg()).unwrap().target_size, 4);
    }

    #[test]
    fn g_of_identity_is_identity() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let gs = UltrafilterGroupoid::new(&m).unwrap();
        let id = MonoidMorphism::identity(&m);
        let f = functor_g_on_morphism(&id, &gs, &gs).unwrap();
        assert_eq!(f.arrow_map(), &[0, 1, 2, 3]);
    }

    #[test]
    fn stone_dual_of_a_projection() {
        // {1,2} → {1}: the spectrum of the image is one point, embedded as atom 1.
        let b2 = boolean_algebra(2).unwrap();
        let b1 = boolean_algebra(1).unwrap();
        let theta = MonoidMorphism::checked(&b2, &b1, vec![0, 1, 0, 1]).unwrap();
        let g2 = UltrafilterGroupoid::new(&b2).unwrap();
        let g1 = UltrafilterGroupoid::new(&b1).unwrap();
        let f = functor_g_on_morphism(&theta, &g1, &g2).unwrap();
        assert_eq!(f.arrow_map().len(), 1);
        assert!(g2.ultrafilters()[f.apply(0)].contains(1));
        assert_eq!(naturality_check(&theta, &cfg()).unwrap(), 4);
    }

    #[test]
    fn clifford_flags() {
        let c = clifford_example().unwrap();
        let report = clifford_check(&c).unwrap();
        assert!(report.holds());
        assert_eq!(report.components, 2);
        let b = boolean_algebra(2).unwrap();
        assert!(clifford_check(&b).unwrap().holds());
        let ix = symmetric_inverse_monoid(2).unwrap();
        let report = clifford_check(&ix).unwrap();
        assert!(!report.is_clifford);
        assert_eq!(report.d_equals_r, None);
    }

    #[test]
    fn weak_pullback_flags_non_idempotent_ultrafilters() {
        let b = boolean_algebra(2).unwrap();
        let ix = symmetric_inverse_monoid(2).unwrap();
        let map = ["{}", "{1->1}", "{2->2}", "{1->1, 2->2}"]
            .iter()
            .map(|l| ix.find_label(l).unwrap())
            .collect();
        let theta = MonoidMorphism::new(&b, &ix, map).unwrap();
        let report = weak_morphism_pullback(&theta).unwrap();
        assert!(report.idempotent_claim_holds());
        assert_eq!(report.idempotent_checked, 2);
        assert_eq!(report.flagged.len(), 2);
        assert!(report.flagged.iter().all(|f| f.preimage.is_empty()));
        let id = MonoidMorphism::identity(&ix);
        assert!(weak_morphism_pullback(&id).unwrap().flagged.is_empty());
    }
}
