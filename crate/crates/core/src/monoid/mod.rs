//! Finite inverse monoids with zero, stored as dense multiplication tables.
//!
//! Elements are indices `0..n`. Every structural invariant (associativity,
//! the inverse laws, commuting idempotents, zero and identity laws) is checked
//! when a monoid is built, whether from a constructor or from JSON.

mod boolean;
pub mod examples;
mod order;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use boolean::{Bm1Violation, BooleanCertificate, BooleanViolation};
pub use order::OrderData;

/// Limits applied when building and analysing monoids.
#[derive(Clone, Debug)]
pub struct MonoidConfig {
    /// Associativity is checked on every triple up to this many elements.
    pub exhaustive_assoc_bound: usize,
    /// Number of random triples checked above `exhaustive_assoc_bound`.
    pub sampled_triples: usize,
    pub seed: u64,
    /// Largest monoid for which the natural order is materialised.
    pub max_size: usize,
}

impl Default for MonoidConfig {
    fn default() -> Self {
        Self {
            exhaustive_assoc_bound: 256,
            sampled_triples: 1_000_000,
            seed: 0x5EED,
            max_size: 4096,
        }
    }
}

/// A finite inverse monoid with a distinguished zero.
#[derive(Clone, Debug)]
pub struct InverseMonoid {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Option<Vec<String>>,
    order: OnceLock<OrderData>,
}

/// The JSON monoid format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonoidJson {
    pub n: usize,
    pub zero: usize,
    pub one: usize,
    pub inv: Vec<usize>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl InverseMonoid {
    pub fn new(
        mul: Vec<Vec<usize>>,
        inv: Vec<usize>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::with_config(mul, inv, zero, one, labels, &MonoidConfig::default())
    }

    pub fn with_config(
        mul: Vec<Vec<usize>>,
        inv: Vec<usize>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
        config: &MonoidConfig,
    ) -> Result<Self> {
        let n = mul.len();
        if mul.iter().any(|row| row.len() != n) {
            return Err(Error::Malformed(
                "multiplication table is not square".into(),
            ));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        Self::from_flat(flat, inv, zero, one, labels, config)
    }

    /// Builds from a row-major table of length `n * n`.
    pub fn from_flat(
        mul: Vec<usize>,
        inv: Vec<usize>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
        config: &MonoidConfig,
    ) -> Result<Self> {
        let n = inv.len();
        if n == 0 {
            return Err(Error::Malformed(
                "a monoid needs at least one element".into(),
            ));
        }
        if n > config.max_size {
            return Err(Error::SizeBound {
                what: "monoid",
                size: n,
                bound: config.max_size,
            });
        }
        if mul.len() != n * n {
            return Err(Error::Malformed(format!(
                "expected {} table entries, found {}",
                n * n,
                mul.len()
            )));
        }
        if let Some(bad) = mul.iter().chain(inv.iter()).find(|&&x| x >= n) {
            return Err(Error::Malformed(format!("entry {bad} out of range 0..{n}")));
        }
        if zero >= n || one >= n {
            return Err(Error::Malformed("zero or one out of range".into()));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Malformed(
                    "label count differs from element count".into(),
                ));
            }
        }
        let monoid = Self {
            n,
            mul,
            inv,
            zero,
            one,
            labels,
            order: OnceLock::new(),
        };
        monoid.verify(config)?;
        Ok(monoid)
    }

    fn verify(&self, config: &MonoidConfig) -> Result<()> {
        let n = self.n;
        for s in 0..n {
            if self.mul(self.zero, s) != self.zero || self.mul(s, self.zero) != self.zero {
                return Err(Error::ZeroLaw(s));
            }
            if self.mul(self.one, s) != s || self.mul(s, self.one) != s {
                return Err(Error::IdentityLaw(s));
            }
        }
        if n <= config.exhaustive_assoc_bound {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            for _ in 0..config.sampled_triples {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(Error::NotAssociative(a, b, c));
                }
            }
        }
        for s in 0..n {
            let t = self.inv(s);
            if self.inv(t) != s
                || self.mul(self.mul(s, t), s) != s
                || self.mul(self.mul(t, s), t) != t
            {
                return Err(Error::InverseLaw(s));
            }
        }
        let idempotents: Vec<usize> = (0..n).filter(|&e| self.mul(e, e) == e).collect();
        for (i, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[i + 1..] {
                if self.mul(e, f) != self.mul(f, e) {
                    return Err(Error::IdempotentsDoNotCommute(e, f));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `d(s) = s⁻¹s`.
    pub fn dom(&self, s: usize) -> usize {
        self.mul(self.inv(s), s)
    }

    /// `r(s) = ss⁻¹`.
    pub fn ran(&self, s: usize) -> usize {
        self.mul(s, self.inv(s))
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.order().idempotents
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, s: usize) -> String {
        match &self.labels {
            Some(l) => l[s].clone(),
            None => s.to_string(),
        }
    }

    /// Looks an element up by its label.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Whether `s⁻¹s = ss⁻¹` for every element.
    pub fn is_clifford(&self) -> bool {
        self.clifford_witness().is_none()
    }

    pub fn clifford_witness(&self) -> Option<usize> {
        self.elements().find(|&s| self.dom(s) != self.ran(s))
    }

    /// The natural partial order, computed once and cached.
    pub fn order(&self) -> &OrderData {
        self.order.get_or_init(|| OrderData::compute(self))
    }

    /// `s ≤ t` in the natural partial order.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.order().up[s].contains(t)
    }

    /// `s ≤ t` straight from the definition: some idempotent `e` has `s = te`.
    pub fn leq_definitional(&self, s: usize, t: usize) -> bool {
        self.elements()
            .filter(|&e| self.is_idempotent(e))
            .any(|e| self.mul(t, e) == s)
    }

    /// `s⁻¹t` and `st⁻¹` are both idempotent.
    pub fn compatible(&self, s: usize, t: usize) -> bool {
        self.is_idempotent(self.mul(self.inv(s), t)) && self.is_idempotent(self.mul(s, self.inv(t)))
    }

    /// `s⁻¹t` and `st⁻¹` are both zero.
    pub fn orthogonal(&self, s: usize, t: usize) -> bool {
        self.mul(self.inv(s), t) == self.zero && self.mul(s, self.inv(t)) == self.zero
    }

    /// Greatest lower bound, if one exists.
    pub fn meet(&self, s: usize, t: usize) -> Option<usize> {
        let order = self.order();
        let mut lower = order.down[s].clone();
        lower.intersect_with(&order.down[t]);
        let found = lower.ones().find(|&m| lower.is_subset(&order.down[m]));
        found
    }

    /// Least upper bound, if one exists.
    pub fn join(&self, s: usize, t: usize) -> Option<usize> {
        let order = self.order();
        let mut upper = order.up[s].clone();
        upper.intersect_with(&order.up[t]);
        let found = upper.ones().find(|&m| upper.is_subset(&order.up[m]));
        found
    }

    /// Join of a finite family; `None` when some partial join is missing.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items
            .into_iter()
            .try_fold(self.zero, |acc, x| self.join(acc, x))
    }

    /// Complement of an idempotent inside E(S).
    pub fn idempotent_complement(&self, e: usize) -> Option<usize> {
        if !self.is_idempotent(e) {
            return None;
        }
        self.idempotents()
            .iter()
            .copied()
            .find(|&f| self.mul(e, f) == self.zero && self.join(e, f) == Some(self.one))
    }

    /// `t ∖ s` for `s ≤ t`, computed as `t·(d(t) ∧ d(s)′)`.
    pub fn relative_complement(&self, s: usize, t: usize) -> Result<usize> {
        if !self.leq(s, t) {
            return Err(Error::NotBelow(s, t));
        }
        let ds = self.dom(s);
        let complement = self
            .idempotent_complement(ds)
            .ok_or(Error::NoComplement(ds))?;
        let e = self.mul(self.dom(t), complement);
        Ok(self.mul(t, e))
    }

    /// The join of compatible `s`, `t` built from orthogonal pieces:
    /// `(s∧t) ∨ (s ∖ s∧t) ∨ (t ∖ s∧t)`.
    pub fn join_by_orthogonal_pieces(&self, s: usize, t: usize) -> Option<usize> {
        let m = self.meet(s, t)?;
        let left = self.relative_complement(m, s).ok()?;
        let right = self.relative_complement(m, t).ok()?;
        let first = self.join(m, left)?;
        self.join(first, right)
    }

    /// Upward closure of a set of elements.
    pub fn up_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let order = self.order();
        let mut out = FixedBitSet::with_capacity(self.n);
        for s in set.ones() {
            out.union_with(&order.up[s]);
        }
        out
    }

    /// Restricts to a subset closed under product and inverse that contains zero and one.
    pub fn submonoid(&self, elements: &[usize]) -> Result<Self> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &s) in elements.iter().enumerate() {
            index[s] = i;
        }
        let lookup = |s: usize| -> Result<usize> {
            match index[s] {
                usize::MAX => Err(Error::Malformed(format!(
                    "subset is not closed: element {s} escapes"
                ))),
                i => Ok(i),
            }
        };
        let mut mul = Vec::with_capacity(elements.len() * elements.len());
        for &a in elements {
            for &b in elements {
                mul.push(lookup(self.mul(a, b))?);
            }
        }
        let inv = elements
            .iter()
            .map(|&a| lookup(self.inv(a)))
            .collect::<Result<Vec<_>>>()?;
        let labels = self
            .labels
            .as_ref()
            .map(|l| elements.iter().map(|&s| l[s].clone()).collect());
        Self::from_flat(
            mul,
            inv,
            lookup(self.zero)?,
            lookup(self.one)?,
            labels,
            &MonoidConfig::default(),
        )
    }

    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            n: self.n,
            zero: self.zero,
            one: self.one,
            inv: self.inv.clone(),
            mul: self.mul.chunks(self.n).map(<[usize]>::to_vec).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Loads and re-verifies a monoid.
    pub fn from_json(json: MonoidJson) -> Result<Self> {
        if json.n != json.mul.len() || json.n != json.inv.len() {
            return Err(Error::Malformed(format!(
                "declared n = {} disagrees with table sizes",
                json.n
            )));
        }
        Self::new(json.mul, json.inv, json.zero, json.one, json.labels)
    }
}

impl PartialEq for InverseMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.mul == other.mul
            && self.inv == other.inv
            && self.zero == other.zero
            && self.one == other.one
    }
}

impl Eq for InverseMonoid {}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn ix2() -> InverseMonoid {
        symmetric_inverse_monoid(2).unwrap()
    }

    fn el(m: &InverseMonoid, label: &str) -> usize {
        m.find_label(label).unwrap()
    }

    #[test]
    fn dom_of_zero_and_one() {
        let m = ix2();
        assert_eq!(m.dom(m.zero()), m.zero());
        assert_eq!(m.dom(m.one()), m.one());
    }

    #[test]
    fn dom_of_partial_map() {
        let m = ix2();
        assert_eq!(m.dom(el(&m, "{1->2}")), el(&m, "{1->1}"));
        assert_eq!(m.ran(el(&m, "{1->2}")), el(&m, "{2->2}"));
    }

    #[test]
    fn order_basics() {
        let m = ix2();
        for s in m.elements() {
            assert!(m.leq(m.zero(), s));
            assert!(m.leq(s, s));
        }
        assert!(m.leq(el(&m, "{1->1}"), m.one()));
        assert!(!m.leq(el(&m, "{1->2}"), m.one()));
    }

    #[test]
    fn order_matches_definition() {
        let m = symmetric_inverse_monoid(3).unwrap();
        for s in m.elements() {
            for t in m.elements() {
                assert_eq!(m.leq(s, t), m.leq_definitional(s, t), "{s} {t}");
            }
        }
    }

    #[test]
    fn compatibility() {
        let m = ix2();
        for s in m.elements() {
            assert!(m.orthogonal(s, m.zero()));
            assert!(m.compatible(s, s));
        }
        assert!(m.orthogonal(el(&m, "{1->1}"), el(&m, "{2->2}")));
        assert!(!m.compatible(el(&m, "{1->1}"), el(&m, "{1->2}")));
    }

    #[test]
    fn meets_and_joins() {
        let m = ix2();
        for s in m.elements() {
            assert_eq!(m.meet(s, s), Some(s));
            assert_eq!(m.meet(s, m.zero()), Some(m.zero()));
            assert_eq!(m.join(s, m.zero()), Some(s));
            assert_eq!(m.join(s, s), Some(s));
        }
        let e1 = el(&m, "{1->1}");
        assert_eq!(m.meet(m.one(), e1), Some(e1));
        assert_eq!(m.join(e1, el(&m, "{2->2}")), Some(m.one()));
        // {1->1} and {1->2} have no common upper bound.
        assert_eq!(m.join(e1, el(&m, "{1->2}")), None);
    }

    #[test]
    fn relative_complements() {
        let m = ix2();
        for t in m.elements() {
            assert_eq!(m.relative_complement(m.zero(), t).unwrap(), t);
            assert_eq!(m.relative_complement(t, t).unwrap(), m.zero());
        }
        let e1 = el(&m, "{1->1}");
        assert_eq!(
            m.relative_complement(e1, m.one()).unwrap(),
            el(&m, "{2->2}")
        );
        assert!(matches!(
            m.relative_complement(el(&m, "{1->2}"), m.one()),
            Err(Error::NotBelow(_, _))
        ));
    }

    #[test]
    fn relative_complement_needs_boolean_idempotents() {
        let m = chain_monoid(3).unwrap();
        let e = 1;
        assert!(matches!(
            m.relative_complement(e, m.one()),
            Err(Error::NoComplement(_))
        ));
    }

    #[test]
    fn rejects_non_associative_table() {
        // {0, 1, a, b} with aa = b, bb = a, ab = a, ba = b: (aa)b = a but a(ab) = b.
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 3, 2],
            vec![0, 3, 3, 2],
        ];
        assert!(matches!(
            InverseMonoid::new(mul, vec![0, 1, 3, 2], 0, 1, None),
            Err(Error::NotAssociative(..))
        ));
    }

    #[test]
    fn rejects_bad_identity() {
        let mul = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            InverseMonoid::new(mul, vec![0, 1], 0, 1, None),
            Err(Error::IdentityLaw(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back = InverseMonoid::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.labels(), m.labels());
    }

    #[test]
    fn json_rejects_inconsistent_n() {
        let mut j = ix2().to_json();
        j.n = 5;
        assert!(InverseMonoid::from_json(j).is_err());
    }

    #[test]
    fn monte_carlo_associativity_path() {
        let config = MonoidConfig {
            exhaustive_assoc_bound: 4,
            sampled_triples: 10_000,
            ..MonoidConfig::default()
        };
        let m = symmetric_inverse_monoid(2).unwrap().to_json();
        let flat: Vec<usize> = m.mul.into_iter().flatten().collect();
        assert!(InverseMonoid::from_flat(flat, m.inv, m.zero, m.one, None, &config).is_ok());
    }

    #[test]
    fn size_bound() {
        let config = MonoidConfig {
            max_size: 5,
            ..MonoidConfig::default()
        };
        let m = ix2().to_json();
        let flat: Vec<usize> = m.mul.into_iter().flatten().collect();
        assert!(matches!(
            InverseMonoid::from_flat(flat, m.inv, m.zero, m.one, None, &config),
            Err(Error::SizeBound { .. })
        ));
    }
}
