//! Morphisms of boolean inverse monoids.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::{enumerate_ultrafilters, Filter};
use crate::monoid::InverseMonoid;

/// The first axiom a candidate morphism fails, with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom")]
pub enum MorphismViolation {
    /// `θ(st) ≠ θ(s)θ(t)`.
    #[serde(rename = "homomorphism")]
    Homomorphism { s: usize, t: usize },
    /// Not a boolean-algebra map on idempotents; `op` names the operation.
    M1 { op: String, elements: Vec<usize> },
    /// `θ(s ∧ t) ≠ θ(s) ∧ θ(t)`.
    M2 { s: usize, t: usize },
    /// The preimage of the ultrafilter generated by `generator` is not an ultrafilter.
    M3 {
        generator: usize,
        preimage: Vec<usize>,
    },
}

impl MorphismViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Self::Homomorphism { .. } => "homomorphism",
            Self::M1 { .. } => "M1",
            Self::M2 { .. } => "M2",
            Self::M3 { .. } => "M3",
        }
    }
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Homomorphism { s, t } => write!(f, "homomorphism: product of {s} and {t} not preserved"),
            Self::M1 { op, elements } => write!(f, "M1: {op} not preserved at {elements:?}"),
            Self::M2 { s, t } => write!(f, "M2: meet of {s} and {t} not preserved"),
            Self::M3 { generator, preimage } => write!(
                f,
                "M3: preimage {preimage:?} of the ultrafilter generated by {generator} is not an ultrafilter"
            ),
        }
    }
}

/// A map between finite inverse monoids given by its element table.
#[derive(Clone, Debug)]
pub struct MonoidMorphism<'a> {
    source: &'a InverseMonoid,
    target: &'a InverseMonoid,
    map: Vec<usize>,
}

/// Serialized morphism: the table only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub map: Vec<usize>,
}

impl<'a> MonoidMorphism<'a> {
    /// Checks only the shape of the table. Use [`Self::validate`] for the axioms.
    pub fn new(
        source: &'a InverseMonoid,
        target: &'a InverseMonoid,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return Err(Error::Malformed(format!(
                "morphism table needs {} entries below {}",
                source.size(),
                target.size()
            )));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    /// Builds and fully validates.
    pub fn checked(
        source: &'a InverseMonoid,
        target: &'a InverseMonoid,
        map: Vec<usize>,
    ) -> Result<Self> {
        let theta = Self::new(source, target, map)?;
        theta.validate().map_err(Error::Morphism)?;
        Ok(theta)
    }

    pub fn identity(m: &'a InverseMonoid) -> Self {
        Self {
            source: m,
            target: m,
            map: m.elements().collect(),
        }
    }

    pub fn source(&self) -> &'a InverseMonoid {
        self.source
    }

    pub fn target(&self) -> &'a InverseMonoid {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonoidMorphism<'a>) -> Result<MonoidMorphism<'a>> {
        if !std::ptr::eq(self.target, next.source) {
            return Err(Error::Malformed("morphisms are not composable".into()));
        }
        Self::new(
            self.source,
            next.target,
            self.map.iter().map(|&x| next.map[x]).collect(),
        )
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            map: self.map.clone(),
        }
    }

    /// `θ⁻¹(X)` for a set of target elements.
    pub fn preimage(&self, members: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.source.size());
        for s in self.source.elements() {
            if members.contains(self.map[s]) {
                out.insert(s);
            }
        }
        out
    }

    /// Homomorphism, then M1, M2 and M3, stopping at the first failure.
    pub fn validate(&self) -> Result<(), MorphismViolation> {
        self.validate_weak()?;
        self.check_m3()
    }

    /// Homomorphism, M1 and M2 only.
    pub fn validate_weak(&self) -> Result<(), MorphismViolation> {
        self.check_homomorphism()?;
        self.check_m1()?;
        self.check_m2()
    }

    fn check_homomorphism(&self) -> Result<(), MorphismViolation> {
        let (s, t) = (self.source, self.target);
        for a in s.elements() {
            for b in s.elements() {
                if self.map[s.mul(a, b)] != t.mul(self.map[a], self.map[b]) {
                    return Err(MorphismViolation::Homomorphism { s: a, t: b });
                }
            }
        }
        Ok(())
    }

    fn check_m1(&self) -> Result<(), MorphismViolation> {
        let (s, t) = (self.source, self.target);
        let fail = |op: &str, elements: Vec<usize>| MorphismViolation::M1 {
            op: op.into(),
            elements,
        };
        if self.map[s.zero()] != t.zero() {
            return Err(fail("zero", vec![s.zero()]));
        }
        if self.map[s.one()] != t.one() {
            return Err(fail("identity", vec![s.one()]));
        }
        for &e in s.idempotents() {
            if !t.is_idempotent(self.map[e]) {
                return Err(fail("idempotency", vec![e]));
            }
            let image_complement = t.idempotent_complement(self.map[e]);
            if s.idempotent_complement(e).map(|c| self.map[c]) != image_complement {
                return Err(fail("complement", vec![e]));
            }
            for &f in s.idempotents() {
                if self.map[s.mul(e, f)] != t.mul(self.map[e], self.map[f]) {
                    return Err(fail("meet", vec![e, f]));
                }
                let joined = s.join(e, f).map(|j| self.map[j]);
                if joined.is_some() && joined != t.join(self.map[e], self.map[f]) {
                    return Err(fail("join", vec![e, f]));
                }
            }
        }
        Ok(())
    }

    fn check_m2(&self) -> Result<(), MorphismViolation> {
        let (s, t) = (self.source, self.target);
        for a in s.elements() {
            for b in a + 1..s.size() {
                if let Some(m) = s.meet(a, b) {
                    if t.meet(self.map[a], self.map[b]) != Some(self.map[m]) {
                        return Err(MorphismViolation::M2 { s: a, t: b });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_m3(&self) -> Result<(), MorphismViolation> {
        // Targets that are not boolean have no ultrafilter list to pull back.
        let Ok(ultrafilters) = enumerate_ultrafilters(self.target) else {
            return Ok(());
        };
        for u in &ultrafilters {
            let pre = self.preimage(u.members());
            let ultra = Filter::new(self.source, pre.clone()).is_ok_and(|f| f.is_ultrafilter());
            if !ultra {
                return Err(MorphismViolation::M3 {
                    generator: u.generator(),
                    preimage: pre.ones().collect(),
                });
            }
        }
        Ok(())
    }
}
