//! Named example objects and the JSON envelope used by the store.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{CoveringFunctor, FiniteGroupoid, GroupoidJson};
use crate::monoid::examples::{
    boolean_algebra, brandt_monoid, chain_monoid, clifford_example, group_with_zero,
    symmetric_inverse_monoid,
};
use crate::monoid::{InverseMonoid, MonoidJson};
use crate::morphism::MonoidMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Monoid,
    Groupoid,
    Morphism,
    Functor,
}

/// A stored object: every loader re-verifies the structural invariants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub payload: serde_json::Value,
}

/// A morphism stored together with its source and target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismPayload {
    pub source: MonoidJson,
    pub target: MonoidJson,
    pub map: Vec<usize>,
}

/// A functor stored together with its source and target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorPayload {
    pub source: GroupoidJson,
    pub target: GroupoidJson,
    pub arrow_map: Vec<usize>,
}

impl CorpusEntry {
    pub fn monoid(name: impl Into<String>, m: &InverseMonoid) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            kind: EntryKind::Monoid,
            payload: serde_json::to_value(m.to_json())?,
        })
    }

    pub fn groupoid(name: impl Into<String>, g: &FiniteGroupoid) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            kind: EntryKind::Groupoid,
            payload: serde_json::to_value(g.to_json())?,
        })
    }

    pub fn morphism(name: impl Into<String>, theta: &MonoidMorphism<'_>) -> Result<Self> {
        let payload = MorphismPayload {
            source: theta.source().to_json(),
            target: theta.target().to_json(),
            map: theta.map().to_vec(),
        };
        Ok(Self {
            name: name.into(),
            kind: EntryKind::Morphism,
            payload: serde_json::to_value(payload)?,
        })
    }

    pub fn functor(name: impl Into<String>, f: &CoveringFunctor<'_>) -> Result<Self> {
        let payload = FunctorPayload {
            source: f.source().to_json(),
            target: f.target().to_json(),
            arrow_map: f.arrow_map().to_vec(),
        };
        Ok(Self {
            name: name.into(),
            kind: EntryKind::Functor,
            payload: serde_json::to_value(payload)?,
        })
    }

    fn expect(&self, kind: EntryKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Malformed(format!(
                "entry {:?} is a {:?}, expected a {:?}",
                self.name, self.kind, kind
            )))
        }
    }

    pub fn to_monoid(&self) -> Result<InverseMonoid> {
        self.expect(EntryKind::Monoid)?;
        InverseMonoid::from_json(serde_json::from_value(self.payload.clone())?)
    }

    pub fn to_groupoid(&self) -> Result<FiniteGroupoid> {
        self.expect(EntryKind::Groupoid)?;
        FiniteGroupoid::from_json(serde_json::from_value(self.payload.clone())?)
    }

    /// Source, target and map; the map is shape-checked once the caller
    /// borrows the two monoids into a [`MonoidMorphism`].
    pub fn to_morphism_parts(&self) -> Result<(InverseMonoid, InverseMonoid, Vec<usize>)> {
        self.expect(EntryKind::Morphism)?;
        let p: MorphismPayload = serde_json::from_value(self.payload.clone())?;
        Ok((
            InverseMonoid::from_json(p.source)?,
            InverseMonoid::from_json(p.target)?,
            p.map,
        ))
    }

    pub fn to_functor_parts(&self) -> Result<(FiniteGroupoid, FiniteGroupoid, Vec<usize>)> {
        self.expect(EntryKind::Functor)?;
        let p: FunctorPayload = serde_json::from_value(self.payload.clone())?;
        Ok((
            FiniteGroupoid::from_json(p.source)?,
            FiniteGroupoid::from_json(p.target)?,
            p.arrow_map,
        ))
    }
}

/// The monoids whose duality round trip is certified.
pub fn duality_monoids() -> Result<Vec<(String, InverseMonoid)>> {
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push((format!("ix{k}"), symmetric_inverse_monoid(k)?));
    }
    for atoms in 1..=4 {
        out.push((
            format!("bool-algebra-{}", 1 << atoms),
            boolean_algebra(atoms)?,
        ));
    }
    out.push(("z2-zero".into(), group_with_zero(2)?));
    out.push(("z3-zero".into(), group_with_zero(3)?));
    out.push(("clifford".into(), clifford_example()?));
    Ok(out)
}

/// The groupoids whose duality round trip is certified.
pub fn duality_groupoids() -> Result<Vec<(String, FiniteGroupoid)>> {
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push((format!("pair{k}"), FiniteGroupoid::pair(k)?));
    }
    let z2 = FiniteGroupoid::cyclic_group(2)?;
    let z3 = FiniteGroupoid::cyclic_group(3)?;
    out.push(("z2".into(), z2.clone()));
    out.push(("z2+z3".into(), FiniteGroupoid::disjoint_union(&[z2, z3])?));
    Ok(out)
}

/// Names accepted by [`named`].
pub const NAMES: &[&str] = &[
    "ix1",
    "ix2",
    "ix3",
    "bool-algebra-2",
    "bool-algebra-4",
    "bool-algebra-8",
    "bool-algebra-16",
    "z2-zero",
    "z3-zero",
    "clifford",
    "brandt",
    "bad-monoid",
    "pair1",
    "pair2",
    "pair3",
    "z2",
    "z2+z3",
    "bad-functor",
];

/// A named corpus entry. `bad-monoid` is the three-element chain, whose
/// middle idempotent has no complement; `bad-functor` collapses the pair
/// groupoid on two points onto a single point.
pub fn named(name: &str) -> Result<CorpusEntry> {
    if let Some((_, m)) = duality_monoids()?.into_iter().find(|(n, _)| n == name) {
        return CorpusEntry::monoid(name, &m);
    }
    if let Some((_, g)) = duality_groupoids()?.into_iter().find(|(n, _)| n == name) {
        return CorpusEntry::groupoid(name, &g);
    }
    match name {
        "brandt" => CorpusEntry::monoid(name, &brandt_monoid()?),
        "bad-monoid" => CorpusEntry::monoid(name, &chain_monoid(3)?),
        "bad-functor" => {
            let p = FiniteGroupoid::pair(2)?;
            let t = FiniteGroupoid::trivial();
            CorpusEntry::functor(name, &CoveringFunctor::new(&p, &t, vec![0; p.len()])?)
        }
        _ => Err(Error::Malformed(format!(
            "unknown corpus entry {name:?}; known: {}",
            NAMES.join(", ")
        ))),
    }
}
