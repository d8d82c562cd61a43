//! Finite groupoids, their bisections and the boolean inverse monoid A(G).
//!
//! A finite groupoid carries the discrete topology, so it is automatically
//! hausdorff and étale with a compact space of identities, and every subset
//! is compact open. Every bisection is therefore a compact open bisection and
//! A(G) is the monoid of all bisections.

mod bisection;
mod functor;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bisection::{
    all_bisections_monoid, all_bisections_monoid_bounded, bisections_by_injections,
    bisections_by_subsets, is_bisection, Bisection, BisectionMonoid, BisectionViolation,
    DEFAULT_BISECTION_BOUND,
};
pub use functor::{pullback_bisections, CoveringFunctor, CoveringViolation};

/// A finite groupoid on arrows `0..n`. Identities are arrows with `d(e) = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    d: Vec<usize>,
    r: Vec<usize>,
    inv: Vec<usize>,
    compose: Vec<Option<usize>>,
    identities: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// The JSON groupoid format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidJson {
    pub n: usize,
    pub identities: Vec<usize>,
    pub d: Vec<usize>,
    pub r: Vec<usize>,
    pub inv: Vec<usize>,
    /// Triples `[g, h, gh]`, one per composable pair.
    pub compose: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// What is recorded instead of checking the topological axioms.
pub const FINITE_TOPOLOGY_NOTE: &str =
    "finite discrete groupoid: hausdorff and étale, compact space of identities, \
     singleton bisections form a basis of compact open bisections";

impl FiniteGroupoid {
    /// Builds and validates a groupoid from its structure maps.
    pub fn from_parts(
        d: Vec<usize>,
        r: Vec<usize>,
        inv: Vec<usize>,
        compose: Vec<Option<usize>>,
        identities: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let g = Self {
            d,
            r,
            inv,
            compose,
            identities,
            labels,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.d.len();
        let bad = |msg: String| Err(Error::GroupoidAxiom(msg));
        if self.r.len() != n || self.inv.len() != n || self.compose.len() != n * n {
            return Err(Error::Malformed("groupoid table sizes disagree".into()));
        }
        if let Some(l) = &self.labels {
            if l.len() != n {
                return Err(Error::Malformed(
                    "label count differs from arrow count".into(),
                ));
            }
        }
        let in_range = self
            .d
            .iter()
            .chain(&self.r)
            .chain(&self.inv)
            .chain(self.compose.iter().flatten())
            .chain(&self.identities)
            .all(|&x| x < n);
        if !in_range {
            return Err(Error::Malformed("groupoid entry out of range".into()));
        }
        let ids: BTreeSet<usize> = (0..n).filter(|&g| self.d[g] == g).collect();
        if ids != self.identities.iter().copied().collect() {
            return bad("identity set differs from the fixed points of d".into());
        }
        for g in 0..n {
            if !ids.contains(&self.d[g]) || !ids.contains(&self.r[g]) {
                return bad(format!("d or r of arrow {g} is not an identity"));
            }
        }
        for &e in &self.identities {
            if self.r[e] != e || self.inv[e] != e {
                return bad(format!("identity {e} has r(e) != e or e⁻¹ != e"));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let defined = self.compose(g, h);
                if defined.is_some() != (self.d[g] == self.r[h]) {
                    return bad(format!("({g},{h}) composable iff d(g) = r(h) fails"));
                }
                if let Some(gh) = defined {
                    if self.d[gh] != self.d[h] || self.r[gh] != self.r[g] {
                        return bad(format!("arrow {g}·{h} has the wrong ends"));
                    }
                }
            }
            if self.compose(self.r[g], g) != Some(g) || self.compose(g, self.d[g]) != Some(g) {
                return bad(format!("identities do not act neutrally on {g}"));
            }
            let gi = self.inv[g];
            if self.compose(g, gi) != Some(self.r[g]) || self.compose(gi, g) != Some(self.d[g]) {
                return bad(format!("inverse law fails at {g}"));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = self.compose(g, h) else {
                    continue;
                };
                for k in 0..n {
                    if let Some(hk) = self.compose(h, k) {
                        if self.compose(gh, k) != self.compose(g, hk) {
                            return bad(format!("associativity fails at ({g},{h},{k})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn arrows(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn d(&self, g: usize) -> usize {
        self.d[g]
    }

    pub fn r(&self, g: usize) -> usize {
        self.r[g]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose[g * self.len() + h]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.d[g] == g
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// The star `{g : d(g) = e}`.
    pub fn star(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows().filter(move |&g| self.d[g] == e)
    }

    /// Whether every arrow has `d(g) = r(g)`, i.e. the groupoid is a disjoint union of groups.
    pub fn is_group_bundle(&self) -> bool {
        self.arrows().all(|g| self.d[g] == self.r[g])
    }

    /// The pair groupoid `X × X` on `points` objects. Arrow `(i, j)` has
    /// index `i·points + j`, range `i` and domain `j`.
    pub fn pair(points: usize) -> Result<Self> {
        let n = points * points;
        let idx = |i: usize, j: usize| i * points + j;
        let mut d = Vec::with_capacity(n);
        let mut r = Vec::with_capacity(n);
        let mut inv = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for i in 0..points {
            for j in 0..points {
                d.push(idx(j, j));
                r.push(idx(i, i));
                inv.push(idx(j, i));
                labels.push(format!("({},{})", i + 1, j + 1));
            }
        }
        let mut compose = vec![None; n * n];
        for i in 0..points {
            for j in 0..points {
                for k in 0..points {
                    compose[idx(i, j) * n + idx(j, k)] = Some(idx(i, k));
                }
            }
        }
        let identities = (0..points).map(|i| idx(i, i)).collect();
        Self::from_parts(d, r, inv, compose, identities, Some(labels))
    }

    /// The cyclic group of the given order as a one-object groupoid.
    pub fn cyclic_group(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("group order must be positive".into()));
        }
        let compose = (0..order)
            .flat_map(|a| (0..order).map(move |b| Some((a + b) % order)))
            .collect();
        let labels = (0..order)
            .map(|a| match a {
                0 => "e".to_string(),
                1 => "g".to_string(),
                a => format!("g^{a}"),
            })
            .collect();
        Self::from_parts(
            vec![0; order],
            vec![0; order],
            (0..order).map(|a| (order - a) % order).collect(),
            compose,
            vec![0],
            Some(labels),
        )
    }

    /// The groupoid with a single identity arrow.
    pub fn trivial() -> Self {
        Self::cyclic_group(1).expect("the trivial group is a groupoid")
    }

    /// Disjoint union; arrows of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<Self> {
        let n: usize = parts.iter().map(Self::len).sum();
        let mut d = Vec::with_capacity(n);
        let mut r = Vec::with_capacity(n);
        let mut inv = Vec::with_capacity(n);
        let mut identities = Vec::new();
        let mut labels = Vec::with_capacity(n);
        let mut compose = vec![None; n * n];
        let mut offset = 0;
        for (p, part) in parts.iter().enumerate() {
            for g in part.arrows() {
                d.push(part.d(g) + offset);
                r.push(part.r(g) + offset);
                inv.push(part.inv(g) + offset);
                labels.push(format!("{}#{}", part.label(g), p + 1));
                for h in part.arrows() {
                    if let Some(gh) = part.compose(g, h) {
                        compose[(g + offset) * n + h + offset] = Some(gh + offset);
                    }
                }
            }
            identities.extend(part.identities().iter().map(|e| e + offset));
            offset += part.len();
        }
        identities.sort_unstable();
        Self::from_parts(d, r, inv, compose, identities, Some(labels))
    }

    pub fn to_json(&self) -> GroupoidJson {
        let mut compose = Vec::new();
        for g in self.arrows() {
            for h in self.arrows() {
                if let Some(gh) = self.compose(g, h) {
                    compose.push([g, h, gh]);
                }
            }
        }
        GroupoidJson {
            n: self.len(),
            identities: self.identities.clone(),
            d: self.d.clone(),
            r: self.r.clone(),
            inv: self.inv.clone(),
            compose,
            labels: self.labels.clone(),
        }
    }

    /// Loads and re-verifies a groupoid.
    pub fn from_json(json: GroupoidJson) -> Result<Self> {
        let n = json.n;
        if json.d.len() != n {
            return Err(Error::Malformed(format!(
                "declared n = {n} disagrees with the d table"
            )));
        }
        let mut compose = vec![None; n * n];
        for [g, h, gh] in json.compose {
            if g >= n || h >= n {
                return Err(Error::Malformed("compose triple out of range".into()));
            }
            compose[g * n + h] = Some(gh);
        }
        Self::from_parts(
            json.d,
            json.r,
            json.inv,
            compose,
            json.identities,
            json.labels,
        )
    }

    /// Graphviz rendering: identities are objects (double circles), other
    /// arrows are edges from domain to range.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        for &e in &self.identities {
            let _ = writeln!(
                out,
                "  n{e} [shape=doublecircle, label=\"{}\"];",
                self.label(e).replace('"', "'")
            );
        }
        for g in self.arrows().filter(|&g| !self.is_identity(g)) {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                self.d(g),
                self.r(g),
                self.label(g).replace('"', "'")
            );
        }
        out.push_str("}\n");
        out
    }

    /// Checks that `map` is an isomorphism onto `other`: a bijection that
    /// preserves `d`, `r` and composition.
    pub fn check_isomorphism(&self, other: &FiniteGroupoid, map: &[usize]) -> Result<(), String> {
        if map.len() != self.len() || other.len() != self.len() {
            return Err(format!(
                "sizes differ: {} arrows, {} images, {} target arrows",
                self.len(),
                map.len(),
                other.len()
            ));
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (g, &img) in map.iter().enumerate() {
            if img >= other.len() {
                return Err(format!("image of {g} out of range"));
            }
            if let Some(h) = seen.insert(img, g) {
                return Err(format!("arrows {h} and {g} share an image"));
            }
        }
        for g in self.arrows() {
            if map[self.d(g)] != other.d(map[g]) || map[self.r(g)] != other.r(map[g]) {
                return Err(format!("ends of arrow {g} not preserved"));
            }
            for h in self.arrows() {
                let lhs = self.compose(g, h).map(|gh| map[gh]);
                let rhs = other.compose(map[g], map[h]);
                if lhs != rhs {
                    return Err(format!("composition of ({g},{h}) not preserved"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_laws() {
        let g = FiniteGroupoid::pair(3).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g.identities(), &[0, 4, 8]);
        // (1,2)(2,3) = (1,3)
        assert_eq!(g.compose(1, 5), Some(2));
        assert_eq!(g.compose(1, 1), None);
    }

    #[test]
    fn unions_and_groups() {
        let z2 = FiniteGroupoid::cyclic_group(2).unwrap();
        let z3 = FiniteGroupoid::cyclic_group(3).unwrap();
        let u = FiniteGroupoid::disjoint_union(&[z2, z3]).unwrap();
        assert_eq!(u.len(), 5);
        assert_eq!(u.identities(), &[0, 2]);
        assert!(u.is_group_bundle());
        assert_eq!(u.compose(0, 2), None);
        assert_eq!(u.compose(3, 4), Some(2));
    }

    #[test]
    fn rejects_broken_composition() {
        let mut j = FiniteGroupoid::cyclic_group(3).unwrap().to_json();
        j.compose[4][2] = 0;
        assert!(matches!(
            FiniteGroupoid::from_json(j),
            Err(Error::GroupoidAxiom(_))
        ));
    }

    #[test]
    fn rejects_missing_identity() {
        let mut j = FiniteGroupoid::pair(2).unwrap().to_json();
        j.identities.pop();
        assert!(FiniteGroupoid::from_json(j).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back = FiniteGroupoid::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn dot_marks_identities() {
        let dot = FiniteGroupoid::pair(2).unwrap().to_dot("pair2");
        assert_eq!(dot.matches("doublecircle").count(), 2);
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn isomorphism_check() {
        let g = FiniteGroupoid::pair(2).unwrap();
        assert!(g.check_isomorphism(&g, &[0, 1, 2, 3]).is_ok());
        // swapping the two objects is also an isomorphism
        assert!(g.check_isomorphism(&g, &[3, 2, 1, 0]).is_ok());
        assert!(g.check_isomorphism(&g, &[0, 2, 1, 3]).is_err());
    }
}
