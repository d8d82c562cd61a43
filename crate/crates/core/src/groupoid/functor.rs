use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BisectionMonoid, FiniteGroupoid};
use crate::error::{Error, Result};
use crate::morphism::MonoidMorphism;

/// Why a functor fails to be a covering functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoveringViolation {
    /// Two distinct arrows out of `object` have the same image.
    StarNotInjective { object: usize, g: usize, h: usize },
    /// `target_arrow` leaves the image of `object` but has no preimage in its star.
    StarNotSurjective { object: usize, target_arrow: usize },
    /// `f(x) = ab` has no factorisation `x = uv` with `f(u) = a`, `f(v) = b`.
    NoLift { x: usize, a: usize, b: usize },
}

impl CoveringViolation {
    pub fn name(&self) -> &'static str {
        match self {
            Self::StarNotInjective { .. } => "star-injectivity",
            Self::StarNotSurjective { .. } => "star-surjectivity",
            Self::NoLift { .. } => "lifting",
        }
    }
}

impl fmt::Display for CoveringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::StarNotInjective { object, g, h } => write!(
                f,
                "star-injectivity: arrows {g} and {h} out of object {object} have the same image"
            ),
            Self::StarNotSurjective {
                object,
                target_arrow,
            } => write!(
                f,
                "star-surjectivity: target arrow {target_arrow} has no preimage out of object {object}"
            ),
            Self::NoLift { x, a, b } => {
                write!(f, "lifting: image of {x} equals {a}·{b} but no factorisation lifts it")
            }
        }
    }
}

/// A functor between finite groupoids, given on arrows. The object map is
/// the restriction to identities. Continuity is automatic for discrete
/// groupoids, and so is properness.
#[derive(Clone, Debug)]
pub struct CoveringFunctor<'a> {
    source: &'a FiniteGroupoid,
    target: &'a FiniteGroupoid,
    arrow_map: Vec<usize>,
}

impl<'a> CoveringFunctor<'a> {
    /// Validates the functor laws. Covering is checked separately by [`Self::check_covering`].
    pub fn new(
        source: &'a FiniteGroupoid,
        target: &'a FiniteGroupoid,
        arrow_map: Vec<usize>,
    ) -> Result<Self> {
        if arrow_map.len() != source.len() || arrow_map.iter().any(|&x| x >= target.len()) {
            return Err(Error::NotAFunctor("arrow map has the wrong shape".into()));
        }
        let f = Self {
            source,
            target,
            arrow_map,
        };
        for g in source.arrows() {
            let fg = f.arrow_map[g];
            if f.arrow_map[source.d(g)] != target.d(fg) || f.arrow_map[source.r(g)] != target.r(fg)
            {
                return Err(Error::NotAFunctor(format!(
                    "ends of arrow {g} not preserved"
                )));
            }
            if source.is_identity(g) && !target.is_identity(fg) {
                return Err(Error::NotAFunctor(format!(
                    "identity {g} not sent to an identity"
                )));
            }
            for h in source.arrows() {
                if let Some(gh) = source.compose(g, h) {
                    if target.compose(fg, f.arrow_map[h]) != Some(f.arrow_map[gh]) {
                        return Err(Error::NotAFunctor(format!(
                            "composition ({g},{h}) not preserved"
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn identity(g: &'a FiniteGroupoid) -> Self {
        Self {
            source: g,
            target: g,
            arrow_map: g.arrows().collect(),
        }
    }

    pub fn source(&self) -> &'a FiniteGroupoid {
        self.source
    }

    pub fn target(&self) -> &'a FiniteGroupoid {
        self.target
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.arrow_map[g]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &CoveringFunctor<'a>) -> Result<CoveringFunctor<'a>> {
        if !std::ptr::eq(first.target, self.source) {
            return Err(Error::NotAFunctor("functors are not composable".into()));
        }
        Self::new(
            first.source,
            self.target,
            first.arrow_map.iter().map(|&x| self.arrow_map[x]).collect(),
        )
    }

    /// Star-injectivity, then star-surjectivity, then the lifting property
    /// `f(x) = ab ⇒ x = uv` with `f(u) = a`, `f(v) = b`.
    pub fn check_covering(&self) -> Result<(), CoveringViolation> {
        let (s, t) = (self.source, self.target);
        for &e in s.identities() {
            let star: Vec<usize> = s.star(e).collect();
            for (i, &g) in star.iter().enumerate() {
                for &h in &star[i + 1..] {
                    if self.arrow_map[g] == self.arrow_map[h] {
                        return Err(CoveringViolation::StarNotInjective { object: e, g, h });
                    }
                }
            }
        }
        for &e in s.identities() {
            let fe = self.arrow_map[e];
            for target_arrow in t.star(fe) {
                if !s.star(e).any(|g| self.arrow_map[g] == target_arrow) {
                    return Err(CoveringViolation::StarNotSurjective {
                        object: e,
                        target_arrow,
                    });
                }
            }
        }
        for x in s.arrows() {
            let fx = self.arrow_map[x];
            for a in t.arrows() {
                for b in t.arrows() {
                    if t.compose(a, b) != Some(fx) {
                        continue;
                    }
                    let lifted = s.arrows().any(|u| {
                        self.arrow_map[u] == a
                            && s.arrows()
                                .any(|v| self.arrow_map[v] == b && s.compose(u, v) == Some(x))
                    });
                    if !lifted {
                        return Err(CoveringViolation::NoLift { x, a, b });
                    }
                }
            }
        }
        Ok(())
    }
}

/// `B(f) = f⁻¹ : A(H) → A(G)` for a covering functor `f : G → H`, validated
/// as a morphism of boolean inverse monoids (homomorphism, M1, M2, M3).
pub fn pullback_bisections<'m>(
    f: &CoveringFunctor<'_>,
    a_target: &'m BisectionMonoid<'_>,
    a_source: &'m BisectionMonoid<'_>,
) -> Result<MonoidMorphism<'m>> {
    if !std::ptr::eq(a_target.groupoid(), f.target())
        || !std::ptr::eq(a_source.groupoid(), f.source())
    {
        return Err(Error::NotAFunctor(
            "bisection monoids were not built from the functor's groupoids".into(),
        ));
    }
    f.check_covering().map_err(Error::NotCovering)?;
    let source = f.source();
    let map = a_target
        .bisections()
        .iter()
        .map(|b| {
            let mut pre = fixedbitset::FixedBitSet::with_capacity(source.len());
            for x in source.arrows() {
                if b.contains(f.apply(x)) {
                    pre.insert(x);
                }
            }
            a_source
                .index_of(&pre)
                .ok_or_else(|| Error::Invariant(format!("preimage of {b:?} is not a bisection")))
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = MonoidMorphism::new(a_target.monoid(), a_source.monoid(), map)?;
    theta.validate().map_err(Error::Morphism)?;
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::all_bisections_monoid;

    #[test]
    fn identity_is_covering() {
        let g = FiniteGroupoid::pair(2).unwrap();
        assert!(CoveringFunctor::identity(&g).check_covering().is_ok());
        let z2 = FiniteGroupoid::cyclic_group(2).unwrap();
        let f = CoveringFunctor::new(&z2, &z2, vec![0, 1]).unwrap();
        assert!(f.check_covering().is_ok());
    }

    #[test]
    fn collapse_fails_star_injectivity() {
        let p = FiniteGroupoid::pair(2).unwrap();
        let t = FiniteGroupoid::trivial();
        let f = CoveringFunctor::new(&p, &t, vec![0; 4]).unwrap();
        assert_eq!(
            f.check_covering(),
            Err(CoveringViolation::StarNotInjective {
                object: 0,
                g: 0,
                h: 2
            })
        );
        let z2 = FiniteGroupoid::cyclic_group(2).unwrap();
        let g = CoveringFunctor::new(&z2, &t, vec![0, 0]).unwrap();
        assert_eq!(g.check_covering().unwrap_err().name(), "star-injectivity");
    }

    #[test]
    fn inclusion_of_a_component_is_not_surjective_on_stars_of_the_target() {
        // Z/2 → Z/2 ⊔ Z/2 is star bijective: stars are computed per source object.
        let z2 = FiniteGroupoid::cyclic_group(2).unwrap();
        let u = FiniteGroupoid::disjoint_union(&[z2.clone(), z2.clone()]).unwrap();
        let f = CoveringFunctor::new(&z2, &u, vec![0, 1]).unwrap();
        assert!(f.check_covering().is_ok());
        // the trivial group into Z/2 misses the generator in the star
        let t = FiniteGroupoid::trivial();
        let g = CoveringFunctor::new(&t, &z2, vec![0]).unwrap();
        assert_eq!(
            g.check_covering(),
            Err(CoveringViolation::StarNotSurjective {
                object: 0,
                target_arrow: 1
            })
        );
    }

    #[test]
    fn rejects_non_functor() {
        let z2 = FiniteGroupoid::cyclic_group(2).unwrap();
        assert!(matches!(
            CoveringFunctor::new(&z2, &z2, vec![1, 1]),
            Err(Error::NotAFunctor(_))
        ));
    }

    #[test]
    fn pullback_of_identity_is_identity() {
        let g = FiniteGroupoid::pair(2).unwrap();
        let a = all_bisections_monoid(&g).unwrap();
        let f = CoveringFunctor::identity(&g);
        let theta = pullback_bisections(&f, &a, &a).unwrap();
        assert_eq!(theta.map(), (0..7).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn pullback_along_component_inclusion() {
        // G = pair(2) included as one component of H = pair(2) ⊔ pair(2).
        let g = FiniteGroupoid::pair(2).unwrap();
        let h = FiniteGroupoid::disjoint_union(&[g.clone(), g.clone()]).unwrap();
        let f = CoveringFunctor::new(&g, &h, vec![0, 1, 2, 3]).unwrap();
        let ag = all_bisections_monoid(&g).unwrap();
        let ah = all_bisections_monoid(&h).unwrap();
        let theta = pullback_bisections(&f, &ah, &ag).unwrap();
        assert_eq!(theta.apply(ah.monoid().zero()), ag.monoid().zero());
        assert_eq!(theta.apply(ah.monoid().one()), ag.monoid().one());
    }
}
