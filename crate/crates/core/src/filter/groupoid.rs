use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{enumerate_ultrafilters, Filter};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::monoid::InverseMonoid;

/// The groupoid G(S) of ultrafilters of a boolean inverse monoid.
///
/// Arrow `i` is `ultrafilters[i]`; `d(A) = A⁻¹·A`, `r(A) = A·A⁻¹`, and `A·B`
/// is the filter product, defined exactly when `d(A) = r(B)`.
#[derive(Clone, Debug)]
pub struct UltrafilterGroupoid<'a> {
    monoid: &'a InverseMonoid,
    ultrafilters: Vec<Filter<'a>>,
    index: HashMap<FixedBitSet, usize>,
    d: Vec<usize>,
    r: Vec<usize>,
    compose: Vec<Option<usize>>,
    groupoid: FiniteGroupoid,
}

/// JSON export of G(S).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UltrafilterGroupoidJson {
    pub ultrafilters: Vec<Vec<usize>>,
    pub d: Vec<usize>,
    pub r: Vec<usize>,
    pub compose: Vec<[usize; 3]>,
}

impl<'a> UltrafilterGroupoid<'a> {
    pub fn new(monoid: &'a InverseMonoid) -> Result<Self> {
        let ultrafilters = enumerate_ultrafilters(monoid)?;
        let k = ultrafilters.len();
        let index: HashMap<FixedBitSet, usize> = ultrafilters
            .iter()
            .enumerate()
            .map(|(i, f)| (f.members().clone(), i))
            .collect();
        let lookup = |f: &Filter<'_>, what: &str| -> Result<usize> {
            index
                .get(f.members())
                .copied()
                .ok_or_else(|| Error::Invariant(format!("{what} {f:?} is not an ultrafilter")))
        };

        let mut d = Vec::with_capacity(k);
        let mut r = Vec::with_capacity(k);
        for f in &ultrafilters {
            let dom = f.domain();
            // F ultra ⟺ F⁻¹·F idempotent ultra ⟺ E(F⁻¹·F) ultra in E(S).
            if !(dom.is_idempotent() && dom.is_ultrafilter() && idempotent_part_is_ultra(&dom)) {
                return Err(Error::Invariant(format!(
                    "domain of ultrafilter {f:?} fails the idempotent-ultrafilter equivalences"
                )));
            }
            d.push(lookup(&dom, "domain")?);
            r.push(lookup(&f.range(), "range")?);
        }

        let mut compose = vec![None; k * k];
        for (i, a) in ultrafilters.iter().enumerate() {
            for (j, b) in ultrafilters.iter().enumerate() {
                if d[i] != r[j] {
                    continue;
                }
                let ab = a.product(b);
                // Explicit form (ab·B⁻¹·B)↑ for any a ∈ A, b ∈ B.
                let (x, y) = (a.min_member(), b.min_member());
                let mut seed = FixedBitSet::with_capacity(monoid.size());
                seed.insert(monoid.mul(x, y));
                let explicit =
                    monoid.up_closure(&super::set_product(monoid, &seed, b.domain().members()));
                if &explicit != ab.members() {
                    return Err(Error::Invariant(format!(
                        "product of {a:?} and {b:?} differs from its explicit form"
                    )));
                }
                compose[i * k + j] = Some(lookup(&ab, "product")?);
            }
        }

        let identities: Vec<usize> = (0..k).filter(|&i| d[i] == i).collect();
        let inv = ultrafilters
            .iter()
            .map(|f| lookup(&f.inverse(), "inverse"))
            .collect::<Result<Vec<_>>>()?;
        let labels = ultrafilters
            .iter()
            .map(|f| format!("{}↑", monoid.label(f.generator())))
            .collect();
        let groupoid = FiniteGroupoid::from_parts(
            d.clone(),
            r.clone(),
            inv,
            compose.clone(),
            identities,
            Some(labels),
        )?;
        Ok(Self {
            monoid,
            ultrafilters,
            index,
            d,
            r,
            compose,
            groupoid,
        })
    }

    pub fn monoid(&self) -> &'a InverseMonoid {
        self.monoid
    }

    pub fn ultrafilters(&self) -> &[Filter<'a>] {
        &self.ultrafilters
    }

    pub fn len(&self) -> usize {
        self.ultrafilters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ultrafilters.is_empty()
    }

    pub fn index_of(&self, f: &Filter<'_>) -> Option<usize> {
        self.index.get(f.members()).copied()
    }

    pub fn index_of_members(&self, members: &FixedBitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn d(&self, i: usize) -> usize {
        self.d[i]
    }

    pub fn r(&self, i: usize) -> usize {
        self.r[i]
    }

    pub fn compose(&self, i: usize, j: usize) -> Option<usize> {
        self.compose[i * self.len() + j]
    }

    /// The underlying abstract groupoid.
    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn to_json(&self) -> UltrafilterGroupoidJson {
        let k = self.len();
        let mut compose = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if let Some(c) = self.compose(i, j) {
                    compose.push([i, j, c]);
                }
            }
        }
        UltrafilterGroupoidJson {
            ultrafilters: self
                .ultrafilters
                .iter()
                .map(|f| f.elements().collect())
                .collect(),
            d: self.d.clone(),
            r: self.r.clone(),
            compose,
        }
    }
}

/// Whether `E(H)` is an ultrafilter of the semilattice E(S): a proper filter
/// of E(S) that no proper filter of E(S) strictly contains.
pub(crate) fn idempotent_part_is_ultra(h: &Filter<'_>) -> bool {
    let m = h.monoid();
    let es = m.idempotents();
    let part: Vec<usize> = h.elements().filter(|&s| m.is_idempotent(s)).collect();
    if part.is_empty() || part.contains(&m.zero()) {
        return false;
    }
    let is_filter = part.iter().all(|&e| {
        es.iter().all(|&f| !m.leq(e, f) || part.contains(&f))
            && part.iter().all(|&g| part.contains(&m.mul(e, g)))
    });
    if !is_filter {
        return false;
    }
    // Filters of the finite semilattice E(S) are the sets e↑ ∩ E(S).
    es.iter().filter(|&&e| e != m.zero()).all(|&e| {
        let candidate: Vec<usize> = es.iter().copied().filter(|&f| m.leq(e, f)).collect();
        let contains_part = part.iter().all(|x| candidate.contains(x));
        !(contains_part && candidate.len() > part.len())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::examples::*;

    #[test]
    fn pair_groupoid_from_ix2() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let g = UltrafilterGroupoid::new(&m).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.groupoid().identities().len(), 2);
        // Every pair of objects is joined by exactly one arrow.
        for &x in g.groupoid().identities() {
            for &y in g.groupoid().identities() {
                let count = (0..4).filter(|&a| g.r(a) == x && g.d(a) == y).count();
                assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn boolean_algebra_gives_identities_only() {
        let m = boolean_algebra(3).unwrap();
        let g = UltrafilterGroupoid::new(&m).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.groupoid().identities().len(), 3);
    }

    #[test]
    fn group_with_zero_gives_the_group() {
        let m = group_with_zero(3).unwrap();
        let g = UltrafilterGroupoid::new(&m).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.groupoid().identities().len(), 1);
        // compose follows the group law: g^i g^j = g^{i+j}.
        for i in 0..3 {
            for j in 0..3 {
                let a = g.ultrafilters()[i].generator();
                let b = g.ultrafilters()[j].generator();
                let c = g.ultrafilters()[g.compose(i, j).unwrap()].generator();
                assert_eq!(m.mul(a, b), c);
            }
        }
    }

    #[test]
    fn rejects_non_boolean() {
        let m = brandt_monoid().unwrap();
        assert!(matches!(
            UltrafilterGroupoid::new(&m),
            Err(Error::NotBoolean(_))
        ));
    }

    #[test]
    fn json_export_shape() {
        let m = symmetric_inverse_monoid(2).unwrap();
        let g = UltrafilterGroupoid::new(&m).unwrap();
        let j = g.to_json();
        assert_eq!(j.ultrafilters.len(), 4);
        // four arrows in a pair groupoid on 2 points have 8 composable pairs
        assert_eq!(j.compose.len(), 8);
        let v = serde_json::to_value(&j).unwrap();
        for key in ["ultrafilters", "d", "r", "compose"] {
            assert!(v.get(key).is_some());
        }
    }
}
