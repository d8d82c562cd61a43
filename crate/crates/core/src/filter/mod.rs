//! Filters, ultrafilters and the filter product on a finite inverse monoid.
//!
//! A filter is stored as a bitset over element indices. In a finite monoid
//! every non-empty filter base has a least element (iterate the base
//! property over its finitely many members), so every filter is principal;
//! [`all_filters`] relies on this and [`all_filters_brute_force`] checks it.

mod groupoid;

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monoid::InverseMonoid;

pub(crate) use groupoid::idempotent_part_is_ultra;
pub use groupoid::{UltrafilterGroupoid, UltrafilterGroupoidJson};

/// Above this size the ultrafilter completeness scan is sampled.
pub const EXHAUSTIVE_FILTER_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, Default)]
struct Kind {
    proper: bool,
    idempotent: bool,
    ultra: bool,
}

/// An upward-closed filter base in a finite inverse monoid.
#[derive(Clone)]
pub struct Filter<'a> {
    monoid: &'a InverseMonoid,
    members: FixedBitSet,
    kind: OnceLock<Kind>,
}

impl fmt::Debug for Filter<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

impl PartialEq for Filter<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.monoid, other.monoid) && self.members == other.members
    }
}

impl Eq for Filter<'_> {}

/// Upward closed?
fn is_upward_closed(m: &InverseMonoid, set: &FixedBitSet) -> bool {
    set.ones().all(|s| m.order().up[s].is_subset(set))
}

/// Every pair of members has a common lower bound inside the set.
fn is_filter_base(m: &InverseMonoid, set: &FixedBitSet) -> bool {
    let down = &m.order().down;
    let members: Vec<usize> = set.ones().collect();
    members.iter().enumerate().all(|(i, &x)| {
        members[i..].iter().all(|&y| {
            let mut common = down[x].clone();
            common.intersect_with(&down[y]);
            !common.is_disjoint(set)
        })
    })
}

impl<'a> Filter<'a> {
    /// Validates a non-empty upward-closed filter base.
    pub fn new(monoid: &'a InverseMonoid, members: FixedBitSet) -> Result<Self> {
        if members.len() != monoid.size() {
            return Err(Error::NotAFilter(
                "bitset length differs from monoid size".into(),
            ));
        }
        if members.is_clear() {
            return Err(Error::NotAFilter("empty set".into()));
        }
        if !is_upward_closed(monoid, &members) {
            return Err(Error::NotAFilter("not upward closed".into()));
        }
        if !is_filter_base(monoid, &members) {
            return Err(Error::NotAFilter("not a filter base".into()));
        }
        Ok(Self::trusted(monoid, members))
    }

    pub(crate) fn trusted(monoid: &'a InverseMonoid, members: FixedBitSet) -> Self {
        Self {
            monoid,
            members,
            kind: OnceLock::new(),
        }
    }

    pub fn from_elements(
        monoid: &'a InverseMonoid,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(monoid.size());
        for s in elements {
            if s >= monoid.size() {
                return Err(Error::NotAFilter(format!("element {s} out of range")));
            }
            members.insert(s);
        }
        Self::new(monoid, members)
    }

    /// `s↑` for `s ≠ 0`.
    pub fn principal(monoid: &'a InverseMonoid, s: usize) -> Result<Self> {
        if s == monoid.zero() {
            return Err(Error::ZeroFilter);
        }
        Ok(Self::principal_any(monoid, s))
    }

    /// `s↑` without the properness requirement; `0↑` is the whole monoid.
    pub fn principal_any(monoid: &'a InverseMonoid, s: usize) -> Self {
        Self::trusted(monoid, monoid.order().up[s].clone())
    }

    pub fn monoid(&self) -> &'a InverseMonoid {
        self.monoid
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn min_member(&self) -> usize {
        self.members.minimum().expect("filters are non-empty")
    }

    /// The least element, which every finite filter has.
    pub fn generator(&self) -> usize {
        let down = &self.monoid.order().down;
        self.elements()
            .find(|&g| {
                let mut below = down[g].clone();
                below.intersect_with(&self.members);
                below.count_ones(..) == 1
            })
            .expect("finite filters are principal")
    }

    fn kind(&self) -> Kind {
        *self.kind.get_or_init(|| {
            let m = self.monoid;
            let proper = !self.contains(m.zero());
            let idempotent = self.elements().any(|s| m.is_idempotent(s));
            let ultra = proper && self.satisfies_ultra_criterion();
            Kind {
                proper,
                idempotent,
                ultra,
            }
        })
    }

    pub fn is_proper(&self) -> bool {
        self.kind().proper
    }

    /// Contains an idempotent.
    pub fn is_idempotent(&self) -> bool {
        self.kind().idempotent
    }

    /// Proper, and every `s` meeting all members non-trivially is a member.
    pub fn is_ultrafilter(&self) -> bool {
        self.kind().ultra
    }

    fn satisfies_ultra_criterion(&self) -> bool {
        let m = self.monoid;
        m.elements().filter(|&s| !self.contains(s)).all(|s| {
            self.elements()
                .any(|a| m.meet(s, a).is_some_and(|x| x == m.zero()))
        })
    }

    /// Direct maximality: proper and no proper filter strictly contains it.
    pub fn is_maximal_proper(&self) -> bool {
        let m = self.monoid;
        if !self.is_proper() {
            return false;
        }
        all_filters(m)
            .iter()
            .filter(|g| g.is_proper())
            .all(|g| !(self.members.is_subset(&g.members) && self.members != g.members))
    }

    /// `F⁻¹`.
    pub fn inverse(&self) -> Self {
        let m = self.monoid;
        let mut members = FixedBitSet::with_capacity(m.size());
        for s in self.elements() {
            members.insert(m.inv(s));
        }
        Self::trusted(m, members)
    }

    /// `A · B = (AB)↑`.
    pub fn product(&self, other: &Self) -> Self {
        let m = self.monoid;
        Self::trusted(
            m,
            m.up_closure(&set_product(m, &self.members, &other.members)),
        )
    }

    /// `F⁻¹ · F`.
    pub fn domain(&self) -> Self {
        self.inverse().product(self)
    }

    /// `F · F⁻¹`.
    pub fn range(&self) -> Self {
        self.product(&self.inverse())
    }

    /// `s ∨ t ∈ A ⇒ s ∈ A or t ∈ A` over every existing join.
    pub fn is_prime(&self) -> bool {
        let m = self.monoid;
        m.elements().all(|s| {
            m.elements().all(|t| match m.join(s, t) {
                Some(j) if self.contains(j) => self.contains(s) || self.contains(t),
                _ => true,
            })
        })
    }
}

/// The set product `AB = {ab}` with no closure.
pub fn set_product(m: &InverseMonoid, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(m.size());
    for x in a.ones() {
        for y in b.ones() {
            out.insert(m.mul(x, y));
        }
    }
    out
}

/// Every filter of a finite monoid, as `s↑` for each element `s`, in index
/// order. `0↑` (the improper filter) is included.
pub fn all_filters(m: &InverseMonoid) -> Vec<Filter<'_>> {
    m.elements().map(|s| Filter::principal_any(m, s)).collect()
}

/// Every filter found by testing all `2ⁿ` subsets. Only feasible for tiny monoids.
pub fn all_filters_brute_force(m: &InverseMonoid) -> Result<Vec<Filter<'_>>> {
    let n = m.size();
    if n > 20 {
        return Err(Error::SizeBound {
            what: "brute-force filter enumeration",
            size: n,
            bound: 20,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut set = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if mask >> i & 1 == 1 {
                set.insert(i);
            }
        }
        if is_upward_closed(m, &set) && is_filter_base(m, &set) {
            out.push(Filter::trusted(m, set));
        }
    }
    Ok(out)
}

fn sort_key(f: &Filter<'_>) -> (usize, Vec<usize>) {
    (f.min_member(), f.elements().collect())
}

/// All ultrafilters of a boolean inverse monoid, ordered by minimum member.
///
/// Candidates are `a↑` for atoms `a`. Each candidate is checked against the
/// ultrafilter criterion and direct maximality, and the list is checked to be
/// complete against a maximality scan over all proper filters (sampled above
/// [`EXHAUSTIVE_FILTER_BOUND`] elements).
pub fn enumerate_ultrafilters(m: &InverseMonoid) -> Result<Vec<Filter<'_>>> {
    enumerate_ultrafilters_seeded(m, 0x5EED)
}

pub fn enumerate_ultrafilters_seeded(m: &InverseMonoid, seed: u64) -> Result<Vec<Filter<'_>>> {
    m.require_boolean()?;
    let mut found: Vec<Filter<'_>> = m
        .order()
        .atoms
        .iter()
        .map(|&a| Filter::principal_any(m, a))
        .collect();
    found.sort_by_key(sort_key);
    for f in &found {
        if !f.is_ultrafilter() {
            return Err(Error::Invariant(format!(
                "atom filter {f:?} fails the ultrafilter criterion"
            )));
        }
    }
    let filters = all_filters(m);
    let proper: Vec<&Filter<'_>> = filters.iter().filter(|f| f.is_proper()).collect();
    let mut scan: Vec<&Filter<'_>> = proper.clone();
    if m.size() > EXHAUSTIVE_FILTER_BOUND {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        scan.shuffle(&mut rng);
        scan.truncate(EXHAUSTIVE_FILTER_BOUND);
        // Candidates are always re-checked for maximality.
        scan.extend(found.iter().map(|f| &filters[f.generator()]));
    }
    for f in scan {
        let maximal = !proper
            .iter()
            .any(|g| f.members.is_subset(&g.members) && f.members != g.members);
        let listed = found.iter().any(|u| u.members == f.members);
        if maximal != listed {
            return Err(Error::Invariant(format!(
                "maximality scan disagrees with atom enumeration at {f:?}"
            )));
        }
    }
    Ok(found)
}
