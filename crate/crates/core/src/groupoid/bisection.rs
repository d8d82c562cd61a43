use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::FiniteGroupoid;
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::monoid::{InverseMonoid, MonoidConfig};

/// Largest groupoid for which A(G) is materialised by default.
pub const DEFAULT_BISECTION_BOUND: usize = 16;

/// Two arrows of a candidate bisection sharing a domain or a range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shared", rename_all = "snake_case")]
pub enum BisectionViolation {
    Domain { a: usize, b: usize },
    Range { a: usize, b: usize },
}

impl fmt::Display for BisectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain { a, b } => write!(f, "arrows {a} and {b} have the same domain"),
            Self::Range { a, b } => write!(f, "arrows {a} and {b} have the same range"),
        }
    }
}

/// Definitional test: distinct members never share a domain or a range.
pub fn is_bisection(g: &FiniteGroupoid, set: &FixedBitSet) -> Result<(), BisectionViolation> {
    let members: Vec<usize> = set.ones().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.d(a) == g.d(b) {
                return Err(BisectionViolation::Domain { a, b });
            }
            if g.r(a) == g.r(b) {
                return Err(BisectionViolation::Range { a, b });
            }
        }
    }
    Ok(())
}

/// A subset of a groupoid that is injective on domains and on ranges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bisection {
    members: FixedBitSet,
}

impl Bisection {
    pub fn new(g: &FiniteGroupoid, members: FixedBitSet) -> Result<Self> {
        if members.len() != g.len() {
            return Err(Error::Malformed(
                "bisection bitset length differs from groupoid".into(),
            ));
        }
        is_bisection(g, &members).map_err(Error::NotABisection)?;
        Ok(Self { members })
    }

    pub fn from_arrows(
        g: &FiniteGroupoid,
        arrows: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(g.len());
        for a in arrows {
            if a >= g.len() {
                return Err(Error::Malformed(format!("arrow {a} out of range")));
            }
            members.insert(a);
        }
        Self::new(g, members)
    }

    pub fn empty(g: &FiniteGroupoid) -> Self {
        Self {
            members: FixedBitSet::with_capacity(g.len()),
        }
    }

    /// The identity bisection G₀.
    pub fn identities(g: &FiniteGroupoid) -> Self {
        let mut members = FixedBitSet::with_capacity(g.len());
        for &e in g.identities() {
            members.insert(e);
        }
        Self { members }
    }

    pub(crate) fn trusted(members: FixedBitSet) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn arrows(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// `AB = {ab : a ∈ A, b ∈ B, ab defined}`, re-validated as a bisection.
    pub fn product(&self, g: &FiniteGroupoid, other: &Self) -> Result<Self> {
        Self::new(g, set_product(g, &self.members, &other.members))
    }

    pub fn inverse(&self, g: &FiniteGroupoid) -> Self {
        Self {
            members: set_inverse(g, &self.members),
        }
    }

    /// The equivalent test `A⁻¹A ⊆ G₀` and `AA⁻¹ ⊆ G₀` on an arbitrary subset.
    pub fn satisfies_product_test(g: &FiniteGroupoid, set: &FixedBitSet) -> bool {
        let inv = set_inverse(g, set);
        let only_identities = |s: &FixedBitSet| s.ones().all(|x| g.is_identity(x));
        only_identities(&set_product(g, &inv, set)) && only_identities(&set_product(g, set, &inv))
    }
}

pub(crate) fn set_product(g: &FiniteGroupoid, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
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

pub(crate) fn set_inverse(g: &FiniteGroupoid, a: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.len());
    for x in a.ones() {
        out.insert(g.inv(x));
    }
    out
}

fn to_mask(set: &FixedBitSet) -> u64 {
    set.ones().fold(0u64, |m, i| m | 1 << i)
}

fn from_mask(mask: u64, n: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            set.insert(i);
        }
    }
    set
}

fn check_bound(g: &FiniteGroupoid, bound: usize) -> Result<()> {
    if g.len() > bound.min(63) {
        return Err(Error::SizeBound {
            what:
                "groupoid for A(G) materialisation (use the monoid-to-groupoid direction instead)",
            size: g.len(),
            bound: bound.min(63),
        });
    }
    Ok(())
}

/// All bisections found by filtering every subset, sorted by bitset value.
pub fn bisections_by_subsets(g: &FiniteGroupoid, bound: usize) -> Result<Vec<Bisection>> {
    check_bound(g, bound)?;
    let n = g.len();
    Ok((0..1u64 << n)
        .map(|mask| from_mask(mask, n))
        .filter(|set| is_bisection(g, set).is_ok())
        .map(Bisection::trusted)
        .collect())
}

/// All bisections, built as partial injections between objects: each object
/// picks at most one arrow out of it, with distinct ranges. Sorted by bitset value.
pub fn bisections_by_injections(g: &FiniteGroupoid, bound: usize) -> Result<Vec<Bisection>> {
    check_bound(g, bound)?;
    let objects = g.identities().to_vec();
    let stars: Vec<Vec<usize>> = objects.iter().map(|&e| g.star(e).collect()).collect();
    let mut used = vec![false; g.len()];
    let mut masks = Vec::new();

    fn walk(
        i: usize,
        mask: u64,
        g: &FiniteGroupoid,
        stars: &[Vec<usize>],
        used: &mut [bool],
        out: &mut Vec<u64>,
    ) {
        if i == stars.len() {
            out.push(mask);
            return;
        }
        walk(i + 1, mask, g, stars, used, out);
        for &a in &stars[i] {
            let range = g.r(a);
            if !used[range] {
                used[range] = true;
                walk(i + 1, mask | 1 << a, g, stars, used, out);
                used[range] = false;
            }
        }
    }

    walk(0, 0, g, &stars, &mut used, &mut masks);
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|m| Bisection::trusted(from_mask(m, g.len())))
        .collect())
}

/// A(G): every bisection of a finite groupoid as a boolean inverse monoid.
#[derive(Clone, Debug)]
pub struct BisectionMonoid<'g> {
    groupoid: &'g FiniteGroupoid,
    bisections: Vec<Bisection>,
    index: HashMap<FixedBitSet, usize>,
    monoid: InverseMonoid,
}

/// A(G) with the default size bound.
pub fn all_bisections_monoid(g: &FiniteGroupoid) -> Result<BisectionMonoid<'_>> {
    all_bisections_monoid_bounded(g, DEFAULT_BISECTION_BOUND, &MonoidConfig::default())
}

/// A(G), with product the bisection product, inverse taken arrowwise, zero
/// the empty bisection and identity G₀.
pub fn all_bisections_monoid_bounded<'g>(
    g: &'g FiniteGroupoid,
    bound: usize,
    config: &MonoidConfig,
) -> Result<BisectionMonoid<'g>> {
    let bisections = bisections_by_injections(g, bound)?;
    let n = bisections.len();
    if n > config.max_size {
        return Err(Error::SizeBound {
            what: "A(G)",
            size: n,
            bound: config.max_size,
        });
    }
    let masks: Vec<u64> = bisections.iter().map(|b| to_mask(&b.members)).collect();
    let mask_index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let lookup = |mask: u64| -> Result<usize> {
        mask_index
            .get(&mask)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("product {mask:#b} is not a bisection")))
    };
    let arrows_of: Vec<Vec<usize>> = bisections.iter().map(|b| b.arrows().collect()).collect();
    let mut mul = Vec::with_capacity(n * n);
    for a in &arrows_of {
        for b in &arrows_of {
            let mut mask = 0u64;
            for &x in a {
                for &y in b {
                    if let Some(xy) = g.compose(x, y) {
                        mask |= 1 << xy;
                    }
                }
            }
            mul.push(lookup(mask)?);
        }
    }
    let inv = arrows_of
        .iter()
        .map(|a| lookup(a.iter().fold(0u64, |m, &x| m | 1 << g.inv(x))))
        .collect::<Result<Vec<_>>>()?;
    let zero = lookup(0)?;
    let one = lookup(g.identities().iter().fold(0u64, |m, &e| m | 1 << e))?;
    let labels = arrows_of
        .iter()
        .map(|a| {
            let parts: Vec<String> = a.iter().map(|&x| g.label(x)).collect();
            format!("{{{}}}", parts.join(", "))
        })
        .collect();
    let monoid = InverseMonoid::from_flat(mul, inv, zero, one, Some(labels), config)?;
    let index = bisections
        .iter()
        .enumerate()
        .map(|(i, b)| (b.members.clone(), i))
        .collect();
    Ok(BisectionMonoid {
        groupoid: g,
        bisections,
        index,
        monoid,
    })
}

impl<'g> BisectionMonoid<'g> {
    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn monoid(&self) -> &InverseMonoid {
        &self.monoid
    }

    pub fn bisections(&self) -> &[Bisection] {
        &self.bisections
    }

    pub fn bisection(&self, i: usize) -> &Bisection {
        &self.bisections[i]
    }

    pub fn index_of(&self, members: &FixedBitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// `F_g = {A ∈ A(G) : g ∈ A}`, checked to be an ultrafilter.
    pub fn ultrafilter_of_point(&self, g: usize) -> Result<Filter<'_>> {
        let f = self.point_filter(g);
        if !f.is_ultrafilter() {
            return Err(Error::NotAnUltrafilter(format!("F_{g} = {f:?}")));
        }
        Ok(f)
    }

    pub(crate) fn point_filter(&self, g: usize) -> Filter<'_> {
        let mut members = FixedBitSet::with_capacity(self.bisections.len());
        for (i, b) in self.bisections.iter().enumerate() {
            if b.contains(g) {
                members.insert(i);
            }
        }
        Filter::new(&self.monoid, members).expect("F_g is a filter")
    }
}
