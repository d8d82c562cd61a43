//! Named constructors for the monoids used throughout the crate.

use std::collections::HashMap;

use super::{InverseMonoid, MonoidConfig};
use crate::error::{Error, Result};

/// Largest base set accepted by [`symmetric_inverse_monoid`].
pub const SYMMETRIC_BOUND: usize = 5;

/// A partial bijection of `{0..k}`: `map[i]` is the image of `i`.
pub type PartialBijection = Vec<Option<usize>>;

/// All partial bijections of a `k`-set, ordered by domain size and then
/// lexicographically. The empty map comes first and the identity is among
/// the last.
pub fn partial_bijections(k: usize) -> Vec<PartialBijection> {
    fn extend(
        i: usize,
        k: usize,
        used: &mut Vec<bool>,
        cur: &mut PartialBijection,
        out: &mut Vec<PartialBijection>,
    ) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        cur[i] = None;
        extend(i + 1, k, used, cur, out);
        for j in 0..k {
            if !used[j] {
                used[j] = true;
                cur[i] = Some(j);
                extend(i + 1, k, used, cur, out);
                used[j] = false;
            }
        }
        cur[i] = None;
    }
    let mut out = Vec::new();
    extend(0, k, &mut vec![false; k], &mut vec![None; k], &mut out);
    out.sort_by_key(|p| (p.iter().filter(|x| x.is_some()).count(), p.clone()));
    out
}

fn partial_label(p: &PartialBijection) -> String {
    let parts: Vec<String> = p
        .iter()
        .enumerate()
        .filter_map(|(i, x)| x.map(|j| format!("{}->{}", i + 1, j + 1)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// The symmetric inverse monoid I(X) on `|X| = k` points.
///
/// The product `st` applies `t` first, so `d(s) = s⁻¹s` is the identity on
/// the domain of `s`.
pub fn symmetric_inverse_monoid(k: usize) -> Result<InverseMonoid> {
    if k == 0 || k > SYMMETRIC_BOUND {
        return Err(Error::SizeBound {
            what: "symmetric inverse monoid base set",
            size: k,
            bound: SYMMETRIC_BOUND,
        });
    }
    let maps = partial_bijections(k);
    let index: HashMap<&PartialBijection, usize> =
        maps.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let compose = |s: &PartialBijection, t: &PartialBijection| -> PartialBijection {
        t.iter().map(|x| x.and_then(|y| s[y])).collect()
    };
    let invert = |s: &PartialBijection| -> PartialBijection {
        let mut out = vec![None; k];
        for (i, x) in s.iter().enumerate() {
            if let Some(j) = x {
                out[*j] = Some(i);
            }
        }
        out
    };
    let n = maps.len();
    let mut mul = Vec::with_capacity(n * n);
    for s in &maps {
        for t in &maps {
            mul.push(index[&compose(s, t)]);
        }
    }
    let inv = maps.iter().map(|s| index[&invert(s)]).collect();
    let identity: PartialBijection = (0..k).map(Some).collect();
    let labels = maps.iter().map(partial_label).collect();
    InverseMonoid::from_flat(
        mul,
        inv,
        index[&vec![None; k]],
        index[&identity],
        Some(labels),
        &MonoidConfig::default(),
    )
}

/// The power set of a `k`-element set under intersection.
pub fn boolean_algebra(atoms: usize) -> Result<InverseMonoid> {
    if atoms > 12 {
        return Err(Error::SizeBound {
            what: "boolean algebra atoms",
            size: atoms,
            bound: 12,
        });
    }
    let n = 1usize << atoms;
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| a & b)).collect();
    let labels = (0..n)
        .map(|mask| {
            let parts: Vec<String> = (0..atoms)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    InverseMonoid::from_flat(
        mul,
        (0..n).collect(),
        0,
        n - 1,
        Some(labels),
        &MonoidConfig::default(),
    )
}

/// The cyclic group of the given order with a zero adjoined.
///
/// Index 0 is the zero, index `1 + i` is `g^i`.
pub fn group_with_zero(order: usize) -> Result<InverseMonoid> {
    if order == 0 {
        return Err(Error::Malformed("group order must be positive".into()));
    }
    let n = order + 1;
    let mut mul = vec![0; n * n];
    for a in 1..n {
        for b in 1..n {
            mul[a * n + b] = 1 + (a - 1 + b - 1) % order;
        }
    }
    let inv = (0..n)
        .map(|a| {
            if a == 0 {
                0
            } else {
                1 + (order - (a - 1)) % order
            }
        })
        .collect();
    let labels = (0..n)
        .map(|a| match a {
            0 => "0".to_string(),
            1 => "e".to_string(),
            2 => "g".to_string(),
            _ => format!("g^{}", a - 1),
        })
        .collect();
    InverseMonoid::from_flat(mul, inv, 0, 1, Some(labels), &MonoidConfig::default())
}

/// Componentwise product `S × T`; element `(a, b)` has index `a·|T| + b`.
pub fn direct_product(s: &InverseMonoid, t: &InverseMonoid) -> Result<InverseMonoid> {
    let (ns, nt) = (s.size(), t.size());
    let n = ns * nt;
    let idx = |a: usize, b: usize| a * nt + b;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..ns {
        for b in 0..nt {
            for c in 0..ns {
                for d in 0..nt {
                    mul.push(idx(s.mul(a, c), t.mul(b, d)));
                }
            }
        }
    }
    let inv = (0..ns)
        .flat_map(|a| (0..nt).map(move |b| (a, b)))
        .map(|(a, b)| idx(s.inv(a), t.inv(b)))
        .collect();
    let labels = (0..ns)
        .flat_map(|a| (0..nt).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", s.label(a), t.label(b)))
        .collect();
    InverseMonoid::from_flat(
        mul,
        inv,
        idx(s.zero(), t.zero()),
        idx(s.one(), t.one()),
        Some(labels),
        &MonoidConfig::default(),
    )
}

/// A Clifford boolean inverse monoid: the product of two copies of Z/2 with
/// zero. Its idempotents form the four-element boolean algebra and its
/// ultrafilter groupoid is two disjoint copies of Z/2.
pub fn clifford_example() -> Result<InverseMonoid> {
    let z2 = group_with_zero(2)?;
    direct_product(&z2, &z2)
}

/// The chain `0 < e₁ < … < 1` of `len` idempotents under minimum.
///
/// For `len ≥ 3` the middle elements have no complement, so BM1 fails.
pub fn chain_monoid(len: usize) -> Result<InverseMonoid> {
    if len == 0 {
        return Err(Error::Malformed("chain needs at least one element".into()));
    }
    let mul = (0..len)
        .flat_map(|a| (0..len).map(move |b| a.min(b)))
        .collect();
    let labels = (0..len)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == len - 1 => "1".to_string(),
            i => format!("e{i}"),
        })
        .collect();
    InverseMonoid::from_flat(
        mul,
        (0..len).collect(),
        0,
        len - 1,
        Some(labels),
        &MonoidConfig::default(),
    )
}

/// The Brandt monoid B₂¹: I({1,2}) with the transposition removed.
///
/// E(S) is boolean and all meets exist, but the orthogonal pair
/// `{1->2}`, `{2->1}` has no join, so BM3 fails.
pub fn brandt_monoid() -> Result<InverseMonoid> {
    let ix = symmetric_inverse_monoid(2)?;
    let swap = ix
        .find_label("{1->2, 2->1}")
        .ok_or_else(|| Error::Invariant("transposition missing from I(2)".into()))?;
    let keep: Vec<usize> = ix.elements().filter(|&s| s != swap).collect();
    ix.submonoid(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_sizes() {
        // Σ C(k,j)² j!
        assert_eq!(symmetric_inverse_monoid(1).unwrap().size(), 2);
        assert_eq!(symmetric_inverse_monoid(2).unwrap().size(), 7);
        assert_eq!(symmetric_inverse_monoid(3).unwrap().size(), 34);
        assert_eq!(partial_bijections(4).len(), 209);
    }

    #[test]
    fn symmetric_bound() {
        assert!(symmetric_inverse_monoid(0).is_err());
        assert!(matches!(
            symmetric_inverse_monoid(SYMMETRIC_BOUND + 1),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn symmetric_zero_and_one() {
        let m = symmetric_inverse_monoid(3).unwrap();
        assert_eq!(m.label(m.zero()), "{}");
        assert_eq!(m.label(m.one()), "{1->1, 2->2, 3->3}");
    }

    #[test]
    fn group_with_zero_is_a_group_off_zero() {
        let m = group_with_zero(3).unwrap();
        assert_eq!(m.size(), 4);
        for a in 1..4 {
            assert_eq!(m.mul(a, m.inv(a)), m.one());
        }
        assert_eq!(m.idempotents(), &[0, 1]);
    }

    #[test]
    fn clifford_example_shape() {
        let m = clifford_example().unwrap();
        assert_eq!(m.size(), 9);
        assert!(m.is_clifford());
        assert_eq!(m.idempotents().len(), 4);
        assert!(!symmetric_inverse_monoid(2).unwrap().is_clifford());
    }

    #[test]
    fn brandt_has_six_elements() {
        assert_eq!(brandt_monoid().unwrap().size(), 6);
    }
}
