//! Finite-depth semantics for C_n, independent of the canonical-form
//! arithmetic.
//!
//! An element `{(xᵢ, yᵢ)}` acts on infinite words by `yᵢ·w ↦ xᵢ·w`. Once a
//! word is cut at a depth no shorter than every `yᵢ`, the action is a finite
//! partial map on words of that length, and two elements are equal exactly
//! when these maps agree.

use std::collections::BTreeMap;

use super::cn::CnElement;
use super::word::Word;
use crate::error::{Error, Result};

/// Source word of length `depth` mapped to its target word.
pub type Oracle = BTreeMap<Word, Word>;

/// Replaces the unique domain prefix of `word`; `None` if no domain string
/// is a prefix. Errors if `word` is too short to decide.
pub fn apply_word(a: &CnElement, word: &Word) -> Result<Option<Word>> {
    for (x, y) in a.pairs() {
        if let Some(rest) = word.strip_prefix(y) {
            return Ok(Some(x.concat(&rest)));
        }
        if word.is_prefix_of(y) {
            return Err(Error::DepthTooSmall {
                depth: word.len(),
                needed: y.len(),
            });
        }
    }
    Ok(None)
}

/// The action of `a` on all source words of length exactly `depth`.
pub fn finite_depth_oracle(a: &CnElement, depth: usize) -> Result<Oracle> {
    let needed = a.max_len();
    if depth < needed {
        return Err(Error::DepthTooSmall { depth, needed });
    }
    let mut out = Oracle::new();
    for (x, y) in a.pairs() {
        for t in Word::all_of_length(a.n(), depth - y.len()) {
            out.insert(y.concat(&t), x.concat(&t));
        }
    }
    Ok(out)
}

/// The depth used to check a product: long enough to push any source word
/// through both factors.
pub fn product_depth(a: &CnElement, b: &CnElement) -> usize {
    a.max_len() + b.max_len() + 1
}

/// The depth used to check a join.
pub fn join_depth(a: &CnElement, b: &CnElement) -> usize {
    a.max_len().max(b.max_len()) + 1
}

/// `ab` computed pointwise: apply `b`, then `a`.
pub fn oracle_product(a: &CnElement, b: &CnElement, depth: usize) -> Result<Oracle> {
    let mut out = Oracle::new();
    for (s, mid) in finite_depth_oracle(b, depth)? {
        if let Some(t) = apply_word(a, &mid)? {
            out.insert(s, t);
        }
    }
    Ok(out)
}

/// Union of two oracles when it is a partial bijection, `None` otherwise.
fn union_if_bijective(p: &Oracle, q: &Oracle) -> Option<Oracle> {
    let mut out = p.clone();
    for (s, t) in q {
        match out.get(s) {
            Some(u) if u != t => return None,
            _ => {
                out.insert(s.clone(), t.clone());
            }
        }
    }
    let mut seen = BTreeMap::new();
    for (s, t) in &out {
        if let Some(prev) = seen.insert(t.clone(), s.clone()) {
            if &prev != s {
                return None;
            }
        }
    }
    Some(out)
}

/// `Some(union)` when the union of the two bisections is again a
/// bisection, decided at the given depth.
pub fn oracle_join(a: &CnElement, b: &CnElement, depth: usize) -> Result<Option<Oracle>> {
    let forward = union_if_bijective(
        &finite_depth_oracle(a, depth)?,
        &finite_depth_oracle(b, depth)?,
    );
    // targets at this depth may be shorter than sources, so the inverse
    // direction is checked on its own oracles
    let backward = union_if_bijective(
        &finite_depth_oracle(&a.inverse(), depth)?,
        &finite_depth_oracle(&b.inverse(), depth)?,
    );
    Ok(forward.filter(|_| backward.is_some()))
}

/// `cn_mul` agrees with pointwise composition.
pub fn product_agrees(a: &CnElement, b: &CnElement) -> Result<bool> {
    let depth = product_depth(a, b);
    Ok(finite_depth_oracle(&a.mul(b)?, depth)? == oracle_product(a, b, depth)?)
}

/// `cn_join` agrees with the union of the two bisections, including the
/// decision of whether the join exists.
pub fn join_agrees(a: &CnElement, b: &CnElement) -> Result<bool> {
    let depth = join_depth(a, b);
    let expected = oracle_join(a, b, depth)?;
    Ok(match (a.join(b)?, expected) {
        (Ok(j), Some(union)) => finite_depth_oracle(&j, depth)? == union,
        (Err(_), None) => true,
        _ => false,
    })
}

/// Seeded generators for C_n elements and Cuntz groupoid data.
pub mod sample {
    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::super::cn::CnElement;
    use super::super::cuntz::CuntzArrow;
    use super::super::periodic::EvPeriodicWord;
    use super::super::poly::PolyElement;
    use super::super::word::Word;
    use crate::error::Result;

    pub fn word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
        let len = rng.gen_range(0..=max_len);
        Word::new((0..len).map(|_| rng.gen_range(0..n as u8)).collect())
    }

    pub fn periodic<R: Rng>(
        rng: &mut R,
        n: usize,
        max_prefix: usize,
        max_period: usize,
    ) -> EvPeriodicWord {
        let u = word(rng, n, max_prefix);
        let len = rng.gen_range(1..=max_period);
        let v = Word::new((0..len).map(|_| rng.gen_range(0..n as u8)).collect());
        EvPeriodicWord::new(u, v).expect("period is non-empty")
    }

    /// A maximal prefix code grown from `{ε}` by `splits` leaf splits.
    pub fn maximal_code<R: Rng>(rng: &mut R, n: usize, splits: usize) -> Vec<Word> {
        let mut leaves = vec![Word::empty()];
        for _ in 0..splits {
            let leaf = leaves.swap_remove(rng.gen_range(0..leaves.len()));
            leaves.extend((0..n as u8).map(|c| {
                let mut w = leaf.clone();
                w.push(c);
                w
            }));
        }
        leaves
    }

    /// A unit of C_n: two maximal codes of equal size matched at random.
    pub fn unit<R: Rng>(rng: &mut R, n: usize, max_splits: usize) -> Result<CnElement> {
        let splits = rng.gen_range(0..=max_splits);
        let xs = maximal_code(rng, n, splits);
        let mut ys = maximal_code(rng, n, splits);
        ys.shuffle(rng);
        CnElement::new(n, xs.into_iter().zip(ys).collect())
    }

    /// Usually a unit or a piece of one. One branch pairs a maximal code
    /// with a non-maximal antichain, which is never a unit.
    pub fn element<R: Rng>(rng: &mut R, n: usize, max_splits: usize) -> Result<CnElement> {
        match rng.gen_range(0..4) {
            0 => unit(rng, n, max_splits),
            1 => {
                let splits = rng.gen_range(0..=max_splits);
                let xs = maximal_code(rng, n, splits);
                let lead = Word::new(vec![rng.gen_range(0..n as u8)]);
                let mut ys: Vec<Word> = maximal_code(rng, n, splits)
                    .iter()
                    .map(|y| lead.concat(y))
                    .collect();
                ys.shuffle(rng);
                let pairs = xs.into_iter().zip(ys);
                if rng.gen_bool(0.5) {
                    CnElement::new(n, pairs.collect())
                } else {
                    CnElement::new(n, pairs.map(|(x, y)| (y, x)).collect())
                }
            }
            _ => {
                let u = unit(rng, n, max_splits)?;
                let pairs = u
                    .pairs()
                    .iter()
                    .filter(|_| rng.gen_bool(0.6))
                    .cloned()
                    .collect();
                CnElement::new(n, pairs)
            }
        }
    }

    /// An element built from parts of `a`, possibly refined into children,
    /// plus pieces that may or may not clash with it.
    pub fn related<R: Rng>(rng: &mut R, a: &CnElement, max_splits: usize) -> Result<CnElement> {
        let n = a.n();
        let mut pairs = Vec::new();
        for (x, y) in a.pairs() {
            match rng.gen_range(0..3) {
                0 => {}
                1 => pairs.push((x.clone(), y.clone())),
                _ => {
                    for c in 0..n as u8 {
                        if rng.gen_bool(0.6) {
                            let mut xc = x.clone();
                            let mut yc = y.clone();
                            xc.push(c);
                            yc.push(c);
                            pairs.push((xc, yc));
                        }
                    }
                }
            }
        }
        let base = CnElement::new(n, pairs)?;
        if rng.gen_bool(0.5) {
            return Ok(base);
        }
        let other = element(rng, n, max_splits)?;
        let extra: Vec<_> = other
            .pairs()
            .iter()
            .filter(|_| rng.gen_bool(0.3))
            .cloned()
            .collect();
        // keep the result orthogonal; whether it is compatible with `a` is
        // left to chance
        let mut all = base.pairs().to_vec();
        for p in extra {
            if all
                .iter()
                .all(|q| !(p.0.comparable(&q.0) || p.1.comparable(&q.1)))
            {
                all.push(p);
            }
        }
        CnElement::new(n, all)
    }

    /// A canonical arrow with strings up to `max_len` and periods up to
    /// `max_period`.
    pub fn canonical_arrow<R: Rng>(
        rng: &mut R,
        n: usize,
        max_len: usize,
        max_period: usize,
    ) -> CuntzArrow {
        let x = word(rng, n, max_len);
        let y = word(rng, n, max_len);
        let w = periodic(rng, n, max_len, max_period);
        CuntzArrow::new(x, y, w)
    }

    /// A coset representative and point with `y` a prefix of the point.
    pub fn ultrafilter_input<R: Rng>(
        rng: &mut R,
        n: usize,
        max_len: usize,
        max_period: usize,
    ) -> (PolyElement, EvPeriodicWord) {
        let x = word(rng, n, max_len);
        let y = word(rng, n, max_len);
        let w = periodic(rng, n, max_len, max_period);
        (PolyElement::pair(x, y.clone()), w.prepend(&y))
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn c2(s: &str) -> CnElement {
        CnElement::parse(2, s).unwrap()
    }

    #[test]
    fn oracle_basics() {
        let one = CnElement::one(2).unwrap();
        let o = finite_depth_oracle(&one, 3).unwrap();
        assert_eq!(o.len(), 8);
        assert!(o.iter().all(|(s, t)| s == t));
        assert!(finite_depth_oracle(&CnElement::zero(2).unwrap(), 2)
            .unwrap()
            .is_empty());
        assert!(matches!(
            finite_depth_oracle(&c2("{a1a1/a2}"), 1),
            Err(Error::DepthTooSmall {
                depth: 1,
                needed: 2
            })
        ));
    }

    #[test]
    fn hand_examples_agree() {
        let a = c2("{a1/a1, a2/a2}");
        let b = c2("{a1/a2}");
        assert!(product_agrees(&a, &b).unwrap());
        assert!(product_agrees(&c2("{e/a1}"), &c2("{a2/e}")).unwrap());
        assert!(join_agrees(&c2("{a1/a2}"), &c2("{a1/a1}")).unwrap());
        assert!(join_agrees(&c2("{a1/a1}"), &c2("{a2/a2}")).unwrap());
        assert!(join_agrees(&c2("{e/e}"), &c2("{a1/a1}")).unwrap());
        assert_eq!(
            oracle_join(&c2("{a1/a2}"), &c2("{a1/a1}"), 3).unwrap(),
            None
        );
    }

    #[test]
    fn sampled_operands_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3] {
            for _ in 0..100 {
                let a = sample::element(&mut rng, n, 4).unwrap();
                let b = sample::element(&mut rng, n, 4).unwrap();
                let r = sample::related(&mut rng, &a, 4).unwrap();
                assert!(product_agrees(&a, &b).unwrap(), "{a} * {b}");
                assert!(join_agrees(&a, &b).unwrap(), "{a} v {b}");
                assert!(join_agrees(&a, &r).unwrap(), "{a} v {r}");
            }
        }
    }

    #[test]
    fn units_are_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let u = sample::unit(&mut rng, 2, 5).unwrap();
            assert!(u.is_unit() && u.is_unit_definitional(), "{u}");
        }
    }
}
