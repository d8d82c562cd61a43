use fixedbitset::FixedBitSet;

use super::InverseMonoid;

/// The natural partial order of a finite inverse monoid.
#[derive(Clone, Debug)]
pub struct OrderData {
    /// `up[s]` is the set `s↑ = {t : s ≤ t}`.
    pub up: Vec<FixedBitSet>,
    /// `down[t]` is the set `t↓ = {s : s ≤ t}`.
    pub down: Vec<FixedBitSet>,
    pub idempotents: Vec<usize>,
    /// Minimal non-zero elements.
    pub atoms: Vec<usize>,
}

impl OrderData {
    /// Uses `s ≤ t ⟺ s = t·d(s)`; [`InverseMonoid::leq_definitional`] is the
    /// direct search over idempotent multipliers that this is checked against.
    pub(super) fn compute(m: &InverseMonoid) -> Self {
        let n = m.size();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (s, up_s) in up.iter_mut().enumerate() {
            let ds = m.dom(s);
            for t in (0..n).filter(|&t| m.mul(t, ds) == s) {
                up_s.insert(t);
                down[t].insert(s);
            }
        }
        let idempotents = (0..n).filter(|&e| m.is_idempotent(e)).collect();
        let zero = m.zero();
        let atoms = (0..n)
            .filter(|&s| s != zero && down[s].count_ones(..) == 2)
            .collect();
        Self {
            up,
            down,
            idempotents,
            atoms,
        }
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.up[s].contains(t)
    }
}

#[cfg(test)]
mod tests {
    use crate::monoid::examples::*;

    #[test]
    fn zero_is_bottom_and_order_is_partial() {
        for m in [
            symmetric_inverse_monoid(3).unwrap(),
            boolean_algebra(3).unwrap(),
            clifford_example().unwrap(),
        ] {
            let o = m.order();
            for s in m.elements() {
                assert!(o.leq(m.zero(), s));
                assert!(o.leq(s, s));
                for t in m.elements() {
                    if s != t && o.leq(s, t) {
                        assert!(!o.leq(t, s), "antisymmetry {s} {t}");
                    }
                    for u in m.elements() {
                        if o.leq(s, t) && o.leq(t, u) {
                            assert!(o.leq(s, u));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn atoms_of_symmetric_inverse_monoid_are_singleton_maps() {
        let m = symmetric_inverse_monoid(3).unwrap();
        assert_eq!(m.order().atoms.len(), 9);
        for &a in &m.order().atoms {
            assert_eq!(m.label(a).matches("->").count(), 1);
        }
    }
}
