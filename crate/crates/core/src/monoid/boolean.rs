use std::fmt;

use serde::{Deserialize, Serialize};

use super::InverseMonoid;

/// Which part of the boolean-algebra test on E(S) failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bm1Violation {
    MissingJoin { e: usize, f: usize },
    NotDistributive { e: usize, f: usize, g: usize },
    MissingComplement { e: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom")]
pub enum BooleanViolation {
    #[serde(rename = "BM1")]
    Bm1 { violation: Bm1Violation },
    /// No meet for this pair.
    #[serde(rename = "BM2")]
    Bm2 { s: usize, t: usize },
    /// An orthogonal pair without a join.
    #[serde(rename = "BM3")]
    Bm3 { s: usize, t: usize },
}

impl BooleanViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Self::Bm1 { .. } => "BM1",
            Self::Bm2 { .. } => "BM2",
            Self::Bm3 { .. } => "BM3",
        }
    }

    pub fn elements(&self) -> Vec<usize> {
        match *self {
            Self::Bm1 { violation } => match violation {
                Bm1Violation::MissingJoin { e, f } => vec![e, f],
                Bm1Violation::NotDistributive { e, f, g } => vec![e, f, g],
                Bm1Violation::MissingComplement { e } => vec![e],
            },
            Self::Bm2 { s, t } | Self::Bm3 { s, t } => vec![s, t],
        }
    }
}

impl fmt::Display for BooleanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Bm1 { violation } => match violation {
                Bm1Violation::MissingJoin { e, f: g } => {
                    write!(f, "BM1: idempotents {e} and {g} have no join in E(S)")
                }
                Bm1Violation::NotDistributive { e, f: g, g: h } => {
                    write!(f, "BM1: E(S) not distributive at ({e}, {g}, {h})")
                }
                Bm1Violation::MissingComplement { e } => {
                    write!(f, "BM1: idempotent {e} has no complement")
                }
            },
            Self::Bm2 { s, t } => write!(f, "BM2: elements {s} and {t} have no meet"),
            Self::Bm3 { s, t } => write!(f, "BM3: orthogonal elements {s} and {t} have no join"),
        }
    }
}

/// Outcome of the BM1–BM3 decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanCertificate {
    pub is_boolean: bool,
    pub witness: Option<BooleanViolation>,
}

impl InverseMonoid {
    /// Least upper bound of two idempotents taken inside E(S).
    fn idempotent_join(&self, e: usize, f: usize) -> Option<usize> {
        let order = self.order();
        let bounds: Vec<usize> = order
            .idempotents
            .iter()
            .copied()
            .filter(|&g| order.leq(e, g) && order.leq(f, g))
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&g| bounds.iter().all(|&h| order.leq(g, h)))
    }

    fn check_bm1(&self) -> Result<(), Bm1Violation> {
        let es = &self.order().idempotents;
        let k = es.len();
        // Meets in E(S) are products; only joins can be missing.
        let mut joins = vec![0usize; k * k];
        for (i, &e) in es.iter().enumerate() {
            for (j, &f) in es.iter().enumerate() {
                match self.idempotent_join(e, f) {
                    Some(g) => joins[i * k + j] = g,
                    None => return Err(Bm1Violation::MissingJoin { e, f }),
                }
            }
        }
        let pos: std::collections::HashMap<usize, usize> =
            es.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let join = |a: usize, b: usize| joins[pos[&a] * k + pos[&b]];
        for &e in es {
            for &f in es {
                for &g in es {
                    let lhs = self.mul(e, join(f, g));
                    let rhs = join(self.mul(e, f), self.mul(e, g));
                    if lhs != rhs {
                        return Err(Bm1Violation::NotDistributive { e, f, g });
                    }
                }
            }
        }
        for &e in es {
            let has = es
                .iter()
                .any(|&f| self.mul(e, f) == self.zero && join(e, f) == self.one);
            if !has {
                return Err(Bm1Violation::MissingComplement { e });
            }
        }
        Ok(())
    }

    /// Decides BM1, BM2 and BM3 in that order, scanning indices ascending so
    /// the first witness found is reproducible.
    pub fn check_boolean(&self) -> BooleanCertificate {
        let fail = |w| BooleanCertificate {
            is_boolean: false,
            witness: Some(w),
        };
        if let Err(violation) = self.check_bm1() {
            return fail(BooleanViolation::Bm1 { violation });
        }
        for s in self.elements() {
            for t in s + 1..self.n {
                if self.meet(s, t).is_none() {
                    return fail(BooleanViolation::Bm2 { s, t });
                }
            }
        }
        for s in self.elements() {
            for t in s + 1..self.n {
                if self.orthogonal(s, t) && self.join(s, t).is_none() {
                    return fail(BooleanViolation::Bm3 { s, t });
                }
            }
        }
        BooleanCertificate {
            is_boolean: true,
            witness: None,
        }
    }

    /// `Ok` when BM1–BM3 hold, otherwise the first witness.
    pub fn require_boolean(&self) -> crate::Result<()> {
        match self.check_boolean().witness {
            None => Ok(()),
            Some(w) => Err(crate::Error::NotBoolean(w)),
        }
    }
}
