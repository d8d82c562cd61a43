use thiserror::Error;

use crate::groupoid::{BisectionViolation, CoveringViolation};
use crate::monoid::BooleanViolation;
use crate::morphism::MorphismViolation;

/// Errors raised by constructors, loaders and the checked operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("inverse law fails at element {0}")]
    InverseLaw(usize),

    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDoNotCommute(usize, usize),

    #[error("zero law fails at element {0}")]
    ZeroLaw(usize),

    #[error("identity law fails at element {0}")]
    IdentityLaw(usize),

    #[error("groupoid axiom fails: {0}")]
    GroupoidAxiom(String),

    #[error("{what} has size {size}, above the configured bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("monoid is not boolean: {0}")]
    NotBoolean(BooleanViolation),

    #[error("element {0} is not below element {1}")]
    NotBelow(usize, usize),

    #[error("idempotent {0} has no complement in E(S)")]
    NoComplement(usize),

    #[error("the zero element generates no proper filter")]
    ZeroFilter,

    #[error("not a filter: {0}")]
    NotAFilter(String),

    #[error("not an ultrafilter: {0}")]
    NotAnUltrafilter(String),

    #[error("not a bisection: {0}")]
    NotABisection(BisectionViolation),

    #[error("not a covering functor: {0}")]
    NotCovering(CoveringViolation),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("morphism axiom fails: {0}")]
    Morphism(MorphismViolation),

    #[error("internal invariant broken: {0}")]
    Invariant(String),

    #[error("alphabet size {0} outside the supported range 2..=6")]
    AlphabetSize(usize),

    #[error("pair set is not orthogonal: {0}")]
    NotOrthogonal(String),

    #[error("{0} is not a prefix of the infinite word {1}")]
    NotPrefix(String, String),

    #[error("oracle depth {depth} is below the longest string length {needed}")]
    DepthTooSmall { depth: usize, needed: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
