use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("edge {0} has a value outside {{0, 1/2, 1}}")]
    NotHalfIntegral(EdgeId),
    #[error("vertex {0} has x(delta(v)) > 1")]
    DegreeConstraintViolated(VertexId),
    #[error("half-valued edges do not form vertex-disjoint odd cycles")]
    NotBasic,
    #[error("the given cycle is not in the support")]
    CycleNotInSupport,
    #[error("vertex {0} is not on the cycle")]
    VertexNotOnCycle(VertexId),
    #[error("edge {0} carries value 1/2 and cannot be complemented")]
    HalfValueOnPath(EdgeId),
    #[error("edge set is not a full component of the combined support")]
    NotAComponent,
    #[error("edge {0} violates the cover constraint")]
    InfeasibleCover(EdgeId),
    #[error("walk does not alternate with respect to the matching")]
    NotAlternating,
    #[error("edge set is not a matching")]
    NotAMatching,

    #[error("normalization lost weight; input was not an optimal fractional matching")]
    WeightLoss,

    #[error("path is not augmenting with respect to the matching")]
    NotAugmenting,

    #[error("primal/dual pair violates complementary slackness: {0}")]
    NotOptimalPair(String),
    #[error("auxiliary path is not augmenting")]
    PathNotAugmenting,
    #[error("auxiliary path endpoint not recognized")]
    EndpointNotRecognized,

    #[error("requested walk table entry is -infinity")]
    EntryIsMinusInfinity,
    #[error("vertex {0} is covered by the matching")]
    VertexNotExposed(VertexId),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("instance has no \"matching\" field")]
    MatchingRequired,
}

pub type Result<T> = std::result::Result<T, Error>;
