use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("face index must be nonempty")]
    EmptyFace,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("point lies outside the closed alcove (wall {wall} violated)")]
    OutsideAlcove { wall: usize },
    #[error("point is not in the relative interior of the face {face}")]
    NotInFaceInterior { face: String },
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(i64, i64),
    #[error("level must be at least {min}, got {got}")]
    InvalidLevel { min: i64, got: i64 },
    #[error("element is not anti-invariant under generator s_{generator}")]
    NotAntiInvariant { generator: usize },
    #[error("element is not invariant under the Weyl reflection s_{generator}")]
    NotInvariant { generator: usize },
    #[error("face {sub} is not contained in {sup}")]
    NotSubset { sub: String, sup: String },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {weight} is not a level {level} weight")]
    NotLevelWeight { weight: String, level: i64 },
    #[error("weight {weight} is not in the label set of face {face} at level {level}")]
    NotInLabelSet { weight: String, face: String, level: i64 },
    #[error("conjugacy class is not pre-quantizable at level {0}")]
    NotPrequantizable(i64),
    #[error("vector {0} is not in the integral lattice")]
    NotIntegral(String),
    #[error("expected a face of size {expected}, got {got}")]
    WrongFaceSize { expected: usize, got: usize },
    #[error("wrong chain degree: {0}")]
    WrongDegree(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("orbit point {0} lies outside the enumerated truncation")]
    OutsideTruncation(String),
    #[error("cell ({face}, {point}) is not a basis cell")]
    NotABasisCell { face: String, point: String },
    #[error("Weyl group of face {face} has {order} elements, above the enumeration limit {limit}")]
    WeylGroupTooLarge { face: String, order: u128, limit: usize },
    #[error("contraction did not terminate after {0} rounds")]
    ContractionFailed(usize),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic invariant violated: {0}")]
    Arithmetic(String),
}
