use thiserror::Error;

/// Errors reported by group, coset and decomposition operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cycle notation: {0}")]
    CycleSyntax(String),
    #[error("point {point} repeated in cycle notation")]
    RepeatedPoint { point: u32 },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGeneratorName(String),
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("unknown generator name {0:?}")]
    UnknownGenerator(String),
    #[error("word syntax: {0}")]
    WordSyntax(String),
    #[error("permutation is not an element of the group")]
    NotInGroup,
    #[error("not a subgroup: generator {0} of the claimed subgroup lies outside the parent")]
    NotASubgroup(String),
    #[error("coset index {index} exceeds the cap of {cap} (set a higher cap to allow this)")]
    IndexCapExceeded { index: usize, cap: usize },
    #[error("orbit of the set has more than {cap} members")]
    SetOrbitTooLarge { cap: usize },
    #[error("partition is not invariant under the group")]
    PartitionNotInvariant,
    #[error("seed points {0} and {1} lie in different orbits")]
    SeedsInDifferentOrbits(u32, u32),
    #[error("subgroup chain: {0}")]
    ChainError(String),
    #[error("coordinate {value} out of range 1..={max} at level {level}")]
    CoordinateOutOfRange {
        level: usize,
        value: u32,
        max: usize,
    },
    #[error("chain does not end at the trivial group, cannot solve")]
    NontrivialBottom,
    #[error("puzzle file, line {line}: {msg}")]
    PuzzleFormat { line: usize, msg: String },
    #[error("chain recipe, line {line}: {msg}")]
    RecipeError { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
