use thiserror::Error;

use crate::induction::{MoveKind, RauzyClass};

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed text: {0}")]
    MalformedText(String),
    #[error("letter `{letter}` occurs {count} times (expected exactly 2)")]
    LetterCountError { letter: String, count: usize },
    #[error("alphabet has {0} letters; at most {max} are supported", max = crate::gp::MAX_LETTERS)]
    AlphabetTooLarge(usize),
    #[error("alphabet must contain at least 2 letters, found {0}")]
    AlphabetTooSmall(usize),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("erasing letters leaves the {0} row empty")]
    EmptyRow(&'static str),
    #[error("{kind} move is not defined on {gp}")]
    MoveUndefined { kind: MoveKind, gp: String },
    #[error("seed {0} is reducible")]
    ReducibleSeed(String),
    #[error("seed {0} violates the duplicate-letters-in-both-rows convention")]
    ConventionViolated(String),
    #[error("class enumeration stopped after {} vertices", .0.len())]
    ClassBudgetExceeded(Box<RauzyClass>),
    #[error("{what} exceeded its budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("more than one {kind} arrow enters {gp}")]
    ReverseArrowAmbiguous { kind: MoveKind, gp: String },
    #[error("no {kind} arrow enters {gp}")]
    ReverseArrowMissing { kind: MoveKind, gp: String },
    #[error("walk step `{0}` is not one of t, b, T, B")]
    BadWalkStep(char),
    #[error("reversed arrows need a class or an inverse resolver")]
    NoResolver,
    #[error("arrow {kind} at {gp} has duplicate winner `{winner}`")]
    DuplicateWinner { kind: MoveKind, gp: String, winner: String },
    #[error("matrix does not preserve the intersection form")]
    NotOmegaPreserving,
    #[error("genus mismatch: orbit count gives {from_orbits}, form rank gives {from_rank}")]
    InconsistentGenus { from_orbits: i64, from_rank: i64 },
    #[error("illegal insertion: {0}")]
    IllegalPosition(String),
    #[error("alphabets do not differ by exactly one letter")]
    AlphabetMismatch,
    #[error("singularity of order {0} cannot be split (order must be >= 1)")]
    NotSplittable(i64),
    #[error("requested split ({m11}, {m12}) does not sum to the order {order}")]
    BadSplit { order: i64, m11: i64, m12: i64 },
    #[error("orbit too small for the requested split")]
    OrbitTooSmall,
    #[error("no singularity with index {0}")]
    NoSuchSingularity(usize),
    #[error("split orders must be odd: {0:?}")]
    ParityError(Vec<i64>),
    #[error("extension case could not be matched: {0}")]
    CaseUnmatched(String),
    #[error("hyperelliptic criterion needs first top letter == last bottom letter")]
    CriterionInapplicable,
    #[error("unknown representative label `{0}`")]
    UnknownLabel(String),
    #[error("representative parameters out of range: {0}")]
    OutOfRange(String),
    #[error("generator is not symplectic modulo {0}")]
    NonSymplecticGenerator(u64),
    #[error("reduced form is degenerate modulo {0}")]
    DegenerateForm(u64),
    #[error("group order {order} does not divide |Sp| = {sp}")]
    NonDividingOrder { order: u128, sp: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside 2..=251")]
    ModulusTooLarge(u64),
    #[error("walk ends at {0}, not at its base")]
    NotACycle(String),
    #[error("walk `{0}` has reversed steps")]
    NotDirected(String),
    #[error("directed decomposition does not reproduce the cocycle")]
    DecompositionMismatch,
    #[error("class cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
