use thiserror::Error;

/// Errors raised by the algebra, knot and surgery layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generator index {index} out of range (presentation has {count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("no assignment for generator {0}")]
    MissingAssignment(usize),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("relator {index} maps to {image} mod {modulus}; not a homomorphism")]
    NotHomomorphism { index: usize, image: i64, modulus: u64 },

    #[error("no generator has image coprime to {0}")]
    NoTransversalGenerator(u64),

    #[error("word does not lie in the subgroup")]
    NotInSubgroup,

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("diagram has {0} components; expected a knot")]
    MultipleComponents(usize),

    #[error("group is not marked: {0}")]
    Unmarked(&'static str),

    #[error("degenerate presentation: {0}")]
    Degenerate(String),

    #[error("base group is not cyclic of order {d}: {reason}")]
    BaseNotCyclic { d: u64, reason: String },

    #[error("pushoff of the rim curve is not asserted null-homotopic")]
    PushoffNotTrivial,

    #[error("witness verification failed: {0}")]
    WitnessFailed(String),

    #[error("coset enumeration exhausted its budget of {max_cosets} cosets ({context})")]
    Indeterminate { max_cosets: usize, context: String },

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
