use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid Coxeter system: {0}")]
    InvalidSpec(String),

    #[error("enumeration passed {cap} elements without closing (infinite or too large group)")]
    CapExceeded { cap: usize },

    #[error("generator {index} is out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("word {word:?} is not reduced")]
    NotReduced { word: Vec<usize> },

    #[error("s{} is not a left descent of the element", generator + 1)]
    NotADescent { generator: usize },

    #[error("moving along s{} leaves the recoil class {class}", generator + 1)]
    NotAClassEdge { generator: usize, class: String },

    #[error("edge lift is not unique: {0}")]
    LiftNotUnique(String),

    #[error("fiber sizes differ over Y_{target}: {found} at {witness} but {expected} elsewhere")]
    FiberInconstant {
        target: String,
        expected: usize,
        found: usize,
        witness: String,
    },

    #[error(
        "product counts differ inside Y_{class}: {found} at {witness} but {expected} elsewhere"
    )]
    ClassInconstant {
        class: String,
        expected: usize,
        found: usize,
        witness: String,
    },

    #[error("Y_{left}·Y_{right}: covering degree {covering} but the group algebra gives {oracle} on Y_{target}")]
    OracleMismatch {
        left: String,
        right: String,
        target: String,
        covering: usize,
        oracle: usize,
    },

    #[error("braid loop at {base} acts with order {order}")]
    OrderViolation { base: String, order: usize },

    #[error("{kind} loop at {base} acts with order {order}, expected the identity")]
    NontrivialAction {
        kind: String,
        base: String,
        order: usize,
    },

    #[error("no braid loops in Y_{target}, yet {detail}")]
    CorollaryViolation { target: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
