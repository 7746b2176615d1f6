use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order relation is not antisymmetric: {0} and {1} lie on a cycle")]
    Cycle(String, String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("map is not monotone: {0}")]
    NotMonotone(String),

    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("set is not invariant under the group action")]
    NotInvariant,

    #[error("set is not open (not downward closed)")]
    NotOpen,

    #[error("group generated by the given permutations exceeds the order cap {cap}")]
    ClosureBudgetExceeded { cap: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("size budget exceeded: {what} would have more than {cap} elements")]
    SizeBudgetExceeded { what: String, cap: usize },

    #[error("map is not an element of the hom-poset")]
    MapNotInPoset,

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("malformed cover: {0}")]
    MalformedCover(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("incompatible groups: {0}")]
    GroupMismatch(String),

    #[error("input error: {0}")]
    Input(String),
}
