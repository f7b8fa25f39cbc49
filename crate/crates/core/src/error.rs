use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("formula uses `<=` but the structure has no order")]
    NoOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("model is not ord-absolute: {0}")]
    NotOrdAbsolute(String),
    #[error("model is not ord-transitive: {0}")]
    NotOrdTransitive(String),
    #[error("invalid labeled model: {0}")]
    InvalidLabeledModel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("poset is not represented in the model")]
    PosetNotInModel,
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("filter is not generic over the model")]
    NotGeneric,
    #[error("`{0}` is not a name in the model")]
    NotAName(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("instance is not forcing-adequate: {0}")]
    Inadequate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CreatureError {
    #[error("invalid creature: {0}")]
    Invalid(String),
    #[error("creatures have different indices ({0} vs {1})")]
    IndexMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("norm too small: {0} (need > 1)")]
    NormTooSmall(u32),
    #[error("sequence is not in pos(p, {0})")]
    NotInPos(usize),
    #[error("value sets are too large for dense norm storage ({0} elements)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("invalid tree: {0}")]
    Invalid(String),
    #[error("tree has no splitting front {0} (some branch has too few splitting nodes)")]
    NoFront(usize),
    #[error("index {0} is not in the domain")]
    NotInDomain(u32),
    #[error("trees have different depths")]
    DepthMismatch,
    #[error("{0}")]
    NotInPos(String),
}
