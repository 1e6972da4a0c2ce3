use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid edge ({0}, {0}): loops are not allowed")]
    InvalidEdge(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    InvalidVertex { vertex: usize, order: usize },
    #[error("order {0} exceeds the {cap}-vertex cap", cap = crate::graph::MAX_ORDER)]
    SizeCap(usize),
    #[error("operation would leave a graph with no vertices")]
    EmptyResult,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph6 parse error: {0}")]
    Graph6(String),
    #[error("alpha = {0} outside [0, 1)")]
    AlphaRange(f64),
    #[error("eigensolver did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("enumeration of n = {n} exceeds the cap {cap}; pass an override to force it")]
    EnumerationCap { n: usize, cap: usize },
    #[error("no candidate graphs satisfy the constraints")]
    NoCandidates,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
