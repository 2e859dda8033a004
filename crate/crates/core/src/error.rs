use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // graph construction
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("vertex `{0}` has weight {1}; weights must be positive integers")]
    InvalidWeight(String, u64),
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("edges `{0}` and `{1}` are parallel in the underlying simple graph")]
    ParallelEdges(String, String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("invalid graph JSON: {0}")]
    GraphJson(String),

    // cycles and decompositions
    #[error("the given cycles do not share exactly the given path")]
    NotSharingPath,
    #[error("edge set does not form a single simple cycle")]
    NotACycle,
    #[error("cycle is unbalanced; its toric ideal is zero")]
    UnbalancedCycle,
    #[error("cycle is balanced where an unbalanced one is required")]
    BalancedCycle,
    #[error("graph does not decompose as two balanced cycles sharing a path")]
    NotTwoBalancedCycles,
    #[error("graph does not decompose as cycles sharing a path")]
    NoSharedPathDecomposition,

    // linear algebra
    #[error("submatrix after removals is {rows}x{cols}, expected square")]
    NonSquareMinor { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("kernel has dimension {0} where 1 is required")]
    KernelDimension(usize),
    #[error("kernel dimension {0} exceeds the supported bound {1}")]
    KernelTooLarge(usize, usize),
    #[error("vector is not in the kernel of the matrix")]
    NotInKernel,
    #[error("matrix is not positively graded (nonnegative with no zero column)")]
    NotPositivelyGraded,
    #[error("negative exponent in monomial data")]
    NegativeExponent,
    #[error("cannot parse binomial string `{0}`")]
    BinomialParse(String),

    // resource caps; these map to a distinct process exit code in the CLI
    #[error("cycle enumeration exceeded the cap of {0} cycles")]
    CycleCap(usize),
    #[error("fiber enumeration exceeded the cap of {0} candidate points")]
    FiberCandidateCap(u64),
    #[error("fiber exceeded the cap of {0} points")]
    FiberSizeCap(u64),
    #[error("completion exceeded the cap of {0} reduction steps")]
    CompletionCap(u64),
}

impl Error {
    /// True for errors that signal "instance beyond desk scale" rather than
    /// invalid input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::CycleCap(_)
                | Error::FiberCandidateCap(_)
                | Error::FiberSizeCap(_)
                | Error::CompletionCap(_)
        )
    }
}
