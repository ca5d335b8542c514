use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("function is not bent")]
    NotBent,
    #[error("matrix is singular over F_2")]
    SingularMatrix,
    #[error("operands have mismatched variable counts")]
    ArityMismatch,
    #[error("points are not pairwise distinct")]
    DuplicatePoints,
    #[error("ambient dimension {0} too large for exhaustive enumeration")]
    AmbientTooLarge(usize),
    #[error("map is not 2^{{2k}}-to-1")]
    NotFourToOne,
    #[error("preimage of output {output:0width$b} is not a flat", width = *.width)]
    PreimageNotFlat {
        output: u32,
        preimage: Vec<u32>,
        width: usize,
    },
    #[error("invalid admissible-h selector")]
    InvalidSelector,
    #[error("coefficient must be a nonzero field element")]
    ZeroCoefficient,
    #[error("modulus polynomial is reducible over F_2")]
    ReducibleModulus,
    #[error("function is not of the form x.phi(y) + h(y) for the canonical split")]
    NotGmmForm,
    #[error("map is not a permutation")]
    NotPermutation,
    #[error("permutation does not satisfy (P1)")]
    P1Violated,
    #[error("a constituent function is not bent")]
    PartNotBent,
    #[error("input is not a partition")]
    NotAPartition,
    #[error("map does not satisfy (P1*)")]
    P1StarRequired,
    #[error("a nonzero component of the map is not balanced")]
    ComponentNotBalanced,
    #[error("concatenation is not bent")]
    ConcatNotBent,
}
