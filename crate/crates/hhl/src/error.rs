use thiserror::Error;

/// Errors surfaced by the construction and verification pipeline.
#[derive(Debug, Error)]
pub enum HhlError {
    #[error("cokernel not finite")]
    CokernelNotFinite,
    #[error("rank of L must satisfy n >= k >= 1 (got n = {n}, k = {k})")]
    BadRanks { n: usize, k: usize },
    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("region U is unbounded: {0}")]
    UnboundedRegion(String),
    #[error("cone index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cone is not in the fan")]
    ConeNotInFan,
    #[error("cokernel of phi is not free")]
    CokernelNotFree,
    #[error("phi is not injective")]
    NonInjectivePhi,
    #[error("substack equals the ambient stack (coker phi has rank 0, need k >= 1)")]
    DegenerateSubstack,
    #[error("character map is not well-defined: {0}")]
    BadCharacterMap(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, HhlError>;
