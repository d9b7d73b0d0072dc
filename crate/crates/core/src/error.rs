use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("unsupported ring: {0}")]
    WrongRing(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("mismatched algebras or rings: {0}")]
    Mismatch(String),
    #[error("element is not ad-nilpotent: {0}")]
    NotNilpotent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid MAD candidate: {0}")]
    CandidateInvalid(String),
    #[error("nonzero residual after lifting: {0}")]
    ResidualNonzero(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by exceeding configured resource bounds.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
