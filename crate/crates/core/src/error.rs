use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("arrangement is not central")]
    NotCentral,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid flat: {0}")]
    InvalidFlat(String),
    #[error("family does not cover hyperplane `{0}`")]
    Coverage(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("degenerate sweep: {0}")]
    Degenerate(String),
    #[error("invalid multinet: {0}")]
    InvalidMultinet(String),
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("no admissible cone hyperplane: every hyperplane lies in every family member")]
    NoAdmissibleHyperplane,
    #[error("internal disagreement: {0}")]
    Internal(String),
    #[error("genericity check failed: {0}")]
    Genericity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
