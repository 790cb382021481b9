use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Unsupported or inconsistent configuration (filter family, hyperparameters).
    #[error("configuration error: {0}")]
    Config(String),
    /// Malformed data: wrong lengths, non-dyadic sizes, non-finite values.
    #[error("input error: {0}")]
    Input(String),
    /// A preliminary estimate could not be formed (e.g. rank-deficient design).
    #[error("estimation error: {0}")]
    Estimation(String),
}
