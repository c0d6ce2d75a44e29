use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("window of {0} points exceeds the supported width")]
    WindowTooWide(u128),

    #[error("element {x} lies outside window [{lo}, {hi}]")]
    OutOfWindow { x: i64, lo: i64, hi: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tail for y = {y} did not stabilize over k in [{k0}, {k_end}]")]
    Stabilization { y: i64, k0: u32, k_end: u32 },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
