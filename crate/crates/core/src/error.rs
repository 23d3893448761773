use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("{what} = {value} is outside [0, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        max: i64,
    },

    /// The requested formula is only proved on a narrower class of grids.
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size cap exceeded: {what} is {size}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A constructed witness failed its exhaustive post-check, or a search
    /// ran out of room before finding one.
    #[error("witness error: {0}")]
    Witness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::OutOfRange {
            what,
            value: value as i64,
            max: max as i64,
        });
    }
    Ok(())
}
