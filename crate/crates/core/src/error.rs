use thiserror::Error;

/// Default cap on the number of free elements an exhaustive enumeration may range over.
pub const DEFAULT_SIZE_LIMIT: usize = 20;

/// An exhaustive enumeration would range over more than `2^limit` candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{what} ranges over {size} elements, above the limit of {limit}")]
pub struct SizeLimit {
    pub what: &'static str,
    pub size: usize,
    pub limit: usize,
}

impl SizeLimit {
    pub(crate) fn check(what: &'static str, size: usize, limit: usize) -> Result<(), SizeLimit> {
        if size > limit {
            Err(SizeLimit { what, size, limit })
        } else {
            Ok(())
        }
    }
}
