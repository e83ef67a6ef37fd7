//! Error type shared by every operation in the crate.
//!
//! The split between [`Error::Domain`] and [`Error::Resource`] is load
//! bearing: callers (the CLI in particular) translate domain errors and
//! resource-cap errors into different exit codes.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The inputs violate a precondition of the operation.
    Domain(String),
    /// The computation would exceed a configured resource cap.
    Resource {
        what: &'static str,
        limit: u64,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(what: &'static str, limit: u64) -> Self {
        Error::Resource { what, limit }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "{msg}"),
            Error::Resource { what, limit } => {
                write!(f, "resource cap exceeded: {what} (limit {limit})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_names_the_bound() {
        let e = Error::resource("homomorphism search nodes", 10_000_000);
        assert_eq!(
            e.to_string(),
            "resource cap exceeded: homomorphism search nodes (limit 10000000)"
        );
        assert!(e.is_resource());
        assert!(!Error::domain("bad").is_resource());
    }
}
