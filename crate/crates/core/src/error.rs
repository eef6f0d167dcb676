use alloc::string::String;

use crate::encounter::EncounterKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("infeasible geometry: {0}")]
    InfeasibleGeometry(String),
    #[error("argument outside the function domain: {0}")]
    Domain(String),
    #[error("{}: no action required", .0.describe())]
    NoActionRequired(EncounterKind),
    #[error("region too small: {rejections} consecutive rejections")]
    RegionTooSmall { rejections: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
