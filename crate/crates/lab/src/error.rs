use boundary_lab_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("invalid {field}: {reason}")]
    Config { field: String, reason: String },
    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type LabResult<T> = Result<T, LabError>;

impl LabError {
    pub fn config(field: &str, reason: impl Into<String>) -> Self {
        LabError::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit status: 2 for invalid input, 3 for resource limits,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(CoreError::ResourceLimit { .. }) => 3,
            LabError::Core(
                CoreError::InvalidArgument { .. }
                | CoreError::UnsupportedDimension(_)
                | CoreError::DimensionMismatch { .. }
                | CoreError::NotUnimodular { .. }
                | CoreError::NonFinite,
            )
            | LabError::Config { .. }
            | LabError::Json(_) => 2,
            _ => 1,
        }
    }
}
