use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] rotvdw::Error),

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// 2 for bad input, 3 for geometries outside the model's validity, 1
    /// otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model(rotvdw::Error::CurvatureTooLarge { .. }) => 3,
            CliError::Model(
                rotvdw::Error::InvalidParameter { .. } | rotvdw::Error::Unknown { .. } | rotvdw::Error::InvalidState(_),
            ) => 2,
            CliError::Model(_) | CliError::Output(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
