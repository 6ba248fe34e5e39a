use std::path::PathBuf;

/// Exit statuses of the `diagdisc` binary.
pub mod exit {
    pub const OK: u8 = 0;
    pub const DEGENERATE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const INVARIANT: u8 = 4;
    pub const IO: u8 = 5;
    pub const USAGE: u8 = 64;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] diagdisc::Error),
    #[error("{path}: {message}")]
    InFile {
        path: PathBuf,
        message: String,
        code: u8,
    },
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches the file a core error came from.
    pub fn in_file(path: impl Into<PathBuf>, err: diagdisc::Error) -> Self {
        CliError::InFile {
            path: path.into(),
            code: core_code(&err),
            message: err.to_string(),
        }
    }

    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Io { source, .. } if source.kind() == std::io::ErrorKind::BrokenPipe)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_code(e),
            CliError::InFile { code, .. } => *code,
            CliError::Io { .. } => exit::IO,
            CliError::Usage(_) => exit::USAGE,
            CliError::Invariant(_) => exit::INVARIANT,
        }
    }
}

fn core_code(err: &diagdisc::Error) -> u8 {
    use diagdisc::Error as E;
    match err {
        E::DegenerateMarginal { .. }
        | E::DegenerateBlockTooLarge { .. }
        | E::DegenerateOutput { .. } => exit::DEGENERATE,
        E::Parse { .. } => exit::PARSE,
        E::InvalidArgument(_)
        | E::InvalidRank { .. }
        | E::InvalidP(_)
        | E::OutOfRange { .. }
        | E::OutOfDomain(_) => exit::USAGE,
        _ => exit::INVARIANT,
    }
}

pub type CliResult<T> = Result<T, CliError>;
