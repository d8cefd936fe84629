use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped by [`ErrorCategory`], which the command line tool maps
/// onto its exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("binary MSH files are not supported, re-export the mesh as ASCII")]
    BinaryMsh,

    #[error("mesh integrity: {0}")]
    MeshIntegrity(String),

    #[error("degenerate (zero-area) triangle, element id {element}")]
    DegenerateElement { element: u64 },

    #[error("node {node} belongs to no triangle and would carry zero volume")]
    IsolatedNode { node: u64 },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("invalid configuration `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("neither horizon ({h_a}, {h_b}) covers the bond length {length}")]
    NoBond { h_a: f64, h_b: f64, length: f64 },

    #[error("bond endpoints coincide")]
    DegenerateBond,

    #[error("singular material: {0}")]
    SingularMaterial(String),

    #[error(
        "Poisson ratio {nu} gives a negative shear/rotational spring factor d \
         (limit is {limit} for {mode})"
    )]
    NegativeRotationalStiffness { nu: f64, limit: f64, mode: &'static str },

    #[error("invalid bond {bond}: {message}")]
    InvalidBond { bond: usize, message: String },

    #[error("domain correction is singular at point {point}: zero trial energy along {axis}")]
    CorrectionSingularity { point: usize, axis: char },

    #[error(
        "domain correction did not converge after {} passes (last change sum {:e})",
        .residuals.len(),
        .residuals.last().copied().unwrap_or(f64::NAN)
    )]
    CorrectionNotConverged { residuals: Vec<f64> },

    #[error("domain correction diverged: change sums {residuals:?}")]
    CorrectionDiverged { residuals: Vec<f64> },

    #[error("singular global system: {0}")]
    SingularSystem(String),

    #[error(
        "Newton-Raphson did not converge in load step {step} after {} iterations",
        .energies.len()
    )]
    NotConverged { step: usize, energies: Vec<f64> },

    #[error("load step {step} exceeded {rounds} bond-breaking rounds")]
    TooManyBreakRounds { step: usize, rounds: usize },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Mesh,
    Config,
    Model,
    Numerical,
    Io,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Mesh => 2,
            ErrorCategory::Config => 3,
            ErrorCategory::Model => 4,
            ErrorCategory::Numerical => 5,
            ErrorCategory::Io => 6,
        }
    }
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            Parse { .. } | BinaryMsh | MeshIntegrity(_) | DegenerateElement { .. } | IsolatedNode { .. } => {
                ErrorCategory::Mesh
            }
            Config { .. } => ErrorCategory::Config,
            DuplicatePoint { .. }
            | NoBond { .. }
            | DegenerateBond
            | SingularMaterial(_)
            | NegativeRotationalStiffness { .. }
            | InvalidBond { .. } => ErrorCategory::Model,
            CorrectionSingularity { .. }
            | CorrectionNotConverged { .. }
            | CorrectionDiverged { .. }
            | SingularSystem(_)
            | NotConverged { .. }
            | TooManyBreakRounds { .. } => ErrorCategory::Numerical,
            File { .. } | Io(_) => ErrorCategory::Io,
        }
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { field: field.into(), message: message.into() }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
