use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("characteristic {0} is rejected without the small-characteristic override")]
    Characteristic(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the binary form is identically zero")]
    ZeroForm,
    #[error("the form lies in the Jacobian ideal (zero class in R^3)")]
    ZeroClass,
    #[error("the cubic is singular")]
    SingularCubic,
    #[error("expected kernel of dimension {expected}, found {found}")]
    KernelDimension { expected: usize, found: usize },
    #[error("the line is not of second type")]
    NotInSigma,
    #[error("{0} is not contained in the cubic")]
    NotOnCubic(&'static str),
    #[error("rank of delta(xi) is {0}, expected 2")]
    RankNotTwo(usize),
    #[error("operation requires a finite field")]
    FiniteFieldRequired,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("cubic is not in the normalized double-line shape: {0}")]
    NotNormalized(String),
    #[error("the double line is a triple line (residual equals the line)")]
    TripleLine,
    #[error("the line is not a double line")]
    NotDouble,
    #[error("empty input")]
    EmptyInput,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error reports.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Characteristic(_) => "characteristic",
            Error::Dimension(_) => "dimension_mismatch",
            Error::SingularMatrix => "singular_matrix",
            Error::ZeroForm => "zero_form",
            Error::ZeroClass => "zero_class",
            Error::SingularCubic => "singular_cubic",
            Error::KernelDimension { .. } => "kernel_dimension",
            Error::NotInSigma => "not_in_sigma",
            Error::NotOnCubic(_) => "not_on_cubic",
            Error::RankNotTwo(_) => "rank_not_two",
            Error::FiniteFieldRequired => "finite_field_required",
            Error::Budget(_) => "budget_exceeded",
            Error::NotNormalized(_) => "not_normalized",
            Error::TripleLine => "triple_line",
            Error::NotDouble => "not_double",
            Error::EmptyInput => "empty_input",
            Error::Unsupported(_) => "unsupported",
        }
    }

    /// Usage and parse problems map to exit code 2, mathematical
    /// precondition failures to exit code 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse(_) | Error::Io(_) | Error::Characteristic(_) => 2,
            _ => 1,
        }
    }
}
