use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("jet order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("branch index {index} out of range for {count} branches")]
    BranchOutOfRange { index: usize, count: usize },

    #[error("a multicusp needs at least one branch")]
    NoBranches,

    #[error("a single cusp has no removable branch")]
    SingleBranch,

    #[error("branches {0} and {1} coincide modulo pi")]
    BranchesNotDistinct(usize, usize),

    #[error("point ({0}) is not on the unit circle")]
    NotOnCircle(String),

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },

    #[error("jet order {order} is too small for level {level}")]
    OrderTooSmall { order: usize, level: usize },

    #[error(
        "branch {branch} component {component} has a nonzero x^{degree} term below level {level}"
    )]
    BelowLevel {
        branch: usize,
        component: usize,
        degree: usize,
        level: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("the field is not in the kernel of the level-{level} map")]
    NotInKernel { level: usize },

    #[error("no correction exists at level {level}")]
    Unsolvable { level: usize },

    #[error("malformed report: {0}")]
    Report(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, token: impl Into<String>) -> Self {
        Error::Parse {
            what,
            token: token.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
