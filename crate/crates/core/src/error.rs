use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("designated zero `{zero}` is not below `{element}`")]
    NoZero { zero: String, element: String },

    #[error("`{0}` and `{1}` have no greatest lower bound")]
    NoMeet(String, String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element `{0}` declared twice")]
    DuplicateElement(String),

    #[error("map is not a complementation: {0}")]
    NotComplemented(String),

    #[error("meet-closure of the seed reaches zero")]
    ZeroGenerated,

    #[error("filter base must be nonempty")]
    EmptyBase,

    #[error("semilattice has no nonzero element, so no ultrafilter exists")]
    EmptyLattice,

    #[error("family has no finite intersection property")]
    NoFip,

    #[error("family does not cover the point set")]
    NotACover,

    #[error("set {0:#b} is not open")]
    NotOpen(u64),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("color {0} occurs in the prefix but not in the period, so its block is finite")]
    FiniteBlock(u32),

    #[error("run lengths must be positive")]
    ZeroRun,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("input partition #{0} is trivial")]
    TrivialInput(usize),

    #[error("family must contain at least one partition")]
    EmptyFamily,
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
