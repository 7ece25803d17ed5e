use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PtkError {
    #[error("index {index} is beyond the window horizon {horizon}")]
    IndexBeyondHorizon { index: u64, horizon: usize },
    #[error("k = {k} exceeds the set length {len}")]
    OutOfRange { k: usize, len: usize },
    #[error("the base set is empty")]
    EmptyBase,
    #[error("horizon required: {0}")]
    HorizonRequired(String),
    #[error("order unknown: {0}")]
    OrderUnknown(String),
    #[error("no initial segment of the window lies in the family")]
    NotVeryLargeAtHorizon,
    #[error("plegma tuples need nonempty members")]
    EmptyMember,
    #[error("{0} is not in the skipped restriction")]
    NotInSkippedRestriction(String),
    #[error("{0} is not a member of the family")]
    NotMember(String),
    #[error("{0} is not the union of a plegma tuple")]
    NotAPlegmaUnion(String),
    #[error("member {0} has the wrong size")]
    WrongArity(String),
    #[error("{0} is not a coordinate of the space")]
    BadIndex(String),
    #[error("tolerance {tol} not reached: interval [{lower}, {upper}]")]
    ToleranceUnreachable { tol: f64, lower: f64, upper: f64 },
    #[error("support of size {0} is too large for brute force")]
    SupportTooLarge(usize),
    #[error("no plegma tuple available at step {0}")]
    NoTupleAtStep(usize),
    #[error("the restriction is empty")]
    EmptyRestriction,
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl PtkError {
    /// Stable snake_case name used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            PtkError::IndexBeyondHorizon { .. } => "index_beyond_horizon",
            PtkError::OutOfRange { .. } => "out_of_range",
            PtkError::EmptyBase => "empty_base",
            PtkError::HorizonRequired(_) => "horizon_required",
            PtkError::OrderUnknown(_) => "order_unknown",
            PtkError::NotVeryLargeAtHorizon => "not_very_large_at_horizon",
            PtkError::EmptyMember => "empty_member",
            PtkError::NotInSkippedRestriction(_) => "not_in_skipped_restriction",
            PtkError::NotMember(_) => "not_member",
            PtkError::NotAPlegmaUnion(_) => "not_a_plegma_union",
            PtkError::WrongArity(_) => "wrong_arity",
            PtkError::BadIndex(_) => "bad_index",
            PtkError::ToleranceUnreachable { .. } => "tolerance_unreachable",
            PtkError::SupportTooLarge(_) => "support_too_large",
            PtkError::NoTupleAtStep(_) => "no_tuple_at_step",
            PtkError::EmptyRestriction => "empty_restriction",
            PtkError::BudgetExhausted(_) => "budget_exhausted",
            PtkError::InvalidArgument(_) => "invalid_argument",
            PtkError::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, PtkError>;
