use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression `{0}` has no inverse in the coefficient ring")]
    NotInvertible(String),
    #[error("substitution hits the pole 1 + sigma*nbar = 0")]
    Pole,
    #[error("negative power of dt")]
    NegativeDtPower,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("slot {slot} is outside the lattice 1..={slots}")]
    SlotOutOfRange { slot: u32, slots: u32 },
    #[error("unsupported expectation: {0}")]
    UnsupportedExpectation(String),
    #[error("operation not available for {0} statistics")]
    UnsupportedStatistics(&'static str),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("expected a multiple of the identity, got `{0}`")]
    NotScalar(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermalError {
    #[error("invalid thermal parameters: {0}")]
    InvalidParams(String),
    #[error("algebra inconsistency for {pair}: residual `{residual}`")]
    AlgebraInconsistency { pair: String, residual: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ItoError {
    #[error("unknown table route `{0}`")]
    UnknownRoute(String),
    #[error("entry ({row}, {col}) has terms below first order in dt: `{entry}`")]
    SubLeadingOrder { row: String, col: String, entry: String },
    #[error("route `{0}` cannot produce a table with these parameters: {1}")]
    RouteUnavailable(String, String),
    #[error(transparent)]
    Thermal(#[from] ThermalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("Hilbert-space dimension {levels}^{modes} = {} exceeds the configured limit {limit}", show_dim(*levels, *modes))]
    DimensionGuard { levels: usize, modes: u32, limit: u128 },
    #[error("invalid lattice configuration: {0}")]
    InvalidConfig(String),
    #[error("thermal vacuum is not unique: nullspace dimension {0}")]
    AmbiguousNullspace(usize),
    #[error("{0} requires the doubled (tilde) space")]
    NeedsDoubled(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Thermal(#[from] ThermalError),
}

fn show_dim(levels: usize, modes: u32) -> String {
    match (levels as u128).checked_pow(modes) {
        Some(d) => d.to_string(),
        None => format!("{:.3e}", (levels as f64).powi(modes as i32)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown atom `{name}`")]
    UnknownAtom { line: usize, column: usize, name: String },
    #[error("{line}:{column}: slot indices start at 1")]
    ZeroSlot { line: usize, column: usize },
    #[error("{0}")]
    Semantic(String),
}
