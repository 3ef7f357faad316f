use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HkError {
    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u32 },
    #[error("characteristic {0} is not a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("exponent overflow: {0} exceeds the supported monomial exponent width")]
    ExponentOverflow(u64),
    #[error("reduction step budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("{q} is not a power of the characteristic {p}")]
    InvalidFrobeniusPower { q: u64, p: u32 },
    #[error("quotient is not Artinian (variable {variable} has no pure-power leading term)")]
    NotArtinian { variable: usize },
    #[error("ideal is the unit ideal, expected a proper ideal")]
    UnitIdeal,
    #[error("at least two samples are needed to extrapolate, got {0}")]
    InsufficientData(usize),
    #[error("socle of the quotient has dimension {0}, expected 1")]
    NotGorensteinQuotient(u64),
    #[error("ideals are not a colength-one pair (colength {0})")]
    InvalidPair(i64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("subgroup order {h} does not divide group order {g}")]
    InvalidSubgroup { g: u64, h: u64 },
    #[error("internal arithmetic invariant broken: {0}")]
    ArithmeticBug(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("oracle requires homogeneous generators")]
    NotHomogeneous,
}

impl HkError {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            HkError::DivisionByZero { .. } => "division_by_zero",
            HkError::InvalidCharacteristic(_) => "invalid_characteristic",
            HkError::RingMismatch => "ring_mismatch",
            HkError::ExponentOverflow(_) => "exponent_overflow",
            HkError::BudgetExceeded { .. } => "budget_exceeded",
            HkError::InvalidFrobeniusPower { .. } => "invalid_frobenius_power",
            HkError::NotArtinian { .. } => "not_artinian",
            HkError::UnitIdeal => "unit_ideal",
            HkError::InsufficientData(_) => "insufficient_data",
            HkError::NotGorensteinQuotient(_) => "not_gorenstein_quotient",
            HkError::InvalidPair(_) => "invalid_pair",
            HkError::HypothesisViolation(_) => "hypothesis_violation",
            HkError::InvalidSubgroup { .. } => "invalid_subgroup",
            HkError::ArithmeticBug(_) => "arithmetic_bug",
            HkError::InvalidParameter(_) => "invalid_parameter",
            HkError::NotHomogeneous => "not_homogeneous",
        }
    }
}

pub type Result<T> = std::result::Result<T, HkError>;
