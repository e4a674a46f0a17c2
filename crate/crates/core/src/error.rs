use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at byte {position}")]
    NegativeExponent { position: usize },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("degree of f ({deg_f}) is below degree of g ({deg_g})")]
    DegreeTooSmall { deg_f: String, deg_g: String },
    #[error("polynomial must have degree at least 1")]
    ConstantInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("invalid caps: coefficient cap must be at least 1")]
    InvalidCaps,
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid prime window ({p_min}, {p_max}]")]
    InvalidWindow { p_min: u64, p_max: u64 },
    #[error("prime window of width {width} exceeds the budget of {budget}")]
    WindowTooLarge { width: u64, budget: u64 },
    #[error("{0} is not a prime of the required size")]
    BadPrime(u64),
    #[error("root index {a} out of range for p = {p}")]
    BadRootIndex { a: u64, p: u64 },
    #[error("p = {p} must exceed {required}")]
    PrimeTooSmall { p: u64, required: String },
    #[error("precision of {bits} bits exceeds the ceiling of {ceiling}")]
    PrecisionBudget { bits: u32, ceiling: u32 },
    #[error("g may vanish at a p-th root of unity (p = {p}) at {bits} bits")]
    Indeterminate { p: u64, bits: u32 },
    #[error("no prime in ({p_min}, {p_max}] certified the bound")]
    NoCertificate { p_min: u64, p_max: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree {degree} exceeds the dense ceiling {ceiling}")]
    DegreeCeiling { degree: String, ceiling: usize },
    #[error("coefficient of x^{exponent} is not an integer")]
    NonIntegral { exponent: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}
