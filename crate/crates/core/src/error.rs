use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("eigensolver did not reach tolerance {tol:e} (residual {residual:e})")]
    ConvergenceFailure { tol: f64, residual: f64 },

    #[error("matrix is defective or near an exceptional point (|<l|r>| = {overlap:e})")]
    NearDefective { overlap: f64 },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("matrix exponential overflowed")]
    Overflow,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameters within {margin:e} of the exceptional point (J+γ₁ = {a}, J+γ₂ = {b})")]
    ExceptionalPointProximity { a: f64, b: f64, margin: f64 },

    #[error("complex spectrum: (J+γ₁)(J+γ₂) = {product} < 0")]
    ComplexSpectrum { product: f64 },

    #[error("temperature must be positive, got {0}")]
    NonpositiveTemperature(f64),

    #[error("trace of |ρ| is {0:e}, too small to normalize")]
    DegenerateTrace(f64),

    #[error("density matrix trace is {0}, expected 1")]
    NonUnitTrace(f64),

    #[error("operation requires a Hermitian positive state, got a bi-orthogonal one")]
    NotHermitianState,

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("step size too large: step-halving error estimate {estimate:e} exceeds {limit:e}")]
    StepTooLarge { estimate: f64, limit: f64 },
}
