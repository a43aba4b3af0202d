use thiserror::Error;

/// Errors raised by the library. Variants are grouped by the subsystem that
/// raises them; higher layers propagate lower-layer errors unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields and scalars
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("operands live in different fields")]
    MixedFields,
    #[error("division by an element that is zero to working precision")]
    DivisionByZeroToPrecision,
    #[error("logarithm of an element that is zero to working precision")]
    ZeroArgument,
    #[error("series does not converge: valuation {got} must exceed {bound}")]
    ConvergenceViolation { got: String, bound: String },
    #[error("field kind does not carry Galois action data")]
    UnsupportedField,
    #[error("trace target level {target} is not within 1..={level}")]
    LevelMismatch { target: u32, level: u32 },

    // series
    #[error("series shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("radius {requested} is below the series radius {radius}")]
    RadiusTooSmall { requested: u32, radius: u32 },
    #[error("shift of valuation {got} leaves radius class {radius}")]
    ShiftTooLarge { got: String, radius: u32 },
    #[error("constant term is not invertible")]
    NonUnitConstantTerm,
    #[error("non-constant part is not strictly dominated by the constant term at this radius")]
    DominanceViolation,
    #[error("direction {direction} is outside 1..={dim}")]
    BadDirection { direction: usize, dim: usize },
    #[error("evaluation point of valuation {got} lies outside radius {radius}")]
    PointOutsideRadius { got: String, radius: u32 },
    #[error("truncation degree {degree} is too large for precision {precision} (need degree < p*N)")]
    DegreeTooLarge { degree: u32, precision: i64 },

    // orbits and actions
    #[error("log of the character has valuation {got}, below radius {radius}")]
    RadiusViolation { got: String, radius: u32 },
    #[error("character value is not a topological generator of 1+p^{radius}Z_p")]
    NotAGenerator { radius: u32 },
    #[error("orbit chart has dimension {0}, expected 1")]
    NotRankOneChart(usize),
    #[error("orbit coefficients do not satisfy the decay bound at index {0}")]
    DecayViolation(String),

    // Lubin-Tate
    #[error("series is not a Frobenius lift for this uniformizer: {0}")]
    NotAFrobeniusLift(String),
    #[error("truncation degree {0} is not supported")]
    DegreeOverflow(u32),
    #[error("element is not integral")]
    NotIntegral,
    #[error("precision {precision} is too low for denominators up to degree {degree}")]
    PrecisionTooLow { precision: i64, degree: u32 },
    #[error("torsion level {level} needs the degree-{needed} polynomial, beyond the supported {cap}")]
    DegreeTooSmallForLevel { level: u32, needed: u64, cap: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("element is not a principal unit at radius {0}")]
    NotPrincipalUnit(u32),

    // sl2
    #[error("characteristic polynomial does not split over the integers")]
    NonIntegralSpectrum,
    #[error("matrix does not have determinant 1")]
    NotDetOne,
    #[error("square-root series needs an odd prime")]
    EvenPrimeUnsupported,
    #[error("delta must be a unit")]
    NonUnitDelta,
    #[error("sl2 relations violated: {0}")]
    RelationsViolated(String),
    #[error("representation is not semisimple: {0}")]
    NonSemisimpleInput(String),

    // Sen calculus
    #[error("matrix logarithm does not converge: Mat(gamma) - 1 has valuation {0}")]
    LogDivergence(String),
    #[error("truncation degree {degree} loses all precision to factorial denominators")]
    FactorialPrecisionLoss { degree: u32 },

    // front end
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
