use core::fmt;

/// Failure modes shared by every module of the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Operands have incompatible shapes.
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// An index (submatrix order, partition, step) is outside its valid range.
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },
    /// A matrix entry or input value is NaN or infinite.
    NonFinite,
    /// LU found a pivot below the relative threshold.
    Singular,
    /// The leading block of a partition is singular.
    SingularLeadingBlock,
    /// A block the Cartesian Schur identity inverts (M₁₁ or N₁₁) is singular.
    SingularBlock,
    /// The Jacobi sweep budget ran out.
    NotConverged { sweeps: usize },
    /// A Hermitian positive definite operand was required.
    NotPositiveDefinite,
    /// A Hermitian operand was required.
    NotHermitian,
    /// The real part is not positive definite.
    NotAccretive,
    /// Either the real or the imaginary part is not positive definite.
    NotAccretiveDissipative,
    /// The numerical range is not inside the requested sector.
    NotSectorial,
    /// An angle outside `[0, π/2)`.
    InvalidAngle(f64),
    /// Invalid sequences for the scalar combinatorial inequality.
    InvalidSequence(&'static str),
    /// Subset enumeration is capped.
    TooLarge { n: usize, max: usize },
    /// Fewer than three indices, so the non-chain subset family is empty.
    OmegaPrimeEmpty,
    /// Invalid trial configuration.
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::IndexOutOfRange { index, min, max } => {
                write!(f, "index {index} outside [{min}, {max}]")
            }
            Error::NonFinite => f.write_str("non-finite value"),
            Error::Singular => f.write_str("matrix is singular"),
            Error::SingularLeadingBlock => f.write_str("leading block is singular"),
            Error::SingularBlock => {
                f.write_str("leading block of the real or imaginary part is singular")
            }
            Error::NotConverged { sweeps } => {
                write!(f, "eigensolver did not converge in {sweeps} sweeps")
            }
            Error::NotPositiveDefinite => f.write_str("matrix is not positive definite"),
            Error::NotHermitian => f.write_str("matrix is not Hermitian"),
            Error::NotAccretive => f.write_str("real part is not positive definite"),
            Error::NotAccretiveDissipative => {
                f.write_str("real and imaginary parts are not both positive definite")
            }
            Error::NotSectorial => f.write_str("numerical range is not inside the sector"),
            Error::InvalidAngle(a) => write!(f, "angle {a} outside [0, pi/2)"),
            Error::InvalidSequence(why) => write!(f, "invalid sequence pair: {why}"),
            Error::TooLarge { n, max } => write!(f, "n = {n} exceeds the cap {max}"),
            Error::OmegaPrimeEmpty => f.write_str("omega-prime is empty for n < 3"),
            Error::InvalidConfig(why) => write!(f, "invalid trial configuration: {why}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
