use core::fmt;

/// Errors shared across the transform modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix/vector shapes do not line up.
    DimensionMismatch { expected: usize, got: usize },
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Signal length below the operation's minimum.
    LengthTooShort { min: usize, got: usize },
    /// Operation requires a power-of-two length (mean by shift).
    NotPowerOfTwo { got: usize },
    /// Index outside the valid kernel grid.
    IndexOutOfRange { index: usize, bound: usize },
    /// Input must have (numerically) zero mean; carries the residual sum.
    NotNullMean { residual: f64 },
    /// Input declared accumulated-null-mean but its final prefix sum is not zero.
    AccumulatedNotNullMean { residual: f64 },
    /// Spectrum still carries a scale vector; descale first.
    ScaledSpectrum,
    /// Quantization step must be strictly positive (and ≥ 1 for tables).
    InvalidQuantStep { value: f64 },
    /// Algorithm/scenario/scaled combination not supported.
    UnsupportedCombination { detail: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::LengthTooShort { min, got } => {
                write!(
                    f,
                    "signal too short: need at least {min} samples, got {got}"
                )
            }
            Error::NotPowerOfTwo { got } => {
                write!(f, "length must be a power of two, got {got}")
            }
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::NotNullMean { residual } => {
                write!(f, "input must have zero mean (residual sum {residual:e})")
            }
            Error::AccumulatedNotNullMean { residual } => {
                write!(
                    f,
                    "accumulated input must end at zero for a null-mean signal (got {residual:e})"
                )
            }
            Error::ScaledSpectrum => {
                write!(f, "spectrum is scaled; apply its scale vector first")
            }
            Error::InvalidQuantStep { value } => {
                write!(f, "invalid quantization step {value}")
            }
            Error::UnsupportedCombination { detail } => {
                write!(f, "unsupported combination: {detail}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
