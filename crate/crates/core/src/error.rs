use thiserror::Error;

/// Errors surfaced by the numerical kernels.
///
/// Contract violations that indicate a programming bug (non-finite input to
/// `sinc`, non-positive dilation parameter) panic instead; everything that can
/// arise from legitimate but unlucky input data is reported through this type.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor received a value outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An integrand evaluated to NaN or infinity at a quadrature node or atom.
    #[error("integrand not finite at u = {node} while {context}")]
    NonFiniteAtNode { node: f64, context: String },

    /// A moment mixes signs across mass points while individual terms exceed
    /// the double range, so neither a plain sum nor a log-domain sum is valid.
    #[error("moment {n} is indeterminate: sign-indefinite terms exceed the double range")]
    IndeterminateMoment { n: usize },

    /// A moment is well defined in the log domain but too large for an `f64`.
    #[error("moment {n} exceeds the double range (log10 magnitude {log10_magnitude:.1})")]
    MomentOverflow { n: usize, log10_magnitude: f64 },

    /// A monomial norm is well defined in the log domain but too large for an
    /// `f64`.
    #[error("monomial norm at degree {degree} exceeds the double range (log10 magnitude {log10_magnitude:.1})")]
    WeightOverflow { degree: usize, log10_magnitude: f64 },

    /// Vector/matrix sizes do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Evaluation grids coarser than the Nyquist gap of the unit band are
    /// rejected rather than silently aliasing.
    #[error("grid spacing {spacing} exceeds the maximum 0.5")]
    GridTooCoarse { spacing: f64 },

    /// The radial integration range cuts off mass that the requested degree
    /// still needs: the integrand at `r_max` is not yet negligible.
    #[error(
        "radial range too short for degree {degree}: integrand at r_max = {r_max} \
         is within {tail_log10:.1} decades of its peak (needs 16); increase r_max"
    )]
    RadialTail { degree: usize, r_max: f64, tail_log10: f64 },

    /// Power iteration hit its iteration cap before the estimate settled.
    #[error("power iteration failed to converge in {max_iter} iterations (last estimate {last_estimate})")]
    PowerIterationStalled { max_iter: usize, last_estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
