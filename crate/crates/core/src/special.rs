//! Scalar special functions shared by every operator realisation: the
//! normalised cardinal sine, the Gaussian-damped oscillating test family, and
//! the dilation weight that controls how rescaling changes band-limited norms.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this threshold on `|pi z|` the direct quotient `sin(pi z) / (pi z)`
/// loses accuracy to cancellation and a fourth-order Taylor expansion is used
/// instead.  At the crossover both branches agree to well under 1e-14.
pub const SINC_TAYLOR_THRESHOLD: f64 = 1e-4;

/// Normalised cardinal sine `sin(pi z) / (pi z)`, with `sinc(0) = 1`.
///
/// This is the reproducing generator of the unit band: its integer translates
/// form an orthonormal family, which is what makes sample-matrix compressions
/// of averaging operators meaningful.
///
/// # Panics
///
/// Panics on non-finite input; callers are expected to sanitise their grids.
pub fn sinc(z: f64) -> f64 {
    assert!(z.is_finite(), "sinc: input must be finite, got {z}");
    let p = std::f64::consts::PI * z;
    if p.abs() < SINC_TAYLOR_THRESHOLD {
        let p2 = p * p;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        p.sin() / p
    }
}

/// Parameters of the test family `E(z) = c * z^m * exp(-p z^2) * exp(-i a z)`.
///
/// With `p = 0` these are polynomially weighted plane waves (entire, of
/// exponential type `a`); with `p > 0` the Gaussian damping makes them decay
/// on the real axis, which is convenient for point-sampled diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EFamilyParams {
    pub m: u32,
    pub a: f64,
    pub p: f64,
    pub c: Complex64,
}

impl EFamilyParams {
    pub fn new(m: u32, a: f64, p: f64, c: Complex64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "oscillation rate a must be positive and finite, got {a}"
            )));
        }
        if !(p.is_finite() && p >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "damping p must be nonnegative and finite, got {p}"
            )));
        }
        if c == Complex64::ZERO || !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::InvalidParameter(
                "amplitude c must be finite and nonzero".into(),
            ));
        }
        Ok(Self { m, a, p, c })
    }
}

/// Evaluate the test family member at a complex point.
pub fn eval_e(params: &EFamilyParams, z: Complex64) -> Complex64 {
    let EFamilyParams { m, a, p, c } = *params;
    let poly = z.powu(m);
    let gauss = (-(p * z * z)).exp();
    let wave = (-Complex64::I * a * z).exp();
    c * poly * gauss * wave
}

/// Weight `u^m` picked up by an `m`-th order quantity under the substitution
/// `t -> t / u`; the `m = 0` case is the measure itself and `m = 1` covers the
/// squared-norm change of a unit-band function under dilation.
///
/// # Panics
///
/// Panics if `u <= 0` or `u` is not finite: dilations are only defined for
/// positive scale factors.
pub fn dilation_weight(m: u32, u: f64) -> f64 {
    assert!(
        u.is_finite() && u > 0.0,
        "dilation_weight: scale must be positive and finite, got {u}"
    );
    u.powi(m as i32)
}
