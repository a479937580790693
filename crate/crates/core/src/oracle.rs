//! Direct-quadrature oracle and cross-validation of the three operator
//! realisations.
//!
//! `hausdorff_eval` computes `(H F)(z) = \int phi(u) F(z/u) dmu(u)` straight
//! from the definition, with no matrix and no eigenvalue shortcut.  Because
//! it shares nothing with the sample-matrix route (beyond the measure's mass
//! points) and nothing with the diagonal route (beyond the symbol), agreement
//! between all three is a genuine consistency check rather than an identity.

use num_complex::Complex64;
use serde::Serialize;

use crate::battery;
use crate::error::{Error, Result};
use crate::fock::{apply_diagonal, TaylorVector};
use crate::measure::{Measure, Symbol};
use crate::moments::{moment, moment_profile};
use crate::pw::{apply_operator, build_sinc_matrix, classify_regime, PWVector, PwRegime};
use crate::special::sinc;

/// A reference input the direct route can evaluate pointwise.
#[derive(Debug, Clone)]
pub enum ReferenceFunction {
    /// `sinc(t - center)` — a shifted reproducing generator (real axis only).
    SincShift { center: f64 },
    /// A finite combination of integer shifts (real axis only).
    BandSample(PWVector),
    /// The monomial `z^degree`.
    Monomial { degree: usize },
    /// A polynomial from Taylor coefficients.
    Polynomial(TaylorVector),
}

impl ReferenceFunction {
    /// Point evaluation.  Band-limited references are only defined on the
    /// real axis and reject complex arguments.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            ReferenceFunction::SincShift { center } => {
                let t = real_part_only(z)?;
                Ok(Complex64::new(sinc(t - center), 0.0))
            }
            ReferenceFunction::BandSample(f) => {
                let t = real_part_only(z)?;
                Ok(Complex64::new(f.eval(t), 0.0))
            }
            ReferenceFunction::Monomial { degree } => Ok(z.powu(*degree as u32)),
            ReferenceFunction::Polynomial(p) => Ok(p.eval(z)),
        }
    }
}

fn real_part_only(z: Complex64) -> Result<f64> {
    if z.im != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "band-limited reference evaluated off the real axis (im = {})",
            z.im
        )));
    }
    Ok(z.re)
}

/// The averaging operator applied by direct quadrature:
/// `(H F)(z) = \int phi(u) F(z/u) dmu(u)`.
pub fn hausdorff_eval(
    phi: &Symbol,
    mu: &Measure,
    f: &ReferenceFunction,
    z: Complex64,
) -> Result<Complex64> {
    let mut acc = Complex64::ZERO;
    for pt in mu.mass_points() {
        let weight = phi.eval(pt.u);
        if !weight.is_finite() {
            return Err(Error::NonFiniteAtNode {
                node: pt.u,
                context: format!("evaluating symbol {}", phi.label()),
            });
        }
        let v = f.eval(z / pt.u)?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFiniteAtNode {
                node: pt.u,
                context: "evaluating reference function".into(),
            });
        }
        acc += pt.w * weight * v;
    }
    Ok(acc)
}

/// Probe points for polynomial comparisons: real and complex, `|z| <= 2`.
pub fn default_probe_points() -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = [-2.0, -1.5, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 1.5, 2.0]
        .iter()
        .map(|&t| Complex64::new(t, 0.0))
        .collect();
    pts.push(Complex64::new(1.0, 0.5));
    pts.push(Complex64::new(-0.5, 1.0));
    pts
}

/// Largest deviation of `H(z^degree)` from `lambda_degree * z^degree` over
/// the probe points — zero (to rounding) because monomials are eigenvectors,
/// and any systematic quadrature inconsistency between the moment route and
/// the direct route shows up here.
pub fn eigen_residual(
    phi: &Symbol,
    mu: &Measure,
    degree: usize,
    points: &[Complex64],
) -> Result<f64> {
    let lambda = moment(phi, mu, degree)?;
    let monomial = ReferenceFunction::Monomial { degree };
    let mut worst = 0.0f64;
    for &z in points {
        let direct = hausdorff_eval(phi, mu, &monomial, z)?;
        let predicted = lambda * z.powu(degree as u32);
        worst = worst.max((direct - predicted).norm());
    }
    Ok(worst)
}

/// Result of cross-validating the three realisations on one pair.
#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub regime: PwRegime,
    /// Max abs difference between the sample-matrix route and the direct
    /// route at the compared integer points, over the band battery.
    pub band_discrepancy: f64,
    /// Signed index range compared on the band side.
    pub band_range: (i64, i64),
    /// Max abs difference between the diagonal route and the direct route at
    /// the probe points, over the polynomial battery.
    pub diagonal_discrepancy: f64,
    /// Degree of the polynomial battery.
    pub polynomial_degree: usize,
}

/// Compare the three realisations on seeded inputs.
///
/// Band side: for unit shifts, a two-sided difference, and a seeded
/// combination supported on the inner half-window, apply the finite section
/// and the direct quadrature and compare at integer points.  When the
/// measure has mass below scale 1 the section is only a compression, so the
/// comparison restricts to the inner half of the window where the input's
/// support keeps the finite sum faithful.
///
/// Diagonal side: a seeded polynomial is pushed through the moment diagonal
/// and through direct quadrature and compared at fixed probe points.
pub fn cross_validate(
    phi: &Symbol,
    mu: &Measure,
    half_bandwidth: usize,
    seed: u64,
) -> Result<CrossValidation> {
    if half_bandwidth < 2 {
        return Err(Error::InvalidParameter(
            "cross-validation needs a window of half-bandwidth at least 2".into(),
        ));
    }
    let regime = classify_regime(mu);
    let section = build_sinc_matrix(phi, mu, half_bandwidth)?;
    let n = half_bandwidth as i64;
    let compare_half = match regime {
        PwRegime::Operator => n,
        PwRegime::Compression => n / 2,
    };

    let support_half = half_bandwidth / 2;
    let mut band_inputs = vec![
        PWVector::basis(half_bandwidth, 0)?,
        {
            let mut v = PWVector::zeros(half_bandwidth);
            v.set(1, 1.0)?;
            v.set(-1, -1.0)?;
            v
        },
        battery::seeded_unit_pw(seed, half_bandwidth, support_half),
    ];
    let mut band_discrepancy = 0.0f64;
    for f in band_inputs.drain(..) {
        let via_matrix = apply_operator(&section, &f)?;
        let reference = ReferenceFunction::BandSample(f);
        for m in -compare_half..=compare_half {
            let direct =
                hausdorff_eval(phi, mu, &reference, Complex64::new(m as f64, 0.0))?;
            let diff = (direct.re - via_matrix.coeff(m)).abs().max(direct.im.abs());
            band_discrepancy = band_discrepancy.max(diff);
        }
    }

    let polynomial_degree = 6;
    let p = battery::seeded_taylor(seed ^ 0x9e3779b97f4a7c15, polynomial_degree, 1.0);
    let moments = moment_profile(phi, mu, polynomial_degree);
    let via_diagonal = apply_diagonal(&moments, &p)?;
    let reference = ReferenceFunction::Polynomial(p);
    let mut diagonal_discrepancy = 0.0f64;
    for z in default_probe_points() {
        let direct = hausdorff_eval(phi, mu, &reference, z)?;
        let predicted = via_diagonal.eval(z);
        diagonal_discrepancy = diagonal_discrepancy.max((direct - predicted).norm());
    }

    Ok(CrossValidation {
        regime,
        band_discrepancy,
        band_range: (-compare_half, compare_half),
        diagonal_discrepancy,
        polynomial_degree,
    })
}
