//! The radial Fock-type model.
//!
//! On a space of entire functions with a radial weight `exp(-phi(r))`, the
//! monomials are orthogonal and the averaging operator acts diagonally:
//! `H(z^n) = lambda_n z^n` with the moments as eigenvalues.  Everything about
//! the operator is therefore read off from the pair (monomial norms, moment
//! sequence): the operator norm is `sup |lambda_n|`, compactness is
//! `lambda_n -> 0`, and truncating the diagonal at degree `k` costs exactly
//! the tail supremum.
//!
//! Monomial norms `w_n = 2 pi \int_0^inf r^{2n+1} exp(-phi(r)) dr` grow
//! factorially, so they are computed and stored as logarithms; the quadrature
//! sees only the shifted integrand `exp(g(r) - max g)`, which keeps every
//! intermediate in range even when `w_n` itself overflows a double.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::RealFn;
use crate::moments::{MomentSequence, TriState};
use crate::quad::QuadratureSpec;

/// Natural log of the largest finite `f64`.
const LOG_F64_MAX: f64 = 709.782712893384;

/// Moment magnitudes above this guard are treated as numerically unbounded
/// regardless of any other evidence.
pub const OVERFLOW_GUARD: f64 = 1e100;

/// The integrand at `r_max` must sit at least this many e-folds below its
/// peak for the truncated radial integral to be trusted.
const TAIL_LOG_MARGIN: f64 = -36.841361487904734; // ln(1e-16)

/// A radial weight `exp(-phi(r))` together with the monomial norms it
/// induces, cached in log form up to a degree cap.
#[derive(Clone)]
pub struct FockWeight {
    label: String,
    degree_cap: usize,
    r_max: f64,
    quad: QuadratureSpec,
    /// `ln w_n` for `n = 0 ..= degree_cap`.
    log_norms: Vec<f64>,
}

impl std::fmt::Debug for FockWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockWeight")
            .field("label", &self.label)
            .field("degree_cap", &self.degree_cap)
            .field("r_max", &self.r_max)
            .finish()
    }
}

impl FockWeight {
    /// The Gaussian weight `phi(r) = r^2`, for which `w_n = pi n!`.
    pub fn gaussian(degree_cap: usize) -> Result<Self> {
        Self::with_options(
            std::sync::Arc::new(|r: f64| r * r),
            "gaussian",
            degree_cap,
            QuadratureSpec::default_radial(),
            None,
        )
    }

    /// The power weight `phi(r) = r^alpha`, `alpha > 0`.
    pub fn power(alpha: f64, degree_cap: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "radial exponent must be positive, got {alpha}"
            )));
        }
        Self::with_options(
            std::sync::Arc::new(move |r: f64| r.powf(alpha)),
            format!("power({alpha})"),
            degree_cap,
            QuadratureSpec::default_radial(),
            None,
        )
    }

    /// General constructor.  `phi_radial` is the weight exponent; `r_max`
    /// pins the truncation radius (and is validated against the tail
    /// condition for the highest degree), or is searched automatically when
    /// `None`.
    pub fn with_options(
        phi_radial: RealFn,
        label: impl Into<String>,
        degree_cap: usize,
        quad: QuadratureSpec,
        r_max: Option<f64>,
    ) -> Result<Self> {
        let label = label.into();
        let r_max = match r_max {
            Some(r) => {
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "r_max must be positive and finite, got {r}"
                    )));
                }
                let gap = tail_gap(&phi_radial, degree_cap, r, &quad)?;
                if gap > TAIL_LOG_MARGIN {
                    return Err(Error::RadialTail {
                        degree: degree_cap,
                        r_max: r,
                        tail_log10: -gap / std::f64::consts::LN_10,
                    });
                }
                r
            }
            None => {
                let mut r = 2.0;
                loop {
                    if tail_gap(&phi_radial, degree_cap, r, &quad)? <= TAIL_LOG_MARGIN {
                        break r;
                    }
                    r *= 1.5;
                    if r > 1e7 {
                        return Err(Error::InvalidParameter(format!(
                            "no truncation radius below 1e7 satisfies the tail condition \
                             for degree {degree_cap}; the weight decays too slowly"
                        )));
                    }
                }
            }
        };

        let nodes = quad.nodes(0.0, r_max)?;
        let mut log_norms = Vec::with_capacity(degree_cap + 1);
        let two_pi_ln = (2.0 * std::f64::consts::PI).ln();
        for n in 0..=degree_cap {
            let exponent = (2 * n + 1) as f64;
            let mut logs = Vec::with_capacity(nodes.len());
            for &(r, w) in &nodes {
                let phi_r = phi_radial(r);
                if !phi_r.is_finite() {
                    return Err(Error::NonFiniteAtNode {
                        node: r,
                        context: format!("evaluating radial weight {label}"),
                    });
                }
                logs.push((exponent * r.ln() - phi_r, w));
            }
            let m = logs
                .iter()
                .map(|&(g, _)| g)
                .fold(f64::NEG_INFINITY, f64::max);
            let sum: f64 = logs.iter().map(|&(g, w)| w * (g - m).exp()).sum();
            log_norms.push(two_pi_ln + m + sum.ln());
        }

        Ok(Self {
            label,
            degree_cap,
            r_max,
            quad,
            log_norms,
        })
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        self.quad
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `ln w_n`.
    pub fn log_norm(&self, n: usize) -> Result<f64> {
        self.log_norms
            .get(n)
            .copied()
            .ok_or_else(|| degree_out_of_range(n, self.degree_cap))
    }

    /// `w_n` as a plain double; errors when it overflows.
    pub fn norm(&self, n: usize) -> Result<f64> {
        let l = self.log_norm(n)?;
        if l > LOG_F64_MAX {
            return Err(Error::WeightOverflow {
                degree: n,
                log10_magnitude: l / std::f64::consts::LN_10,
            });
        }
        Ok(l.exp())
    }
}

fn degree_out_of_range(requested: usize, cap: usize) -> Error {
    Error::DimensionMismatch(format!(
        "degree {requested} exceeds the weight's cached cap {cap}"
    ))
}

/// Log-gap between the shifted integrand at the truncation radius and its
/// peak, for the worst (highest) degree.
fn tail_gap(
    phi_radial: &RealFn,
    degree_cap: usize,
    r_max: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let exponent = (2 * degree_cap + 1) as f64;
    let g = |r: f64| -> Result<f64> {
        let p = phi_radial(r);
        if !p.is_finite() {
            return Err(Error::NonFiniteAtNode {
                node: r,
                context: "evaluating radial weight".into(),
            });
        }
        Ok(exponent * r.ln() - p)
    };
    let mut peak = f64::NEG_INFINITY;
    for (r, _) in quad.nodes(0.0, r_max)? {
        peak = peak.max(g(r)?);
    }
    Ok(g(r_max)? - peak)
}

/// Plain monomial norms `w_0 ..= w_k`.
pub fn monomial_norms(weight: &FockWeight, k: usize) -> Result<Vec<f64>> {
    (0..=k).map(|n| weight.norm(n)).collect()
}

/// An entire function as Taylor coefficients `a_0 ..= a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorVector {
    coeffs: Vec<Complex64>,
}

impl TaylorVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "Taylor vector needs at least the constant coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "Taylor coefficients must be finite".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The monomial `z^n` padded to degree `degree`.
    pub fn monomial(n: usize, degree: usize) -> Result<Self> {
        if n > degree {
            return Err(Error::DimensionMismatch(format!(
                "monomial degree {n} exceeds vector degree {degree}"
            )));
        }
        let mut coeffs = vec![Complex64::ZERO; degree + 1];
        coeffs[n] = Complex64::ONE;
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Point evaluation by Horner's rule.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Space norm `||F|| = sqrt(sum_n |a_n|^2 w_n)`, computed in the log domain;
/// saturates to `+inf` when the true norm overflows a double.
pub fn fock_norm(f: &TaylorVector, weight: &FockWeight) -> Result<f64> {
    if f.degree() > weight.degree_cap() {
        return Err(degree_out_of_range(f.degree(), weight.degree_cap()));
    }
    let mut logs = Vec::with_capacity(f.degree() + 1);
    for (n, &a) in f.coeffs().iter().enumerate() {
        let mag = a.norm_sqr();
        if mag > 0.0 {
            logs.push(mag.ln() + weight.log_norm(n)?);
        }
    }
    if logs.is_empty() {
        return Ok(0.0);
    }
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let log_norm_sq = m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln();
    Ok((0.5 * log_norm_sq).exp())
}

/// Apply the diagonal action `a_n -> lambda_n a_n`.  Fails if a needed
/// eigenvalue is missing or not representable while its coefficient is
/// nonzero.
pub fn apply_diagonal(moments: &MomentSequence, f: &TaylorVector) -> Result<TaylorVector> {
    let mut out = Vec::with_capacity(f.degree() + 1);
    for (n, &a) in f.coeffs().iter().enumerate() {
        if a == Complex64::ZERO {
            out.push(Complex64::ZERO);
            continue;
        }
        if n > moments.n_max {
            return Err(Error::DimensionMismatch(format!(
                "coefficient degree {n} exceeds the moment range {}",
                moments.n_max
            )));
        }
        let log = moments.values[n].ok_or(Error::IndeterminateMoment { n })?;
        let lambda = log.to_f64().ok_or(Error::MomentOverflow {
            n,
            log10_magnitude: log.log_abs / std::f64::consts::LN_10,
        })?;
        out.push(a * lambda);
    }
    TaylorVector::new(out)
}

/// Summary of the diagonal operator norm over the computed range.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiagonalNorm {
    /// `sup_{n <= n_max} |lambda_n|`, saturating to `+inf`.
    pub sup_abs: f64,
    /// The supremum exceeds the double range.
    pub overflow: bool,
    /// Magnitudes were still climbing at the end of the range, so the finite
    /// supremum may understate the true one.
    pub growing: bool,
}

/// The diagonal operator norm `sup_n |lambda_n|` as far as the computed
/// moment range can see it.
pub fn diagonal_norm(moments: &MomentSequence) -> DiagonalNorm {
    DiagonalNorm {
        sup_abs: moments.sup_abs,
        overflow: moments.sup_abs_overflow,
        growing: moments.growing,
    }
}

/// Exact truncation error of the degree-`k` diagonal cutoff:
/// `||H - H_k|| = sup_{k <= n <= n_max} |lambda_n|` on the computed range.
/// Errors when a moment in the tail range is unavailable.
pub fn truncation_tail(moments: &MomentSequence, k: usize) -> Result<f64> {
    if k > moments.n_max {
        return Err(Error::DimensionMismatch(format!(
            "truncation degree {k} exceeds the moment range {}",
            moments.n_max
        )));
    }
    let mut sup = 0.0f64;
    for n in k..=moments.n_max {
        let log = moments.values[n].ok_or(Error::IndeterminateMoment { n })?;
        sup = sup.max(log.abs());
    }
    Ok(sup)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundedness {
    Bounded,
    Unbounded,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundednessReport {
    pub verdict: Boundedness,
    /// Human-readable evidence trail.
    pub reason: String,
    /// The diagonal supremum over the computed range (may be `+inf`).
    pub sup_abs: f64,
    /// Symbol mass at or above scale 1, the bound constant in the
    /// nonnegative regime.
    pub tail_mass: Option<f64>,
    /// Small-scale support verdict (only decisive for nonnegative symbols).
    pub support_gap: crate::moments::GapVerdict,
}

/// Decide boundedness of the diagonal action from the moment profile.
///
/// For nonnegative symbols the small-scale support condition is decisive:
/// mass below scale 1 gets amplified geometrically, and without it the
/// moments are dominated by the symbol mass at scales `>= 1`.  For
/// sign-indefinite symbols the finite profile can refute (via the overflow
/// guard) or report a still-climbing trail, but a flat finite profile is only
/// finite-range evidence, and the verdict says so.
pub fn boundedness_verdict(
    phi: &crate::measure::Symbol,
    mu: &crate::measure::Measure,
    n_max: usize,
) -> Result<BoundednessReport> {
    let profile = crate::moments::moment_profile(phi, mu, n_max);
    let (gap, gap_excess) = crate::moments::support_gap_excess(phi, mu, 1.0)?;

    if phi.is_nonnegative() {
        let tail_mass = mu.integrate_above(1.0, |u| phi.eval(u), "symbol mass at scales >= 1")?;
        if gap == crate::moments::GapVerdict::Fails {
            return Ok(BoundednessReport {
                verdict: Boundedness::Unbounded,
                reason: format!(
                    "nonnegative symbol carries mass {gap_excess:.3e} below scale 1, \
                     which the moments amplify without bound"
                ),
                sup_abs: profile.sup_abs,
                tail_mass: Some(tail_mass),
                support_gap: gap,
            });
        }
        return Ok(BoundednessReport {
            verdict: Boundedness::Bounded,
            reason: format!(
                "nonnegative symbol with no mass below scale 1; diagonal norm is \
                 controlled by the symbol mass {tail_mass:.6e} at scales >= 1"
            ),
            sup_abs: profile.sup_abs,
            tail_mass: Some(tail_mass),
            support_gap: gap,
        });
    }

    if profile.sup_abs_overflow || profile.sup_abs > OVERFLOW_GUARD {
        return Ok(BoundednessReport {
            verdict: Boundedness::Unbounded,
            reason: format!(
                "moment magnitudes exceed the overflow guard {OVERFLOW_GUARD:.0e} \
                 within the computed range"
            ),
            sup_abs: profile.sup_abs,
            tail_mass: None,
            support_gap: gap,
        });
    }
    if profile.strictly_growing() {
        return Ok(BoundednessReport {
            verdict: Boundedness::Inconclusive,
            reason: "moment magnitudes are still strictly climbing at the end of the \
                     computed range; the finite profile cannot certify a supremum"
                .into(),
            sup_abs: profile.sup_abs,
            tail_mass: None,
            support_gap: gap,
        });
    }
    Ok(BoundednessReport {
        verdict: Boundedness::Bounded,
        reason: format!(
            "moment magnitudes settle within the computed range with supremum {:.6e} \
             (finite-range evidence; symbol is sign-indefinite)",
            profile.sup_abs
        ),
        sup_abs: profile.sup_abs,
        tail_mass: None,
        support_gap: gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Compactness {
    Compact,
    NotCompact,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompactnessReport {
    pub verdict: Compactness,
    pub reason: String,
}

/// Decide compactness of the diagonal action: it is compact exactly when the
/// eigenvalues vanish at infinity, which the finite profile certifies or
/// refutes through its quartile decay classification.
pub fn compactness_verdict(moments: &MomentSequence) -> CompactnessReport {
    match moments.decays_to_zero {
        TriState::Yes => CompactnessReport {
            verdict: Compactness::Compact,
            reason: format!(
                "moment magnitudes die below {:.0e} across the last quartile of the range",
                crate::moments::DECAY_TOL
            ),
        },
        TriState::No => CompactnessReport {
            verdict: Compactness::NotCompact,
            reason: "moment magnitudes do not decay across the computed range".into(),
        },
        TriState::Inconclusive => CompactnessReport {
            verdict: Compactness::Inconclusive,
            reason: "moment magnitudes shrink but have not fallen below the decay \
                     tolerance within the computed range"
                .into(),
        },
    }
}
