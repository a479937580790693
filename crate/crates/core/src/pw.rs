//! The unit-band (Paley–Wiener) side of the laboratory.
//!
//! An averaging operator `(H F)(t) = \int phi(u) F(t/u) dmu(u)` acts on
//! band-limited functions through the kernel
//! `K(t, x) = \int phi(u) sinc(t/u - x) dmu(u)`: expanding `F` in the
//! orthonormal integer-shift basis `sinc(. - k)` turns `H` into the doubly
//! infinite matrix `K(m, k)`.  This module builds finite sections of that
//! matrix, measures their norms and Frobenius mass, and checks the kernel-side
//! norm identities on explicit grids.
//!
//! When the measure carries mass below scale 1 the operator leaves the unit
//! band, so the finite section is an honest compression of a quadratic form
//! rather than of an operator; `classify_regime` tells the two situations
//! apart and downstream comparisons restrict themselves accordingly.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ledger::{anchors, BoundRecord};
use crate::linalg::{self, SigmaEstimate};
use crate::measure::{Measure, Symbol};
use crate::moments::ZERO_TOL;
use crate::special::sinc;

/// A symmetric evaluation grid `{-W, -W+h, ..., W}`.  Spacing above `0.5`
/// undersamples the unit band and is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub spacing: f64,
}

impl GridSpec {
    pub fn new(half_width: f64, spacing: f64) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "grid spacing must be positive, got {spacing}"
            )));
        }
        if spacing > 0.5 {
            return Err(Error::GridTooCoarse { spacing });
        }
        if !(half_width.is_finite() && half_width >= spacing) {
            return Err(Error::InvalidParameter(format!(
                "grid half-width must be finite and at least the spacing, got {half_width}"
            )));
        }
        Ok(Self {
            half_width,
            spacing,
        })
    }

    /// Grid points, ascending, always including 0.
    pub fn points(&self) -> Vec<f64> {
        let n = (self.half_width / self.spacing + 1e-9).floor() as i64;
        (-n..=n).map(|k| k as f64 * self.spacing).collect()
    }
}

/// A band-limited function as real coefficients on the integer-shift basis
/// `sinc(. - m)`, `m = -N ... N`.  The basis is orthonormal, so the space
/// norm is the plain Euclidean norm of the coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PWVector {
    half_bandwidth: usize,
    coeffs: Vec<f64>,
}

impl PWVector {
    /// Coefficients in index order `-N ..= N`; the length must be odd.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector must have odd length 2N+1, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "coefficients must be finite".into(),
            ));
        }
        Ok(Self {
            half_bandwidth: coeffs.len() / 2,
            coeffs,
        })
    }

    pub fn zeros(half_bandwidth: usize) -> Self {
        Self {
            half_bandwidth,
            coeffs: vec![0.0; 2 * half_bandwidth + 1],
        }
    }

    /// The basis vector `sinc(. - m)` inside a window of half-bandwidth `N`.
    pub fn basis(half_bandwidth: usize, m: i64) -> Result<Self> {
        let mut v = Self::zeros(half_bandwidth);
        v.set(m, 1.0)?;
        Ok(v)
    }

    pub fn from_fn(half_bandwidth: usize, f: impl Fn(i64) -> f64) -> Result<Self> {
        let n = half_bandwidth as i64;
        Self::new((-n..=n).map(f).collect())
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient at signed index `m`; zero outside the window.
    pub fn coeff(&self, m: i64) -> f64 {
        let n = self.half_bandwidth as i64;
        if m < -n || m > n {
            0.0
        } else {
            self.coeffs[(m + n) as usize]
        }
    }

    pub fn set(&mut self, m: i64, value: f64) -> Result<()> {
        let n = self.half_bandwidth as i64;
        if m < -n || m > n {
            return Err(Error::DimensionMismatch(format!(
                "index {m} outside window [-{n}, {n}]"
            )));
        }
        self.coeffs[(m + n) as usize] = value;
        Ok(())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Space norm (Euclidean norm of the coefficients).
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &PWVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "dot of windows {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Point evaluation `F(t) = sum_m c_m sinc(t - m)`.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.half_bandwidth as i64;
        (-n..=n)
            .map(|m| self.coeff(m) * sinc(t - m as f64))
            .sum()
    }
}

/// Whether the finite section represents the operator itself or only the
/// compression of its quadratic form to the unit band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PwRegime {
    /// All mass at scales `u >= 1`: the band is invariant and the section
    /// converges to the operator.
    Operator,
    /// Mass below scale 1: outputs leave the band and the section only sees
    /// their projection back onto it.
    Compression,
}

/// Classify the pair by the smallest scale carrying mass.
pub fn classify_regime(mu: &Measure) -> PwRegime {
    if mu.support_min() >= 1.0 - 1e-12 {
        PwRegime::Operator
    } else {
        PwRegime::Compression
    }
}

/// Kernel value `K(t, x) = \int phi(u) sinc(t/u - x) dmu(u)`.
pub fn kernel_eval(phi: &Symbol, mu: &Measure, t: f64, x: f64) -> Result<f64> {
    if !t.is_finite() || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "kernel arguments must be finite, got t = {t}, x = {x}"
        )));
    }
    mu.integrate(
        |u| phi.eval(u) * sinc(t / u - x),
        &format!("kernel of {} at (t, x) = ({t}, {x})", phi.label()),
    )
}

/// Grid approximation of the row norm `||K(t, .)||_{L^2(dx)}`.
///
/// Rows are unit-band functions of `x`, so the Riemann sum at spacing
/// `<= 0.5` is exact up to the window truncation; widen the grid, not the
/// spacing, to tighten it.
pub fn kernel_row_norm(phi: &Symbol, mu: &Measure, t: f64, grid: &GridSpec) -> Result<f64> {
    let mut sum = 0.0;
    for x in grid.points() {
        let v = kernel_eval(phi, mu, t, x)?;
        sum += v * v;
    }
    Ok((grid.spacing * sum).sqrt())
}

/// Grid approximation of the column norm `||K(., x)||_{L^2(dt)}`.
pub fn kernel_col_norm(phi: &Symbol, mu: &Measure, x: f64, grid: &GridSpec) -> Result<f64> {
    let mut sum = 0.0;
    for t in grid.points() {
        let v = kernel_eval(phi, mu, t, x)?;
        sum += v * v;
    }
    Ok((grid.spacing * sum).sqrt())
}

/// The finite section `K(m, k)`, `|m|, |k| <= N`, of the operator on the
/// integer-shift basis.
#[derive(Debug, Clone)]
pub struct SincMatrix {
    half_bandwidth: usize,
    entries: DMatrix<f64>,
}

impl SincMatrix {
    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    /// Full dimension `2N + 1`.
    pub fn dim(&self) -> usize {
        2 * self.half_bandwidth + 1
    }

    /// Entry at signed indices (row `m` = output sample, column `k` = input
    /// basis shift).
    pub fn entry(&self, m: i64, k: i64) -> f64 {
        let n = self.half_bandwidth as i64;
        assert!(
            m >= -n && m <= n && k >= -n && k <= n,
            "entry ({m}, {k}) outside window [-{n}, {n}]"
        );
        self.entries[((m + n) as usize, (k + n) as usize)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn frobenius(&self) -> f64 {
        linalg::frobenius(&self.entries)
    }
}

/// Build the section `M[m, k] = K(m, k)` for `|m|, |k| <= N`.
pub fn build_sinc_matrix(phi: &Symbol, mu: &Measure, half_bandwidth: usize) -> Result<SincMatrix> {
    let n = half_bandwidth as i64;
    let dim = 2 * half_bandwidth + 1;
    // Evaluate the symbol once per mass point, then fill the section row by
    // row; assembly stays sequential so runs are bit-for-bit reproducible.
    let mut weights = Vec::with_capacity(mu.mass_points().len());
    for pt in mu.mass_points() {
        let v = phi.eval(pt.u);
        if !v.is_finite() {
            return Err(Error::NonFiniteAtNode {
                node: pt.u,
                context: format!("evaluating symbol {}", phi.label()),
            });
        }
        weights.push((pt.u, pt.w * v));
    }
    let mut entries = DMatrix::zeros(dim, dim);
    for mi in 0..dim {
        let m = (mi as i64 - n) as f64;
        for ki in 0..dim {
            let k = (ki as i64 - n) as f64;
            let mut acc = 0.0;
            for &(u, c) in &weights {
                acc += c * sinc(m / u - k);
            }
            entries[(mi, ki)] = acc;
        }
    }
    Ok(SincMatrix {
        half_bandwidth,
        entries,
    })
}

/// Apply the section to a coefficient vector: `(M f)_m = sum_k K(m, k) f_k`.
pub fn apply_operator(matrix: &SincMatrix, f: &PWVector) -> Result<PWVector> {
    if matrix.dim() != f.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix window {} applied to vector window {}",
            matrix.dim(),
            f.len()
        )));
    }
    let n = matrix.half_bandwidth as i64;
    let mut out = PWVector::zeros(matrix.half_bandwidth);
    for m in -n..=n {
        let mut acc = 0.0;
        for k in -n..=n {
            acc += matrix.entry(m, k) * f.coeff(k);
        }
        out.set(m, acc)?;
    }
    Ok(out)
}

/// One window size in a norm sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepPoint {
    pub half_bandwidth: usize,
    pub sigma: f64,
    pub route: linalg::SigmaRoute,
    pub converged: bool,
    pub iterations: usize,
}

/// Top singular values of the sections over a list of window sizes, with an
/// extrapolated limit estimate.
#[derive(Debug, Clone, Serialize)]
pub struct NormSweep {
    pub points: Vec<SweepPoint>,
    /// Aitken extrapolation of the last three values (or the last value when
    /// the accelerator degenerates).
    pub extrapolated: f64,
    /// Relative change between the last two window sizes fell below `1e-4`.
    pub converged: bool,
}

impl NormSweep {
    pub fn last_sigma(&self) -> f64 {
        self.points.last().map(|p| p.sigma).unwrap_or(0.0)
    }
}

/// Sweep the top singular value of the section over `half_bandwidths`
/// (strictly increasing, nonempty).
pub fn operator_norm_sweep(
    phi: &Symbol,
    mu: &Measure,
    half_bandwidths: &[usize],
) -> Result<NormSweep> {
    if half_bandwidths.is_empty() {
        return Err(Error::InvalidParameter(
            "norm sweep needs at least one window size".into(),
        ));
    }
    if half_bandwidths.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidParameter(
            "norm sweep window sizes must be strictly increasing".into(),
        ));
    }
    let mut points = Vec::with_capacity(half_bandwidths.len());
    for &nb in half_bandwidths {
        let section = build_sinc_matrix(phi, mu, nb)?;
        let est: SigmaEstimate = linalg::top_singular_value(section.matrix());
        points.push(SweepPoint {
            half_bandwidth: nb,
            sigma: est.sigma,
            route: est.route,
            converged: est.converged,
            iterations: est.iterations,
        });
    }
    let sigmas: Vec<f64> = points.iter().map(|p| p.sigma).collect();
    let extrapolated = aitken_last(&sigmas);
    let converged = match sigmas.len() {
        0 | 1 => false,
        len => {
            let a = sigmas[len - 2];
            let b = sigmas[len - 1];
            (b - a).abs() <= 1e-4 * b.abs().max(f64::MIN_POSITIVE)
        }
    };
    Ok(NormSweep {
        points,
        extrapolated,
        converged,
    })
}

/// Aitken delta-squared acceleration applied to the last three terms, with a
/// guard against degenerate denominators.
fn aitken_last(values: &[f64]) -> f64 {
    match values {
        [] => 0.0,
        [.., s0, s1, s2] => {
            let denom = s2 - 2.0 * s1 + s0;
            let scale = s0.abs() + s1.abs() + s2.abs() + 1.0;
            if denom.abs() < 1e-14 * scale {
                *s2
            } else {
                s2 - (s2 - s1).powi(2) / denom
            }
        }
        [.., last] => *last,
    }
}

/// Verdict of the square-summability probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HsVerdict {
    /// Frobenius mass grows at least linearly with the window: the full
    /// kernel is not square-summable.
    NotSquareSummable,
    /// Frobenius mass is Cauchy across the sweep, consistent with a
    /// square-summable kernel.
    SquareSummablePlausible,
    Inconclusive,
}

/// Frobenius-mass sweep.  `frob_sq[i]` is the full-row Frobenius mass
/// `sum_{|m| <= N_i} ||K(m, .)||^2_{l^2(Z)}`: the row norms are evaluated in
/// closed form over all integer columns (not just the window), so the growth
/// in `N` isolates the row count rather than column truncation.
#[derive(Debug, Clone, Serialize)]
pub struct HsDiagnostic {
    pub half_bandwidths: Vec<usize>,
    pub frob_sq: Vec<f64>,
    /// Least-squares slope of `frob_sq` against the half-bandwidth `N`.
    pub slope: f64,
    /// Relative change of the Frobenius norm between the last two windows.
    pub relative_change: f64,
    pub verdict: HsVerdict,
}

/// Slope threshold (per unit of dimension) above which Frobenius growth is
/// called linear.
pub const HS_SLOPE_TOL: f64 = 0.5;

/// Exact full-row squared norm `||K(m, .)||^2_{l^2(Z)}` via the shift
/// cross-correlation identity `sum_k sinc(a - k) sinc(b - k) = sinc(a - b)`.
fn row_norm_sq_exact(weights: &[(f64, f64)], m: f64) -> f64 {
    let mut acc = 0.0;
    for &(uj, cj) in weights {
        for &(ul, cl) in weights {
            acc += cj * cl * sinc(m / uj - m / ul);
        }
    }
    acc
}

/// Probe square-summability of the kernel on the integer lattice.
pub fn hs_diagnostic(phi: &Symbol, mu: &Measure, half_bandwidths: &[usize]) -> Result<HsDiagnostic> {
    if half_bandwidths.is_empty() {
        return Err(Error::InvalidParameter(
            "square-summability probe needs at least one window size".into(),
        ));
    }
    if half_bandwidths.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidParameter(
            "window sizes must be strictly increasing".into(),
        ));
    }
    let mut weights = Vec::with_capacity(mu.mass_points().len());
    for pt in mu.mass_points() {
        let v = phi.eval(pt.u);
        if !v.is_finite() {
            return Err(Error::NonFiniteAtNode {
                node: pt.u,
                context: format!("evaluating symbol {}", phi.label()),
            });
        }
        weights.push((pt.u, pt.w * v));
    }
    let mut frob_sq = Vec::with_capacity(half_bandwidths.len());
    for &nb in half_bandwidths {
        let n = nb as i64;
        let mass: f64 = (-n..=n)
            .map(|m| row_norm_sq_exact(&weights, m as f64))
            .sum();
        frob_sq.push(mass);
    }

    // Least-squares slope of frob_sq against the half-bandwidth.
    let xs: Vec<f64> = half_bandwidths.iter().map(|&n| n as f64).collect();
    let slope = if xs.len() >= 2 {
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let my = frob_sq.iter().sum::<f64>() / xs.len() as f64;
        let num: f64 = xs
            .iter()
            .zip(&frob_sq)
            .map(|(&x, &y)| (x - mx) * (y - my))
            .sum();
        let den: f64 = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
        num / den
    } else {
        0.0
    };

    let relative_change = if frob_sq.len() >= 2 {
        let a = frob_sq[frob_sq.len() - 2].max(0.0).sqrt();
        let b = frob_sq[frob_sq.len() - 1].max(0.0).sqrt();
        if b <= ZERO_TOL {
            0.0
        } else {
            (b - a).abs() / b
        }
    } else {
        f64::INFINITY
    };

    let verdict = if xs.len() >= 2 && slope > HS_SLOPE_TOL {
        HsVerdict::NotSquareSummable
    } else if relative_change < 1e-3 {
        HsVerdict::SquareSummablePlausible
    } else {
        HsVerdict::Inconclusive
    };

    Ok(HsDiagnostic {
        half_bandwidths: half_bandwidths.to_vec(),
        frob_sq,
        slope,
        relative_change,
        verdict,
    })
}

/// Leading singular values of one section.
#[derive(Debug, Clone, Serialize)]
pub struct SingularSpectrum {
    pub half_bandwidth: usize,
    pub values: Vec<SigmaEstimate>,
    /// Sum of the computed leading values — a lower bound on the trace norm
    /// of the section.
    pub partial_trace: f64,
}

pub fn singular_spectrum(matrix: &SincMatrix, count: usize) -> Result<SingularSpectrum> {
    let values = linalg::leading_singular_values(matrix.matrix(), count)?;
    let partial_trace = values.iter().map(|e| e.sigma).sum();
    Ok(SingularSpectrum {
        half_bandwidth: matrix.half_bandwidth,
        values,
        partial_trace,
    })
}

/// Check the pointwise output bound `sup_t |(H F)(t)| <= \int |phi| dmu ||F||`
/// on a grid, returning the evaluated ledger row.
pub fn linf_bound_check(
    phi: &Symbol,
    mu: &Measure,
    f: &PWVector,
    grid: &GridSpec,
    tolerance: f64,
) -> Result<BoundRecord> {
    let n = f.half_bandwidth() as i64;
    let mut sup = 0.0f64;
    for t in grid.points() {
        let mut val = 0.0;
        for k in -n..=n {
            let c = f.coeff(k);
            if c != 0.0 {
                val += c * kernel_eval(phi, mu, t, k as f64)?;
            }
        }
        sup = sup.max(val.abs());
    }
    let rhs = mu.integrate(|u| phi.eval(u).abs(), "absolute symbol mass")? * f.norm();
    Ok(BoundRecord::inequality(
        format!("sup-norm bound on window {}", f.len()),
        anchors::SUP_NORM,
        sup,
        rhs,
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureSpec;
    use std::f64::consts::FRAC_2_PI;

    fn unit() -> Symbol {
        Symbol::constant(1.0)
    }

    fn dilation_by_two() -> Measure {
        Measure::single_atom(2.0, 1.0).unwrap()
    }

    #[test]
    fn grid_points_are_symmetric_and_contain_zero() {
        let g = GridSpec::new(1.0, 0.5).unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(GridSpec::new(1.0, 0.6).is_err());
        assert!(GridSpec::new(0.1, 0.25).is_err());
    }

    #[test]
    fn kernel_eval_pinned_values() {
        let mu = dilation_by_two();
        assert!((kernel_eval(&unit(), &mu, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((kernel_eval(&unit(), &mu, 2.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((kernel_eval(&unit(), &mu, 1.0, 1.0).unwrap() - FRAC_2_PI).abs() < 1e-15);

        let mu = Measure::atomic(vec![(1.0, 0.5), (2.0, 0.5)]).unwrap();
        assert!((kernel_eval(&unit(), &mu, 2.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn row_norm_attains_symbol_mass_for_single_atom() {
        // ||K(t, .)|| equals the absolute symbol mass exactly for one atom;
        // the grid only contributes window truncation.
        let grid = GridSpec::new(150.0, 0.25).unwrap();
        let phi = Symbol::constant(1.5);
        let mu = dilation_by_two();
        let got = kernel_row_norm(&phi, &mu, 2.0, &grid).unwrap();
        assert!((got - 1.5).abs() < 1e-3, "got {got}");

        let zero = kernel_row_norm(&Symbol::zero(), &mu, 1.0, &grid).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn col_norm_attains_weighted_mass_for_single_atom() {
        // ||K(., x)|| = sqrt(u) for a unit single atom; long grids needed
        // because columns decay on the scale u * x.
        let grid = GridSpec::new(1500.0, 0.25).unwrap();
        let got = kernel_col_norm(&unit(), &dilation_by_two(), 3.0, &grid).unwrap();
        assert!((got - 2.0f64.sqrt()).abs() < 2e-3, "got {got}");
    }

    #[test]
    fn identity_pair_builds_identity_section() {
        let mu = Measure::single_atom(1.0, 1.0).unwrap();
        let section = build_sinc_matrix(&unit(), &mu, 4).unwrap();
        for m in -4i64..=4 {
            for k in -4i64..=4 {
                let want = if m == k { 1.0 } else { 0.0 };
                assert!((section.entry(m, k) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dilation_section_entries_are_sampled_sinc() {
        let section = build_sinc_matrix(&unit(), &dilation_by_two(), 2).unwrap();
        assert!((section.entry(0, 0) - 1.0).abs() < 1e-15);
        assert!((section.entry(2, 1) - 1.0).abs() < 1e-15);
        assert!(section.entry(2, 0).abs() < 1e-15);
        assert!((section.entry(1, 0) - FRAC_2_PI).abs() < 1e-15);
    }

    #[test]
    fn apply_operator_reads_off_columns() {
        let section = build_sinc_matrix(&unit(), &dilation_by_two(), 8).unwrap();
        let e0 = PWVector::basis(8, 0).unwrap();
        let g = apply_operator(&section, &e0).unwrap();
        for m in -8i64..=8 {
            assert!((g.coeff(m) - sinc(m as f64 / 2.0)).abs() < 1e-15);
        }

        let mu = Measure::single_atom(1.0, 1.0).unwrap();
        let section = build_sinc_matrix(&unit(), &mu, 8).unwrap();
        let f = PWVector::from_fn(8, |m| 1.0 / (1.0 + m.abs() as f64)).unwrap();
        let g = apply_operator(&section, &f).unwrap();
        for m in -8i64..=8 {
            assert!((g.coeff(m) - f.coeff(m)).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_sweep_identity_is_flat_at_one() {
        let mu = Measure::single_atom(1.0, 1.0).unwrap();
        let sweep = operator_norm_sweep(&unit(), &mu, &[4, 8, 16]).unwrap();
        for p in &sweep.points {
            assert!((p.sigma - 1.0).abs() < 1e-10);
        }
        assert!(sweep.converged);
        assert!((sweep.extrapolated - 1.0).abs() < 1e-8);
    }

    #[test]
    fn norm_sweep_dilation_hits_sqrt_dilation_weight() {
        let sweep = operator_norm_sweep(&unit(), &dilation_by_two(), &[8, 16, 32]).unwrap();
        let want = 2.0f64.sqrt();
        let last = sweep.last_sigma();
        assert!((last - want).abs() / want < 1e-6, "last {last}");
        assert!(sweep.converged);
        assert!((sweep.extrapolated - want).abs() / want < 1e-6);
    }

    #[test]
    fn sweep_rejects_bad_window_lists() {
        let mu = dilation_by_two();
        assert!(operator_norm_sweep(&unit(), &mu, &[]).is_err());
        assert!(operator_norm_sweep(&unit(), &mu, &[8, 8]).is_err());
        assert!(operator_norm_sweep(&unit(), &mu, &[16, 8]).is_err());
    }

    #[test]
    fn frobenius_mass_of_dilation_counts_rows() {
        // Every full row of the dilation kernel has unit mass, so the
        // Frobenius mass equals the dimension exactly and the kernel cannot
        // be square-summable.
        let diag = hs_diagnostic(&unit(), &dilation_by_two(), &[16, 32, 64]).unwrap();
        for (i, &nb) in diag.half_bandwidths.iter().enumerate() {
            let want = 2.0 * nb as f64 + 1.0;
            assert!((diag.frob_sq[i] - want).abs() < 1e-9, "N = {nb}");
        }
        assert!((diag.slope - 2.0).abs() < 1e-9);
        assert_eq!(diag.verdict, HsVerdict::NotSquareSummable);
    }

    #[test]
    fn zero_symbol_is_square_summable() {
        let diag = hs_diagnostic(&Symbol::zero(), &dilation_by_two(), &[8, 16]).unwrap();
        assert_eq!(diag.verdict, HsVerdict::SquareSummablePlausible);
        assert_eq!(diag.frob_sq, vec![0.0, 0.0]);
    }

    #[test]
    fn spectrum_of_identity_is_flat() {
        let mu = Measure::single_atom(1.0, 1.0).unwrap();
        let section = build_sinc_matrix(&unit(), &mu, 8).unwrap();
        let spec = singular_spectrum(&section, 5).unwrap();
        for est in &spec.values {
            assert!((est.sigma - 1.0).abs() < 1e-10);
        }
        assert!((spec.partial_trace - 5.0).abs() < 1e-9);
    }

    #[test]
    fn leading_dilation_values_cluster_at_the_norm() {
        let section = build_sinc_matrix(&unit(), &dilation_by_two(), 32).unwrap();
        let spec = singular_spectrum(&section, 3).unwrap();
        let want = 2.0f64.sqrt();
        for est in &spec.values {
            assert!((est.sigma - want).abs() < 1e-6, "sigma {}", est.sigma);
        }
    }

    #[test]
    fn sup_norm_bound_is_tight_for_identity() {
        let mu = Measure::single_atom(1.0, 1.0).unwrap();
        let f = PWVector::basis(4, 0).unwrap();
        let grid = GridSpec::new(10.0, 0.25).unwrap();
        let record = linf_bound_check(&unit(), &mu, &f, &grid, 1e-6).unwrap();
        assert!(record.passed());
        // sup_t |sinc(t)| = 1 is attained at the grid point t = 0.
        assert!((record.lhs - 1.0).abs() < 1e-15);
        assert!((record.rhs - 1.0).abs() < 1e-15);
    }

    #[test]
    fn regime_classification_follows_smallest_scale() {
        assert_eq!(classify_regime(&dilation_by_two()), PwRegime::Operator);
        let mu = Measure::single_atom(1.0, 1.0).unwrap();
        assert_eq!(classify_regime(&mu), PwRegime::Operator);
        let mu = Measure::single_atom(0.5, 1.0).unwrap();
        assert_eq!(classify_regime(&mu), PwRegime::Compression);
        let mu =
            Measure::constant_density(0.5, 2.0, 1.0, QuadratureSpec::default_density()).unwrap();
        assert_eq!(classify_regime(&mu), PwRegime::Compression);
    }

    #[test]
    fn vectors_validate_shapes() {
        assert!(PWVector::new(vec![1.0, 2.0]).is_err());
        assert!(PWVector::new(vec![]).is_err());
        assert!(PWVector::new(vec![1.0, f64::NAN, 0.0]).is_err());
        let mut v = PWVector::zeros(2);
        assert!(v.set(3, 1.0).is_err());
        assert!(v.set(2, 1.0).is_ok());
        assert_eq!(v.coeff(2), 1.0);
        assert_eq!(v.coeff(5), 0.0);

        let section = build_sinc_matrix(&unit(), &dilation_by_two(), 2).unwrap();
        let f = PWVector::zeros(3);
        assert!(apply_operator(&section, &f).is_err());
    }

    #[test]
    fn point_evaluation_interpolates_samples() {
        let f = PWVector::from_fn(6, |m| if m == 1 { 2.0 } else { 0.0 }).unwrap();
        assert!((f.eval(1.0) - 2.0).abs() < 1e-15);
        assert!(f.eval(4.0).abs() < 1e-15);
        assert!((f.eval(1.5) - 2.0 * FRAC_2_PI).abs() < 1e-15);
    }
}
