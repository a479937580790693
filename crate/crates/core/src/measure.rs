//! Symbols and positive measures on the dilation half-line `(0, infinity)`.
//!
//! An averaging operator is determined by a pair `(phi, mu)`: a real symbol
//! `phi` and a positive Borel measure `mu`.  Everything downstream only ever
//! sees the pair through `Measure::integrate`, so the discretisation of a
//! density measure is decided once, here, and inherited by every moment,
//! kernel value, and norm bound computed later.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;

/// Shared real-valued function handle.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real symbol on the half-line, together with the structural facts the
/// laboratory needs: whether it is (declared) nonnegative and where its
/// support lives.  The built-in constructors derive both automatically; the
/// general constructor trusts the caller and cross-checks lazily at pairing
/// time.
#[derive(Clone)]
pub struct Symbol {
    eval: RealFn,
    nonnegative: bool,
    support: (f64, f64),
    label: String,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol")
            .field("label", &self.label)
            .field("nonnegative", &self.nonnegative)
            .field("support", &self.support)
            .finish()
    }
}

impl Symbol {
    /// General constructor.  `support` is the closure of `{u : phi(u) != 0}`
    /// as far as the caller knows it; `(0.0, f64::INFINITY)` is always safe.
    pub fn new(
        eval: RealFn,
        nonnegative: bool,
        support: (f64, f64),
        label: impl Into<String>,
    ) -> Result<Self> {
        if support.0 < 0.0 || support.0 >= support.1 {
            return Err(Error::InvalidParameter(format!(
                "symbol support [{}, {}] must satisfy 0 <= lo < hi",
                support.0, support.1
            )));
        }
        Ok(Self {
            eval,
            nonnegative,
            support,
            label: label.into(),
        })
    }

    /// The constant symbol `phi(u) = c`.
    pub fn constant(c: f64) -> Self {
        Self {
            eval: Arc::new(move |_| c),
            nonnegative: c >= 0.0,
            support: (0.0, f64::INFINITY),
            label: format!("const({c})"),
        }
    }

    /// The symbol that vanishes identically.
    pub fn zero() -> Self {
        Self {
            eval: Arc::new(|_| 0.0),
            nonnegative: true,
            support: (0.0, f64::INFINITY),
            label: "zero".into(),
        }
    }

    /// The power symbol `phi(u) = scale * u^alpha`.
    pub fn power(scale: f64, alpha: f64) -> Self {
        Self {
            eval: Arc::new(move |u: f64| scale * u.powf(alpha)),
            nonnegative: scale >= 0.0,
            support: (0.0, f64::INFINITY),
            label: format!("power({scale}, {alpha})"),
        }
    }

    /// Indicator of `[lo, hi]` with height `height`.
    pub fn indicator(height: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "indicator window [{lo}, {hi}] must satisfy 0 <= lo < hi < infinity"
            )));
        }
        Ok(Self {
            eval: Arc::new(move |u: f64| if (lo..=hi).contains(&u) { height } else { 0.0 }),
            nonnegative: height >= 0.0,
            support: (lo, hi),
            label: format!("indicator({height}, [{lo}, {hi}])"),
        })
    }

    /// Piecewise-linear interpolant through `(u, value)` points, zero outside
    /// the tabulated range.  Points must be strictly increasing in `u`.
    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(
                "tabulated symbol needs at least two points".into(),
            ));
        }
        for pair in points.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::InvalidParameter(
                    "tabulated symbol abscissae must be strictly increasing".into(),
                ));
            }
        }
        if points[0].0 < 0.0 {
            return Err(Error::InvalidParameter(
                "tabulated symbol abscissae must be nonnegative".into(),
            ));
        }
        for &(u, v) in &points {
            if !u.is_finite() || !v.is_finite() {
                return Err(Error::InvalidParameter(
                    "tabulated symbol points must be finite".into(),
                ));
            }
        }
        let nonnegative = points.iter().all(|&(_, v)| v >= 0.0);
        let support = (points[0].0, points[points.len() - 1].0);
        let label = format!("tabulated({} pts on [{}, {}])", points.len(), support.0, support.1);
        let eval = Arc::new(move |u: f64| -> f64 {
            let n = points.len();
            if u < points[0].0 || u > points[n - 1].0 {
                return 0.0;
            }
            let j = match points.partition_point(|&(x, _)| x <= u) {
                0 => 0,
                k if k >= n => n - 2,
                k => k - 1,
            };
            let (x0, y0) = points[j];
            let (x1, y1) = points[j + 1];
            let t = (u - x0) / (x1 - x0);
            y0 + t * (y1 - y0)
        });
        Ok(Self {
            eval,
            nonnegative,
            support,
            label,
        })
    }

    /// Pointwise linear combination `alpha * self + beta * other`.  The result
    /// drops the nonnegativity claim unless it is structurally preserved.
    pub fn linear_combination(alpha: f64, first: &Symbol, beta: f64, second: &Symbol) -> Symbol {
        let f = first.eval.clone();
        let g = second.eval.clone();
        let nonnegative =
            (alpha >= 0.0 && first.nonnegative) && (beta >= 0.0 && second.nonnegative);
        let support = (
            first.support.0.min(second.support.0),
            first.support.1.max(second.support.1),
        );
        Symbol {
            eval: Arc::new(move |u: f64| alpha * f(u) + beta * g(u)),
            nonnegative,
            support,
            label: format!("{alpha}*{} + {beta}*{}", first.label, second.label),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u)
    }

    /// Whether the symbol is declared (and, for built-ins, known) to be
    /// pointwise nonnegative.  Verdicts that are only valid for nonnegative
    /// symbols consult this flag.
    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Cross-check the declared nonnegativity against the mass points of a
    /// measure this symbol is about to be paired with, and require finite
    /// values there.  This is the one place a hand-written closure with a
    /// wrong `nonnegative` flag gets caught.
    pub fn validate_pairing(&self, mu: &Measure) -> Result<()> {
        for pt in mu.mass_points() {
            let v = self.eval(pt.u);
            if !v.is_finite() {
                return Err(Error::NonFiniteAtNode {
                    node: pt.u,
                    context: format!("evaluating symbol {}", self.label),
                });
            }
            if self.nonnegative && v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "symbol {} is declared nonnegative but evaluates to {v} at u = {}",
                    self.label, pt.u
                )));
            }
        }
        Ok(())
    }
}

/// One mass point of the discretised measure: either an atom `w * delta_u` or
/// a quadrature node of a density, in which case `w` already contains the
/// quadrature weight times the density value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassPoint {
    pub u: f64,
    pub w: f64,
}

#[derive(Clone)]
enum MeasureKind {
    Atomic,
    Density {
        lo: f64,
        hi: f64,
        rho: RealFn,
        quad: QuadratureSpec,
    },
}

/// A positive measure on `(0, infinity)`: finitely many atoms, or a density
/// on a finite interval discretised by composite Gauss–Legendre quadrature.
///
/// The mass-point list is precomputed at construction (ascending in `u`) so
/// that every integral against the measure uses identical nodes — a moment, a
/// kernel value, and a norm bound can then be compared without worrying about
/// quadrature drift between call sites.
#[derive(Clone)]
pub struct Measure {
    kind: MeasureKind,
    points: Vec<MassPoint>,
    label: String,
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Measure")
            .field("label", &self.label)
            .field("mass_points", &self.points.len())
            .finish()
    }
}

impl Measure {
    /// Finitely many atoms `w_j * delta_{u_j}`; positions must be positive and
    /// finite, weights positive.  Atoms are sorted ascending by position.
    pub fn atomic(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidParameter(
                "atomic measure needs at least one atom".into(),
            ));
        }
        for &(u, w) in &atoms {
            if !(u.is_finite() && u > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "atom position must be positive and finite, got {u}"
                )));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "atom weight must be positive and finite, got {w}"
                )));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        for pair in atoms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "duplicate atom position {}",
                    pair[0].0
                )));
            }
        }
        let label = if atoms.len() == 1 {
            format!("atom({}, {})", atoms[0].0, atoms[0].1)
        } else {
            format!("atoms({})", atoms.len())
        };
        let points = atoms.iter().map(|&(u, w)| MassPoint { u, w }).collect();
        Ok(Self {
            kind: MeasureKind::Atomic,
            points,
            label,
        })
    }

    /// Single atom `w * delta_u`.
    pub fn single_atom(u: f64, w: f64) -> Result<Self> {
        Self::atomic(vec![(u, w)])
    }

    /// Density `rho(u) du` on `[lo, hi]`, `0 < lo < hi < infinity`, with the
    /// given quadrature.  `rho` must be nonnegative and finite on the nodes.
    pub fn density(
        lo: f64,
        hi: f64,
        rho: RealFn,
        quad: QuadratureSpec,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "density interval [{lo}, {hi}] must satisfy 0 < lo < hi < infinity"
            )));
        }
        let mut points = Vec::new();
        for (u, w) in quad.nodes(lo, hi)? {
            let r = rho(u);
            if !r.is_finite() {
                return Err(Error::NonFiniteAtNode {
                    node: u,
                    context: "evaluating density".into(),
                });
            }
            if r < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "density must be nonnegative, got {r} at u = {u}"
                )));
            }
            points.push(MassPoint { u, w: w * r });
        }
        Ok(Self {
            kind: MeasureKind::Density { lo, hi, rho, quad },
            points,
            label: label.into(),
        })
    }

    /// Lebesgue measure restricted to `[lo, hi]` scaled by `value`.
    pub fn constant_density(lo: f64, hi: f64, value: f64, quad: QuadratureSpec) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "constant density value must be positive, got {value}"
            )));
        }
        let label = format!("density({value} on [{lo}, {hi}])");
        Self::density(lo, hi, Arc::new(move |_| value), quad, label)
    }

    /// The discretised mass points, ascending in `u`.
    pub fn mass_points(&self) -> &[MassPoint] {
        &self.points
    }

    /// Smallest point carrying mass.
    pub fn support_min(&self) -> f64 {
        match &self.kind {
            MeasureKind::Atomic => self.points[0].u,
            MeasureKind::Density { lo, .. } => *lo,
        }
    }

    /// Largest point carrying mass.
    pub fn support_max(&self) -> f64 {
        match &self.kind {
            MeasureKind::Atomic => self.points[self.points.len() - 1].u,
            MeasureKind::Density { hi, .. } => *hi,
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self.kind, MeasureKind::Atomic)
    }

    /// The quadrature rule backing a density measure, if any.
    pub fn quadrature(&self) -> Option<QuadratureSpec> {
        match &self.kind {
            MeasureKind::Atomic => None,
            MeasureKind::Density { quad, .. } => Some(*quad),
        }
    }

    /// Total mass `mu((0, infinity))`.
    pub fn total_mass(&self) -> f64 {
        self.points.iter().map(|p| p.w).sum()
    }

    /// Integrate `f` against the measure.  Fails with the offending node if
    /// `f` is not finite somewhere the measure has mass.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, context: &str) -> Result<f64> {
        let mut sum = 0.0;
        for pt in &self.points {
            let v = f(pt.u);
            if !v.is_finite() {
                return Err(Error::NonFiniteAtNode {
                    node: pt.u,
                    context: context.to_string(),
                });
            }
            sum += pt.w * v;
        }
        Ok(sum)
    }

    /// Integrate `f` against the restriction of the measure to
    /// `[cutoff, infinity)`.  For a density this rebuilds the quadrature on
    /// the clipped interval rather than masking nodes, so the restriction is
    /// itself a properly discretised measure.
    pub fn integrate_above<F: Fn(f64) -> f64>(
        &self,
        cutoff: f64,
        f: F,
        context: &str,
    ) -> Result<f64> {
        match &self.kind {
            MeasureKind::Atomic => {
                let mut sum = 0.0;
                for pt in self.points.iter().filter(|p| p.u >= cutoff) {
                    let v = f(pt.u);
                    if !v.is_finite() {
                        return Err(Error::NonFiniteAtNode {
                            node: pt.u,
                            context: context.to_string(),
                        });
                    }
                    sum += pt.w * v;
                }
                Ok(sum)
            }
            MeasureKind::Density { lo, hi, rho, quad } => {
                let a = lo.max(cutoff);
                if a >= *hi {
                    return Ok(0.0);
                }
                let rho = rho.clone();
                quad.integrate(a, *hi, move |u| rho(u) * f(u), context)
            }
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn atomic_integrate_is_weighted_point_evaluation() {
        let mu = Measure::single_atom(2.0, 1.0).unwrap();
        let got = mu.integrate(|u| u, "u").unwrap();
        assert_eq!(got, 2.0);

        let mu = Measure::atomic(vec![(2.0, 0.5), (1.0, 0.5)]).unwrap();
        // Atoms are sorted ascending regardless of input order.
        assert_eq!(mu.mass_points()[0].u, 1.0);
        let got = mu.integrate(|u| u * u, "u^2").unwrap();
        assert!((got - 2.5).abs() < 1e-15);
    }

    #[test]
    fn density_integrate_matches_closed_forms() {
        let mu =
            Measure::constant_density(1.0, 2.0, 1.0, QuadratureSpec::default_density()).unwrap();
        assert!((mu.integrate(|_| 1.0, "1").unwrap() - 1.0).abs() < 1e-14);
        assert!((mu.integrate(|u| 1.0 / u, "1/u").unwrap() - LN_2).abs() < 1e-12);
        assert!((mu.total_mass() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_reports_non_finite_nodes() {
        let mu = Measure::single_atom(0.5, 1.0).unwrap();
        let err = mu.integrate(|u| (u - 0.5).recip(), "1/(u - 1/2)").unwrap_err();
        match err {
            Error::NonFiniteAtNode { node, .. } => assert_eq!(node, 0.5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn integrate_above_clips_and_rebuilds() {
        let mu = Measure::atomic(vec![(0.5, 1.0), (2.0, 3.0)]).unwrap();
        let got = mu.integrate_above(1.0, |_| 1.0, "mass").unwrap();
        assert_eq!(got, 3.0);

        let mu =
            Measure::constant_density(0.5, 2.0, 1.0, QuadratureSpec::default_density()).unwrap();
        let got = mu.integrate_above(1.0, |_| 1.0, "mass").unwrap();
        assert!((got - 1.0).abs() < 1e-14);
        // Cutoff beyond the support is simply zero.
        assert_eq!(mu.integrate_above(5.0, |_| 1.0, "mass").unwrap(), 0.0);
    }

    #[test]
    fn constructors_reject_degenerate_data() {
        assert!(Measure::atomic(vec![]).is_err());
        assert!(Measure::single_atom(-1.0, 1.0).is_err());
        assert!(Measure::single_atom(1.0, 0.0).is_err());
        assert!(Measure::atomic(vec![(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(
            Measure::constant_density(0.0, 1.0, 1.0, QuadratureSpec::default_density()).is_err()
        );
        assert!(Measure::density(
            1.0,
            2.0,
            Arc::new(|u| u - 1.5),
            QuadratureSpec::default_density(),
            "signed"
        )
        .is_err());
    }

    #[test]
    fn symbol_builtins_report_structure() {
        assert!(Symbol::constant(2.0).is_nonnegative());
        assert!(!Symbol::constant(-1.0).is_nonnegative());
        assert!(Symbol::power(1.0, -0.5).is_nonnegative());
        let ind = Symbol::indicator(2.0, 1.0, 3.0).unwrap();
        assert!(ind.is_nonnegative());
        assert_eq!(ind.support(), (1.0, 3.0));
        assert_eq!(ind.eval(2.0), 2.0);
        assert_eq!(ind.eval(0.5), 0.0);
        assert_eq!(ind.eval(3.0), 2.0);
        assert_eq!(ind.eval(3.0001), 0.0);
    }

    #[test]
    fn tabulated_symbol_interpolates_linearly() {
        let tab = Symbol::tabulated(vec![(1.0, 0.0), (2.0, 2.0), (4.0, 0.0)]).unwrap();
        assert_eq!(tab.eval(1.5), 1.0);
        assert_eq!(tab.eval(2.0), 2.0);
        assert_eq!(tab.eval(3.0), 1.0);
        assert_eq!(tab.eval(0.9), 0.0);
        assert_eq!(tab.eval(4.1), 0.0);
        assert!(tab.is_nonnegative());
        assert!(Symbol::tabulated(vec![(1.0, 0.0)]).is_err());
        assert!(Symbol::tabulated(vec![(1.0, 0.0), (1.0, 1.0)]).is_err());
    }

    #[test]
    fn pairing_validation_catches_wrong_nonnegativity_claim() {
        let lying = Symbol::new(
            Arc::new(|u: f64| u - 10.0),
            true,
            (0.0, f64::INFINITY),
            "claims-nonnegative",
        )
        .unwrap();
        let mu = Measure::single_atom(2.0, 1.0).unwrap();
        assert!(lying.validate_pairing(&mu).is_err());

        let honest = Symbol::power(1.0, 1.0);
        assert!(honest.validate_pairing(&mu).is_ok());
    }

    #[test]
    fn linear_combination_tracks_nonnegativity() {
        let a = Symbol::constant(1.0);
        let b = Symbol::power(1.0, 1.0);
        let sum = Symbol::linear_combination(2.0, &a, 3.0, &b);
        assert!(sum.is_nonnegative());
        assert_eq!(sum.eval(2.0), 8.0);
        let diff = Symbol::linear_combination(1.0, &a, -1.0, &b);
        assert!(!diff.is_nonnegative());
        assert_eq!(diff.eval(2.0), -1.0);
    }
}
