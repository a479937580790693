//! Moments of a symbol–measure pair and the growth diagnostics built on them.
//!
//! The `n`-th moment `lambda_n = \int phi(u) u^{-n} dmu(u)` is the eigenvalue
//! of the averaging operator on the monomial `z^n`, so the whole diagonal
//! picture of the operator — sup norm, spectral-radius surrogates, compactness
//! — is a statement about this sequence.  Mass at scales below 1 makes the
//! sequence grow geometrically, so moments are carried in a sign/log-magnitude
//! representation and only lowered to plain doubles when they fit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{Measure, Symbol};

/// Magnitudes at or below this are treated as exact zeros by verdicts.
pub const ZERO_TOL: f64 = 1e-12;

/// Threshold for "the tail has numerically died" in decay classification.
pub const DECAY_TOL: f64 = 1e-10;

/// Natural log of the largest finite `f64`; log-magnitudes beyond this have
/// no plain representation.
const LOG_F64_MAX: f64 = 709.782712893384;

/// A real number stored as sign and natural log of magnitude, exact over the
/// products and positive sums that moments are built from.  `sign == 0` is
/// the zero element (with `log_abs = -inf`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogReal {
    pub sign: i8,
    pub log_abs: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: x.abs().ln(),
            }
        }
    }

    /// Plain value if it fits in an `f64`, `None` when the magnitude
    /// overflows.  Underflow to subnormal zero is accepted as zero.
    pub fn to_f64(self) -> Option<f64> {
        if self.sign == 0 {
            return Some(0.0);
        }
        if self.log_abs > LOG_F64_MAX {
            return None;
        }
        Some(self.sign as f64 * self.log_abs.exp())
    }

    /// Magnitude as an `f64`, saturating to `+inf` on overflow.
    pub fn abs(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.log_abs.exp()
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }
}

/// Per-mass-point decomposition of the moment integrand, precomputed once so
/// every moment order reuses identical node data.
struct MomentTerms {
    /// `(sign of phi(u_j), ln(w_j |phi(u_j)|), ln u_j)` per mass point.
    terms: Vec<(i8, f64, f64)>,
}

impl MomentTerms {
    fn build(phi: &Symbol, mu: &Measure) -> Result<Self> {
        let mut terms = Vec::with_capacity(mu.mass_points().len());
        for pt in mu.mass_points() {
            let v = phi.eval(pt.u);
            if !v.is_finite() {
                return Err(Error::NonFiniteAtNode {
                    node: pt.u,
                    context: format!("evaluating symbol {}", phi.label()),
                });
            }
            let sign = if v > 0.0 {
                1
            } else if v < 0.0 {
                -1
            } else {
                0
            };
            let log_mag = if sign == 0 {
                f64::NEG_INFINITY
            } else {
                pt.w.ln() + v.abs().ln()
            };
            terms.push((sign, log_mag, pt.u.ln()));
        }
        Ok(Self { terms })
    }

    /// The moment of order `n` in log form.
    fn moment(&self, n: usize) -> Result<LogReal> {
        let nf = n as f64;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for &(sign, log_mag, log_u) in &self.terms {
            if sign == 0 {
                continue;
            }
            let log_term = log_mag - nf * log_u;
            if sign > 0 {
                pos.push(log_term);
            } else {
                neg.push(log_term);
            }
        }
        match (pos.is_empty(), neg.is_empty()) {
            (true, true) => Ok(LogReal::ZERO),
            (false, true) => Ok(LogReal {
                sign: 1,
                log_abs: log_sum_exp(&pos),
            }),
            (true, false) => Ok(LogReal {
                sign: -1,
                log_abs: log_sum_exp(&neg),
            }),
            (false, false) => {
                // Mixed signs: only a plain floating sum respects the
                // cancellation, and that is valid only while every term is
                // representable with headroom for the summation itself.
                let count = (pos.len() + neg.len()) as f64;
                let max_term = pos
                    .iter()
                    .chain(neg.iter())
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max);
                if max_term > LOG_F64_MAX - count.ln() - 2.0 {
                    return Err(Error::IndeterminateMoment { n });
                }
                let sum: f64 = pos.iter().map(|l| l.exp()).sum::<f64>()
                    - neg.iter().map(|l| l.exp()).sum::<f64>();
                Ok(LogReal::from_f64(sum))
            }
        }
    }
}

/// `max + ln(sum(exp(x - max)))` over a nonempty slice.
fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}

/// The moment `lambda_n = \int phi(u) u^{-n} dmu(u)` as a plain double.
///
/// Errors if the value overflows the double range or if sign-indefinite
/// terms make the sum indeterminate at this scale.
pub fn moment(phi: &Symbol, mu: &Measure, n: usize) -> Result<f64> {
    let log = moment_log(phi, mu, n)?;
    log.to_f64().ok_or(Error::MomentOverflow {
        n,
        log10_magnitude: log.log_abs / std::f64::consts::LN_10,
    })
}

/// The moment `lambda_n` in sign/log-magnitude form, exact for sign-definite
/// symbols at any scale.
pub fn moment_log(phi: &Symbol, mu: &Measure, n: usize) -> Result<LogReal> {
    MomentTerms::build(phi, mu)?.moment(n)
}

/// Weighted absolute norm `\int |phi(u)| u^s dmu(u)`.  This is the quantity
/// every kernel-side bound is expressed in: `s = 0` gives the plain absolute
/// mass of the symbol, `s = 1/2` the dilation-corrected mass that dominates
/// the operator norm on the unit band.
pub fn weighted_symbol_norm(phi: &Symbol, mu: &Measure, s: f64) -> Result<f64> {
    mu.integrate(
        |u| phi.eval(u).abs() * u.powf(s),
        &format!("weighted norm of {} with exponent {s}", phi.label()),
    )
}

/// Three-valued answer for diagnostics that can certify, refute, or honestly
/// decline on finite data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    Yes,
    No,
    Inconclusive,
}

/// The moment sequence `lambda_0 .. lambda_n_max` with its growth summary.
#[derive(Debug, Clone, Serialize)]
pub struct MomentSequence {
    pub n_max: usize,
    /// Log-form values; `None` where the moment was indeterminate.
    pub values: Vec<Option<LogReal>>,
    /// Plain doubles; `None` where missing or too large to represent.
    pub plain: Vec<Option<f64>>,
    /// `(order, message)` for every moment that could not be computed.
    pub errors: Vec<(usize, String)>,
    /// `sup_n |lambda_n|`, saturating to `+inf`.
    pub sup_abs: f64,
    /// True when the supremum exceeds the double range.
    pub sup_abs_overflow: bool,
    /// `sup_{1 <= n <= n_max} |lambda_n|^{1/n}` — the growth rate whose
    /// reciprocal locates the critical dilation scale.
    pub root_growth: f64,
    /// `min` of `|lambda_n|^{1/n}` over the trailing window, a finite-range
    /// stand-in for the liminf that lower-bounds the spectral radius.
    pub trailing_root_min: f64,
    /// The index window `[n_max/2, n_max]` used for tail diagnostics.
    pub trailing_window: (usize, usize),
    /// Magnitudes are nondecreasing across the trailing window (and not
    /// identically zero): the finite range may understate the supremum.
    pub growing: bool,
    /// Quartile-based decay classification; see `decay_classification`.
    pub decays_to_zero: TriState,
}

impl MomentSequence {
    /// Assemble the summary from log-form values (index = moment order).
    fn from_log_values(values: Vec<Option<LogReal>>, errors: Vec<(usize, String)>) -> Self {
        assert!(!values.is_empty());
        let n_max = values.len() - 1;
        let plain: Vec<Option<f64>> = values
            .iter()
            .map(|v| v.and_then(|l| l.to_f64()))
            .collect();

        let mut max_log = f64::NEG_INFINITY;
        let mut any_value = false;
        for v in values.iter().flatten() {
            any_value = true;
            if v.sign != 0 {
                max_log = max_log.max(v.log_abs);
            }
        }
        let sup_abs_overflow = max_log > LOG_F64_MAX;
        let sup_abs = if !any_value {
            f64::NAN
        } else if max_log == f64::NEG_INFINITY {
            0.0
        } else {
            max_log.exp() // saturates to +inf on overflow
        };

        let mut root_growth: f64 = 0.0;
        for (n, v) in values.iter().enumerate().skip(1) {
            if let Some(l) = v {
                let root = if l.sign == 0 {
                    0.0
                } else {
                    (l.log_abs / n as f64).exp()
                };
                root_growth = root_growth.max(root);
            }
        }

        let window = (n_max / 2, n_max);
        let mut trailing_root_min = f64::INFINITY;
        let mut window_logs: Vec<f64> = Vec::new();
        let mut window_complete = true;
        for (n, value) in values.iter().enumerate().take(window.1 + 1).skip(window.0) {
            match value {
                Some(l) => {
                    window_logs.push(l.log_abs);
                    if n >= 1 {
                        let root = if l.sign == 0 {
                            0.0
                        } else {
                            (l.log_abs / n as f64).exp()
                        };
                        trailing_root_min = trailing_root_min.min(root);
                    }
                }
                None => window_complete = false,
            }
        }
        if !trailing_root_min.is_finite() && window_complete && !window_logs.is_empty() {
            // Window of order-0 only (n_max = 0): fall back to the magnitude.
            trailing_root_min = window_logs[0].exp();
        }

        let growing = window_complete
            && window_logs.len() >= 2
            && window_logs
                .windows(2)
                .all(|p| p[1] >= p[0] - 1e-12)
            && *window_logs.last().unwrap() > f64::NEG_INFINITY;

        let decays_to_zero = decay_classification(&values);

        Self {
            n_max,
            values,
            plain,
            errors,
            sup_abs,
            sup_abs_overflow,
            root_growth,
            trailing_root_min,
            trailing_window: window,
            growing,
            decays_to_zero,
        }
    }

    /// Build a summary from plain values (e.g. a synthetic eigenvalue
    /// profile); index `n` holds `lambda_n`.
    pub fn from_values(values: &[f64]) -> Self {
        assert!(!values.is_empty(), "moment sequence needs at least one value");
        let logs = values
            .iter()
            .map(|&x| Some(LogReal::from_f64(x)))
            .collect();
        Self::from_log_values(logs, Vec::new())
    }

    /// Plain value of `lambda_n`, if available and representable.
    pub fn lambda(&self, n: usize) -> Option<f64> {
        self.plain.get(n).copied().flatten()
    }

    /// Magnitudes are strictly increasing across the trailing window — the
    /// stronger cousin of `growing` used to flag genuinely unbounded-looking
    /// profiles rather than merely non-decaying ones.
    pub fn strictly_growing(&self) -> bool {
        let (lo, hi) = self.trailing_window;
        let mut logs = Vec::new();
        for n in lo..=hi {
            match self.values.get(n).copied().flatten() {
                Some(l) => logs.push(l.log_abs),
                None => return false,
            }
        }
        logs.len() >= 2
            && logs.windows(2).all(|p| p[1] >= p[0] - 1e-12)
            && logs.last().unwrap() - logs.first().unwrap() > 1e-9
    }
}

/// Quartile comparison: the sequence "decays to zero" when the last quartile
/// has died below `DECAY_TOL` and sits below half of the first quartile; it
/// definitely does not decay when the last quartile is at least as large as
/// the first.  Profiles that are identically negligible count as decayed, and
/// any indeterminate value in the compared quartiles forces `Inconclusive`.
fn decay_classification(values: &[Option<LogReal>]) -> TriState {
    let len = values.len();
    let q = (len / 4).max(1);
    let first = &values[..q.min(len)];
    let last = &values[len - q.min(len)..];

    let max_log = |window: &[Option<LogReal>]| -> Option<f64> {
        let mut m = f64::NEG_INFINITY;
        for v in window {
            m = m.max(v.as_ref()?.log_abs);
        }
        Some(m)
    };

    let (Some(first_max), Some(last_max)) = (max_log(first), max_log(last)) else {
        return TriState::Inconclusive;
    };

    let log_decay = DECAY_TOL.ln();
    let log_zero = ZERO_TOL.ln();
    if first_max <= log_zero && last_max <= log_zero {
        return TriState::Yes;
    }
    if last_max < log_decay && last_max < first_max - std::f64::consts::LN_2 {
        return TriState::Yes;
    }
    if last_max >= first_max {
        return TriState::No;
    }
    TriState::Inconclusive
}

/// Compute moments `0..=n_max` for the pair, recording per-order failures
/// instead of aborting: a single indeterminate order still leaves the rest of
/// the profile usable.
pub fn moment_profile(phi: &Symbol, mu: &Measure, n_max: usize) -> MomentSequence {
    let terms = match MomentTerms::build(phi, mu) {
        Ok(t) => t,
        Err(e) => {
            // The symbol itself is broken on this measure: every order fails
            // the same way.
            let msg = e.to_string();
            let errors = (0..=n_max).map(|n| (n, msg.clone())).collect();
            return MomentSequence::from_log_values(vec![None; n_max + 1], errors);
        }
    };
    let mut values = Vec::with_capacity(n_max + 1);
    let mut errors = Vec::new();
    for n in 0..=n_max {
        match terms.moment(n) {
            Ok(v) => values.push(Some(v)),
            Err(e) => {
                errors.push((n, e.to_string()));
                values.push(None);
            }
        }
    }
    MomentSequence::from_log_values(values, errors)
}

/// Outcome of the small-scale support check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapVerdict {
    /// All mass below the cutoff is annihilated by the symbol.
    Holds,
    /// The symbol carries mass below the cutoff.
    Fails,
    /// The measure has no mass below the cutoff, so the condition is vacuous.
    NotApplicable,
}

/// Check whether `phi` vanishes (to within `ZERO_TOL` in `|phi| * mass`) on
/// the part of the measure below `cutoff`.  Returns the verdict together with
/// the largest offending mass, which is what gets ledgered.
pub fn support_gap_excess(phi: &Symbol, mu: &Measure, cutoff: f64) -> Result<(GapVerdict, f64)> {
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "support cutoff must be positive and finite, got {cutoff}"
        )));
    }
    let mut excess: f64 = 0.0;
    let mut any_below = false;
    for pt in mu.mass_points().iter().filter(|p| p.u < cutoff) {
        any_below = true;
        let v = phi.eval(pt.u);
        if !v.is_finite() {
            return Err(Error::NonFiniteAtNode {
                node: pt.u,
                context: format!("evaluating symbol {}", phi.label()),
            });
        }
        excess = excess.max(v.abs() * pt.w);
    }
    let verdict = if !any_below {
        GapVerdict::NotApplicable
    } else if excess <= ZERO_TOL {
        GapVerdict::Holds
    } else {
        GapVerdict::Fails
    };
    Ok((verdict, excess))
}

/// `support_gap_excess` without the magnitude.
pub fn support_gap_verdict(phi: &Symbol, mu: &Measure, cutoff: f64) -> Result<GapVerdict> {
    support_gap_excess(phi, mu, cutoff).map(|(v, _)| v)
}
