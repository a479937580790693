//! Spectral helpers for the sample-matrix compressions.
//!
//! Two routes to the top singular value are kept deliberately distinct: a
//! hand-rolled power iteration on `M^T M` (cheap, works at any size, but can
//! stall on clustered spectra) and a full dense SVD (robust, used up to a
//! size cap).  The dispatcher prefers the full decomposition below the cap
//! and falls back to iteration above it, always reporting which route
//! produced the number and whether it converged.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative change between iterates below which power iteration stops.
pub const POWER_ITER_TOL: f64 = 1e-10;

/// Iteration cap for power iteration.
pub const POWER_ITER_MAX: usize = 10_000;

/// Largest matrix dimension for which the dense SVD route is used.
pub const FULL_SVD_MAX_DIM: usize = 512;

/// Which route produced a singular-value estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaRoute {
    FullSvd,
    PowerIteration,
}

/// A singular-value estimate with its provenance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SigmaEstimate {
    pub sigma: f64,
    pub route: SigmaRoute,
    pub converged: bool,
    pub iterations: usize,
}

/// All singular values, descending, via the dense SVD.
pub fn singular_values_full(m: &DMatrix<f64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Top singular value by power iteration on `M^T M`, seeded with the
/// alternating-sign vector.  On the odd-dimensional sections produced here
/// the seed is symmetric under index reversal, like the leading singular
/// vector, so it always carries a component on the leading subspace (on
/// even-dimensional reversal-symmetric matrices it would not).  Returns the
/// estimate even when the iteration stalls, flagged as non-converged.
pub fn top_singular_power(m: &DMatrix<f64>) -> SigmaEstimate {
    let n = m.ncols();
    assert!(n > 0 && m.nrows() > 0, "power iteration needs a nonempty matrix");
    let mut v = DVector::from_fn(n, |i, _| if i % 2 == 0 { 1.0 } else { -1.0 });
    v /= v.norm();
    let mut sigma_prev = 0.0f64;
    let mut sigma = 0.0f64;
    for it in 1..=POWER_ITER_MAX {
        let w = m * &v;
        let z = m.transpose() * w;
        let norm = z.norm();
        if norm == 0.0 {
            // v is in the null space of M^T M; for our matrices this only
            // happens when M itself is zero.
            return SigmaEstimate {
                sigma: 0.0,
                route: SigmaRoute::PowerIteration,
                converged: true,
                iterations: it,
            };
        }
        v = z / norm;
        sigma = norm.sqrt(); // ||M^T M v|| -> sigma_max^2 for unit v
        let denom = sigma.max(f64::MIN_POSITIVE);
        if it > 1 && (sigma - sigma_prev).abs() / denom < POWER_ITER_TOL {
            return SigmaEstimate {
                sigma,
                route: SigmaRoute::PowerIteration,
                converged: true,
                iterations: it,
            };
        }
        sigma_prev = sigma;
    }
    SigmaEstimate {
        sigma,
        route: SigmaRoute::PowerIteration,
        converged: false,
        iterations: POWER_ITER_MAX,
    }
}

/// Top singular value, full SVD below the size cap, power iteration above.
pub fn top_singular_value(m: &DMatrix<f64>) -> SigmaEstimate {
    if m.nrows().max(m.ncols()) <= FULL_SVD_MAX_DIM {
        SigmaEstimate {
            sigma: singular_values_full(m)[0],
            route: SigmaRoute::FullSvd,
            converged: true,
            iterations: 0,
        }
    } else {
        top_singular_power(m)
    }
}

/// Leading `k` singular values, descending.  Dense SVD below the cap; above
/// it, repeated power iteration with deflation of converged singular pairs.
pub fn leading_singular_values(m: &DMatrix<f64>, k: usize) -> Result<Vec<SigmaEstimate>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let max_rank = m.nrows().min(m.ncols());
    if k > max_rank {
        return Err(Error::DimensionMismatch(format!(
            "requested {k} singular values of a rank-{max_rank} matrix"
        )));
    }
    if m.nrows().max(m.ncols()) <= FULL_SVD_MAX_DIM {
        let sv = singular_values_full(m);
        return Ok(sv[..k]
            .iter()
            .map(|&sigma| SigmaEstimate {
                sigma,
                route: SigmaRoute::FullSvd,
                converged: true,
                iterations: 0,
            })
            .collect());
    }
    // Deflation route: subtract sigma^2 v v^T from M^T M after each find.
    let mut found: Vec<(f64, DVector<f64>)> = Vec::new();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let n = m.ncols();
        let mut v = DVector::from_fn(n, |i, _| if i % 2 == 0 { 1.0 } else { -1.0 });
        for (_, u) in &found {
            let c = u.dot(&v);
            v -= c * u;
        }
        let nv = v.norm();
        if nv == 0.0 {
            v = DVector::from_fn(n, |i, _| ((i + 1) as f64).sin());
            for (_, u) in &found {
                let c = u.dot(&v);
                v -= c * u;
            }
        }
        v /= v.norm();
        let mut sigma_prev = 0.0f64;
        let mut sigma = 0.0f64;
        let mut converged = false;
        let mut iterations = POWER_ITER_MAX;
        for it in 1..=POWER_ITER_MAX {
            let mut z = m.transpose() * (m * &v);
            for (s, u) in &found {
                let c = u.dot(&v);
                z -= (s * s * c) * u;
            }
            // Re-orthogonalise to stop rounding drift back into deflated
            // directions.
            for (_, u) in &found {
                let c = u.dot(&z);
                z -= c * u;
            }
            let norm = z.norm();
            if norm == 0.0 {
                sigma = 0.0;
                converged = true;
                iterations = it;
                break;
            }
            v = z / norm;
            sigma = norm.sqrt();
            let denom = sigma.max(f64::MIN_POSITIVE);
            if it > 1 && (sigma - sigma_prev).abs() / denom < POWER_ITER_TOL {
                converged = true;
                iterations = it;
                break;
            }
            sigma_prev = sigma;
        }
        out.push(SigmaEstimate {
            sigma,
            route: SigmaRoute::PowerIteration,
            converged,
            iterations,
        });
        found.push((sigma, v.clone()));
    }
    Ok(out)
}

/// Frobenius norm.
pub fn frobenius(m: &DMatrix<f64>) -> f64 {
    m.norm()
}
