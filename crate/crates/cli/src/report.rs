//! Report assembly and emission.
//!
//! A run produces one JSON report plus optional CSV extracts.  Emission is
//! deterministic: field order is fixed by the struct definitions, floats use
//! Rust's shortest round-trip formatting, and nothing time- or host-dependent
//! is recorded, so re-running a config byte-reproduces its artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

use hausdorff_core::fock::{BoundednessReport, CompactnessReport};
use hausdorff_core::ledger::BoundLedger;
use hausdorff_core::moments::{GapVerdict, MomentSequence};
use hausdorff_core::oracle::CrossValidation;
use hausdorff_core::pw::{HsDiagnostic, NormSweep, PwRegime, SingularSpectrum};

use crate::config::{ExperimentConfig, SpaceSpec};

/// Small-scale support summary carried by every report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapSummary {
    pub verdict: GapVerdict,
    /// Largest surviving `|phi| * mass` below the unit scale.
    pub excess: f64,
}

/// A diagnostic that was not applicable to the configured space.
#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub diagnostic: String,
    pub reason: String,
}

/// A diagnostic that errored; the run continues and records why.
#[derive(Debug, Clone, Serialize)]
pub struct Failed {
    pub diagnostic: String,
    pub error: String,
}

/// One kernel sample for the plotting extract.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelSample {
    pub t: f64,
    pub x: f64,
    pub value: f64,
}

/// Everything a run measured, plus the verdict trail.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub label: String,
    /// SHA-256 of the effective (fully defaulted) config JSON.
    pub config_sha256: String,
    pub space: SpaceSpec,
    pub seed: u64,
    pub symbol: String,
    pub measure: String,
    pub regime: Option<PwRegime>,
    pub moments: MomentSequence,
    pub support_gap: GapSummary,
    pub sweep: Option<NormSweep>,
    pub square_summability: Option<HsDiagnostic>,
    pub spectrum: Option<SingularSpectrum>,
    pub cross_validation: Option<CrossValidation>,
    pub boundedness: Option<BoundednessReport>,
    pub compactness: Option<CompactnessReport>,
    pub ledger: BoundLedger,
    pub skipped: Vec<Skipped>,
    pub failures: Vec<Failed>,
    /// A ledger row failed or a verdict refuted boundedness.
    pub gate_failed: bool,
}

/// Artifacts of one run: the report plus extracts too bulky for JSON.
pub struct RunArtifacts {
    pub report: Report,
    /// Kernel samples on a fixed coarse grid (band-limited runs only).
    pub kernel_grid: Option<Vec<KernelSample>>,
}

/// Hash of the effective config, tying a report to exactly one experiment.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let bytes = serde_json::to_vec(config).expect("config serializes");
    let digest = Sha256::digest(&bytes);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        write!(hex, "{byte:02x}").expect("writing to a string cannot fail");
    }
    hex
}

/// Which files `write_artifacts` emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Both,
}

impl OutputFormat {
    fn wants_json(self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }

    fn wants_csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }
}

/// CSV fields are numeric or drawn from fixed vocabularies; commas inside
/// free-text names are replaced rather than quoted.
fn csv_safe(text: &str) -> String {
    text.replace(',', ";")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn moments_csv(moments: &MomentSequence) -> String {
    let mut out = String::from("order,value,log_abs,sign\n");
    for n in 0..=moments.n_max {
        let (log_abs, sign) = match moments.values[n] {
            Some(l) => (l.log_abs.to_string(), l.sign.to_string()),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(out, "{n},{},{log_abs},{sign}", opt(moments.lambda(n)));
    }
    out
}

fn singular_values_csv(
    sweep: Option<&NormSweep>,
    spectrum: Option<&SingularSpectrum>,
) -> String {
    let mut out = String::from("window,index,sigma,route,converged\n");
    if let Some(sweep) = sweep {
        for p in &sweep.points {
            let _ = writeln!(
                out,
                "{},0,{},{},{}",
                p.half_bandwidth,
                p.sigma,
                route_name(p.route),
                p.converged
            );
        }
    }
    if let Some(sp) = spectrum {
        for (i, est) in sp.values.iter().enumerate().skip(1) {
            let _ = writeln!(
                out,
                "{},{i},{},{},{}",
                sp.half_bandwidth,
                est.sigma,
                route_name(est.route),
                est.converged
            );
        }
    }
    out
}

fn route_name(route: hausdorff_core::linalg::SigmaRoute) -> &'static str {
    match route {
        hausdorff_core::linalg::SigmaRoute::FullSvd => "full_svd",
        hausdorff_core::linalg::SigmaRoute::PowerIteration => "power_iteration",
    }
}

fn bounds_csv(ledger: &BoundLedger) -> String {
    let mut out = String::from("name,anchor,kind,lhs,rhs,tolerance,verdict\n");
    for r in &ledger.records {
        let kind = match r.kind {
            hausdorff_core::ledger::BoundKind::Inequality => "inequality",
            hausdorff_core::ledger::BoundKind::Equality => "equality",
        };
        let verdict = if r.passed() { "pass" } else { "fail" };
        let _ = writeln!(
            out,
            "{},{},{kind},{},{},{},{verdict}",
            csv_safe(&r.name),
            csv_safe(r.anchor),
            r.lhs,
            r.rhs,
            r.tolerance
        );
    }
    out
}

fn kernel_grid_csv(samples: &[KernelSample]) -> String {
    let mut out = String::from("t,x,value\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{}", s.t, s.x, s.value);
    }
    out
}

/// Write the effective config, the report, and the CSV extracts into `dir`.
pub fn write_artifacts(
    dir: &Path,
    config: &ExperimentConfig,
    artifacts: &RunArtifacts,
    format: OutputFormat,
) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let write = |name: &str, contents: &str| -> anyhow::Result<()> {
        let path = dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
    };

    let mut config_json = serde_json::to_string_pretty(config)?;
    config_json.push('\n');
    write("config.json", &config_json)?;

    if format.wants_json() {
        let mut report_json = serde_json::to_string_pretty(&artifacts.report)?;
        report_json.push('\n');
        write("report.json", &report_json)?;
    }
    if format.wants_csv() {
        let report = &artifacts.report;
        write("moments.csv", &moments_csv(&report.moments))?;
        write(
            "singular_values.csv",
            &singular_values_csv(report.sweep.as_ref(), report.spectrum.as_ref()),
        )?;
        write("bounds.csv", &bounds_csv(&report.ledger))?;
        if let Some(grid) = &artifacts.kernel_grid {
            write("kernel_grid.csv", &kernel_grid_csv(grid))?;
        }
    }
    Ok(())
}

/// Human-oriented summary printed after a run.
pub fn summary_lines(report: &Report) -> Vec<String> {
    let mut lines = Vec::new();
    lines.push(format!(
        "{}: {} acting on {} [{}]",
        report.label,
        report.symbol,
        report.measure,
        match report.space {
            SpaceSpec::PaleyWiener => "band-limited",
            SpaceSpec::Fock => "radial",
        }
    ));
    if let Some(sweep) = &report.sweep {
        let tail: Vec<String> = sweep
            .points
            .iter()
            .map(|p| format!("{}@{}", fmt6(p.sigma), p.half_bandwidth))
            .collect();
        lines.push(format!(
            "  section norms: {} (extrapolated {})",
            tail.join(" -> "),
            fmt6(sweep.extrapolated)
        ));
    }
    if let Some(hs) = &report.square_summability {
        lines.push(format!(
            "  square-summability: {:?} (Frobenius slope {})",
            hs.verdict,
            fmt6(hs.slope)
        ));
    }
    if let Some(b) = &report.boundedness {
        lines.push(format!("  boundedness: {:?} — {}", b.verdict, b.reason));
    }
    if let Some(c) = &report.compactness {
        lines.push(format!("  compactness: {:?} — {}", c.verdict, c.reason));
    }
    if let Some(cv) = &report.cross_validation {
        lines.push(format!(
            "  route agreement: band {:.3e}, diagonal {:.3e}",
            cv.band_discrepancy, cv.diagonal_discrepancy
        ));
    }
    for r in &report.ledger.records {
        let op = match r.kind {
            hausdorff_core::ledger::BoundKind::Inequality => "<=",
            hausdorff_core::ledger::BoundKind::Equality => "==",
        };
        lines.push(format!(
            "  [{}] {}: {} {op} {}",
            if r.passed() { "pass" } else { "FAIL" },
            r.name,
            fmt6(r.lhs),
            fmt6(r.rhs)
        ));
    }
    for f in &report.failures {
        lines.push(format!("  [error] {}: {}", f.diagnostic, f.error));
    }
    lines.push(if report.gate_failed {
        "  gate: FAILED".into()
    } else {
        "  gate: passed".into()
    });
    lines
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_hash_is_stable_and_sensitive() {
        let a = ExperimentConfig::from_json(
            r#"{ "symbol": { "constant": { "value": 1.0 } },
                 "measure": { "atoms": { "points": [ { "at": 2.0, "weight": 1.0 } ] } } }"#,
        )
        .unwrap();
        let b = ExperimentConfig::from_json(
            r#"{ "symbol": { "constant": { "value": 1.0 } },
                 "measure": { "atoms": { "points": [ { "at": 2.0, "weight": 1.0 } ] } },
                 "seed": 2 }"#,
        )
        .unwrap();
        assert_eq!(config_hash(&a), config_hash(&a));
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }

    #[test]
    fn csv_fields_stay_single_column() {
        assert_eq!(csv_safe("a,b"), "a;b");
    }
}
