//! Experiment configuration: a strict, versionable description of one
//! symbol–measure pair and the diagnostics to run on it.
//!
//! Parsing is strict — unknown fields are rejected rather than ignored — so a
//! typo in a config file fails loudly instead of silently running a different
//! experiment.  Everything except the pair itself has a default, and the
//! effective (fully defaulted) config is what gets hashed and echoed next to
//! the report.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use hausdorff_core::fock::FockWeight;
use hausdorff_core::measure::{Measure, Symbol};
use hausdorff_core::pw::GridSpec;
use hausdorff_core::quad::QuadratureSpec;

/// The symbol Φ weighting the scale average.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolSpec {
    Constant { value: f64 },
    /// `scale * u^exponent`.
    Power { scale: f64, exponent: f64 },
    /// `height` on `[lower, upper]`, zero elsewhere.
    Indicator { height: f64, lower: f64, upper: f64 },
    /// Piecewise-linear through `[u, value]` pairs, zero outside.
    Tabulated { points: Vec<(f64, f64)> },
}

impl SymbolSpec {
    pub fn build(&self) -> anyhow::Result<Symbol> {
        Ok(match self {
            SymbolSpec::Constant { value } => Symbol::constant(*value),
            SymbolSpec::Power { scale, exponent } => Symbol::power(*scale, *exponent),
            SymbolSpec::Indicator {
                height,
                lower,
                upper,
            } => Symbol::indicator(*height, *lower, *upper).context("symbol.indicator")?,
            SymbolSpec::Tabulated { points } => {
                Symbol::tabulated(points.clone()).context("symbol.tabulated")?
            }
        })
    }
}

/// One point mass.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub at: f64,
    pub weight: f64,
}

/// The averaging measure μ on the positive scales.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Atoms { points: Vec<AtomSpec> },
    /// `height * du` restricted to `[lower, upper]`.
    UniformDensity {
        lower: f64,
        upper: f64,
        height: f64,
    },
}

impl MeasureSpec {
    pub fn build(&self) -> anyhow::Result<Measure> {
        Ok(match self {
            MeasureSpec::Atoms { points } => {
                let atoms: Vec<(f64, f64)> = points.iter().map(|a| (a.at, a.weight)).collect();
                Measure::atomic(atoms).context("measure.atoms")?
            }
            MeasureSpec::UniformDensity {
                lower,
                upper,
                height,
            } => Measure::constant_density(
                *lower,
                *upper,
                *height,
                QuadratureSpec::default_density(),
            )
            .context("measure.uniform_density")?,
        })
    }
}

/// Which function space the operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceSpec {
    /// Band-limited square-integrable functions; sections, sweeps, and kernel
    /// grids live here.
    #[default]
    PaleyWiener,
    /// Radial entire-function space; diagonal verdicts live here.
    Fock,
}

/// Radial weight for the Fock-side diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FockWeightSpec {
    /// `exp(-r^2)` — the classical case with closed-form monomial norms.
    #[default]
    Gaussian,
    /// `exp(-r^exponent)`.
    PowerRadial { exponent: f64 },
}

/// Evaluation grid for pointwise kernel checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub half_width: f64,
    pub spacing: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            half_width: 50.0,
            spacing: 0.25,
        }
    }
}

impl GridConfig {
    pub fn build(&self) -> anyhow::Result<GridSpec> {
        GridSpec::new(self.half_width, self.spacing).context("grid")
    }
}

/// Tolerances for the evaluated ledger rows.  Each is interpreted relative to
/// `1 + |rhs|`, acting absolutely near zero and relatively at scale.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Section norm against the sqrt-weighted symbol mass.
    pub norm_bound: f64,
    /// Kernel row/column grid norms against their closed-form masses; this
    /// absorbs the grid truncation error, not operator error.
    pub mass_identity: f64,
    /// Pointwise output bound on the evaluation grid.
    pub sup_norm: f64,
    /// Largest moment magnitude against the measured section norm.
    pub moment_floor: f64,
    /// Measured section norm against the closed-form single-atom norm; the
    /// section converges only like the window, hence the loose default.
    pub exact_norm: f64,
    /// Symbol mass below the unit scale (must vanish for boundedness).
    pub support_gap: f64,
    /// Diagonal-route rows on the radial space.
    pub diagonal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm_bound: 1e-9,
            mass_identity: 2e-3,
            sup_norm: 1e-9,
            moment_floor: 1e-2,
            exact_norm: 1e-2,
            support_gap: 1e-12,
            diagonal: 1e-10,
        }
    }
}

fn default_label() -> String {
    "experiment".into()
}

fn default_moment_orders() -> usize {
    64
}

fn default_windows() -> Vec<usize> {
    vec![16, 32, 64]
}

fn default_seed() -> u64 {
    1
}

/// One experiment: the pair, the space, and the diagnostic knobs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_label")]
    pub label: String,
    pub symbol: SymbolSpec,
    pub measure: MeasureSpec,
    #[serde(default)]
    pub space: SpaceSpec,
    /// Moments are computed for orders `0..=moment_orders`.
    #[serde(default = "default_moment_orders")]
    pub moment_orders: usize,
    /// Half-bandwidths for the section sweep (strictly increasing).
    #[serde(default = "default_windows")]
    pub windows: Vec<usize>,
    #[serde(default)]
    pub grid: GridConfig,
    /// Seed for every randomised input the run draws.
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub fock_weight: FockWeightSpec,
}

/// Core objects assembled from a validated config.
pub struct BuiltExperiment {
    pub phi: Symbol,
    pub mu: Measure,
    pub grid: GridSpec,
    /// Present only for radial-space runs.
    pub weight: Option<FockWeight>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).context("configuration")
    }

    /// Validate and assemble the core objects.
    pub fn build(&self) -> anyhow::Result<BuiltExperiment> {
        if self.moment_orders == 0 {
            bail!("moment_orders must be at least 1");
        }
        if self.windows.is_empty() {
            bail!("windows must list at least one half-bandwidth");
        }
        if self.windows.windows(2).any(|p| p[0] >= p[1]) {
            bail!("windows must be strictly increasing, got {:?}", self.windows);
        }
        let phi = self.symbol.build()?;
        let mu = self.measure.build()?;
        phi.validate_pairing(&mu).context("symbol")?;
        let grid = self.grid.build()?;
        let weight = match self.space {
            SpaceSpec::PaleyWiener => None,
            SpaceSpec::Fock => Some(match self.fock_weight {
                FockWeightSpec::Gaussian => {
                    FockWeight::gaussian(self.moment_orders).context("fock_weight")?
                }
                FockWeightSpec::PowerRadial { exponent } => {
                    FockWeight::power(exponent, self.moment_orders).context("fock_weight")?
                }
            }),
        };
        Ok(BuiltExperiment {
            phi,
            mu,
            grid,
            weight,
        })
    }
}
