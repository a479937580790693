//! Built-in example configurations covering each qualitative regime the
//! laboratory distinguishes: the identity, an exact single-scale average, a
//! two-scale mixture, a continuous scale density, an unbounded pair, and a
//! radial-space diagonal run.

use crate::config::{
    AtomSpec, ExperimentConfig, FockWeightSpec, GridConfig, MeasureSpec, SpaceSpec, SymbolSpec,
    Tolerances,
};

pub const DEMO_NAMES: &[&str] = &[
    "identity",
    "dilation",
    "two-scale",
    "density",
    "unbounded",
    "fock-diagonal",
];

fn base(label: &str, measure: MeasureSpec) -> ExperimentConfig {
    ExperimentConfig {
        label: label.into(),
        symbol: SymbolSpec::Constant { value: 1.0 },
        measure,
        space: SpaceSpec::PaleyWiener,
        moment_orders: 64,
        windows: vec![8, 16, 32],
        grid: GridConfig::default(),
        seed: 1,
        tolerances: Tolerances::default(),
        fock_weight: FockWeightSpec::Gaussian,
    }
}

fn atoms(points: &[(f64, f64)]) -> MeasureSpec {
    MeasureSpec::Atoms {
        points: points
            .iter()
            .map(|&(at, weight)| AtomSpec { at, weight })
            .collect(),
    }
}

/// The named demo config, or `None` for an unknown name.
pub fn demo_config(name: &str) -> Option<ExperimentConfig> {
    let cfg = match name {
        // Unit mass at scale 1: the operator is the identity, every bound is
        // attained trivially, and the section is the identity matrix.
        "identity" => base("identity", atoms(&[(1.0, 1.0)])),
        // Unit mass at scale 2: norm exactly sqrt(2), the cleanest nontrivial
        // closed form; a wider sweep shows the section converging to it.
        "dilation" => {
            let mut cfg = base("dilation", atoms(&[(2.0, 1.0)]));
            cfg.windows = vec![8, 16, 32, 64];
            cfg
        }
        // Equal mass at scales 1 and 2: routes must agree while no single
        // closed form dominates.
        "two-scale" => base("two-scale", atoms(&[(1.0, 0.5), (2.0, 0.5)])),
        // Lebesgue measure on [1, 2]: the continuous regime; the first
        // moment is ln 2.
        "density" => base(
            "density",
            MeasureSpec::UniformDensity {
                lower: 1.0,
                upper: 2.0,
                height: 1.0,
            },
        ),
        // Mass below scale 1 with a symbol that does not vanish there: the
        // moments grow geometrically and the gate fails by design.
        "unbounded" => {
            let mut cfg = base("unbounded", atoms(&[(0.5, 1.0)]));
            cfg.windows = vec![8, 16];
            cfg
        }
        // Diagonal action on the radial space with the Gaussian weight.
        "fock-diagonal" => {
            let mut cfg = base("fock-diagonal", atoms(&[(1.5, 0.8), (3.0, 0.6)]));
            cfg.space = SpaceSpec::Fock;
            cfg.moment_orders = 32;
            cfg
        }
        _ => return None,
    };
    Some(cfg)
}
