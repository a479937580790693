//! The bound ledger: every inequality the laboratory claims is recorded as an
//! explicit row with both sides evaluated, the mathematical statement it
//! instantiates, and a pass/fail verdict.  A report is only as trustworthy as
//! this table, so rows are append-only and anchors come from a fixed set of
//! statements rather than free-form strings.

use serde::Serialize;

/// The mathematical statements a ledger row may instantiate.  Keeping these
/// as constants (and testing membership) prevents diagnostic code from
/// inventing unreviewed claims.
pub mod anchors {
    /// Row mass of the cardinal-sine kernel: bounded by the absolute mass of
    /// the symbol, with equality when the measure is a single atom.
    pub const ROW_MASS: &str = "sup_t ||K(t,.)|| <= \u{222b}|\u{03a6}(u)| d\u{03bc}(u), with equality for a single atom";

    /// Column mass of the kernel: bounded by the sqrt-weighted symbol mass.
    pub const COLUMN_MASS: &str = "||K(.,x)|| <= \u{222b}|\u{03a6}(u)| \u{221a}u d\u{03bc}(u)";

    /// Operator norm on the unit band: bounded by the sqrt-weighted mass.
    pub const OPERATOR_NORM: &str = "||H|| <= \u{222b}|\u{03a6}(u)| \u{221a}u d\u{03bc}(u)";

    /// Exact norm of a single-scale average: the dilation weight of the scale.
    pub const DILATION_EXACT: &str = "||c F(./u)|| = |c| \u{221a}u ||F|| for u >= 1";

    /// Pointwise output bound: sup norm controlled by the absolute mass.
    pub const SUP_NORM: &str = "||H F||_\u{221e} <= \u{222b}|\u{03a6}(u)| d\u{03bc}(u) . ||F||";

    /// Diagonal quadratic bound on the radial space.
    pub const DIAGONAL_BOUND: &str = "||H F||^2 <= C^2 ||F||^2 with C = sup_n |\u{03bb}_n|";

    /// Small-scale support condition for nonnegative symbols.
    pub const SUPPORT_GAP: &str = "\u{03a6}(u) = 0 \u{03bc}-a.e. on (0, 1)";

    /// Norm control by the symbol mass at or above scale 1.
    pub const TAIL_MASS: &str = "||H|| <= const . \u{222b}_1^\u{221e} \u{03a6}(u) d\u{03bc}(u)";

    /// Truncation error of the degree-k diagonal cutoff.
    pub const TRUNCATION_TAIL: &str = "||H - H_k|| <= sup_{n >= k} |\u{03bb}_n|";

    /// Moment magnitudes lower-bound the spectral radius, hence the norm.
    pub const NECESSARY_GROWTH: &str = "sup_n |\u{03bb}_n| <= r(H) <= ||H||";

    /// Monomials are eigenvectors with the moments as eigenvalues.
    pub const EIGEN_RELATION: &str = "H z^n = \u{03bb}_n z^n";

    /// Every anchor a ledger row may carry.
    pub const ALL: &[&str] = &[
        ROW_MASS,
        COLUMN_MASS,
        OPERATOR_NORM,
        DILATION_EXACT,
        SUP_NORM,
        DIAGONAL_BOUND,
        SUPPORT_GAP,
        TAIL_MASS,
        TRUNCATION_TAIL,
        NECESSARY_GROWTH,
        EIGEN_RELATION,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    Pass,
    Fail,
}

/// How the two sides are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `lhs <= rhs` up to tolerance.
    Inequality,
    /// `lhs == rhs` up to tolerance.
    Equality,
}

/// One evaluated bound.  `tolerance` is interpreted relative to
/// `1 + |rhs|`, so it acts absolutely near zero and relatively at scale.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    pub name: String,
    pub anchor: &'static str,
    pub kind: BoundKind,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub verdict: BoundVerdict,
}

impl BoundRecord {
    /// Record the inequality `lhs <= rhs` (up to tolerance).
    pub fn inequality(
        name: impl Into<String>,
        anchor: &'static str,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let slack = tolerance * (1.0 + rhs.abs());
        let verdict = if lhs.is_finite() && (lhs <= rhs + slack) {
            BoundVerdict::Pass
        } else {
            BoundVerdict::Fail
        };
        Self {
            name: name.into(),
            anchor,
            kind: BoundKind::Inequality,
            lhs,
            rhs,
            tolerance,
            verdict,
        }
    }

    /// Record the equality `lhs == rhs` (up to tolerance).
    pub fn equality(
        name: impl Into<String>,
        anchor: &'static str,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let slack = tolerance * (1.0 + rhs.abs());
        let verdict = if lhs.is_finite() && (lhs - rhs).abs() <= slack {
            BoundVerdict::Pass
        } else {
            BoundVerdict::Fail
        };
        Self {
            name: name.into(),
            anchor,
            kind: BoundKind::Equality,
            lhs,
            rhs,
            tolerance,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == BoundVerdict::Pass
    }
}

/// Append-only collection of evaluated bounds.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BoundLedger {
    pub records: Vec<BoundRecord>,
}

impl BoundLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: BoundRecord) {
        self.records.push(record);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(BoundRecord::passed)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name.as_str())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequality_verdicts_respect_tolerance() {
        let r = BoundRecord::inequality("a", anchors::OPERATOR_NORM, 1.0, 1.0, 1e-12);
        assert!(r.passed());
        let r = BoundRecord::inequality("b", anchors::OPERATOR_NORM, 1.0 + 1e-13, 1.0, 1e-12);
        assert!(r.passed());
        let r = BoundRecord::inequality("c", anchors::OPERATOR_NORM, 1.1, 1.0, 1e-12);
        assert!(!r.passed());
        // Non-finite left sides can never pass.
        let r = BoundRecord::inequality("d", anchors::OPERATOR_NORM, f64::NAN, 1.0, 1e-12);
        assert!(!r.passed());
        let r = BoundRecord::inequality("e", anchors::OPERATOR_NORM, 1.0, f64::INFINITY, 1e-12);
        assert!(r.passed());
    }

    #[test]
    fn equality_verdicts_are_two_sided() {
        let r = BoundRecord::equality("a", anchors::ROW_MASS, 2.0, 2.0 + 1e-13, 1e-12);
        assert!(r.passed());
        let r = BoundRecord::equality("b", anchors::ROW_MASS, 2.0, 2.1, 1e-12);
        assert!(!r.passed());
        let r = BoundRecord::equality("c", anchors::ROW_MASS, 2.1, 2.0, 1e-12);
        assert!(!r.passed());
    }

    #[test]
    fn ledger_aggregates_verdicts() {
        let mut ledger = BoundLedger::new();
        assert!(ledger.all_pass());
        ledger.push(BoundRecord::inequality(
            "ok",
            anchors::SUP_NORM,
            0.5,
            1.0,
            1e-12,
        ));
        assert!(ledger.all_pass());
        ledger.push(BoundRecord::inequality(
            "bad",
            anchors::SUP_NORM,
            2.0,
            1.0,
            1e-12,
        ));
        assert!(!ledger.all_pass());
        assert_eq!(ledger.failed_names(), vec!["bad"]);
        assert_eq!(ledger.len(), 2);
    }

    #[test]
    fn anchor_set_is_closed() {
        for a in anchors::ALL {
            assert!(!a.is_empty());
        }
        // Duplicate strings would silently merge two distinct claims.
        let mut sorted: Vec<&str> = anchors::ALL.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), anchors::ALL.len());
    }
}
