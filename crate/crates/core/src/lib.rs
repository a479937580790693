//! Numerical laboratory for averaging (Hausdorff-type) operators
//! `(H F)(z) = \int_0^inf phi(u) F(z/u) dmu(u)` acting on the unit-band
//! Paley–Wiener space and on radial Fock-type spaces of entire functions.
//!
//! The crate keeps three independent realisations of the same operator and
//! insists they agree:
//!
//! * **direct quadrature** ([`oracle::hausdorff_eval`]) — the definition,
//!   evaluated pointwise;
//! * **sample-matrix compression** ([`pw`]) — the kernel
//!   `K(t, x) = \int phi(u) sinc(t/u - x) dmu(u)` sectioned on the
//!   integer-shift basis of the unit band;
//! * **diagonal action** ([`fock`]) — the moments
//!   `lambda_n = \int phi(u) u^{-n} dmu(u)` acting as eigenvalues on
//!   monomials.
//!
//! Every claimed inequality is evaluated into a [`ledger::BoundLedger`] row
//! with both sides and a verdict, anchored to a fixed set of mathematical
//! statements; boundedness and compactness verdicts are three-valued and say
//! what evidence they rest on.

pub mod battery;
pub mod error;
pub mod fock;
pub mod ledger;
pub mod linalg;
pub mod measure;
pub mod moments;
pub mod oracle;
pub mod pw;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
