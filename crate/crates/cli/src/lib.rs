//! Experiment runner for the averaging-operator laboratory: strict configs
//! in, deterministic reports and CSV extracts out.  The binary in this crate
//! is a thin argument parser over these modules.

pub mod config;
pub mod demo;
pub mod report;
pub mod runner;
