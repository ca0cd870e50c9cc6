//! Diagnostics for unary languages and the automata that try to recognize
//! them.
//!
//! Exact arithmetic is kept where it is cheap (isolation gaps, exact scans);
//! density, equidistribution and spectra work in `f64`.

mod angle;
mod density;
mod equidistribution;
mod gap;
mod scan;
mod spectrum;

pub use angle::rational_angle_detect;
pub use density::{lower_density, poly_members, prime_sieve, DensityReport, Polynomial};
pub use equidistribution::{
    box_count, equidistribution_test, weyl_sequence, EquidistributionReport, IntervalBox,
};
pub use gap::{isolation_gap, GapReport};
pub use scan::{
    progression_scan, unary_scan, unary_scan_with, ProgressionSpec, ScanOptions, ScanPoint,
    UnaryScan, DEFAULT_EXACT_BUDGET,
};
pub use spectrum::{spectrum, Eigenvalue};
