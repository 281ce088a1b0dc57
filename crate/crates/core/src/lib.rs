//! Memory-assisted entropic uncertainty for a Bell pair whose memory qubit
//! crosses a Pauli channel, either directly, through a quantum switch of two
//! copies, or through a quantum time-flip.
//!
//! Two evaluation paths are kept side by side: closed forms in
//! [`analytic`] and brute-force density-matrix evolution in [`oracle`].
//! [`scan`] drives parameter sweeps and writes CSV.

pub mod analytic;
pub mod channels;
pub mod error;
pub mod maeur;
pub mod matcore;
pub mod oracle;
pub mod par;
pub mod scan;
pub mod superprocess;

pub use analytic::{closed_form_report, BellDiagonalCoeffs, Process};
pub use channels::{KrausChannel, PauliChannel, ShrinkFactors};
pub use error::{Error, Result};
pub use maeur::{evaluate_maeur, MeasurementPair, UncertaintyReport};
pub use matcore::{CMat, C64};
pub use par::Execution;
pub use scan::{Crossover, Quantity, ScanOptions, ScanRow, SimplexSpec, SweepSpec};
pub use superprocess::{build_switch, build_timeflip, Superchannel};
