//! Exhaustive finite-field enumerations and the double-line experiments.

pub mod lines;
pub mod run;
pub mod torelli;

pub use lines::{line_count, LineSpace, PointSpace, DEFAULT_MAX_ORDER};
pub use run::{census_cubic, census_run, eckardt_census, CensusConfig, CensusCounts, CensusReport, DoubleLine, Task};
pub use torelli::{dphi_rank, normalize_double_line, reconstruct, DphiReport, NormalizedCubic, Reconstruction};
