//! Experiment runner for smoothfront: run configuration, result bundles, optimal
//! hypervolume references, summary statistics and navigator export.

pub mod bundle;
pub mod config;
pub mod error;
pub mod navigator;
pub mod reference;
pub mod run;
pub mod stats;

pub use bundle::{BundlePoint, Metrics, ResultBundle, TraceRow};
pub use config::{Algorithm, RunConfig};
pub use error::{HarnessError, Result};
pub use navigator::{export_navigator_bundle, NavigatorBundle};
pub use reference::{compute_hv_reference, HvReferenceEntry, HvReferenceStore};
pub use run::{run_experiment, run_single};
pub use stats::{rank_sum_test, summarize, Summary};
