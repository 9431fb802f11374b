//! k-nearest-neighbor support estimation and the Precision / Recall family of
//! generative-model metrics, together with the synthetic high-dimensional
//! experiments that expose their asymmetry.
//!
//! The main entry points are [`metrics::evaluate_suite`] for scoring a pair of
//! point clouds and [`sweep::run_synthetic_sweep`] for the radius x dimension
//! experiments.

pub mod caps;
pub mod cloud;
pub mod error;
pub mod formats;
pub mod grid;
pub mod knn;
pub mod metrics;
mod par;
pub mod plot;
pub mod rng;
pub mod samplers;
pub mod special;
pub mod sweep;
pub mod table;
pub mod transforms;

pub use cloud::PointCloud;
pub use error::{Error, ErrorKind, Result};
pub use knn::ApproxSupport;
pub use metrics::{evaluate_suite, Metric, MetricReport, MetricValues};
pub use par::init_thread_pool;
pub use rng::RngSpec;
pub use samplers::{PairFamily, SupportFamily, SupportSpec};
pub use sweep::{SweepConfig, SweepRecord, SweepResult};
