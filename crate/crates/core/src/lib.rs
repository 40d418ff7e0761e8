//! Interval Agreement Approach (IAA) fuzzy set models.
//!
//! Interval-valued responses are turned into type-1 fuzzy sets whose
//! membership at `x` is the share of intervals covering `x`. Several groups'
//! type-1 sets combine into a zSlice-based general type-2 set. Agreement
//! ratios summarise how much the sources agree within a group
//! ([`agreement::gamma_t1`]) and across groups ([`agreement::gamma_gt2`]).
//!
//! ```
//! use iaa_core::{build_t1, gamma_t1, Interval, Mode};
//!
//! let intervals = [(2.0, 5.0), (4.0, 5.0), (3.0, 6.0)]
//!     .map(|(lo, hi)| Interval::new(lo, hi).unwrap());
//! let set = build_t1(&intervals).unwrap();
//! let report = gamma_t1(&set, Mode::Exact).unwrap();
//! assert!((report.gamma - 0.5).abs() < 1e-12);
//! ```

pub mod agreement;
pub mod dataset;
pub mod error;
pub mod interval;
pub mod model;
pub mod report;
pub mod samples;
pub mod step;
pub mod synth;

pub use agreement::{
    centroid, gamma_gt2, gamma_t1, height, jaccard_nested, support, AgreementReport, LevelSimilarity, Mode, SetStats,
};
pub use dataset::{ingest_csv, read_csv, IngestOptions, Record, SurveyDataset};
pub use error::{Error, Result};
pub use interval::Interval;
pub use model::{build_t1, build_zgt2, Type1FuzzySet, ZGT2FuzzySet};
pub use report::{run_report, OutputFormat, RunConfig};
pub use samples::export_samples;
pub use step::StepFunction;
pub use synth::{generate_synthetic, SynthSpec};
