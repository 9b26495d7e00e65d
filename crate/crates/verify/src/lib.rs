//! Batch verification of `holo-core` against closed forms and structural identities.
//!
//! A run is described by a [`VerifyConfig`], executes a set of [`Suite`]s and
//! produces a [`Report`] with one [`Record`] per checked relation.

pub mod config;
pub mod report;
pub mod suites;
pub mod table;

pub use config::{load_config, parse_config, ConfigError, Suite, VerifyConfig};
pub use report::{parse_report, Record, Report};
pub use suites::run;
pub use table::{convergence_table, parse_sizes, CheckId};
