//! Catalog construction, verification suites and reports.

mod catalog;
mod oracle;
mod report;
mod suites;

pub use catalog::{default_catalog, Catalog, CatalogEntry};
pub use oracle::{oracle_eta, sample_normal_subgroups};
pub use report::{Report, ReportEntry, Status, Totals};
pub use suites::{run_all, run_suite, run_suite_named, run_suites, Suite, CRITICAL_PRIME_LIMIT, GP_MAX_N};
