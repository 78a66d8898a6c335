//! Group construction: the spec language, family builders and GTBL files.

pub mod gtbl;
pub mod realize;
pub mod spec;

pub use gtbl::{format_table, parse_table, read_table, read_table_limited, write_table};
pub use realize::{realize, realize_with_limit, DEFAULT_MAX_ORDER};
pub use spec::GroupSpec;
