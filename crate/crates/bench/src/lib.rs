//! Shared fixtures for the criterion benches.

use abelmax_core::catalog::{build_named, GroupSpec};
use abelmax_core::permgroup::PermGroup;

/// Groups timed by the search benches, smallest first.
pub const SEARCH_SPECS: &[&str] = &["sym:5", "psl2:13", "sym:6", "agl3_2", "alt:8", "pgl2:13"];

pub fn group(spec: &str) -> PermGroup {
    let spec: GroupSpec = spec.parse().expect("bench spec parses");
    build_named(&spec).expect("bench group builds")
}
