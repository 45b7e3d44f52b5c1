//! Global resource caps.

/// Default cap on non-degenerate simplices of a single constructed object.
pub const DEFAULT_MAX_SIMPLICES: usize = 1_000_000;

/// Default cap on the number of maps enumerated in one dimension.
pub const DEFAULT_MAP_CAP: usize = 100_000;

/// The simplex cap, overridable through `PROSIMPL_MAX_SIMPLICES`.
pub fn max_simplices() -> usize {
    std::env::var("PROSIMPL_MAX_SIMPLICES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_SIMPLICES)
}
