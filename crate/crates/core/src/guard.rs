//! Size limits for brute-force enumerations.

/// Default bound on the total dimension of a representation whose
/// subrepresentations or endomorphisms are enumerated.
pub const DEFAULT_GUARD: usize = 12;

/// Environment variable that raises (or lowers) [`DEFAULT_GUARD`].
pub const GUARD_ENV: &str = "QDILOG_GUARD";

/// Enumerations of more than this many candidate elements are refused.
pub const MAX_ENUMERATION: u64 = 1 << 22;

/// The active guard: `QDILOG_GUARD` when set to an integer, else the default.
pub fn dimension_guard() -> usize {
    std::env::var(GUARD_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_GUARD)
}
