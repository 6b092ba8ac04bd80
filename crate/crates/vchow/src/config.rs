//! Resource bounds. Each value is read once per process; the enumeration
//! bound and the candidate cap can be overridden through the environment.

use std::sync::OnceLock;

/// Largest prime l accepted by division-polynomial based operations.
pub const L_BOUND: u64 = 13;

fn env_u64(name: &str, default: u64) -> u64 {
    std::env::var(name)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(default)
}

/// Largest field order ops may fully enumerate (`VCHOW_ENUM_BOUND`).
pub fn enum_bound() -> u64 {
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| env_u64("VCHOW_ENUM_BOUND", 100_000))
}

/// Cap on candidate sets in root and factor searches (`VCHOW_CANDIDATE_CAP`).
pub fn candidate_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| env_u64("VCHOW_CANDIDATE_CAP", 100_000))
}
