use std::sync::OnceLock;

/// Default cap on the length of any generated fixed-point buffer.
pub const DEFAULT_PREFIX_CAP: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_PREFIX_CAP`].
pub const PREFIX_CAP_ENV: &str = "REPO_PREFIX_CAP";

/// Global cap on generated prefix lengths, read once from `REPO_PREFIX_CAP`.
pub fn prefix_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(PREFIX_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .unwrap_or(DEFAULT_PREFIX_CAP)
    })
}
