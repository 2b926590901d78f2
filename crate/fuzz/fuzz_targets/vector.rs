//! Fuzz the comma-separated vector parser used for `--x0`:
//! arbitrary strings must parse or error, never panic, and accepted
//! vectors must be nonempty and finite.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(v) = vi_cli::parse_vector(text) {
            assert!(!v.is_empty());
            assert!(v.iter().all(|c| c.is_finite()));
        }
    }
});
