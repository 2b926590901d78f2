//! Fuzz the run-spec TOML parser and the validation layer behind it:
//! arbitrary bytes must produce either a spec or a structured error,
//! never a panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = toml::from_str::<vi_cli::RunSpec>(text) {
            let _ = spec.validate();
            let _ = spec.label();
        }
    }
});
