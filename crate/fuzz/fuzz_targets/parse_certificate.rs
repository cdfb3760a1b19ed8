#![no_main]

use libfuzzer_sys::fuzz_target;
use matsat::format::{parse_certificate, render_certificate};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_certificate(text) {
        let again = parse_certificate(&render_certificate(&c)).expect("rendered certificate parses");
        assert_eq!(again, c);
    }
});
