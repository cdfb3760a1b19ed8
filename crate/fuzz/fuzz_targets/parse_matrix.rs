#![no_main]

use libfuzzer_sys::fuzz_target;
use matsat::format::{parse_matrix, render_matrix, Style};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(text) {
        for style in [Style::Grid, Style::Dotted] {
            let again = parse_matrix(&render_matrix(&m, style)).expect("rendered matrix parses");
            assert_eq!(again, m);
        }
    }
});
