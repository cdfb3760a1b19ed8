#![no_main]

//! Decodes two small matrices from raw bytes and compares the containment
//! search with the naive enumeration.

use libfuzzer_sys::fuzz_target;
use matsat::{contains_naive, find_embedding, Entry, Matrix01, Pattern};

fn decode(bytes: &mut impl Iterator<Item = u8>, max: usize) -> Option<Matrix01> {
    let dims = bytes.next()?;
    let rows = usize::from(dims >> 4) % max + 1;
    let cols = usize::from(dims & 0xf) % max + 1;
    let mut cells = Vec::new();
    for i in 1..=rows {
        let mask = bytes.next().unwrap_or(0);
        cells.extend((1..=cols).filter(|j| mask >> (j - 1) & 1 == 1).map(|j| Entry::new(i, j)));
    }
    Matrix01::new(rows, cols, cells).ok()
}

fuzz_target!(|data: &[u8]| {
    let mut bytes = data.iter().copied();
    let Some(pattern) = decode(&mut bytes, 4).and_then(|m| Pattern::new(m).ok()) else { return };
    let Some(host) = decode(&mut bytes, 8) else { return };
    let found = find_embedding(&host, &pattern);
    if let Some(e) = &found {
        assert!(e.is_valid(&host, &pattern));
    }
    assert_eq!(found.is_some(), contains_naive(&host, &pattern));
});
