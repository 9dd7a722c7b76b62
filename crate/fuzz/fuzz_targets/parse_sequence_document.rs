#![no_main]

use libfuzzer_sys::fuzz_target;
use topcoh::formulas::{parse_sequence_csv, parse_sequence_document};

// A valid document's CSV form carries the same values.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(seq) = parse_sequence_document(text) else { return };
    assert_eq!(parse_sequence_csv(&seq.to_csv()).expect("csv parses"), seq.values);
});
