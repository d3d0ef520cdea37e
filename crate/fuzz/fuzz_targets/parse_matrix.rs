#![no_main]

use embed3::matrix_file::{matrix_to_json, parse_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(text) {
        if m.nrows() <= 16 && m.ncols() <= 16 {
            let _ = m.rank();
        }
        assert_eq!(parse_matrix(&matrix_to_json(&m)).expect("printed matrices parse"), m);
    }
});
