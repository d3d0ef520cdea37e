#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = embed3::parse_complex(text) {
        let again = embed3::validate(&c.to_raw()).expect("validated complexes re-validate");
        assert_eq!(again.face_keys(), c.face_keys());
    }
});
