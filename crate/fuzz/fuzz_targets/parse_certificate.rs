#![no_main]

use embed3::certificate::Certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Certificate::parse(text) {
        assert_eq!(Certificate::parse(&c.to_text()).expect("printed certificates parse"), c);
    }
});
