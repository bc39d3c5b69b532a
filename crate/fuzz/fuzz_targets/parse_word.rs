#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::syntax::{parse_word, write_word};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_word(text) {
        let again = parse_word(&write_word(&w)).expect("written words parse");
        assert_eq!(again, w);
    }
});
