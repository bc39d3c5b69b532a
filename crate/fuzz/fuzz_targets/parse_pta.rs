#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::syntax::{parse_pta, write_pta};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_pta(text) {
        let written = write_pta(&a);
        let again = parse_pta(&written).expect("written automata parse");
        assert_eq!(write_pta(&again), written);
        let _ = a.is_deterministic();
    }
});
