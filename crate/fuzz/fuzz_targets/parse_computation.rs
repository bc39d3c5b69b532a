#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::syntax::{parse_computation, write_computation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_computation(text) {
        assert_eq!(parse_computation(&write_computation(&g)).expect("written computations parse"), g);
    }
});
