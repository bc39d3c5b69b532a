#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::syntax::parse_valuation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_valuation(text) {
        assert_eq!(parse_valuation(&v.to_string()).expect("printed valuations parse"), v);
    }
});
