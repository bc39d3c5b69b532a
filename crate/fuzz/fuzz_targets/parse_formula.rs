#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::syntax::parse_formula;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // deep nesting is legal but recursion depth is not the point here
    if text.len() > 512 {
        return;
    }
    if let Ok(f) = parse_formula(text) {
        assert_eq!(parse_formula(&f.to_string()).expect("printed formulas parse"), f);
    }
});
