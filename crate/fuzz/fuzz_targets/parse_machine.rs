#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::syntax::{parse_machine, write_machine};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_machine(text) {
        let again = parse_machine(&write_machine(&m.machine, m.target.as_deref())).expect("written machines parse");
        assert_eq!(again.machine, m.machine);
        assert_eq!(again.target, m.target);
    }
});
