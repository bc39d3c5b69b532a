#![no_main]

use libfuzzer_sys::fuzz_target;
use ptamtl::channel::samples::{single_message, two_message};
use ptamtl::encoding::{check_membership, decode, encode, n_prefix, EncodingLayout};
use ptamtl::syntax::parse_word;

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(w) = parse_word(text) else { return };
    let (c, target) = if pick % 2 == 0 {
        (single_message(), "s2")
    } else {
        (two_message(), "q4")
    };
    let member = check_membership(&w, &c, target, n_prefix(&w));
    if let Ok(g) = decode(&w, &c, target) {
        assert!(member);
        assert!(g.is_error_free(&c).unwrap());
        let again = encode(&c, target, &g, &EncodingLayout::uniform(g.max_channel())).unwrap();
        assert_eq!(decode(&again, &c, target).unwrap(), g);
    }
});
