#![no_main]

use libfuzzer_sys::fuzz_target;
use rootpoly::exact::{fmt_rat, parse_rat};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rat(s) {
        assert_eq!(parse_rat(&fmt_rat(&x)).expect("formatted value parses"), x);
    }
});
