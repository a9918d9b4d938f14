#![no_main]

use brjuno::eval::parse_decimal;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 64 {
        return;
    }
    let Ok(r) = parse_decimal(text) else { return };
    // integers print as themselves and must read back
    if *r.denom() == 1 {
        assert_eq!(parse_decimal(&r.numer().to_string()).unwrap(), r);
    }
});
