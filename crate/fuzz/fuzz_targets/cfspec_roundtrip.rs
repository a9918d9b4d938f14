#![no_main]

use brjuno::CfSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<CfSpec>() else { return };
    // printing is canonical: it parses back to the same spec and is a fixed point
    let printed = spec.to_string();
    let again: CfSpec = printed.parse().expect("printed spec parses");
    assert_eq!(again, spec);
    assert_eq!(again.to_string(), printed);
});
