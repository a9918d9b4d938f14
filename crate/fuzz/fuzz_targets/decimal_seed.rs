#![no_main]

use brjuno::DecimalSeed;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(seed) = text.parse::<DecimalSeed>() else { return };
    let r = seed.to_rational();
    assert!(r > 0 && r < 1);
    let again: DecimalSeed = seed.to_string().parse().expect("printed seed parses");
    assert_eq!(again, seed);
});
