#![no_main]

use brjuno::cf::expand;
use brjuno::{CfSpec, Precision};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<CfSpec>() else { return };
    let precision = Precision::digits(20).unwrap();
    // errors are fine, panics are not
    if let Ok(t) = expand(&spec, 16, precision) {
        assert!(t.depth() <= 16);
        for n in 0..=t.depth() {
            assert!(*t.x(n) > 0 && *t.x(n) < 1);
        }
        if spec.is_exact() {
            assert_eq!(t.depth(), 16);
        }
    }
});
