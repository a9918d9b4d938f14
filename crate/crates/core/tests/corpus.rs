// Replays the checked-in fuzz corpus through the same checks the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use brjuno::cf::expand;
use brjuno::eval::parse_decimal;
use brjuno::{CfSpec, DecimalSeed, Precision};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn cfspec_roundtrip() {
    let mut parsed = 0;
    for text in seeds("cfspec_roundtrip") {
        let Ok(spec) = text.parse::<CfSpec>() else { continue };
        parsed += 1;
        let printed = spec.to_string();
        let again: CfSpec = printed.parse().unwrap();
        assert_eq!(again, spec, "{text}");
        assert_eq!(again.to_string(), printed);
    }
    assert!(parsed >= 5);
}

#[test]
fn cfspec_expand() {
    let precision = Precision::digits(20).unwrap();
    for text in seeds("cfspec_expand") {
        let Ok(spec) = text.parse::<CfSpec>() else { continue };
        if let Ok(t) = expand(&spec, 16, precision) {
            assert!(t.depth() <= 16);
            for n in 0..=t.depth() {
                assert!(*t.x(n) > 0 && *t.x(n) < 1, "{text}");
            }
            if spec.is_exact() {
                assert_eq!(t.depth(), 16);
            }
        }
    }
}

#[test]
fn decimal_seed() {
    let mut parsed = 0;
    for text in seeds("decimal_seed") {
        let Ok(seed) = text.parse::<DecimalSeed>() else { continue };
        parsed += 1;
        let r = seed.to_rational();
        assert!(r > 0 && r < 1);
        let again: DecimalSeed = seed.to_string().parse().unwrap();
        assert_eq!(again, seed);
    }
    assert!(parsed >= 3);
}

#[test]
fn sigma_literal() {
    for text in seeds("sigma_literal") {
        let Ok(r) = parse_decimal(&text) else { continue };
        if *r.denom() == 1 {
            assert_eq!(parse_decimal(&r.numer().to_string()).unwrap(), r);
        }
    }
}
