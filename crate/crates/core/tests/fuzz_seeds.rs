//! Replays the checked-in fuzz corpora through the parsers and the checks
//! the fuzz targets make, so regressions show up under plain `cargo test`.

use std::path::PathBuf;

use mixedab_core::classify::{b_plus_e_split, generalized_bassian, is_b_plus_e, is_bassian, Verdict};
use mixedab_core::descriptors::{validate, GroupDescriptor};
use mixedab_core::presented::{truncate, Presentation};
use mixedab_core::valuated::{tight_data, ulm_free, FreeValuated};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn descriptor_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("descriptor_json") {
        let Ok(d) = GroupDescriptor::from_json(&text) else { continue };
        parsed += 1;
        assert_eq!(GroupDescriptor::from_json(&d.to_json()).unwrap(), d, "{name}");
        if !validate(&d).is_empty() {
            continue;
        }
        assert_eq!(generalized_bassian(&d).verdict == Verdict::No, is_b_plus_e(&d).verdict == Verdict::No, "{name}");
        if let Ok((b, _)) = b_plus_e_split(&d) {
            assert_eq!(is_bassian(&b).verdict, Verdict::Yes, "{name}");
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn valuation_seeds() {
    let mut valid = 0;
    for (name, text) in seeds("valuation_json") {
        let Ok(f) = FreeValuated::from_json(&text) else { continue };
        assert_eq!(FreeValuated::from_json(&f.to_json()).unwrap(), f, "{name}");
        if !f.validate().is_empty() {
            continue;
        }
        valid += 1;
        for p in f.primes() {
            ulm_free(&f, p, 16);
        }
        let _ = tight_data(&f);
    }
    assert!(valid >= 3);
}

#[test]
fn presentation_seeds() {
    let mut truncated = 0;
    for (name, text) in seeds("presentation_json") {
        let Ok(pres) = Presentation::from_json(&text) else { continue };
        assert_eq!(Presentation::from_json(&pres.to_json()).unwrap(), pres, "{name}");
        for p in pres.primes().into_iter().chain([2]) {
            let m = truncate(&pres, p, 4).unwrap();
            m.ulm(2).unwrap();
            for id in &pres.base {
                m.height(&m.generator(id, 1.into()).unwrap()).unwrap();
            }
        }
        truncated += 1;
    }
    assert!(truncated >= 3);
}
