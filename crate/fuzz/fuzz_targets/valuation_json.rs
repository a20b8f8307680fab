#![no_main]

use libfuzzer_sys::fuzz_target;
use mixedab_core::valuated::{tight_data, ulm_free, value_at, FreeValuated};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = FreeValuated::from_json(text) else { return };
    assert_eq!(FreeValuated::from_json(&f.to_json()).unwrap(), f);
    if !f.validate().is_empty() {
        return;
    }
    for p in f.primes() {
        for c in &f.coords {
            let t = c.track(p);
            for k in 0..16 {
                assert!(value_at(&t, k) < value_at(&t, k + 1) || value_at(&t, k).finite().is_none());
            }
        }
        ulm_free(&f, p, 16);
    }
    let _ = tight_data(&f);
});
