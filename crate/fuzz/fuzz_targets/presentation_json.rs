#![no_main]

use libfuzzer_sys::fuzz_target;
use mixedab_core::presented::{truncate, Presentation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pres) = Presentation::from_json(text) else { return };
    assert_eq!(Presentation::from_json(&pres.to_json()).unwrap(), pres);
    // keep the linear algebra small
    if pres.generator_count() > 24 || pres.chains.iter().any(|c| c.exp > 64 || c.p > 1 << 20) {
        return;
    }
    for p in pres.primes().into_iter().chain([2]) {
        let m = truncate(&pres, p, 4).expect("validated presentation truncates");
        m.ulm(2).expect("bound 2 fits depth 4");
        for id in &pres.base {
            let e = m.generator(id, 1.into()).unwrap();
            m.height(&e).unwrap();
        }
    }
});
