#![no_main]

use libfuzzer_sys::fuzz_target;
use mixedab_core::classify::{b_plus_e_split, generalized_bassian, is_b_plus_e, is_bassian, Verdict};
use mixedab_core::descriptors::{validate, GroupDescriptor};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = GroupDescriptor::from_json(text) else { return };
    assert_eq!(GroupDescriptor::from_json(&d.to_json()).unwrap(), d);
    if !validate(&d).is_empty() {
        return;
    }
    let gb = generalized_bassian(&d);
    assert_eq!(gb.verdict == Verdict::No, is_b_plus_e(&d).verdict == Verdict::No);
    if is_bassian(&d).verdict == Verdict::Yes {
        assert_eq!(is_b_plus_e(&d).verdict, Verdict::Yes);
    }
    if let Ok((b, _)) = b_plus_e_split(&d) {
        assert_eq!(is_bassian(&b).verdict, Verdict::Yes);
    }
});
