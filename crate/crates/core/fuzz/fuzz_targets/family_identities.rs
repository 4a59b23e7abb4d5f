#![no_main]

use emd_simplex::cli::{check_family, family_from_bytes};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some(hs) = family_from_bytes(data) else {
        return;
    };
    let checks = check_family(&hs, 100_000).unwrap();
    assert!(checks.all_hold(), "{:?}", checks.failed_checks());
});
