#![no_main]

use emd_simplex::cli::Bounds;
use emd_simplex::MAX_DIMENSION;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(b) = text.parse::<Bounds>() {
        assert!(b.n_max >= 1 && b.d_max <= MAX_DIMENSION);
    }
});
