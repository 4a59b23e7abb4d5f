#![no_main]

use emd_simplex::instance::parse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse(text) {
        let again = parse(&inst.to_text()).expect("canonical text parses");
        assert_eq!(again, inst);
    }
});
