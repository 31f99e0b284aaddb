#![no_main]

use libfuzzer_sys::fuzz_target;
use veltman::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Err(e) = parse(s) {
        assert!(e.offset() <= s.len());
    }
});
