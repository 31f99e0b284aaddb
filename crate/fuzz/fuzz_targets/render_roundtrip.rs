#![no_main]

use libfuzzer_sys::fuzz_target;
use veltman::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(f) = parse(s) else {
        return;
    };
    assert_eq!(parse(&f.render()).as_ref(), Ok(&f));
    assert_eq!(parse(&f.render_pretty()).as_ref(), Ok(&f));
});
