#![no_main]

use libfuzzer_sys::fuzz_target;
use veltman::io::{model_to_json, parse_frame, parse_model};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_frame(s);
    if let Ok(m) = parse_model(s) {
        let text = model_to_json(&m);
        let back = parse_model(&text).expect("serialized models parse");
        assert_eq!(model_to_json(&back), text);
    }
});
