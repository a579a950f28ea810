#![no_main]

use cyclq::reps::RepLabel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(label) = RepLabel::from_json(s) {
            let _ = label.build();
            let _ = label.to_json();
        }
    }
});
