#![no_main]

use cyclq::weights::{from_json, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(tables) = from_json(s) {
            let _ = from_json(&to_json(&tables));
        }
    }
});
