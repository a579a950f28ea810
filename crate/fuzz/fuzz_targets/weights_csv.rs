#![no_main]

use cyclq::weights::{read_csv, write_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(tables) = read_csv(data) {
        let mut out = Vec::new();
        write_csv(&tables, &mut out).expect("write");
        assert_eq!(read_csv(out.as_slice()).expect("reread"), tables);
    }
});
