#![no_main]

use cyclq::curve::CurvePoint;
use cyclq::weyl::RootOfUnity;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let n = [3, 5, 7][sel as usize % 3];
    let root = RootOfUnity::new(n, 1).unwrap();
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(p) = CurvePoint::from_json(s, &root) {
            let _ = CurvePoint::from_json(&p.to_json(), &root);
        }
    }
});
