#![no_main]

use cyclq_cli::config::Config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(cfg) = Config::from_toml(s) {
            let back = Config::from_toml(&cfg.to_toml()).expect("round trip");
            assert_eq!(back.validate().is_ok(), cfg.validate().is_ok());
        }
    }
});
