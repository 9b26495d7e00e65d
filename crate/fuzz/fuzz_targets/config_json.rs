#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = holo_verify::parse_config(text) {
        // Accepted configurations re-serialize to an accepted configuration.
        let again = serde_json::to_string(&cfg).unwrap();
        let back = holo_verify::parse_config(&again).expect("round trip");
        assert_eq!(back, cfg);
    }
});
