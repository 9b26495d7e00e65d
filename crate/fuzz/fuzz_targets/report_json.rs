#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = holo_verify::parse_report(text) {
        let json = report.to_json();
        let back = holo_verify::parse_report(&json).expect("round trip");
        assert_eq!(back.to_json(), json);
    }
});
