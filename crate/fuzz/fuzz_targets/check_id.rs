#![no_main]

use holo_verify::{CheckId, Suite};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(id) = text.parse::<CheckId>() {
        assert_eq!(id.name(), text);
    }
    if let Ok(suite) = text.parse::<Suite>() {
        assert_eq!(suite.name(), text);
    }
});
