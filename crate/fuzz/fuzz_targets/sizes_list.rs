#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sizes) = holo_verify::parse_sizes(text) {
        assert!(!sizes.is_empty() && sizes.iter().all(|&n| n > 0));
        let joined = sizes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(holo_verify::parse_sizes(&joined).unwrap(), sizes);
    }
});
