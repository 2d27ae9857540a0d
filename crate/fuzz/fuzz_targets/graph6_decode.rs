#![no_main]

use libfuzzer_sys::fuzz_target;
use treegen::format::{parse_graph6, to_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tree) = parse_graph6(line) {
        // Accepted records are canonical graph6, so re-encoding is exact.
        assert_eq!(to_graph6(&tree).unwrap(), line);
    }
});
