#![no_main]

use libfuzzer_sys::fuzz_target;
use treegen::format::{parse_edge_list, to_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(line) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tree) = parse_edge_list(line) {
        let again = parse_edge_list(&to_edge_list(&tree)).unwrap();
        assert_eq!(again, tree);
    }
});
