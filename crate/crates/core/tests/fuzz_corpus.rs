use std::fs;
use std::path::Path;

use treegen::format::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn graph6_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("graph6_decode") {
        let Ok(line) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(tree) = parse_graph6(line) {
            assert_eq!(to_graph6(&tree).unwrap(), line, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn edge_list_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("edgelist_parse") {
        let Ok(line) = std::str::from_utf8(&data) else {
            continue;
        };
        if let Ok(tree) = parse_edge_list(line) {
            assert_eq!(
                parse_edge_list(&to_edge_list(&tree)).unwrap(),
                tree,
                "{name}"
            );
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}
