#![no_main]

use libfuzzer_sys::fuzz_target;
use treechar::graph::{graph_to_json, parse_graph_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_json(text) {
        let again = parse_graph_json(&graph_to_json(&g)).expect("written graphs parse");
        assert_eq!(again, g);
        if g.n() <= 64 {
            let _ = treechar::paths::distance_matrix(&g);
        }
    }
});
