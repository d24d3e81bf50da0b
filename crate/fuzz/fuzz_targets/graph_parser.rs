#![no_main]

use conecross::formats::{graph_from_json, graph_to_json};
use conecross::planarity::is_planar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(g) = graph_from_json(data) else {
        return;
    };
    let text = graph_to_json(&g);
    assert_eq!(graph_from_json(&text).expect("own output parses"), g);
    if g.vertex_count() <= 64 && g.edge_count() <= 256 {
        let _ = is_planar(&g);
    }
});
