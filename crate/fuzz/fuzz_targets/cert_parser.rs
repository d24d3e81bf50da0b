#![no_main]

use conecross::cert::{planarize, verify_certificate};
use conecross::formats::{cert_from_json, cert_to_json};
use conecross::graph::{complete_graph, fig1_graph, multiply_edges};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(c) = cert_from_json(data) else {
        return;
    };
    assert_eq!(cert_from_json(&cert_to_json(&c)).expect("own output parses"), c);
    if c.len() > 512 {
        return;
    }
    let graphs = [complete_graph(5), fig1_graph(), multiply_edges(&complete_graph(5), 2).unwrap()];
    for g in &graphs {
        let (count, valid) = verify_certificate(g, &c);
        assert_eq!(count, c.len());
        assert!(!valid || c.validate(g).is_ok());
        let _ = planarize(g, &c);
    }
});
