#![no_main]

use conecross::book::count_crossings;
use conecross::formats::{book_from_json, book_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(d) = book_from_json(data) else {
        return;
    };
    assert_eq!(book_from_json(&book_to_json(&d)).expect("own output parses"), d);
    if d.graph().edge_count() <= 256 {
        let _ = count_crossings(&d);
    }
});
