//! Reading and writing the JSON document format.

use mfn::doc::{Document, Payload};

fn main() {
    let text = r#"{
        "format_version": 1,
        "field": {"Fp": 5},
        "variable": "x",
        "payload": {"factorization": {"w": [0, 0, 1, 0], "maps": [[[[0, 1]]], [[[0, "1/1"]]]]}}
    }"#;
    let doc = Document::parse(text).expect("valid document");
    if let Payload::Factorization(m) = &doc.payload {
        println!("parsed {m}; verifies: {}", m.verify().is_ok());
    }
    let canonical = doc.serialize();
    println!("canonical form:\n{canonical}");
    println!("round trip exact: {}", Document::parse(&canonical).expect("reparses") == doc);

    for bad in ["{\"format_version\": 1,\n  \"field\": Q }", r#"{"format_version":1,"field":{"Fp":9},"payload":{"report":{}}}"#] {
        match Document::parse(bad) {
            Ok(_) => println!("unexpectedly accepted"),
            Err(e) => println!("rejected: {e}"),
        }
    }
}
