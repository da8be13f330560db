//! Reading and writing expressions.
//!
//! Every expression renders three ways: a line-oriented s-expression text
//! format (the canonical interchange form — stable term order, parseable),
//! LaTeX for typesetting, and a JSON mirror for tooling. The text form round
//! trips exactly: parse(serialize(e)) == e, including the context header
//! that pins the z-truncation order and the α² = 1 relation.
//!
//! Run with `cargo run --example serialized_expressions`.

use bigraded::models::{Metric, Potential, SigmaModel};
use bigraded::render::{parse, serialize, to_json, to_latex};

fn main() {
    let sm = SigmaModel::new(1, Metric::Identity, Potential::SineGordon).expect("valid model");
    let (_, le) = sm.eliminate().expect("F eliminates");

    // Text: first line is the context (coordinates, relations, truncation),
    // then one term per line, canonically ordered.
    let text = serialize(&le);
    println!("serialized ({} lines):", text.lines().count());
    for line in text.lines() {
        println!("  {line}");
    }

    // The round trip is exact — not "equal after simplification": the
    // parser rebuilds the identical canonical form.
    let back = parse(&text).expect("own output parses");
    assert_eq!(back, le);
    println!("\nparse(serialize(e)) == e ✓");

    // LaTeX rendering of the same expression.
    println!("\nLaTeX:\n  {}", to_latex(&le));

    // JSON mirror: a structural tree, convenient for downstream tools that
    // should not reimplement the s-expression grammar.
    let json = serde_json::to_string_pretty(&to_json(&le)).expect("serializes");
    println!("\nJSON ({} bytes):", json.len());
    for line in json.lines().take(14) {
        println!("  {line}");
    }
    println!("  …");

    // Parse failures carry a location. Feed the parser a file with a typo
    // and it answers with line and column, not a shrug.
    let broken = text.replace("(term", "(trem");
    let err = parse(&broken).expect_err("typo must not parse");
    println!("\nbroken input → {err}");
    assert!(err.contains("line"), "error carries a location: {err}");
}
