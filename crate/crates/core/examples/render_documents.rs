//! Render one test copy as LaTeX, HTML and plain text, plus its key file.
//!
//! Run with `cargo run --example render_documents`.

use std::path::Path;

use quizforge::assemble::{assemble_test, parse_test_spec};
use quizforge::bank::parse_bank;
use quizforge::emit::{render_key, render_test, OutputDialect, RenderOptions};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let bank = parse_bank(&std::fs::read_to_string(data.join("mosca.qbk"))?)?;
    let spec = parse_test_spec(&std::fs::read_to_string(data.join("mosca.tsp"))?)?;
    let (tests, keys) = assemble_test(&bank, &spec)?;

    for dialect in OutputDialect::ALL {
        println!("==== {}.{}", tests[0].test_id, dialect.extension());
        print!("{}", render_test(&tests[0], dialect, RenderOptions::default()));
    }
    println!("==== teacher's copy");
    print!("{}", render_test(&tests[0], OutputDialect::Plain, RenderOptions { solutions: true }));
    println!("==== {}.key.tsv", keys[0].test_id);
    print!("{}", render_key(&keys[0]));
    Ok(())
}
