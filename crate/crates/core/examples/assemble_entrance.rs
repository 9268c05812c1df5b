//! Assemble scrambled copies of a 20-question test and their answer keys.
//!
//! Run with `cargo run --example assemble_entrance`.

use std::path::Path;

use quizforge::assemble::{assemble_test, parse_test_spec};
use quizforge::bank::parse_bank;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let bank = parse_bank(&std::fs::read_to_string(data.join("entrance.qbk"))?)?;
    let spec = parse_test_spec(&std::fs::read_to_string(data.join("entrance.tsp"))?)?;
    print!("{spec}");

    let (tests, keys) = assemble_test(&bank, &spec)?;
    for (t, k) in tests.iter().zip(&keys) {
        let letters: String = k.entries.iter().map(|e| e.letter).collect();
        println!("{}  {letters}", t.test_id);
    }

    println!("\nfirst copy:");
    for (i, (p, e)) in tests[0].provenance.iter().zip(&keys[0].entries).enumerate() {
        println!("{:>3}  {:<24} {:<16} {}", i + 1, p.group, p.problem, e.letter);
    }

    // a different master seed gives different copies
    let mut other = spec.clone();
    other.seed += 1;
    let (_, other_keys) = assemble_test(&bank, &other)?;
    println!("\nseed {} copy 1 key differs: {}", other.seed, other_keys[0] != keys[0]);
    Ok(())
}
