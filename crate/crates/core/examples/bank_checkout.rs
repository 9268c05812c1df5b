//! Parse a question bank, validate it and print the checkout listing.
//!
//! Run with `cargo run --example bank_checkout`.

use std::path::Path;

use quizforge::bank::{parse_bank, pretty_print_bank, validate_bank};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/mosca.qbk");
    let bank = parse_bank(&std::fs::read_to_string(path)?)?;
    let p = &bank.problems()[0];
    println!(
        "{} in group {}: {} parameters, {} question(s), {} wrong answers",
        p.name,
        p.group,
        p.parameters.len(),
        p.questions.len(),
        p.questions[0].answers.wrong.len()
    );
    println!("diagnostics: {:?}", validate_bank(&bank));
    print!("{}", pretty_print_bank(&bank));

    // a contradiction the parser cannot see
    let broken = pretty_print_bank(&bank).replace("{int,1,10}", "{set,-1}");
    for d in validate_bank(&parse_bank(&broken)?) {
        println!("diagnostic: {d}");
    }

    // a positioned parse error
    let err = parse_bank("\\begin{Problem}{P}\n  \\Parameter{R}{r}\n  \\Cond='R > * 2'\n").unwrap_err();
    println!("error: {err}");
    Ok(())
}
