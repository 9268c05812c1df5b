//! Count how many distinct versions of each question a bank can produce.
//!
//! Run with `cargo run --example variant_counts`.

use std::path::Path;

use quizforge::bank::parse_bank;
use quizforge::instantiate::count_variants;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let textual = parse_bank(
        r"\begin{Problem}{Capital}
            \begin{Question}
              \begin{Ask}Which city is the capital of Italy?\end{Ask}
              \begin{Answers}
                \Right='Rome' \Right='Roma'
                \Wrong='Milan' \Wrong='Turin' \Wrong='Naples' \Wrong='Florence' \Wrong='Venice'
              \end{Answers}
            \end{Question}
          \end{Problem}",
    )?;
    let p = &textual.problems()[0];
    println!("2 right x C(5,3):        {}", count_variants(p, 0, 3, false));
    println!("... with 4! orderings:   {}", count_variants(p, 0, 3, true));

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/entrance.qbk");
    let bank = parse_bank(&std::fs::read_to_string(path)?)?;
    println!();
    for p in bank.problems() {
        let (plain, ordered) = (count_variants(p, 0, 3, false), count_variants(p, 0, 3, true));
        println!("{:<16} {:>8} {:>10}", p.name, plain.to_string(), ordered.to_string());
    }
    Ok(())
}
