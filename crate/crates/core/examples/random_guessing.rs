//! Expected score and spread of a student who guesses every answer.
//!
//! Run with `cargo run --example random_guessing`.

use quizforge::score::{random_guess_simulation, ScoringRule};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rule = ScoringRule::default();
    let g = random_guess_simulation(&rule, 20, 4, 100_000, 2004);
    println!("20 questions, 4 choices, +3/-1/0");
    println!("  closed form  mean {:+.4}  sd {:.4}", g.closed_form_mean, g.closed_form_sd);
    println!("  simulated    mean {:+.4}  sd {:.4}", g.mean, g.sd);

    // a harsher penalty makes guessing a losing strategy
    let harsh = ScoringRule::new(3, -2, 0, 30)?;
    let h = random_guess_simulation(&harsh, 20, 4, 100_000, 2004);
    println!("with -2 per wrong answer: mean {:+.4}, closed form {:+.4}", h.mean, h.closed_form_mean);
    Ok(())
}
