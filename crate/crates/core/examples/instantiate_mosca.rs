//! Sample parameters and build concrete questions, including a printed-value
//! collision between two answers.
//!
//! Run with `cargo run --example instantiate_mosca`.

use std::path::Path;

use quizforge::bank::parse_bank;
use quizforge::instantiate::{instantiate_question, instantiate_with_retries, sample_question_bindings};
use quizforge::rng::QuizRng;

fn load(name: &str) -> Result<quizforge::bank::ProblemBank, Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    Ok(parse_bank(&std::fs::read_to_string(path)?)?)
}

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    // R=3 and H=4 forced through singleton domains
    let bank = load("mosca-3-4.qbk")?;
    let p = &bank.problems()[0];
    let mut rng = QuizRng::new(1, "example");
    let b = sample_question_bindings(p, &p.questions[0], &mut rng)?;
    let inst = instantiate_question(p, 0, &b, &mut rng, 5)?;
    println!("{}\n", inst.statement);
    for a in &inst.answers {
        println!("  [{}] {}", if a.correct { "x" } else { " " }, a.text);
    }
    println!("\n{}\n", inst.solution);

    // random parameters: every draw satisfies the conditions
    let bank = load("mosca.qbk")?;
    let p = &bank.problems()[0];
    for seed in 0..3 {
        let inst = instantiate_with_retries(p, 0, &mut QuizRng::new(seed, "example"), 3)?;
        let values: Vec<String> = inst.values.iter().map(|(s, v)| format!("{s}={v:.4}")).collect();
        println!("seed {seed}: {} -> {:?}", values.join(" "), inst.answer_texts());
    }

    // at %.0f, d = sqrt(4.01) and 2R = 2 both print as "2"
    let bank = load("mosca-collision.qbk")?;
    let p = &bank.problems()[0];
    for seed in 0..20 {
        let inst = instantiate_with_retries(p, 0, &mut QuizRng::new(seed, "collide"), 1)?;
        if let Some(r) = inst.rejected.first() {
            println!("\nseed {seed}: rejected {} (printed {:?}), kept {:?}", r.source, r.text, inst.answer_texts());
            break;
        }
    }
    match instantiate_with_retries(p, 0, &mut QuizRng::new(0, "collide"), 3) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("three distractors: {e}"),
    }
    Ok(())
}
