//! Compare two sittings of a test person by person.
//!
//! Run with `cargo run --example cohort`.

use quizforge::score::{cohort_statistics, ScoreReport};

fn report(id: usize, test: &str, passed: bool) -> ScoreReport {
    ScoreReport {
        student_id: format!("p{id:04}"),
        test_id: test.into(),
        n_right: 0,
        n_wrong: 0,
        n_blank: 0,
        score: if passed { 30 } else { 0 },
        passed,
        per_question: Vec::new(),
    }
}

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    // persons 0..540 sat the first test, 317..838 the second
    let first: Vec<ScoreReport> = (0..540).map(|i| report(i, "first", i % 2 == 0)).collect();
    let second: Vec<ScoreReport> = (317..838).map(|i| report(i, "second", i % 5 == 0)).collect();
    print!("{}", cohort_statistics(&first, &second)?);

    // subscriptions: 1247 in total from 957 persons when 290 subscribed twice
    let a: Vec<ScoreReport> = (0..623).map(|i| report(i, "first", false)).collect();
    let b: Vec<ScoreReport> = (333..957).map(|i| report(i, "second", false)).collect();
    let c = cohort_statistics(&a, &b)?;
    println!("\n{} subscriptions, {} both, {} distinct", a.len() + b.len(), c.both, c.distinct);

    let dup = [report(1, "first", true), report(1, "first", false)];
    println!("{:?}", cohort_statistics(&dup, &[]).unwrap_err());
    Ok(())
}
