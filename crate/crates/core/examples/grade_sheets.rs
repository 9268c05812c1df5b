//! Grade response sheets: the 3/-1/0 rule, the pass threshold and granted
//! positions.
//!
//! Run with `cargo run --example grade_sheets`.

use std::collections::BTreeSet;
use std::path::Path;

use quizforge::assemble::{assemble_test, parse_test_spec};
use quizforge::bank::parse_bank;
use quizforge::score::{parse_responses, render_reports, render_responses, score_sheets, Mark, ResponseSheet, ScoringRule};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let bank = parse_bank(&std::fs::read_to_string(data.join("entrance.qbk"))?)?;
    let spec = parse_test_spec(&std::fs::read_to_string(data.join("entrance.tsp"))?)?;
    let (_, keys) = assemble_test(&bank, &spec)?;
    let k = &keys[0];

    let perfect = ResponseSheet::from_key("perfect", k);
    let blank = ResponseSheet { student_id: "blank".into(), test_id: k.test_id.clone(), marks: vec![Mark::Blank; 20] };
    let wrong = ResponseSheet {
        student_id: "wrong".into(),
        test_id: k.test_id.clone(),
        marks: k.entries.iter().map(|e| Mark::Letter(if e.letter == 'A' { 'B' } else { 'A' })).collect(),
    };
    // ten right and ten blank lands exactly on the threshold
    let mut border = perfect.clone();
    border.student_id = "border".into();
    border.marks[10..].fill(Mark::Blank);

    let rsp = render_responses(&[perfect, blank, wrong, border]);
    print!("{rsp}\n");
    let sheets = parse_responses(&rsp)?;

    let rule = ScoringRule::default();
    print!("{}", render_reports(&score_sheets(&sheets, &keys, &rule, &BTreeSet::new())?));

    // positions 7 and 12 credited to everybody
    let granted: BTreeSet<usize> = [7, 12].into();
    println!("\nwith positions 7 and 12 granted:");
    print!("{}", render_reports(&score_sheets(&sheets, &keys, &rule, &granted)?));
    Ok(())
}
