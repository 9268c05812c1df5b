//! Per-topic right/blank/wrong fractions and the stacked bar chart, on a
//! synthetic cohort shaped like the 2004 entrance test results.
//!
//! Run with `cargo run --example topic_statistics`.

use quizforge::assemble::{AnswerKey, KeyEntry};
use quizforge::score::{group_statistics, render_bar_chart, render_bar_chart_svg, round2, Mark, ResponseSheet};

/// (group, right, blank, wrong) in hundredths.
const TOPICS: [(&str, usize, usize, usize); 8] = [
    ("trigonometry", 27, 50, 23),
    ("geometry", 64, 16, 20),
    ("probability", 36, 36, 28),
    ("text", 63, 22, 15),
    ("existence & inequalities", 25, 47, 28),
    ("algebraic", 62, 32, 6),
    ("analytic geometry", 46, 36, 18),
    ("exp & log", 48, 30, 22),
];

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let key = AnswerKey {
        test_id: "cohort-1".into(),
        entries: TOPICS
            .iter()
            .map(|(g, ..)| KeyEntry { group: g.to_string(), problem: format!("{g} 1"), letter: 'A', choices: 4 })
            .collect(),
    };
    // student i answers topic t right if i < right, blank if i < right + blank
    let sheets: Vec<ResponseSheet> = (0..100)
        .map(|i| ResponseSheet {
            student_id: format!("s{i:03}"),
            test_id: key.test_id.clone(),
            marks: TOPICS
                .iter()
                .map(|&(_, r, b, _)| if i < r { Mark::Letter('A') } else if i < r + b { Mark::Blank } else { Mark::Letter('C') })
                .collect(),
        })
        .collect();

    let stats = group_statistics(&sheets, std::slice::from_ref(&key))?;
    for g in &stats {
        println!("{:<26} {} {} {}", g.group, round2(g.right()), round2(g.blank()), round2(g.wrong()));
    }
    println!();
    print!("{}", render_bar_chart(&stats, 50));
    println!("\nSVG: {} bytes", render_bar_chart_svg(&stats).len());
    Ok(())
}
