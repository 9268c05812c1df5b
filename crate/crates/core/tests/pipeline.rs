use std::collections::BTreeSet;
use std::path::Path;

use quizforge::assemble::{assemble_test, parse_test_spec, AnswerKey, TestSpec};
use quizforge::bank::{parse_bank, ProblemBank};
use quizforge::emit::{render_key, render_keys, render_test, strip_markup, OutputDialect, RenderOptions};
use quizforge::score::{group_statistics, parse_keys, score_sheet, Mark, ResponseSheet, ScoringRule};

fn data(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)).unwrap()
}

fn entrance() -> (ProblemBank, TestSpec) {
    (parse_bank(&data("entrance.qbk")).unwrap(), parse_test_spec(&data("entrance.tsp")).unwrap())
}

#[test]
fn entrance_spec_has_the_published_shape() {
    let (_, spec) = entrance();
    assert_eq!(spec.groups.len(), 8);
    assert_eq!(spec.question_count(), 20);
    assert!(spec.groups.iter().all(|g| g.answers == 4));
}

#[test]
fn keys_survive_print_and_parse() {
    let (bank, spec) = entrance();
    let (_, keys) = assemble_test(&bank, &spec).unwrap();
    for k in &keys {
        let text = render_key(k);
        assert_eq!(text.lines().count(), 21);
        assert_eq!(parse_keys(&text).unwrap(), [k.clone()]);
    }
    assert_eq!(parse_keys(&render_keys(&keys)).unwrap(), keys);
}

#[test]
fn scrambled_copies_are_permutations_of_the_same_sources() {
    let (bank, mut spec) = entrance();
    spec.copies = 6;
    let (tests, keys) = assemble_test(&bank, &spec).unwrap();
    let mut plain = spec.clone();
    for g in &mut plain.groups {
        g.scramble_answers = false;
        g.scramble_questions = false;
    }
    let (unscrambled, _) = assemble_test(&bank, &plain).unwrap();
    for (t, u) in tests.iter().zip(&unscrambled) {
        let sorted = |t: &quizforge::assemble::TestInstance| {
            let mut v: Vec<(String, String)> =
                t.provenance.iter().map(|p| (p.group.clone(), p.problem.clone())).collect();
            v.sort();
            v
        };
        assert_eq!(sorted(t), sorted(u));
        // within a group the unscrambled order follows the bank
        for g in &plain.groups {
            let members: Vec<&str> = bank.group(&g.group).unwrap().iter().map(|p| p.name.as_str()).collect();
            let picked: Vec<usize> = u
                .provenance
                .iter()
                .filter(|p| p.group == g.group)
                .map(|p| members.iter().position(|m| *m == p.problem).unwrap())
                .collect();
            assert!(picked.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(u.questions.iter().all(|q| q.correct_position == 0));
    }
    let letters = |k: &AnswerKey| k.entries.iter().map(|e| e.letter).collect::<String>();
    let distinct: BTreeSet<String> = keys.iter().map(letters).collect();
    assert_eq!(distinct.len(), keys.len());
}

#[test]
fn key_copy_sheet_is_perfect_and_stats_are_all_right() {
    let (bank, spec) = entrance();
    let (_, keys) = assemble_test(&bank, &spec).unwrap();
    let sheets: Vec<ResponseSheet> = keys.iter().map(|k| ResponseSheet::from_key("s", k)).collect();
    for (s, k) in sheets.iter().zip(&keys) {
        let r = score_sheet(s, k, &ScoringRule::default(), &BTreeSet::new()).unwrap();
        assert_eq!(r.score, 60);
    }
    let stats = group_statistics(&sheets, &keys).unwrap();
    assert_eq!(stats.len(), 8);
    assert!(stats.iter().all(|g| g.n_blank == 0 && g.n_wrong == 0));
    let blanks: Vec<ResponseSheet> = keys
        .iter()
        .map(|k| ResponseSheet { student_id: "b".into(), test_id: k.test_id.clone(), marks: vec![Mark::Blank; 20] })
        .collect();
    assert!(group_statistics(&blanks, &keys).unwrap().iter().all(|g| g.n_blank == g.total()));
}

#[test]
fn documents_show_every_answer_once() {
    let (bank, spec) = entrance();
    let (tests, _) = assemble_test(&bank, &spec).unwrap();
    let t = &tests[0];
    for dialect in OutputDialect::ALL {
        let doc = render_test(t, dialect, RenderOptions::default());
        assert_eq!(doc, render_test(t, dialect, RenderOptions::default()));
        if dialect == OutputDialect::Latex {
            for q in &t.questions {
                for a in &q.answers {
                    assert!(doc.lines().any(|l| l == a.text), "{}", a.text);
                }
            }
        }
        if dialect == OutputDialect::Plain {
            for (n, q) in t.questions.iter().enumerate() {
                let block = doc.split(&format!("\n{}. ", n + 1)).nth(1).unwrap();
                for (i, a) in q.answers.iter().enumerate() {
                    let line = format!("{}) {}", (b'A' + i as u8) as char, strip_markup(&a.text));
                    assert!(block.lines().any(|l| l.trim() == line), "{line}");
                }
            }
        }
    }
}

#[test]
fn mosca_spec_assembles() {
    let bank = parse_bank(&data("mosca.qbk")).unwrap();
    let spec = parse_test_spec(&data("mosca.tsp")).unwrap();
    let (tests, keys) = assemble_test(&bank, &spec).unwrap();
    assert_eq!(tests.len(), 2);
    assert_eq!(keys[0].entries[0].problem, "Mosca");
}
