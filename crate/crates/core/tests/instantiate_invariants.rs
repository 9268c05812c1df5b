use std::path::Path;

use quizforge::bank::{parse_bank, AnswerPayload, ProblemBank, ProblemDef};
use quizforge::expr::{evaluate, evaluate_condition, format_value, Bindings};
use quizforge::instantiate::{check_answer_collisions, instantiate_with_retries, QuestionInstance};
use quizforge::rng::QuizRng;
use rayon::prelude::*;

const RUNS: u64 = 10_000;

fn fixture(name: &str) -> ProblemBank {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    parse_bank(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn rebind(p: &ProblemDef, qi: usize, inst: &QuestionInstance) -> Bindings {
    let mut b = Bindings::new();
    for param in &p.parameters {
        b.set(param.name.clone(), inst.value(&param.name).unwrap());
    }
    for d in &p.questions[qi].definitions {
        b.define(d.symbol.clone(), d.expr.clone()).unwrap();
    }
    b
}

fn check(p: &ProblemDef, qi: usize, inst: &QuestionInstance) {
    let q = &p.questions[qi];
    let b = rebind(p, qi, inst);
    for c in p.problem_conditions().chain(&q.conditions) {
        assert!(evaluate_condition(c, &b).unwrap(), "{}: {c} violated", p.name);
    }
    assert_eq!(inst.answers.len(), 4);
    assert!(check_answer_collisions(&inst.answer_texts()).is_empty(), "{}: {:?}", p.name, inst.answer_texts());
    assert_eq!(inst.answers.iter().filter(|a| a.correct).count(), 1);
    assert!(inst.answers[inst.correct_position].correct);

    // the right text comes from the same formula and format as everything else
    let right = &inst.answers[inst.correct_position].text;
    let expected: Vec<String> = q
        .answers
        .right
        .iter()
        .map(|r| match r {
            AnswerPayload::Formula(e) => {
                q.answers.present(&format_value(evaluate(e, &b).unwrap(), &q.answers.effective_format()).unwrap())
            }
            AnswerPayload::Text(t) => q.answers.present(t),
        })
        .collect();
    assert!(expected.contains(right), "{}: {right} not in {expected:?}", p.name);
}

#[test]
fn every_fixture_question_holds_its_invariants() {
    let banks = [fixture("mosca.qbk"), fixture("entrance.qbk")];
    let jobs: Vec<(&ProblemDef, usize)> = banks
        .iter()
        .flat_map(|b| b.problems())
        .flat_map(|p| (0..p.questions.len()).map(move |qi| (p, qi)))
        .collect();
    jobs.par_iter().for_each(|&(p, qi)| {
        for seed in 0..RUNS {
            let mut rng = QuizRng::new(seed, format!("inv/{}", p.name));
            let inst = instantiate_with_retries(p, qi, &mut rng, 3).unwrap();
            check(p, qi, &inst);
        }
    });
}

#[test]
fn identical_seeds_give_identical_instances() {
    let bank = fixture("entrance.qbk");
    let run = |seed| -> Vec<QuestionInstance> {
        let mut rng = QuizRng::new(seed, "repro");
        bank.problems().iter().map(|p| instantiate_with_retries(p, 0, &mut rng, 3).unwrap()).collect()
    };
    assert_eq!(run(5), run(5));
    assert_ne!(run(5), run(6));
}
