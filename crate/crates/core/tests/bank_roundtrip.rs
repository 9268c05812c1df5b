use std::path::Path;

use proptest::prelude::*;
use quizforge::bank::{parse_bank, pretty_print_bank, AnswerPayload};
use quizforge::expr::{parse_expression, render_expression};
use quizforge::rng::QuizRng;

fn pick<'a>(rng: &mut QuizRng, items: &[&'a str]) -> &'a str {
    items[rng.index(items.len())]
}

/// Separator between directives: tidy, or a random mix of blanks and
/// comments.
fn gap(rng: &mut QuizRng, messy: bool) -> String {
    if !messy {
        return "\n".into();
    }
    pick(rng, &["", " ", "\n", "\n\n  ", "\t", " % note\n", "\n% full line\n   "]).to_string()
}

/// Random bank source; `messy` changes only layout, never content.
fn bank_source(seed: u64, messy: bool) -> String {
    let mut rng = QuizRng::new(seed, "bank");
    let mut lay = QuizRng::new(seed, "layout");
    let mut src = String::new();
    let problems = 1 + rng.index(3);
    for pi in 0..problems {
        let group = pick(&mut rng, &["geometry", "default", "exp-log"]);
        src += &format!("\\begin{{Problem}}{{P{pi}}}{{{group}}}");
        let all = ["R", "H", "x_1", "\\alpha", "b"];
        let n_params = rng.index(4);
        let params: Vec<&str> = rng.sample_indices(all.len(), n_params).into_iter().map(|i| all[i]).collect();
        for p in &params {
            src += &gap(&mut lay, messy);
            src += &format!("\\Parameter{{{p}}}{{value of {p}}}");
            src += &gap(&mut lay, messy);
            src += &format!(
                "\\Domain{{{p}}}{{{}}}",
                pick(&mut rng, &["int,1,10", "int,-3,7,2", "real,0.5,4,0.5", "set,2,3.5,9"])
            );
            if rng.index(2) == 0 {
                src += &gap(&mut lay, messy);
                src += &format!("\\Format{{{p}}}='{}'", pick(&mut rng, &["%.2f", "%g", "%5.1e", "%d"]));
            }
            if rng.index(2) == 0 {
                src += &gap(&mut lay, messy);
                src += &format!("\\Cond='{p} > -10'");
            }
        }
        let questions = 1 + rng.index(2);
        for _ in 0..questions {
            src += &gap(&mut lay, messy);
            src += "\\begin{Question}";
            src += &gap(&mut lay, messy);
            let ask = match params.first() {
                Some(p) => format!("Take ${p}=\\Val{{{p}}}$.\n\n  Then compute   $y$."),
                None => "Pick one.".to_string(),
            };
            let pad = if messy { "\n      " } else { "\n" };
            src += &format!("\\begin{{Ask}}{pad}{}{pad}\\end{{Ask}}", ask.replace('\n', pad));
            if params.is_empty() {
                src += &gap(&mut lay, messy);
                src += "\\begin{Answers}";
                if rng.index(2) == 0 {
                    src += "\\Format='(%s)'";
                }
                src += "\\Right='yes' \\Wrong='no' \\Wrong='maybe' \\Wrong='$x^2$'";
                src += "\\end{Answers}";
            } else {
                let p = params[rng.index(params.len())];
                let defs = [format!("\\sqrt{{{p}^2 + 1}}"), format!("2{p} - 1"), format!("\\frac{{{p}}}{{3}}")];
                src += &gap(&mut lay, messy);
                src += &format!("\\Def{{y}}='{}'", defs[rng.index(3)]);
                if rng.index(2) == 0 {
                    src += &gap(&mut lay, messy);
                    src += "\\Cond='y != 0'";
                }
                if rng.index(2) == 0 {
                    src += &gap(&mut lay, messy);
                    src += "\\begin{Solution}\n  $y = \\Expr{y} \\simeq \\FVal{y}$ \\% exact\n\\end{Solution}";
                }
                src += &gap(&mut lay, messy);
                src += "\\begin{Answers}";
                src += &gap(&mut lay, messy);
                src += &format!("\\Format='{}'", pick(&mut rng, &["$y\\simeq %.2f$", "%g", "%s", "$%.1e$ \\%%"]));
                src += &format!("\\Right='y' \\Wrong='{p}' \\Wrong='y + 1' \\Wrong='2y'");
                if rng.index(2) == 0 {
                    src += " \\Wrong='y^{2}'";
                }
                src += "\\end{Answers}";
            }
            src += &gap(&mut lay, messy);
            src += "\\end{Question}";
        }
        src += &gap(&mut lay, messy);
        src += "\\end{Problem}\n";
    }
    src
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pretty_listing_parses_back_to_the_same_bank(seed in any::<u64>()) {
        let src = bank_source(seed, false);
        let bank = parse_bank(&src).map_err(|e| TestCaseError::fail(format!("{e}\n{src}")))?;
        let listing = pretty_print_bank(&bank);
        let back = parse_bank(&listing).map_err(|e| TestCaseError::fail(format!("{e}\n{listing}")))?;
        prop_assert_eq!(&back, &bank);
        prop_assert_eq!(pretty_print_bank(&back), listing);
    }

    #[test]
    fn layout_does_not_change_the_listing(seed in any::<u64>()) {
        let tidy = parse_bank(&bank_source(seed, false)).unwrap();
        let messy_src = bank_source(seed, true);
        let messy = parse_bank(&messy_src).map_err(|e| TestCaseError::fail(format!("{e}\n{messy_src}")))?;
        prop_assert_eq!(pretty_print_bank(&messy), pretty_print_bank(&tidy));
    }
}

#[test]
fn fixture_banks_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("qbk") {
            continue;
        }
        let bank = parse_bank(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse_bank(&pretty_print_bank(&bank)).unwrap(), bank, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 4);
}

#[test]
fn stored_expressions_re_render_to_themselves() {
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/entrance.qbk")).unwrap();
    let bank = parse_bank(&src).unwrap();
    for p in bank.problems() {
        for q in &p.questions {
            let exprs = q.definitions.iter().map(|d| &d.expr).chain(
                q.answers.right.iter().chain(&q.answers.wrong).filter_map(|a| match a {
                    AnswerPayload::Formula(e) => Some(e),
                    AnswerPayload::Text(_) => None,
                }),
            );
            for e in exprs {
                assert_eq!(&parse_expression(&render_expression(e)).unwrap(), e);
            }
        }
    }
}
