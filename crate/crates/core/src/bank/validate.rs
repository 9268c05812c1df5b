use std::collections::BTreeSet;
use std::fmt;

use crate::expr::{Bindings, Symbol};
use crate::instantiate::{sample_question_bindings, InstantiateError};
use crate::rng::QuizRng;

use super::{AnswerKind, AnswerPayload, ProblemBank, ProblemDef, QuestionDef};

/// Parameter draws used to decide whether conditions can be met.
pub const PROBE_ATTEMPTS: usize = crate::instantiate::PARAMETER_ATTEMPTS;

/// Fewest wrong answers a question may declare.
pub const MIN_WRONG: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub problem: String,
    /// 1-based question number, if the finding is about one question.
    pub question: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.question {
            Some(q) => write!(f, "{}, question {}: {}", self.problem, q, self.message),
            None => write!(f, "{}: {}", self.problem, self.message),
        }
    }
}

/// Checks a bank for problems a parse cannot catch: undeclared symbols,
/// short wrong-answer lists, definition cycles and conditions that no
/// parameter assignment satisfies. The probe is seeded, so the result is
/// deterministic.
pub fn validate_bank(bank: &ProblemBank) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for p in bank.problems() {
        validate_problem(p, &mut out);
    }
    out
}

fn names(set: &BTreeSet<Symbol>) -> String {
    set.iter().map(Symbol::to_string).collect::<Vec<_>>().join(", ")
}

fn validate_problem(p: &ProblemDef, out: &mut Vec<Diagnostic>) {
    let diag = |question: Option<usize>, message: String| Diagnostic { problem: p.name.clone(), question, message };
    let params: BTreeSet<Symbol> = p.parameters.iter().map(|x| x.name.clone()).collect();
    if p.questions.is_empty() {
        out.push(diag(None, "problem has no questions".into()));
    }

    // a problem-level condition may use a derived symbol only if every question defines it
    let everywhere: BTreeSet<Symbol> = p
        .questions
        .iter()
        .map(|q| q.definitions.iter().map(|d| d.symbol.clone()).collect::<BTreeSet<_>>())
        .reduce(|a, b| a.intersection(&b).cloned().collect())
        .unwrap_or_default();
    for c in p.problem_conditions() {
        let missing: BTreeSet<Symbol> =
            c.symbols().into_iter().filter(|s| !params.contains(s) && !everywhere.contains(s)).collect();
        if !missing.is_empty() {
            out.push(diag(None, format!("condition '{c}' uses undeclared {}", names(&missing))));
        }
    }

    for (qi, q) in p.questions.iter().enumerate() {
        let at = Some(qi + 1);
        let before = out.len();
        validate_question(q, &params, &mut |m| out.push(diag(at, m)));
        if out.len() == before && q.answers.kind == AnswerKind::Numerical {
            let mut rng = QuizRng::new(0, format!("validate/{}/{}", p.name, qi));
            match sample_question_bindings(p, q, &mut rng) {
                Ok(_) => {}
                Err(InstantiateError::Unsatisfiable { condition, .. }) => out.push(diag(
                    at,
                    format!("unsatisfiable conditions (no assignment in {PROBE_ATTEMPTS} draws; most often violated: {condition})"),
                )),
                Err(e) => out.push(diag(at, e.to_string())),
            }
        }
    }
}

fn validate_question(q: &QuestionDef, params: &BTreeSet<Symbol>, push: &mut dyn FnMut(String)) {
    let mut known = params.clone();
    let mut b = Bindings::new();
    for d in &q.definitions {
        known.insert(d.symbol.clone());
        if let Err(e) = b.define(d.symbol.clone(), d.expr.clone()) {
            push(format!("definition of {}: {e}", d.symbol));
        }
    }
    let undeclared = |set: BTreeSet<Symbol>| -> BTreeSet<Symbol> { set.into_iter().filter(|s| !known.contains(s) && !is_pi(s)).collect() };

    for d in &q.definitions {
        let missing = undeclared(d.expr.symbols());
        if !missing.is_empty() {
            push(format!("definition of {} uses undeclared {}", d.symbol, names(&missing)));
        }
    }
    for c in &q.conditions {
        let missing = undeclared(c.symbols());
        if !missing.is_empty() {
            push(format!("condition '{c}' uses undeclared {}", names(&missing)));
        }
    }
    let a = &q.answers;
    for payload in a.right.iter().chain(&a.wrong) {
        if let AnswerPayload::Formula(e) = payload {
            let missing = undeclared(e.symbols());
            if !missing.is_empty() {
                push(format!("answer '{e}' uses undeclared {}", names(&missing)));
            }
        }
    }
    if a.right.is_empty() {
        push("no right answer declared".into());
    }
    if a.wrong.len() < MIN_WRONG {
        push(format!(
            "{} wrong answers declared; at least {MIN_WRONG} are required to sample one right and three wrong",
            a.wrong.len()
        ));
    }
    if a.kind == AnswerKind::Textual && a.number_format.is_some() {
        push("numeric answer format on a textual question".into());
    }
    let slots = a.presentation.matches("%s").count() - a.presentation.matches("%%s").count();
    if slots != 1 {
        push(format!("answer format has {slots} %s slots, expected exactly one"));
    }
}

fn is_pi(s: &Symbol) -> bool {
    s.base() == "pi" && s.subscript().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bank::parse_bank;

    const MOSCA: &str = r"\begin{Problem}{Mosca}
  \Parameter{R}{raggio del cilindro} \Cond='R > 0' \Domain{R}{int,1,10}
  \Parameter{H}{altezza del cilindro} \Cond='H > 0' \Domain{H}{int,1,10}
  \begin{Question}
    \begin{Ask}$R=\Val{R}$ $H=\Val{H}$\end{Ask}
    \Def{d}='\sqrt{4 R^2 + H^2}'
    \begin{Answers}
      \Format='$d\simeq %.2f$'
      \Right='d' \Wrong='\sqrt{R^2 + H^2}' \Wrong='R' \Wrong='2R' \Wrong='0.35d' \Wrong='0.45d'
    \end{Answers}
  \end{Question}
\end{Problem}";

    #[test]
    fn mosca_is_clean() {
        assert_eq!(validate_bank(&parse_bank(MOSCA).unwrap()), []);
    }

    #[test]
    fn forced_contradiction() {
        let src = MOSCA.replace(r"\Domain{R}{int,1,10}", r"\Domain{R}{set,-1}");
        let d = validate_bank(&parse_bank(&src).unwrap());
        assert_eq!(d.len(), 1);
        assert!(d[0].message.starts_with("unsatisfiable conditions"), "{}", d[0]);
        assert!(d[0].message.contains("R > 0"));
    }

    #[test]
    fn two_wrong_answers() {
        let src = r"\begin{Problem}{T}\begin{Question}\begin{Answers}\Right='a' \Wrong='b' \Wrong='c'\end{Answers}\end{Question}\end{Problem}";
        let d = validate_bank(&parse_bank(src).unwrap());
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("at least 3"), "{}", d[0]);
        assert_eq!(d[0].question, Some(1));
    }

    #[test]
    fn undeclared_symbols() {
        let src = MOSCA.replace(r"\Wrong='R'", r"\Wrong='q'");
        let d = validate_bank(&parse_bank(&src).unwrap());
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("undeclared q"), "{}", d[0]);
    }

    #[test]
    fn deterministic() {
        let src = MOSCA.replace(r"\Cond='H > 0'", r"\Cond='H > 9.5'");
        let b = parse_bank(&src).unwrap();
        assert_eq!(validate_bank(&b), validate_bank(&b));
        assert_eq!(validate_bank(&b), []);
    }
}
