//! Turning problem definitions into concrete questions.
//!
//! Parameters are drawn uniformly from their domains and rejected until all
//! conditions hold. Answers are computed from their formulas, formatted, and
//! only then compared: two values that differ internally but print the same
//! are a collision, and the offending distractor is replaced.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bank::prose::{placeholders, PlaceholderKind};
use crate::bank::{AnswerPayload, AnswerSpec, ProblemDef, QuestionDef};
use crate::expr::{
    evaluate, evaluate_condition, format_value, Bindings, Condition, EvalError, FormatError,
    FormatSpec, Symbol,
};
use crate::rng::QuizRng;

/// Parameter draws tried before conditions are declared unsatisfiable.
pub const PARAMETER_ATTEMPTS: usize = 1000;
/// Whole-question retries (fresh parameters) after an unresolvable collision.
pub const QUESTION_RETRIES: usize = 100;
/// Largest parameter grid counted exactly by [`count_variants`].
pub const EXACT_GRID_LIMIT: u128 = 1_000_000;
/// Assignments drawn when the grid is too large to enumerate.
pub const COUNT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstantiateError {
    #[error("problem {problem:?}: no parameters satisfy the conditions after {attempts} attempts (most often violated: {condition})")]
    Unsatisfiable { problem: String, attempts: usize, condition: String },
    #[error("problem {problem:?}: {context}: {error}")]
    Eval { problem: String, context: String, error: EvalError },
    #[error("problem {problem:?}: {error}")]
    Format { problem: String, error: FormatError },
    #[error("problem {problem:?}, question {question}: {needed} wrong answers requested but only {available} declared")]
    NotEnoughWrong { problem: String, question: usize, needed: usize, available: usize },
    #[error("problem {problem:?}, question {question}: only {found} of {needed} wrong answers print distinctly")]
    Collision { problem: String, question: usize, needed: usize, found: usize },
    #[error("problem {problem:?}, question {question}: gave up after {retries} parameter re-draws; last failure: {last}")]
    RetriesExhausted { problem: String, question: usize, retries: usize, last: Box<InstantiateError> },
}

impl InstantiateError {
    /// Failures that fresh parameters might cure.
    fn retryable(&self) -> bool {
        matches!(
            self,
            InstantiateError::Collision { .. }
                | InstantiateError::Eval { error: EvalError::Domain(_), .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnswerOption {
    pub text: String,
    pub correct: bool,
}

/// A distractor dropped because its printed text duplicated another answer.
#[derive(Clone, Debug, PartialEq)]
pub struct RejectedAnswer {
    /// The wrong-answer payload as written in the bank.
    pub source: String,
    pub text: String,
}

/// One concrete question.
#[derive(Clone, Debug, PartialEq)]
pub struct QuestionInstance {
    pub problem: String,
    pub group: String,
    /// 0-based index of the question inside its problem.
    pub question_index: usize,
    /// Parameter values, then derived values, in declaration order.
    pub values: Vec<(Symbol, f64)>,
    pub statement: String,
    pub solution: String,
    pub answers: Vec<AnswerOption>,
    pub correct_position: usize,
    pub rejected: Vec<RejectedAnswer>,
}

impl QuestionInstance {
    pub fn value(&self, sym: &Symbol) -> Option<f64> {
        self.values.iter().find(|(s, _)| s == sym).map(|(_, v)| *v)
    }

    /// Reorders the answers: new position `i` shows the old answer
    /// `order[i]`. `order` must be a permutation.
    pub fn reorder_answers(&mut self, order: &[usize]) {
        assert_eq!(order.len(), self.answers.len());
        let old = std::mem::take(&mut self.answers);
        self.answers = order.iter().map(|&i| old[i].clone()).collect();
        self.correct_position = self.answers.iter().position(|a| a.correct).expect("one correct answer");
    }

    pub fn answer_texts(&self) -> Vec<&str> {
        self.answers.iter().map(|a| a.text.as_str()).collect()
    }
}

/// All index pairs `(i, j)`, `i < j`, whose texts are byte-identical.
pub fn check_answer_collisions<S: AsRef<str>>(texts: &[S]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..texts.len() {
        for j in i + 1..texts.len() {
            if texts[i].as_ref() == texts[j].as_ref() {
                out.push((i, j));
            }
        }
    }
    out
}

fn eval_error(problem: &ProblemDef, context: impl Into<String>, error: EvalError) -> InstantiateError {
    InstantiateError::Eval { problem: problem.name.clone(), context: context.into(), error }
}

fn install(problem: &ProblemDef, question: &QuestionDef, b: &mut Bindings) -> Result<(), InstantiateError> {
    for d in &question.definitions {
        b.define(d.symbol.clone(), d.expr.clone())
            .map_err(|e| eval_error(problem, format!("definition of {}", d.symbol), e))?;
    }
    Ok(())
}

fn draw(problem: &ProblemDef, rng: &mut QuizRng) -> Bindings {
    let mut b = Bindings::new();
    for p in &problem.parameters {
        let v = p.domain.value(rng.index(p.domain.len()));
        b.set(p.name.clone(), v);
    }
    b
}

fn conditions_for<'a>(problem: &'a ProblemDef, question: Option<&'a QuestionDef>) -> Vec<&'a Condition> {
    match question {
        Some(q) => problem.problem_conditions().chain(q.conditions.iter()).collect(),
        None => {
            let params: Vec<&Symbol> = problem.parameters.iter().map(|p| &p.name).collect();
            problem
                .problem_conditions()
                .filter(|c| c.symbols().iter().all(|s| params.contains(&s)))
                .collect()
        }
    }
}

fn sample(
    problem: &ProblemDef,
    question: Option<&QuestionDef>,
    rng: &mut QuizRng,
) -> Result<Bindings, InstantiateError> {
    let conditions = conditions_for(problem, question);
    let mut violations = vec![0usize; conditions.len()];
    for _ in 0..PARAMETER_ATTEMPTS {
        let mut b = draw(problem, rng);
        if let Some(q) = question {
            install(problem, q, &mut b)?;
        }
        let mut ok = true;
        for (i, c) in conditions.iter().enumerate() {
            match evaluate_condition(c, &b) {
                Ok(true) => {}
                Ok(false) | Err(EvalError::Domain(_)) => {
                    violations[i] += 1;
                    ok = false;
                }
                Err(e) => return Err(eval_error(problem, format!("condition {c}"), e)),
            }
        }
        if ok {
            return Ok(b);
        }
    }
    // ties go to the earliest declared condition
    let worst = (0..conditions.len()).rev().max_by_key(|&i| violations[i]);
    Err(InstantiateError::Unsatisfiable {
        problem: problem.name.clone(),
        attempts: PARAMETER_ATTEMPTS,
        condition: worst.map_or_else(String::new, |i| conditions[i].to_string()),
    })
}

/// Draws parameters uniformly from their domains until every parameter-only
/// condition holds.
pub fn sample_parameters(problem: &ProblemDef, rng: &mut QuizRng) -> Result<Bindings, InstantiateError> {
    sample(problem, None, rng)
}

/// Like [`sample_parameters`], but also installs the question's definitions
/// and enforces conditions on derived quantities.
pub fn sample_question_bindings(
    problem: &ProblemDef,
    question: &QuestionDef,
    rng: &mut QuizRng,
) -> Result<Bindings, InstantiateError> {
    sample(problem, Some(question), rng)
}

fn symbol_format(problem: &ProblemDef, question: &QuestionDef, sym: &Symbol) -> FormatSpec {
    let declared = match problem.parameter(sym) {
        Some(p) => p.format.clone(),
        None => question.definition(sym).and_then(|d| d.format.clone()),
    };
    declared.unwrap_or_else(FormatSpec::general)
}

/// Replaces `\Val`, `\FVal` and `\Expr` placeholders in `text`.
pub fn substitute(
    problem: &ProblemDef,
    question: &QuestionDef,
    text: &str,
    b: &Bindings,
) -> Result<String, InstantiateError> {
    let found = placeholders(text).map_err(|(_, e)| InstantiateError::Eval {
        problem: problem.name.clone(),
        context: format!("placeholder syntax: {e}"),
        error: EvalError::Domain("unreadable placeholder".into()),
    })?;
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for p in found {
        out.push_str(&text[last..p.span.start]);
        match p.kind {
            PlaceholderKind::Val | PlaceholderKind::FVal => {
                let v = b.get(&p.symbol).map_err(|e| eval_error(problem, format!("value of {}", p.symbol), e))?;
                let spec = symbol_format(problem, question, &p.symbol);
                let s = format_value(v, &spec)
                    .map_err(|error| InstantiateError::Format { problem: problem.name.clone(), error })?;
                out.push_str(&s);
            }
            PlaceholderKind::Expr => match question.definition(&p.symbol) {
                Some(d) => out.push_str(&d.expr.to_string()),
                None => out.push_str(&p.symbol.to_string()),
            },
        }
        last = p.span.end;
    }
    out.push_str(&text[last..]);
    Ok(out)
}

/// Printed text of one answer payload.
pub fn answer_text(
    problem: &ProblemDef,
    spec: &AnswerSpec,
    payload: &AnswerPayload,
    b: &Bindings,
) -> Result<String, InstantiateError> {
    match payload {
        AnswerPayload::Text(t) => Ok(spec.present(t)),
        AnswerPayload::Formula(e) => {
            let v = evaluate(e, b).map_err(|err| eval_error(problem, format!("answer {e}"), err))?;
            let s = format_value(v, &spec.effective_format())
                .map_err(|error| InstantiateError::Format { problem: problem.name.clone(), error })?;
            Ok(spec.present(&s))
        }
    }
}

/// Builds one question from already sampled bindings: one right answer and
/// `n_wrong` distinct wrong answers, right answer first, wrong answers in
/// draw order. Distractors whose printed text duplicates an accepted answer
/// are dropped and replaced from the remaining pool.
pub fn instantiate_question(
    problem: &ProblemDef,
    question_index: usize,
    b: &Bindings,
    rng: &mut QuizRng,
    n_wrong: usize,
) -> Result<QuestionInstance, InstantiateError> {
    let q = &problem.questions[question_index];
    let spec = &q.answers;
    if n_wrong > spec.wrong.len() || spec.right.is_empty() {
        return Err(InstantiateError::NotEnoughWrong {
            problem: problem.name.clone(),
            question: question_index + 1,
            needed: n_wrong,
            available: spec.wrong.len(),
        });
    }
    let right = &spec.right[rng.index(spec.right.len())];
    let mut texts = vec![answer_text(problem, spec, right, b)?];
    let mut rejected = Vec::new();
    for i in rng.sample_indices(spec.wrong.len(), spec.wrong.len()) {
        if texts.len() == n_wrong + 1 {
            break;
        }
        let payload = &spec.wrong[i];
        let text = answer_text(problem, spec, payload, b)?;
        texts.push(text);
        if !check_answer_collisions(&texts).is_empty() {
            let text = texts.pop().unwrap();
            rejected.push(RejectedAnswer { source: payload.to_string(), text });
        }
    }
    if texts.len() < n_wrong + 1 {
        return Err(InstantiateError::Collision {
            problem: problem.name.clone(),
            question: question_index + 1,
            needed: n_wrong,
            found: texts.len() - 1,
        });
    }

    let mut values = Vec::new();
    for s in problem.parameters.iter().map(|p| &p.name).chain(q.definitions.iter().map(|d| &d.symbol)) {
        let v = b.get(s).map_err(|e| eval_error(problem, format!("value of {s}"), e))?;
        values.push((s.clone(), v));
    }
    Ok(QuestionInstance {
        problem: problem.name.clone(),
        group: problem.group.clone(),
        question_index,
        values,
        statement: substitute(problem, q, &q.ask, b)?,
        solution: substitute(problem, q, &q.solution, b)?,
        answers: texts
            .into_iter()
            .enumerate()
            .map(|(i, text)| AnswerOption { text, correct: i == 0 })
            .collect(),
        correct_position: 0,
        rejected,
    })
}

/// Samples parameters and instantiates a question, re-drawing parameters up
/// to [`QUESTION_RETRIES`] times when the distractor pool cannot supply
/// enough distinct printed answers.
pub fn instantiate_with_retries(
    problem: &ProblemDef,
    question_index: usize,
    rng: &mut QuizRng,
    n_wrong: usize,
) -> Result<QuestionInstance, InstantiateError> {
    let q = &problem.questions[question_index];
    let mut last = None;
    for _ in 0..QUESTION_RETRIES {
        let b = sample_question_bindings(problem, q, rng)?;
        match instantiate_question(problem, question_index, &b, rng, n_wrong) {
            Ok(inst) => return Ok(inst),
            Err(e) if e.retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(InstantiateError::RetriesExhausted {
        problem: problem.name.clone(),
        question: question_index + 1,
        retries: QUESTION_RETRIES,
        last: Box::new(last.expect("at least one attempt")),
    })
}

/// Size of the variant space of one question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantCount {
    Exact(u64),
    /// The grid was too large to enumerate; counted over sampled assignments.
    AtLeast(u64),
    /// More than `2^63 - 1`.
    Overflow,
}

impl std::fmt::Display for VariantCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VariantCount::Exact(n) => write!(f, "{n}"),
            VariantCount::AtLeast(n) => write!(f, ">= {n}"),
            VariantCount::Overflow => f.write_str(">= 2^63"),
        }
    }
}

/// Number of `k`-subsets picking at most one item per group, where
/// `sizes[g]` items share group `g`: the elementary symmetric polynomial
/// `e_k(sizes)`.
fn distinct_subsets(sizes: &[u128], k: usize) -> u128 {
    let mut e = vec![0u128; k + 1];
    e[0] = 1;
    for &c in sizes {
        for j in (1..=k).rev() {
            e[j] = e[j].saturating_add(e[j - 1].saturating_mul(c));
        }
    }
    e[k]
}

/// Variants contributed by one parameter assignment, or `None` when the
/// assignment violates a condition.
fn assignment_variants(
    problem: &ProblemDef,
    q: &QuestionDef,
    conditions: &[&Condition],
    b: &mut Bindings,
    n_wrong: usize,
) -> Option<u128> {
    install(problem, q, b).ok()?;
    for c in conditions {
        if !evaluate_condition(c, b).unwrap_or(false) {
            return None;
        }
    }
    let spec = &q.answers;
    let wrong: Vec<String> = spec.wrong.iter().filter_map(|w| answer_text(problem, spec, w, b).ok()).collect();
    let mut total = 0u128;
    for r in &spec.right {
        let Ok(right) = answer_text(problem, spec, r, b) else { continue };
        let mut groups: BTreeMap<&str, u128> = BTreeMap::new();
        for w in wrong.iter().filter(|w| **w != right) {
            *groups.entry(w).or_default() += 1;
        }
        let sizes: Vec<u128> = groups.into_values().collect();
        total = total.saturating_add(distinct_subsets(&sizes, n_wrong));
    }
    Some(total)
}

/// Counts the distinct versions of a question: satisfying parameter
/// assignments times right-answer choices times distractor subsets with
/// pairwise distinct printed texts, times `(n_wrong + 1)!` orderings when
/// `include_order` is set.
pub fn count_variants(
    problem: &ProblemDef,
    question_index: usize,
    n_wrong: usize,
    include_order: bool,
) -> VariantCount {
    let q = &problem.questions[question_index];
    if n_wrong > q.answers.wrong.len() {
        return VariantCount::Exact(0);
    }
    let conditions = conditions_for(problem, Some(q));
    let sizes: Vec<usize> = problem.parameters.iter().map(|p| p.domain.len()).collect();
    let grid = sizes.iter().try_fold(1u128, |acc, &n| acc.checked_mul(n as u128));
    let exact = matches!(grid, Some(g) if g <= EXACT_GRID_LIMIT);

    let mut total = 0u128;
    if exact {
        let grid = grid.unwrap() as usize;
        for mut idx in 0..grid {
            let mut b = Bindings::new();
            for (p, &n) in problem.parameters.iter().zip(&sizes) {
                b.set(p.name.clone(), p.domain.value(idx % n));
                idx /= n;
            }
            if let Some(n) = assignment_variants(problem, q, &conditions, &mut b, n_wrong) {
                total = total.saturating_add(n);
            }
        }
    } else {
        let mut rng = QuizRng::new(0, format!("count/{}/{}", problem.name, question_index));
        let mut seen = std::collections::HashSet::new();
        for _ in 0..COUNT_SAMPLES {
            let picks: Vec<usize> = sizes.iter().map(|&n| rng.index(n)).collect();
            if !seen.insert(picks.clone()) {
                continue;
            }
            let mut b = Bindings::new();
            for (p, &i) in problem.parameters.iter().zip(&picks) {
                b.set(p.name.clone(), p.domain.value(i));
            }
            if let Some(n) = assignment_variants(problem, q, &conditions, &mut b, n_wrong) {
                total = total.saturating_add(n);
            }
        }
    }
    if include_order {
        for k in 2..=(n_wrong as u128 + 1) {
            total = total.saturating_mul(k);
        }
    }
    match u64::try_from(total) {
        Ok(n) if n <= i64::MAX as u64 => {
            if exact {
                VariantCount::Exact(n)
            } else {
                VariantCount::AtLeast(n)
            }
        }
        _ => VariantCount::Overflow,
    }
}
