//! Test specifications, scrambled copies and answer keys.
//!
//! A test specification (`.tsp`) is line oriented; `#` starts a comment:
//!
//! ```text
//! test entrance-2004
//! seed 42
//! copies 4
//! group geometry questions 3 answers 4 scramble_answers true scramble_questions true
//! group "existence & inequalities" questions 2 answers 4
//! ```
//!
//! `seed` defaults to 0, `copies` to 1, `answers` to 4 and both scramble
//! flags to false. Group labels containing spaces are double-quoted.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::bank::ProblemBank;
use crate::instantiate::{instantiate_with_retries, InstantiateError, QuestionInstance};
use crate::rng::QuizRng;

/// Letters available for answers, so at most 26 answers per question.
pub const LETTERS: &str = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRule {
    pub group: String,
    pub questions: usize,
    pub answers: usize,
    pub scramble_answers: bool,
    pub scramble_questions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestSpec {
    pub name: String,
    pub seed: u64,
    pub copies: usize,
    pub groups: Vec<GroupRule>,
}

impl TestSpec {
    pub fn question_count(&self) -> usize {
        self.groups.iter().map(|g| g.questions).sum()
    }

    /// `name-1`, `name-2`, ...
    pub fn test_id(&self, copy: usize) -> String {
        format!("{}-{}", self.name, copy)
    }
}

impl fmt::Display for TestSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "test {}", self.name)?;
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "copies {}", self.copies)?;
        for g in &self.groups {
            let label = if g.group.contains(char::is_whitespace) || g.group.is_empty() {
                format!("\"{}\"", g.group)
            } else {
                g.group.clone()
            };
            writeln!(
                f,
                "group {label} questions {} answers {} scramble_answers {} scramble_questions {}",
                g.questions, g.answers, g.scramble_answers, g.scramble_questions
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub message: String,
}

fn tokens(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut t = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(c) => t.push(c),
                    None => return Err("unterminated quoted label".into()),
                }
            }
            out.push(t);
        } else {
            let mut t = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                t.push(c);
                chars.next();
            }
            out.push(t);
        }
    }
    Ok(out)
}

fn count(key: &str, value: Option<&String>) -> Result<usize, String> {
    let v = value.ok_or_else(|| format!("`{key}` needs a value"))?;
    match v.parse::<i64>() {
        Ok(n) if n > 0 => Ok(n as usize),
        Ok(n) => Err(format!("`{key}` must be positive, got {n}")),
        Err(_) => Err(format!("`{key}` expects an integer, got {v:?}")),
    }
}

fn flag(key: &str, value: Option<&String>) -> Result<bool, String> {
    match value.map(String::as_str) {
        Some("true") => Ok(true),
        Some("false") => Ok(false),
        Some(v) => Err(format!("`{key}` expects true or false, got {v:?}")),
        None => Err(format!("`{key}` needs a value")),
    }
}

fn group_rule(toks: &[String]) -> Result<GroupRule, String> {
    let group = toks.first().ok_or("`group` needs a label")?.clone();
    let (mut questions, mut answers) = (None, 4);
    let (mut scramble_answers, mut scramble_questions) = (false, false);
    let mut rest = toks[1..].iter();
    while let Some(key) = rest.next() {
        let value = rest.next();
        match key.as_str() {
            "questions" => questions = Some(count(key, value)?),
            "answers" => answers = count(key, value)?,
            "scramble_answers" => scramble_answers = flag(key, value)?,
            "scramble_questions" => scramble_questions = flag(key, value)?,
            other => return Err(format!("unknown group option `{other}`")),
        }
    }
    if answers < 2 {
        return Err(format!("`answers` must be at least 2, got {answers}"));
    }
    if answers > LETTERS.len() {
        return Err(format!("`answers` must be at most {}, got {answers}", LETTERS.len()));
    }
    Ok(GroupRule {
        group,
        questions: questions.ok_or("group rule needs `questions`")?,
        answers,
        scramble_answers,
        scramble_questions,
    })
}

pub fn parse_test_spec(text: &str) -> Result<TestSpec, SpecError> {
    let mut name = None;
    let mut seed = None;
    let mut copies = None;
    let mut groups: Vec<GroupRule> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| SpecError { line, message };
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body).map_err(err)?;
        let Some((key, args)) = toks.split_first() else { continue };
        let single = |what: &str| -> Result<&String, SpecError> {
            match args {
                [v] => Ok(v),
                _ => Err(err(format!("`{what}` takes exactly one value"))),
            }
        };
        let once = |set: bool| if set { Err(err(format!("`{key}` given twice"))) } else { Ok(()) };
        match key.as_str() {
            "test" => {
                once(name.is_some())?;
                name = Some(single("test")?.clone());
            }
            "seed" => {
                once(seed.is_some())?;
                let v = single("seed")?;
                seed = Some(v.parse::<u64>().map_err(|_| err(format!("`seed` expects an unsigned integer, got {v:?}")))?);
            }
            "copies" => {
                once(copies.is_some())?;
                copies = Some(count("copies", Some(single("copies")?)).map_err(err)?);
            }
            "group" => {
                let rule = group_rule(args).map_err(err)?;
                if groups.iter().any(|g| g.group == rule.group) {
                    return Err(err(format!("group {:?} listed twice", rule.group)));
                }
                groups.push(rule);
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let name = name.ok_or(SpecError { line: 0, message: "missing `test` name".into() })?;
    Ok(TestSpec { name, seed: seed.unwrap_or(0), copies: copies.unwrap_or(1), groups })
}

/// Where a test position came from in the bank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub group: String,
    pub problem: String,
    pub question_index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestInstance {
    pub test_id: String,
    pub questions: Vec<QuestionInstance>,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEntry {
    pub group: String,
    pub problem: String,
    pub letter: char,
    /// Number of answers offered at this position.
    pub choices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerKey {
    pub test_id: String,
    pub entries: Vec<KeyEntry>,
}

impl AnswerKey {
    pub fn from_instance(t: &TestInstance) -> AnswerKey {
        let entries = t
            .questions
            .iter()
            .zip(&t.provenance)
            .map(|(q, p)| KeyEntry {
                group: p.group.clone(),
                problem: p.problem.clone(),
                letter: letter(q.correct_position),
                choices: q.answers.len(),
            })
            .collect();
        AnswerKey { test_id: t.test_id.clone(), entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Answer letter for a 0-based position.
pub fn letter(position: usize) -> char {
    LETTERS.as_bytes()[position] as char
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AssembleError {
    #[error("group {0:?} is not in the bank")]
    UnknownGroup(String),
    #[error("group {group:?} has {available} problems, {requested} requested")]
    GroupUnderflow { group: String, requested: usize, available: usize },
    #[error("{test_id}, position {position}: {source}")]
    Instantiate { test_id: String, position: usize, source: InstantiateError },
}

/// Checks that every group exists and holds enough problems.
pub fn check_spec(bank: &ProblemBank, spec: &TestSpec) -> Result<(), AssembleError> {
    for rule in &spec.groups {
        let members = bank.group(&rule.group).ok_or_else(|| AssembleError::UnknownGroup(rule.group.clone()))?;
        if members.len() < rule.questions {
            return Err(AssembleError::GroupUnderflow {
                group: rule.group.clone(),
                requested: rule.questions,
                available: members.len(),
            });
        }
    }
    Ok(())
}

/// Builds copy `copy` (1-based) of the test. The result depends only on
/// the bank, the spec and the copy number.
pub fn assemble_copy(bank: &ProblemBank, spec: &TestSpec, copy: usize) -> Result<TestInstance, AssembleError> {
    check_spec(bank, spec)?;
    let test_id = spec.test_id(copy);
    let copy_rng = QuizRng::new(spec.seed, format!("{}/copy{}", spec.name, copy));
    let mut questions = Vec::with_capacity(spec.question_count());
    let mut provenance = Vec::with_capacity(spec.question_count());
    for (g, rule) in spec.groups.iter().enumerate() {
        let members = bank.group(&rule.group).expect("checked above");
        let mut pick_rng = copy_rng.fork(format!("group{g}"));
        let mut picked = pick_rng.sample_indices(members.len(), rule.questions);
        picked.sort_unstable();
        if rule.scramble_questions {
            pick_rng.shuffle(&mut picked);
        }
        for i in picked {
            let problem = members[i];
            let position = questions.len() + 1;
            let mut rng = copy_rng.fork(format!("pos{position}"));
            let qi = rng.index(problem.questions.len());
            let wrap = |source| AssembleError::Instantiate { test_id: test_id.clone(), position, source };
            let mut inst = instantiate_with_retries(problem, qi, &mut rng, rule.answers - 1).map_err(wrap)?;
            if rule.scramble_answers {
                let mut order: Vec<usize> = (0..inst.answers.len()).collect();
                rng.shuffle(&mut order);
                inst.reorder_answers(&order);
            }
            provenance.push(Provenance { group: rule.group.clone(), problem: problem.name.clone(), question_index: qi });
            questions.push(inst);
        }
    }
    Ok(TestInstance { test_id, questions, provenance })
}

/// Builds every copy of the test with its answer key. Copies are built in
/// parallel; the output is ordered by copy number.
pub fn assemble_test(bank: &ProblemBank, spec: &TestSpec) -> Result<(Vec<TestInstance>, Vec<AnswerKey>), AssembleError> {
    check_spec(bank, spec)?;
    let tests: Vec<TestInstance> =
        (1..=spec.copies).into_par_iter().map(|c| assemble_copy(bank, spec, c)).collect::<Result<_, _>>()?;
    let keys = tests.iter().map(AnswerKey::from_instance).collect();
    Ok((tests, keys))
}
