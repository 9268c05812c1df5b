//! Question banks.
//!
//! A bank file (`.qbk`) is a sequence of `Problem` environments:
//!
//! ```text
//! \begin{Problem}{Mosca}{geometry}
//!  \Parameter{R}{raggio del cilindro}
//!  \Domain{R}{int,1,10}
//!  \Cond='R > 0'
//!  \begin{Question}
//!   \begin{Ask} ... $R=\Val{R}$ ... \end{Ask}
//!   \Def{d}='\sqrt{4 R^2 + H^2}'
//!   \Format{d}='%.2f'
//!   \begin{Solution} ... d = \Expr{d}\simeq\FVal{d} ... \end{Solution}
//!   \begin{Answers}
//!    \Format='$d\simeq %.2f$'
//!    \Right='d'  \Wrong='\sqrt{R^2 + H^2}' \Wrong='R' \Wrong='2R'
//!   \end{Answers}
//!  \end{Question}
//! \end{Problem}
//! ```
//!
//! The group argument of `Problem` defaults to `default`, a parameter
//! without `\Domain` ranges over the integers 1 to 10, and a symbol without
//! `\Format` prints with `%g`. `%` starts a comment outside quoted payloads.

mod parse;
mod pretty;
pub mod prose;
mod validate;

use std::fmt;

use crate::expr::{Condition, Expr, FormatSpec, Symbol};

pub use parse::{parse_bank, BankError, BankErrorKind};
pub use pretty::pretty_print_bank;
pub use validate::{validate_bank, Diagnostic, PROBE_ATTEMPTS};

/// Group label used when a problem declares none.
pub const DEFAULT_GROUP: &str = "default";

/// Where a parameter's values come from.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamDomain {
    /// `int,lo,hi[,step]`
    IntRange { lo: i64, hi: i64, step: i64 },
    /// `real,lo,hi,step`: the grid `lo, lo+step, ...` up to `hi`.
    RealGrid { lo: f64, hi: f64, step: f64 },
    /// `set,v1,v2,...`
    Set(Vec<f64>),
}

impl Default for ParamDomain {
    fn default() -> Self {
        ParamDomain::IntRange { lo: 1, hi: 10, step: 1 }
    }
}

impl ParamDomain {
    pub fn len(&self) -> usize {
        match self {
            ParamDomain::IntRange { lo, hi, step } => ((hi - lo) / step + 1) as usize,
            ParamDomain::RealGrid { lo, hi, step } => ((hi - lo) / step + 1e-9).floor() as usize + 1,
            ParamDomain::Set(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th value, `i < len()`.
    pub fn value(&self, i: usize) -> f64 {
        match self {
            ParamDomain::IntRange { lo, step, .. } => (lo + step * i as i64) as f64,
            ParamDomain::RealGrid { lo, step, .. } => lo + step * i as f64,
            ParamDomain::Set(v) => v[i],
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.value(i))
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamDomain::IntRange { lo, hi, step: 1 } => write!(f, "int,{lo},{hi}"),
            ParamDomain::IntRange { lo, hi, step } => write!(f, "int,{lo},{hi},{step}"),
            ParamDomain::RealGrid { lo, hi, step } => write!(f, "real,{lo},{hi},{step}"),
            ParamDomain::Set(v) => {
                f.write_str("set")?;
                for x in v {
                    write!(f, ",{x}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamSpec {
    pub name: Symbol,
    pub description: String,
    pub domain: ParamDomain,
    pub format: Option<FormatSpec>,
    /// Conditions whose symbols are this parameter and earlier ones.
    pub conditions: Vec<Condition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnswerKind {
    Numerical,
    Textual,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnswerPayload {
    Formula(Expr),
    Text(String),
}

impl fmt::Display for AnswerPayload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerPayload::Formula(e) => write!(f, "{e}"),
            AnswerPayload::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnswerSpec {
    pub kind: AnswerKind,
    /// Presentation pattern with exactly one `%s` slot.
    pub presentation: String,
    /// Number format for numerical answers; `%g` when `None`.
    pub number_format: Option<FormatSpec>,
    pub right: Vec<AnswerPayload>,
    pub wrong: Vec<AnswerPayload>,
}

impl AnswerSpec {
    pub fn effective_format(&self) -> FormatSpec {
        self.number_format.clone().unwrap_or_else(FormatSpec::general)
    }

    /// Puts `text` into the `%s` slot of the presentation pattern.
    pub fn present(&self, text: &str) -> String {
        let mut out = String::new();
        let mut rest = self.presentation.as_str();
        while let Some(i) = rest.find('%') {
            out.push_str(&rest[..i]);
            let tail = &rest[i + 1..];
            if let Some(t) = tail.strip_prefix('%') {
                out.push('%');
                rest = t;
            } else if let Some(t) = tail.strip_prefix('s') {
                out.push_str(text);
                rest = t;
            } else {
                out.push('%');
                rest = tail;
            }
        }
        out.push_str(rest);
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub symbol: Symbol,
    pub expr: Expr,
    pub format: Option<FormatSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuestionDef {
    pub ask: String,
    pub definitions: Vec<Definition>,
    /// Conditions declared inside the question; may use its definitions.
    pub conditions: Vec<Condition>,
    pub solution: String,
    pub answers: AnswerSpec,
}

impl QuestionDef {
    pub fn definition(&self, sym: &Symbol) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.symbol == *sym)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemDef {
    pub name: String,
    pub group: String,
    pub parameters: Vec<ParamSpec>,
    pub global_conditions: Vec<Condition>,
    pub questions: Vec<QuestionDef>,
}

impl ProblemDef {
    pub fn parameter(&self, sym: &Symbol) -> Option<&ParamSpec> {
        self.parameters.iter().find(|p| p.name == *sym)
    }

    /// Every condition on parameters alone or on problem-wide quantities,
    /// in declaration order.
    pub fn problem_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.parameters
            .iter()
            .flat_map(|p| p.conditions.iter())
            .chain(self.global_conditions.iter())
    }

    /// Symbols declared with a superscript decoration, used to resolve
    /// `a^{(2)}` as a name while parsing expressions.
    pub fn decorated_symbols(&self) -> Vec<Symbol> {
        let params = self.parameters.iter().map(|p| &p.name);
        let defs = self.questions.iter().flat_map(|q| q.definitions.iter().map(|d| &d.symbol));
        params.chain(defs).filter(|s| s.decoration().is_some()).cloned().collect()
    }
}

/// A parsed bank. Immutable once built.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ProblemBank {
    problems: Vec<ProblemDef>,
    groups: Vec<(String, Vec<usize>)>,
}

impl ProblemBank {
    /// Builds a bank; problem names must be unique.
    pub fn new(problems: Vec<ProblemDef>) -> Result<ProblemBank, String> {
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        for (i, p) in problems.iter().enumerate() {
            if problems[..i].iter().any(|q| q.name == p.name) {
                return Err(format!("duplicate problem name {:?}", p.name));
            }
            match groups.iter_mut().find(|(g, _)| *g == p.group) {
                Some((_, members)) => members.push(i),
                None => groups.push((p.group.clone(), vec![i])),
            }
        }
        Ok(ProblemBank { problems, groups })
    }

    pub fn problems(&self) -> &[ProblemDef] {
        &self.problems
    }

    pub fn problem(&self, name: &str) -> Option<&ProblemDef> {
        self.problems.iter().find(|p| p.name == name)
    }

    /// Group labels in order of first appearance.
    pub fn group_labels(&self) -> impl Iterator<Item = &str> {
        self.groups.iter().map(|(g, _)| g.as_str())
    }

    /// Problems of a group, in bank order.
    pub fn group(&self, label: &str) -> Option<Vec<&ProblemDef>> {
        self.groups
            .iter()
            .find(|(g, _)| g == label)
            .map(|(_, idx)| idx.iter().map(|&i| &self.problems[i]).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }
}
