use thiserror::Error;

use super::prose::{normalize_block, placeholders, PlaceholderKind};
use super::{
    AnswerKind, AnswerPayload, AnswerSpec, Definition, ParamDomain, ParamSpec, ProblemBank,
    ProblemDef, QuestionDef, DEFAULT_GROUP,
};
use crate::expr::{
    parse_condition_with, parse_expression_with, parse_symbol, scan_conversions, Condition,
    FormatError, FormatSpec, ParseError, Symbol,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BankErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown environment {0:?}")]
    UnknownEnvironment(String),
    #[error("unknown directive \\{0}")]
    UnknownDirective(String),
    #[error("duplicate problem name {0:?}")]
    DuplicateProblem(String),
    #[error("problem {problem:?}: symbol {symbol} declared twice")]
    DuplicateSymbol { problem: String, symbol: String },
    #[error("problem {problem:?}, question {question}: \\{command}{{{symbol}}} refers to an undeclared symbol")]
    UndeclaredPlaceholder { problem: String, question: usize, command: &'static str, symbol: String },
    #[error("problem {problem:?}, question {question}: missing Answers block")]
    MissingAnswers { problem: String, question: usize },
    #[error("in {text:?}: {error}")]
    Expression { text: String, error: ParseError },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("bad domain {0:?}")]
    Domain(String),
}

/// A bank parse failure with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct BankError {
    pub line: usize,
    pub column: usize,
    pub kind: BankErrorKind,
}

fn position(src: &str, at: usize) -> (usize, usize) {
    let at = at.min(src.len());
    let before = &src[..at];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Text with the byte offset where it starts in the source.
#[derive(Clone, Debug)]
struct Spanned {
    text: String,
    at: usize,
}

#[derive(Default)]
struct RawAnswers {
    format: Option<Spanned>,
    right: Vec<Spanned>,
    wrong: Vec<Spanned>,
}

struct RawQuestion {
    at: usize,
    ask: Option<String>,
    defs: Vec<(Spanned, Spanned)>,
    formats: Vec<(Spanned, Spanned)>,
    conds: Vec<Spanned>,
    solution: Option<String>,
    answers: Option<RawAnswers>,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

type Result<T> = std::result::Result<T, BankError>;

impl<'a> Cursor<'a> {
    fn error(&self, at: usize, kind: BankErrorKind) -> BankError {
        let (line, column) = position(self.src, at);
        BankError { line, column, kind }
    }

    fn syntax(&self, at: usize, msg: impl Into<String>) -> BankError {
        self.error(at, BankErrorKind::Syntax(msg.into()))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_space(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn skip_space_and_comments(&mut self) {
        loop {
            self.skip_space();
            if self.rest().starts_with('%') {
                self.pos += self.rest().find('\n').unwrap_or(self.rest().len());
            } else {
                return;
            }
        }
    }

    /// Reads `\name`, returning the name and its start offset.
    fn command(&mut self) -> Option<(&'a str, usize)> {
        let rest = self.rest();
        let body = rest.strip_prefix('\\')?;
        let len = body.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(body.len());
        if len == 0 {
            return None;
        }
        let at = self.pos;
        self.pos += 1 + len;
        Some((&body[..len], at))
    }

    fn brace_arg(&mut self) -> Result<Spanned> {
        self.skip_space();
        if !self.rest().starts_with('{') {
            return Err(self.syntax(self.pos, "expected '{'"));
        }
        let open = self.pos;
        let mut depth = 0;
        for (i, c) in self.rest().char_indices() {
            match c {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = self.src[open + 1..open + i].trim().to_string();
                        self.pos = open + i + 1;
                        return Ok(Spanned { text, at: open + 1 });
                    }
                }
                _ => {}
            }
        }
        Err(self.syntax(open, "unbalanced '{'"))
    }

    /// Reads `='...'`.
    fn payload(&mut self) -> Result<Spanned> {
        self.skip_space();
        if !self.rest().starts_with('=') {
            return Err(self.syntax(self.pos, "expected '=' before a quoted payload"));
        }
        self.pos += 1;
        self.skip_space();
        if !self.rest().starts_with('\'') {
            return Err(self.syntax(self.pos, "expected a single-quoted payload"));
        }
        let open = self.pos;
        let body = &self.rest()[1..];
        let close = body.find('\'').ok_or_else(|| self.syntax(open, "unterminated quoted payload"))?;
        self.pos = open + 1 + close + 1;
        Ok(Spanned { text: body[..close].to_string(), at: open + 1 })
    }

    fn env_body(&mut self, env: &str) -> Result<String> {
        let end = format!("\\end{{{env}}}");
        let start = self.pos;
        let len = self
            .rest()
            .find(&end)
            .ok_or_else(|| self.syntax(start, format!("missing {end}")))?;
        self.pos += len + end.len();
        Ok(self.src[start..start + len].to_string())
    }

    fn expect_end(&mut self, env: &str, at: usize) -> Result<()> {
        let name = self.brace_arg()?;
        if name.text == env {
            Ok(())
        } else {
            Err(self.syntax(at, format!("expected \\end{{{env}}}, found \\end{{{}}}", name.text)))
        }
    }
}

/// Parses bank source into a [`ProblemBank`].
pub fn parse_bank(source: &str) -> Result<ProblemBank> {
    let mut cur = Cursor { src: source, pos: 0 };
    let mut problems: Vec<ProblemDef> = Vec::new();
    loop {
        cur.skip_space_and_comments();
        if cur.at_end() {
            break;
        }
        let here = cur.pos;
        match cur.command() {
            Some(("begin", at)) => {
                let env = cur.brace_arg()?;
                if env.text != "Problem" {
                    return Err(cur.error(at, BankErrorKind::UnknownEnvironment(env.text)));
                }
                let problem = problem(&mut cur, at)?;
                if problems.iter().any(|p| p.name == problem.name) {
                    return Err(cur.error(at, BankErrorKind::DuplicateProblem(problem.name)));
                }
                problems.push(problem);
            }
            Some((name, at)) => {
                return Err(cur.error(at, BankErrorKind::UnknownDirective(name.to_string())))
            }
            None => return Err(cur.syntax(here, "text outside a Problem environment")),
        }
    }
    Ok(ProblemBank::new(problems).expect("names checked above"))
}

fn problem(cur: &mut Cursor, begin_at: usize) -> Result<ProblemDef> {
    let name = cur.brace_arg()?;
    if name.text.is_empty() || name.text.contains(['\t', '\n']) {
        return Err(cur.syntax(name.at, "problem name must be nonempty single-line text"));
    }
    let save = cur.pos;
    cur.skip_space();
    let group = if cur.rest().starts_with('{') {
        let g = cur.brace_arg()?;
        if g.text.is_empty() || g.text.contains(['\t', '\n']) {
            return Err(cur.syntax(g.at, "group label must be nonempty single-line text"));
        }
        g.text
    } else {
        cur.pos = save;
        DEFAULT_GROUP.to_string()
    };

    let mut params: Vec<(Symbol, String, usize)> = Vec::new();
    let mut domains: Vec<(Spanned, Spanned)> = Vec::new();
    let mut formats: Vec<(Spanned, Spanned)> = Vec::new();
    let mut conds: Vec<Spanned> = Vec::new();
    let mut questions: Vec<RawQuestion> = Vec::new();
    loop {
        cur.skip_space_and_comments();
        if cur.at_end() {
            return Err(cur.syntax(begin_at, "missing \\end{Problem}"));
        }
        let here = cur.pos;
        let Some((cmd, at)) = cur.command() else {
            return Err(cur.syntax(here, "unexpected text inside Problem"));
        };
        match cmd {
            "Parameter" => {
                let sym = cur.brace_arg()?;
                let desc = cur.brace_arg()?;
                let symbol = symbol_at(cur, &sym)?;
                if params.iter().any(|(s, _, _)| *s == symbol) {
                    return Err(duplicate(cur, sym.at, &name.text, &symbol));
                }
                params.push((symbol, desc.text, at));
            }
            "Domain" => domains.push((cur.brace_arg()?, cur.brace_arg()?)),
            "Format" => formats.push((cur.brace_arg()?, cur.payload()?)),
            "Cond" => conds.push(cur.payload()?),
            "begin" => {
                let env = cur.brace_arg()?;
                if env.text != "Question" {
                    return Err(cur.error(at, BankErrorKind::UnknownEnvironment(env.text)));
                }
                questions.push(question(cur, at)?);
            }
            "end" => {
                cur.expect_end("Problem", at)?;
                break;
            }
            other => return Err(cur.error(at, BankErrorKind::UnknownDirective(other.to_string()))),
        }
    }
    if questions.is_empty() {
        return Err(cur.syntax(begin_at, format!("problem {:?} has no Question", name.text)));
    }

    let mut specs: Vec<ParamSpec> = params
        .iter()
        .map(|(s, d, _)| ParamSpec {
            name: s.clone(),
            description: d.clone(),
            domain: ParamDomain::default(),
            format: None,
            conditions: Vec::new(),
        })
        .collect();
    let mut seen_domain: Vec<Symbol> = Vec::new();
    for (sym, spec) in &domains {
        let symbol = symbol_at(cur, sym)?;
        let Some(p) = specs.iter_mut().find(|p| p.name == symbol) else {
            return Err(cur.syntax(sym.at, format!("\\Domain for undeclared parameter {symbol}")));
        };
        if seen_domain.contains(&symbol) {
            return Err(cur.syntax(sym.at, format!("second \\Domain for {symbol}")));
        }
        seen_domain.push(symbol);
        p.domain = parse_domain(&spec.text).map_err(|k| cur.error(spec.at, k))?;
    }
    for (sym, pattern) in &formats {
        let symbol = symbol_at(cur, sym)?;
        let Some(p) = specs.iter_mut().find(|p| p.name == symbol) else {
            return Err(cur.syntax(sym.at, format!("\\Format for undeclared parameter {symbol}")));
        };
        if p.format.is_some() {
            return Err(cur.syntax(sym.at, format!("second \\Format for {symbol}")));
        }
        p.format = Some(FormatSpec::parse(&pattern.text).map_err(|e| cur.error(pattern.at, e.into()))?);
    }

    // decorated names from every declaration site in the problem
    let mut decorated: Vec<Symbol> =
        specs.iter().map(|p| p.name.clone()).filter(|s| s.decoration().is_some()).collect();
    for q in &questions {
        for (sym, _) in &q.defs {
            let s = symbol_at(cur, sym)?;
            if s.decoration().is_some() {
                decorated.push(s);
            }
        }
    }

    let mut question_defs = Vec::new();
    for (i, raw) in questions.into_iter().enumerate() {
        question_defs.push(build_question(cur, &name.text, i + 1, raw, &specs, &decorated)?);
    }

    let mut global_conditions = Vec::new();
    for c in &conds {
        let cond = condition_at(cur, c, &decorated)?;
        let syms = cond.symbols();
        let owner = if syms.is_empty() {
            None
        } else {
            syms.iter()
                .map(|s| specs.iter().position(|p| p.name == *s))
                .collect::<Option<Vec<_>>>()
                .and_then(|idx| idx.into_iter().max())
        };
        match owner {
            Some(i) => specs[i].conditions.push(cond),
            None => global_conditions.push(cond),
        }
    }

    Ok(ProblemDef {
        name: name.text,
        group,
        parameters: specs,
        global_conditions,
        questions: question_defs,
    })
}

fn question(cur: &mut Cursor, begin_at: usize) -> Result<RawQuestion> {
    let mut q = RawQuestion {
        at: begin_at,
        ask: None,
        defs: Vec::new(),
        formats: Vec::new(),
        conds: Vec::new(),
        solution: None,
        answers: None,
    };
    loop {
        cur.skip_space_and_comments();
        if cur.at_end() {
            return Err(cur.syntax(begin_at, "missing \\end{Question}"));
        }
        let here = cur.pos;
        let Some((cmd, at)) = cur.command() else {
            return Err(cur.syntax(here, "unexpected text inside Question"));
        };
        match cmd {
            "Def" => q.defs.push((cur.brace_arg()?, cur.payload()?)),
            "Format" => q.formats.push((cur.brace_arg()?, cur.payload()?)),
            "Cond" => q.conds.push(cur.payload()?),
            "begin" => {
                let env = cur.brace_arg()?;
                let slot_taken = match env.text.as_str() {
                    "Ask" => q.ask.replace(cur.env_body("Ask")?).is_some(),
                    "Solution" => q.solution.replace(cur.env_body("Solution")?).is_some(),
                    "Answers" => q.answers.replace(answers(cur, at)?).is_some(),
                    _ => return Err(cur.error(at, BankErrorKind::UnknownEnvironment(env.text))),
                };
                if slot_taken {
                    return Err(cur.syntax(at, format!("second {} block in one Question", env.text)));
                }
            }
            "end" => {
                cur.expect_end("Question", at)?;
                return Ok(q);
            }
            other => return Err(cur.error(at, BankErrorKind::UnknownDirective(other.to_string()))),
        }
    }
}

fn answers(cur: &mut Cursor, begin_at: usize) -> Result<RawAnswers> {
    let mut a = RawAnswers::default();
    loop {
        cur.skip_space_and_comments();
        if cur.at_end() {
            return Err(cur.syntax(begin_at, "missing \\end{Answers}"));
        }
        let here = cur.pos;
        let Some((cmd, at)) = cur.command() else {
            return Err(cur.syntax(here, "unexpected text inside Answers"));
        };
        match cmd {
            "Format" => {
                if a.format.replace(cur.payload()?).is_some() {
                    return Err(cur.syntax(at, "second \\Format in one Answers block"));
                }
            }
            "Right" => a.right.push(cur.payload()?),
            "Wrong" => a.wrong.push(cur.payload()?),
            "end" => {
                cur.expect_end("Answers", at)?;
                return Ok(a);
            }
            other => return Err(cur.error(at, BankErrorKind::UnknownDirective(other.to_string()))),
        }
    }
}

fn build_question(
    cur: &Cursor,
    problem: &str,
    index: usize,
    raw: RawQuestion,
    params: &[ParamSpec],
    decorated: &[Symbol],
) -> Result<QuestionDef> {
    let mut definitions: Vec<Definition> = Vec::new();
    for (sym, payload) in &raw.defs {
        let symbol = symbol_at(cur, sym)?;
        if params.iter().any(|p| p.name == symbol) || definitions.iter().any(|d| d.symbol == symbol) {
            return Err(duplicate(cur, sym.at, problem, &symbol));
        }
        let expr = parse_expression_with(&payload.text, decorated)
            .map_err(|e| expression_error(cur, payload, e))?;
        definitions.push(Definition { symbol, expr, format: None });
    }
    for (sym, pattern) in &raw.formats {
        let symbol = symbol_at(cur, sym)?;
        let Some(d) = definitions.iter_mut().find(|d| d.symbol == symbol) else {
            return Err(cur.syntax(sym.at, format!("\\Format for {symbol}, which this question does not define")));
        };
        if d.format.is_some() {
            return Err(cur.syntax(sym.at, format!("second \\Format for {symbol}")));
        }
        d.format = Some(FormatSpec::parse(&pattern.text).map_err(|e| cur.error(pattern.at, e.into()))?);
    }
    let conditions = raw
        .conds
        .iter()
        .map(|c| condition_at(cur, c, decorated))
        .collect::<Result<Vec<_>>>()?;

    let ask = normalize_block(raw.ask.as_deref().unwrap_or(""));
    let solution = normalize_block(raw.solution.as_deref().unwrap_or(""));
    for text in [&ask, &solution] {
        let found = placeholders(text).map_err(|(_, e)| {
            cur.error(raw.at, BankErrorKind::Expression { text: text.clone(), error: e })
        })?;
        for p in found {
            let known = params.iter().any(|s| s.name == p.symbol)
                || definitions.iter().any(|d| d.symbol == p.symbol);
            if !known {
                let command = match p.kind {
                    PlaceholderKind::Val => "Val",
                    PlaceholderKind::FVal => "FVal",
                    PlaceholderKind::Expr => "Expr",
                };
                return Err(cur.error(
                    raw.at,
                    BankErrorKind::UndeclaredPlaceholder {
                        problem: problem.to_string(),
                        question: index,
                        command,
                        symbol: p.symbol.to_string(),
                    },
                ));
            }
        }
    }

    let Some(ans) = raw.answers else {
        return Err(cur.error(
            raw.at,
            BankErrorKind::MissingAnswers { problem: problem.to_string(), question: index },
        ));
    };
    let kind = if params.is_empty() && definitions.is_empty() {
        AnswerKind::Textual
    } else {
        AnswerKind::Numerical
    };
    let payload = |s: &Spanned| -> Result<AnswerPayload> {
        match kind {
            AnswerKind::Textual => Ok(AnswerPayload::Text(s.text.clone())),
            AnswerKind::Numerical => parse_expression_with(&s.text, decorated)
                .map(AnswerPayload::Formula)
                .map_err(|e| expression_error(cur, s, e)),
        }
    };
    let right = ans.right.iter().map(payload).collect::<Result<Vec<_>>>()?;
    let wrong = ans.wrong.iter().map(payload).collect::<Result<Vec<_>>>()?;
    let (presentation, number_format) = match &ans.format {
        None => ("%s".to_string(), None),
        Some(f) => split_answer_format(&f.text).map_err(|k| cur.error(f.at, k))?,
    };
    Ok(QuestionDef {
        ask,
        definitions,
        conditions,
        solution,
        answers: AnswerSpec { kind, presentation, number_format, right, wrong },
    })
}

/// Splits an answer-block format into its presentation pattern (with a `%s`
/// slot) and the numeric conversion, if the slot is a numeric one.
pub(crate) fn split_answer_format(
    text: &str,
) -> std::result::Result<(String, Option<FormatSpec>), BankErrorKind> {
    let convs = scan_conversions(text)?;
    let [(span, conv)] = convs.as_slice() else {
        return Err(BankErrorKind::Syntax(format!(
            "answer format {text:?} must contain exactly one conversion"
        )));
    };
    if conv.kind == 's' {
        return Ok((text.to_string(), None));
    }
    let presentation = format!("{}%s{}", &text[..span.start], &text[span.end..]);
    let spec = FormatSpec::parse(&text[span.clone()])?;
    Ok((presentation, Some(spec)))
}

fn parse_domain(text: &str) -> std::result::Result<ParamDomain, BankErrorKind> {
    let bad = || BankErrorKind::Domain(text.to_string());
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let nums = |items: &[&str]| -> std::result::Result<Vec<f64>, BankErrorKind> {
        items
            .iter()
            .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad))
            .collect()
    };
    let domain = match parts.as_slice() {
        ["int", rest @ ..] if rest.len() == 2 || rest.len() == 3 => {
            let v: Vec<i64> = rest.iter().map(|s| s.parse().map_err(|_| bad())).collect::<std::result::Result<_, _>>()?;
            let step = v.get(2).copied().unwrap_or(1);
            if v[0] > v[1] || step <= 0 {
                return Err(bad());
            }
            ParamDomain::IntRange { lo: v[0], hi: v[1], step }
        }
        ["real", rest @ ..] if rest.len() == 3 => {
            let v = nums(rest)?;
            if v[0] > v[1] || v[2] <= 0.0 {
                return Err(bad());
            }
            ParamDomain::RealGrid { lo: v[0], hi: v[1], step: v[2] }
        }
        ["set", rest @ ..] if !rest.is_empty() => ParamDomain::Set(nums(rest)?),
        _ => return Err(bad()),
    };
    Ok(domain)
}

fn symbol_at(cur: &Cursor, s: &Spanned) -> Result<Symbol> {
    parse_symbol(&s.text).map_err(|e| expression_error(cur, s, e))
}

fn condition_at(cur: &Cursor, s: &Spanned, decorated: &[Symbol]) -> Result<Condition> {
    parse_condition_with(&s.text, decorated).map_err(|e| expression_error(cur, s, e))
}

fn expression_error(cur: &Cursor, s: &Spanned, error: ParseError) -> BankError {
    let at = s.at + error.offset().unwrap_or(0);
    cur.error(at, BankErrorKind::Expression { text: s.text.clone(), error })
}

fn duplicate(cur: &Cursor, at: usize, problem: &str, symbol: &Symbol) -> BankError {
    cur.error(
        at,
        BankErrorKind::DuplicateSymbol { problem: problem.to_string(), symbol: symbol.to_string() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXTUAL: &str = r"
\begin{Problem}{Answer}{trivia}
  \begin{Question}
    \begin{Ask}What is six times seven?\end{Ask}
    \begin{Answers}
      \Right='42' \Wrong='41' \Wrong='43' \Wrong='67'
    \end{Answers}
  \end{Question}
\end{Problem}
";

    #[test]
    fn minimal_textual_problem() {
        let bank = parse_bank(TEXTUAL).unwrap();
        let p = &bank.problems()[0];
        assert_eq!(p.group, "trivia");
        let a = &p.questions[0].answers;
        assert_eq!(a.kind, AnswerKind::Textual);
        assert_eq!(a.right, [AnswerPayload::Text("42".into())]);
        assert_eq!(a.wrong.len(), 3);
        assert_eq!(a.presentation, "%s");
    }

    #[test]
    fn missing_answers_names_the_question() {
        let src = r"\begin{Problem}{P}
  \begin{Question}
    \begin{Ask}x\end{Ask}
  \end{Question}
  \begin{Question}
    \begin{Ask}y\end{Ask}
  \end{Question}
\end{Problem}";
        let err = parse_bank(src).unwrap_err();
        assert_eq!(err.kind, BankErrorKind::MissingAnswers { problem: "P".into(), question: 1 });
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.to_string().contains("question 1"));
    }

    #[test]
    fn negative_fixtures() {
        let cases: &[(&str, fn(&BankErrorKind) -> bool)] = &[
            (r"\begin{Quiz}{x}\end{Quiz}", |k| matches!(k, BankErrorKind::UnknownEnvironment(e) if e == "Quiz")),
            (r"hello", |k| matches!(k, BankErrorKind::Syntax(_))),
            (r"\begin{Problem}{P} \Foo{x} \end{Problem}", |k| matches!(k, BankErrorKind::UnknownDirective(d) if d == "Foo")),
            (r"\begin{Problem}{P} \Parameter{R}{a} \Parameter{R}{b}", |k| matches!(k, BankErrorKind::DuplicateSymbol { .. })),
            (r"\begin{Problem}{P} \Parameter{R}{a}", |k| matches!(k, BankErrorKind::Syntax(m) if m.contains("end{Problem}"))),
            (r"\begin{Problem}{P} \Cond='R > ' \begin{Question}\begin{Answers}\end{Answers}\end{Question}\end{Problem}", |k| matches!(k, BankErrorKind::Expression { .. })),
            (r"\begin{Problem}{P} \Parameter{R}{a} \Domain{R}{int,5,1} \begin{Question}\begin{Answers}\end{Answers}\end{Question}\end{Problem}", |k| matches!(k, BankErrorKind::Domain(_))),
            (r"\begin{Problem}{P} \Parameter{R}{a} \Domain{R}{set} \begin{Question}\begin{Answers}\end{Answers}\end{Question}\end{Problem}", |k| matches!(k, BankErrorKind::Domain(_))),
            (r"\begin{Problem}{P} \begin{Question}\begin{Ask}\Val{x}\end{Ask}\begin{Answers}\end{Answers}\end{Question}\end{Problem}", |k| matches!(k, BankErrorKind::UndeclaredPlaceholder { .. })),
            (r"\begin{Problem}{P} \Parameter{R}{a} \begin{Question}\begin{Answers}\Format='%d %d'\end{Answers}\end{Question}\end{Problem}", |k| matches!(k, BankErrorKind::Syntax(_))),
            (r"\begin{Problem}{P} \Cond=R>0 \end{Problem}", |k| matches!(k, BankErrorKind::Syntax(m) if m.contains("quoted"))),
            (r"\begin{Problem}{P} \end{Problem}", |k| matches!(k, BankErrorKind::Syntax(m) if m.contains("no Question"))),
        ];
        for (src, check) in cases {
            let err = parse_bank(src).unwrap_err();
            assert!(check(&err.kind), "{src}: {err}");
        }
        let dup = format!("{TEXTUAL}{TEXTUAL}");
        assert!(matches!(parse_bank(&dup).unwrap_err().kind, BankErrorKind::DuplicateProblem(_)));
    }

    #[test]
    fn expression_error_position_points_into_payload() {
        let src = "\\begin{Problem}{P}\n  \\Parameter{R}{r}\n  \\Cond='R > * 2'\n  \\begin{Question}\\begin{Answers}\\Right='R' \\Wrong='1' \\Wrong='2' \\Wrong='3'\\end{Answers}\\end{Question}\n\\end{Problem}\n";
        let err = parse_bank(src).unwrap_err();
        assert_eq!((err.line, err.column), (3, 14));
    }

    #[test]
    fn comments_and_escaped_percent() {
        let src = r"% leading comment
\begin{Problem}{P} % trailing
  \begin{Question}
    \begin{Ask}
      Sale of 10\% % not part of the prose
    \end{Ask}
    \begin{Answers}
      \Format='%s\%%'
      \Right='a' \Wrong='b' \Wrong='c' \Wrong='d'
    \end{Answers}
  \end{Question}
\end{Problem}";
        let bank = parse_bank(src).unwrap();
        let q = &bank.problems()[0].questions[0];
        assert_eq!(q.ask, "Sale of 10\\%");
        assert_eq!(q.answers.present("a"), "a\\%");
    }

    #[test]
    fn answer_format_split() {
        let (p, f) = split_answer_format("$d\\simeq %.2f$").unwrap();
        assert_eq!(p, "$d\\simeq %s$");
        assert_eq!(f.unwrap().pattern(), "%.2f");
        let (p, f) = split_answer_format("[%s]").unwrap();
        assert_eq!((p.as_str(), f), ("[%s]", None));
    }

    #[test]
    fn domains() {
        assert_eq!(parse_domain("int,1,10").unwrap().len(), 10);
        assert_eq!(parse_domain("int, 0, 10, 5").unwrap().values().collect::<Vec<_>>(), [0.0, 5.0, 10.0]);
        let real = parse_domain("real,0.5,2.5,0.5").unwrap();
        assert_eq!(real.len(), 5);
        assert_eq!(real.value(4), 2.5);
        assert_eq!(parse_domain("set,3").unwrap(), ParamDomain::Set(vec![3.0]));
        assert!(parse_domain("int,1.5,3").is_err());
        assert!(parse_domain("real,0,1").is_err());
        assert!(parse_domain("int,1,3,0").is_err());
    }

    #[test]
    fn conditions_attach_to_latest_parameter() {
        let src = r"\begin{Problem}{Box}
  \Parameter{a}{side}
  \Parameter{b}{other side}
  \Cond='b < a'
  \Cond='a > 1'
  \Cond='d > 0'
  \Cond='1 > 0'
  \begin{Question}
    \Def{d}='a - b'
    \Cond='d < 5'
    \begin{Answers}\Right='d' \Wrong='a' \Wrong='b' \Wrong='2a'\end{Answers}
  \end{Question}
\end{Problem}";
        let bank = parse_bank(src).unwrap();
        let p = &bank.problems()[0];
        assert_eq!(p.parameters[0].conditions.len(), 1);
        assert_eq!(p.parameters[1].conditions.len(), 1);
        assert_eq!(p.parameters[1].conditions[0].to_string(), "b < a");
        assert_eq!(p.global_conditions.len(), 2);
        assert_eq!(p.questions[0].conditions.len(), 1);
    }
}
