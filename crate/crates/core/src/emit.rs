//! Test documents and key files.

use std::fmt::Write;
use std::str::FromStr;

use crate::assemble::{letter, AnswerKey, TestInstance};
use crate::expr::GREEK;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutputDialect {
    Latex,
    Html,
    Plain,
}

impl OutputDialect {
    pub const ALL: [OutputDialect; 3] = [OutputDialect::Latex, OutputDialect::Html, OutputDialect::Plain];

    pub fn name(self) -> &'static str {
        match self {
            OutputDialect::Latex => "latex",
            OutputDialect::Html => "html",
            OutputDialect::Plain => "plain",
        }
    }

    /// File extension of documents in this dialect.
    pub fn extension(self) -> &'static str {
        match self {
            OutputDialect::Latex => "tex",
            OutputDialect::Html => "html",
            OutputDialect::Plain => "txt",
        }
    }
}

impl FromStr for OutputDialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        OutputDialect::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown dialect {s:?} (expected latex, html or plain)"))
    }
}

/// What to include besides questions and answers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Teacher's copy: print each question's worked solution.
    pub solutions: bool,
}

/// Renders one test copy. Output depends only on the arguments.
pub fn render_test(t: &TestInstance, dialect: OutputDialect, opts: RenderOptions) -> String {
    match dialect {
        OutputDialect::Latex => latex(t, opts),
        OutputDialect::Html => html(t, opts),
        OutputDialect::Plain => plain(t, opts),
    }
}

fn latex(t: &TestInstance, opts: RenderOptions) -> String {
    let mut out = String::new();
    out.push_str("\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n");
    writeln!(out, "\\section*{{Test {}}}", t.test_id).unwrap();
    if !t.questions.is_empty() {
        out.push_str("\\begin{enumerate}\n");
        for q in &t.questions {
            out.push_str("\\item\n");
            push_lines(&mut out, &q.statement);
            out.push_str("\\begin{description}\n");
            for (i, a) in q.answers.iter().enumerate() {
                writeln!(out, "\\item[{})]", letter(i)).unwrap();
                push_lines(&mut out, &a.text);
            }
            out.push_str("\\end{description}\n");
            if opts.solutions && !q.solution.is_empty() {
                writeln!(out, "\\paragraph{{Solution ({})}}", letter(q.correct_position)).unwrap();
                push_lines(&mut out, &q.solution);
            }
        }
        out.push_str("\\end{enumerate}\n");
    }
    out.push_str("\\end{document}\n");
    out
}

fn push_lines(out: &mut String, text: &str) {
    if !text.is_empty() {
        out.push_str(text);
        out.push('\n');
    }
}

fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// Splits prose into text and `$...$` / `$$...$$` math segments.
fn segments(text: &str) -> Vec<(bool, &str)> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'\\' {
            i += 2;
            continue;
        }
        if b[i] != b'$' {
            i += 1;
            continue;
        }
        let delim = if b.get(i + 1) == Some(&b'$') { "$$" } else { "$" };
        let body = i + delim.len();
        let mut j = body;
        let close = loop {
            if j >= b.len() {
                break None;
            }
            if b[j] == b'\\' {
                j += 2;
            } else if text[j..].starts_with(delim) {
                break Some(j);
            } else {
                j += 1;
            }
        };
        let Some(close) = close else { break };
        if start < i {
            out.push((false, &text[start..i]));
        }
        out.push((true, &text[i..close + delim.len()]));
        i = close + delim.len();
        start = i;
    }
    if start < text.len() {
        out.push((false, &text[start..]));
    }
    out
}

fn html_prose(text: &str) -> String {
    segments(text)
        .into_iter()
        .map(|(math, s)| {
            if math {
                format!("<span class=\"math\">{}</span>", escape_html(s))
            } else {
                escape_html(s)
            }
        })
        .collect()
}

fn html(t: &TestInstance, opts: RenderOptions) -> String {
    let mut out = String::new();
    let id = escape_html(&t.test_id);
    writeln!(out, "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Test {id}</title>\n</head>\n<body>\n<h1>Test {id}</h1>").unwrap();
    if !t.questions.is_empty() {
        out.push_str("<ol>\n");
        for q in &t.questions {
            out.push_str("<li>\n");
            writeln!(out, "<p>{}</p>", html_prose(&q.statement)).unwrap();
            out.push_str("<ol type=\"A\">\n");
            for a in &q.answers {
                writeln!(out, "<li>{}</li>", html_prose(&a.text)).unwrap();
            }
            out.push_str("</ol>\n");
            if opts.solutions && !q.solution.is_empty() {
                writeln!(
                    out,
                    "<p class=\"solution\">Solution ({}): {}</p>",
                    letter(q.correct_position),
                    html_prose(&q.solution)
                )
                .unwrap();
            }
            out.push_str("</li>\n");
        }
        out.push_str("</ol>\n");
    }
    out.push_str("</body>\n</html>\n");
    out
}

/// Replacement text for a markup command in plain output; `None` drops it.
fn plain_command(name: &str) -> Option<&'static str> {
    Some(match name {
        "simeq" => " ~= ",
        "approx" => " ~ ",
        "le" | "leq" => " <= ",
        "ge" | "geq" => " >= ",
        "ne" | "neq" => " != ",
        "lt" => " < ",
        "gt" => " > ",
        "cdot" => " * ",
        "times" => " x ",
        "div" => " / ",
        "pm" => " +/- ",
        "infty" => "inf",
        "," | ";" | ":" | "quad" | "qquad" | " " => " ",
        "%" => "%",
        "$" => "$",
        "&" => "&",
        "_" => "_",
        "{" => "{",
        "}" => "}",
        "\\" => "\n",
        "centi" => "c",
        "milli" => "m",
        "kilo" => "k",
        "micro" => "u",
        "metre" | "meter" => "m",
        "second" => "s",
        "gram" => "g",
        "litre" | "liter" => "l",
        "degree" => "deg",
        _ => return None,
    })
}

struct Plain<'a> {
    s: &'a str,
    i: usize,
}

impl<'a> Plain<'a> {
    fn arg(&mut self) -> String {
        let b = self.s.as_bytes();
        while self.i < b.len() && b[self.i] == b' ' {
            self.i += 1;
        }
        if b.get(self.i) == Some(&b'{') {
            self.i += 1;
            self.until_close()
        } else if let Some(c) = self.s[self.i..].chars().next() {
            self.i += c.len_utf8();
            c.to_string()
        } else {
            String::new()
        }
    }

    /// Converts up to the matching `}` (or the end), consuming it.
    fn until_close(&mut self) -> String {
        let mut out = String::new();
        while self.i < self.s.len() {
            let c = self.s[self.i..].chars().next().unwrap();
            match c {
                '}' => {
                    self.i += 1;
                    return out;
                }
                '{' => {
                    self.i += 1;
                    let inner = self.until_close();
                    out.push_str(&inner);
                }
                '$' => self.i += 1,
                '~' => {
                    out.push(' ');
                    self.i += 1;
                }
                '\\' => {
                    self.i += 1;
                    let rest = &self.s[self.i..];
                    let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
                    let name = if len == 0 {
                        let n = rest.chars().next().map_or(0, char::len_utf8);
                        &rest[..n]
                    } else {
                        &rest[..len]
                    };
                    self.i += name.len();
                    out.push_str(&self.command(name));
                }
                c => {
                    out.push(c);
                    self.i += c.len_utf8();
                }
            }
        }
        out
    }

    fn command(&mut self, name: &str) -> String {
        match name {
            "sqrt" => format!("sqrt({})", self.arg()),
            "frac" | "dfrac" | "tfrac" => {
                let a = self.arg();
                let b = self.arg();
                format!("({a})/({b})")
            }
            "left" | "right" => String::new(),
            _ if GREEK.contains(&name) => name.to_string(),
            _ => plain_command(name).unwrap_or("").to_string(),
        }
    }
}

/// Strips markup from prose for plain-text output: math delimiters and
/// braces go away, known symbols become ASCII, unknown commands vanish and
/// runs of spaces collapse.
pub fn strip_markup(text: &str) -> String {
    let raw = Plain { s: text, i: 0 }.until_close();
    raw.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
        .trim()
        .to_string()
}

fn plain(t: &TestInstance, opts: RenderOptions) -> String {
    let mut out = String::new();
    writeln!(out, "Test {}", t.test_id).unwrap();
    for (n, q) in t.questions.iter().enumerate() {
        out.push('\n');
        let label = format!("{}. ", n + 1);
        let pad = " ".repeat(label.len());
        for (k, line) in strip_markup(&q.statement).lines().enumerate() {
            writeln!(out, "{}{line}", if k == 0 { &label } else { &pad }).unwrap();
        }
        if q.statement.trim().is_empty() {
            writeln!(out, "{}", label.trim_end()).unwrap();
        }
        for (i, a) in q.answers.iter().enumerate() {
            writeln!(out, "{pad}{}) {}", letter(i), strip_markup(&a.text).replace('\n', " ")).unwrap();
        }
        if opts.solutions && !q.solution.is_empty() {
            writeln!(out, "{pad}Solution ({}):", letter(q.correct_position)).unwrap();
            for line in strip_markup(&q.solution).lines() {
                writeln!(out, "{pad}  {line}").unwrap();
            }
        }
    }
    out
}

/// Column names of a key file.
pub const KEY_HEADER: &str = "test_id\tposition\tgroup\tproblem\tcorrect_letter\tchoices";

/// Key file for one copy: a header line, then one line per position.
pub fn render_key(k: &AnswerKey) -> String {
    render_keys(std::slice::from_ref(k))
}

/// Key file covering several copies.
pub fn render_keys(keys: &[AnswerKey]) -> String {
    let mut out = String::from(KEY_HEADER);
    out.push('\n');
    for k in keys {
        for (i, e) in k.entries.iter().enumerate() {
            writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", k.test_id, i + 1, e.group, e.problem, e.letter, e.choices).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemble::{KeyEntry, Provenance};
    use crate::instantiate::{AnswerOption, QuestionInstance};

    fn mosca_test() -> TestInstance {
        let texts = ["$d\\simeq 7.21$", "$d\\simeq 5.00$", "$d\\simeq 3.00$", "$d\\simeq 6.00$"];
        TestInstance {
            test_id: "demo-1".into(),
            questions: vec![QuestionInstance {
                problem: "Mosca".into(),
                group: "geometry".into(),
                question_index: 0,
                values: vec![],
                statement: "Una mosca, $R=3~\\centi\\metre$ & $H<4$.".into(),
                solution: "$d = \\sqrt{4 R^{2} + H^{2}}\\simeq7.2111$".into(),
                answers: texts.iter().enumerate().map(|(i, t)| AnswerOption { text: t.to_string(), correct: i == 0 }).collect(),
                correct_position: 0,
                rejected: vec![],
            }],
            provenance: vec![Provenance { group: "geometry".into(), problem: "Mosca".into(), question_index: 0 }],
        }
    }

    #[test]
    fn latex_answer_on_its_own_line() {
        let doc = render_test(&mosca_test(), OutputDialect::Latex, RenderOptions::default());
        assert!(doc.lines().any(|l| l == "$d\\simeq 7.21$"));
        assert!(!doc.contains("Solution"));
        let teacher = render_test(&mosca_test(), OutputDialect::Latex, RenderOptions { solutions: true });
        assert!(teacher.contains("\\paragraph{Solution (A)}"));
    }

    #[test]
    fn plain_strips_markup() {
        let doc = render_test(&mosca_test(), OutputDialect::Plain, RenderOptions::default());
        assert!(doc.lines().any(|l| l.trim() == "A) d ~= 7.21"), "{doc}");
        assert!(doc.contains("1. Una mosca, R=3 cm & H<4."), "{doc}");
        assert_eq!(strip_markup("$d = \\sqrt{4 R^{2} + H^{2}}\\simeq7.2111$"), "d = sqrt(4 R^2 + H^2) ~= 7.2111");
        assert_eq!(strip_markup("\\frac{1}{2\\pi}"), "(1)/(2pi)");
    }

    #[test]
    fn html_escapes_and_marks_math() {
        let doc = render_test(&mosca_test(), OutputDialect::Html, RenderOptions::default());
        assert!(doc.contains("<span class=\"math\">$H&lt;4$</span>"));
        assert!(doc.contains(" &amp; "));
        assert!(doc.contains("<li><span class=\"math\">$d\\simeq 7.21$</span></li>"));
        assert_eq!(segments("a \\$ b $x$"), [(false, "a \\$ b "), (true, "$x$")]);
        assert_eq!(segments("$$x$$ y $open"), [(true, "$$x$$"), (false, " y $open")]);
    }

    #[test]
    fn empty_test_is_header_only() {
        let t = TestInstance { test_id: "e-1".into(), questions: vec![], provenance: vec![] };
        assert_eq!(render_test(&t, OutputDialect::Plain, RenderOptions::default()), "Test e-1\n");
        let doc = render_test(&t, OutputDialect::Latex, RenderOptions::default());
        assert!(!doc.contains("enumerate"));
    }

    #[test]
    fn every_answer_once_and_deterministic() {
        let t = mosca_test();
        for d in OutputDialect::ALL {
            let doc = render_test(&t, d, RenderOptions::default());
            assert_eq!(doc, render_test(&t, d, RenderOptions::default()));
            for a in &t.questions[0].answers {
                let needle = match d {
                    OutputDialect::Latex => a.text.clone(),
                    OutputDialect::Html => escape_html(&a.text),
                    OutputDialect::Plain => strip_markup(&a.text),
                };
                assert_eq!(doc.matches(&needle).count(), 1, "{d:?} {needle}");
            }
        }
    }

    #[test]
    fn key_file_lines() {
        let entries = (0..20)
            .map(|i| KeyEntry { group: "g".into(), problem: format!("p{i}"), letter: 'B', choices: 4 })
            .collect();
        let k = AnswerKey { test_id: "t-1".into(), entries };
        let text = render_key(&k);
        assert_eq!(text.lines().count(), 21);
        assert_eq!(text.lines().nth(1).unwrap(), "t-1\t1\tg\tp0\tB\t4");
        let empty = AnswerKey { test_id: "t-1".into(), entries: vec![] };
        assert_eq!(render_key(&empty), format!("{KEY_HEADER}\n"));
    }
}
