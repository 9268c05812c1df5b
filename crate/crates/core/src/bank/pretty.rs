use std::fmt::Write;

use crate::expr::scan_conversions;

use super::{AnswerSpec, ProblemBank, ProblemDef, QuestionDef};

/// Normalized listing of a bank for proofreading. Every directive sits on
/// its own line with fixed indentation; parsing the listing gives back an
/// equal bank.
pub fn pretty_print_bank(bank: &ProblemBank) -> String {
    let mut out = String::new();
    for (i, p) in bank.problems().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        problem(&mut out, p);
    }
    out
}

fn problem(out: &mut String, p: &ProblemDef) {
    writeln!(out, "\\begin{{Problem}}{{{}}}{{{}}}", p.name, p.group).unwrap();
    for param in &p.parameters {
        writeln!(out, "  \\Parameter{{{}}}{{{}}}", param.name, param.description).unwrap();
        writeln!(out, "  \\Domain{{{}}}{{{}}}", param.name, param.domain).unwrap();
        if let Some(f) = &param.format {
            writeln!(out, "  \\Format{{{}}}='{}'", param.name, f).unwrap();
        }
        for c in &param.conditions {
            writeln!(out, "  \\Cond='{c}'").unwrap();
        }
    }
    for c in &p.global_conditions {
        writeln!(out, "  \\Cond='{c}'").unwrap();
    }
    for q in &p.questions {
        question(out, q);
    }
    out.push_str("\\end{Problem}\n");
}

fn block(out: &mut String, env: &str, text: &str) {
    writeln!(out, "    \\begin{{{env}}}").unwrap();
    for line in text.lines() {
        if line.is_empty() {
            out.push('\n');
        } else {
            writeln!(out, "      {line}").unwrap();
        }
    }
    writeln!(out, "    \\end{{{env}}}").unwrap();
}

fn question(out: &mut String, q: &QuestionDef) {
    out.push_str("  \\begin{Question}\n");
    block(out, "Ask", &q.ask);
    for d in &q.definitions {
        writeln!(out, "    \\Def{{{}}}='{}'", d.symbol, d.expr).unwrap();
        if let Some(f) = &d.format {
            writeln!(out, "    \\Format{{{}}}='{}'", d.symbol, f).unwrap();
        }
    }
    for c in &q.conditions {
        writeln!(out, "    \\Cond='{c}'").unwrap();
    }
    if !q.solution.is_empty() {
        block(out, "Solution", &q.solution);
    }
    answers(out, &q.answers);
    out.push_str("  \\end{Question}\n");
}

fn answers(out: &mut String, a: &AnswerSpec) {
    out.push_str("    \\begin{Answers}\n");
    let format = match &a.number_format {
        Some(f) => match scan_conversions(&a.presentation).ok().and_then(|c| c.into_iter().next()) {
            Some((slot, _)) => format!(
                "{}{}{}",
                &a.presentation[..slot.start],
                f.pattern(),
                &a.presentation[slot.end..]
            ),
            None => a.presentation.clone(),
        },
        None => a.presentation.clone(),
    };
    if format != "%s" {
        writeln!(out, "      \\Format='{format}'").unwrap();
    }
    for r in &a.right {
        writeln!(out, "      \\Right='{r}'").unwrap();
    }
    for w in &a.wrong {
        writeln!(out, "      \\Wrong='{w}'").unwrap();
    }
    out.push_str("    \\end{Answers}\n");
}
