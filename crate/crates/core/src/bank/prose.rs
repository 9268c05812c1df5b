//! Prose blocks (`Ask`, `Solution`) and their placeholders.

use std::ops::Range;

use crate::expr::{parse_symbol, ParseError, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceholderKind {
    /// `\Val{x}`: formatted value.
    Val,
    /// `\FVal{x}`: formatted value of a derived symbol.
    FVal,
    /// `\Expr{x}`: the defining expression, rendered.
    Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Placeholder {
    pub kind: PlaceholderKind,
    pub symbol: Symbol,
    /// Byte range of the whole `\Val{...}` in the prose.
    pub span: Range<usize>,
}

/// Finds `\Val`, `\FVal` and `\Expr` placeholders in order of appearance.
pub fn placeholders(text: &str) -> Result<Vec<Placeholder>, (usize, ParseError)> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while let Some(rel) = text[i..].find('\\') {
        let start = i + rel;
        let name_end = text[start + 1..]
            .find(|c: char| !c.is_ascii_alphabetic())
            .map_or(text.len(), |k| start + 1 + k);
        let kind = match &text[start + 1..name_end] {
            "Val" => PlaceholderKind::Val,
            "FVal" => PlaceholderKind::FVal,
            "Expr" => PlaceholderKind::Expr,
            _ => {
                // skip the command name, or the single control character
                i = if name_end > start + 1 {
                    name_end
                } else {
                    start + 1 + text[start + 1..].chars().next().map_or(0, char::len_utf8)
                };
                continue;
            }
        };
        if b.get(name_end) != Some(&b'{') {
            i = name_end;
            continue;
        }
        let mut depth = 0;
        let mut close = None;
        for (k, &c) in b.iter().enumerate().skip(name_end) {
            match c {
                b'{' => depth += 1,
                b'}' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(k);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or((name_end, ParseError::UnbalancedBraces { offset: 0 }))?;
        let symbol = parse_symbol(&text[name_end + 1..close]).map_err(|e| (name_end + 1, e))?;
        out.push(Placeholder { kind, symbol, span: start..close + 1 });
        i = close + 1;
    }
    Ok(out)
}

/// Removes `%` comments (an escaped `\%` is kept).
pub fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for (n, line) in text.split('\n').enumerate() {
        if n > 0 {
            out.push('\n');
        }
        out.push_str(&line[..comment_start(line).unwrap_or(line.len())]);
    }
    out
}

/// Byte index of an unescaped `%` in `line`.
pub fn comment_start(line: &str) -> Option<usize> {
    let b = line.as_bytes();
    let mut backslashes = 0;
    for (i, &c) in b.iter().enumerate() {
        if c == b'%' && backslashes % 2 == 0 {
            return Some(i);
        }
        backslashes = if c == b'\\' { backslashes + 1 } else { 0 };
    }
    None
}

/// Normalizes a prose block: comments removed, trailing spaces trimmed,
/// surrounding blank lines dropped and the common indentation removed.
/// Everything else is kept as written.
pub fn normalize_block(raw: &str) -> String {
    let stripped = strip_comments(raw);
    let lines: Vec<&str> = stripped.split('\n').map(str::trim_end).collect();
    let first = lines.iter().position(|l| !l.is_empty());
    let last = lines.iter().rposition(|l| !l.is_empty());
    let (Some(first), Some(last)) = (first, last) else {
        return String::new();
    };
    let body = &lines[first..=last];
    let indent = body
        .iter()
        .filter(|l| !l.is_empty())
        .map(|l| l.len() - l.trim_start_matches([' ', '\t']).len())
        .min()
        .unwrap_or(0);
    body.iter()
        .map(|l| if l.is_empty() { "" } else { &l[indent..] })
        .collect::<Vec<_>>()
        .join("\n")
}
