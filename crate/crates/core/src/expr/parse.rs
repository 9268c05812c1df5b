use thiserror::Error;

use super::{is_greek, CmpOp, Condition, Expr, Func, Symbol};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("unknown command \\{name} at byte {offset}")]
    UnknownCommand { offset: usize, name: String },
    #[error("unbalanced brace at byte {offset}")]
    UnbalancedBraces { offset: usize },
}

impl ParseError {
    /// Byte offset of the problem inside the parsed text, when known.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownCommand { offset, .. }
            | ParseError::UnbalancedBraces { offset } => Some(*offset),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Letter(char),
    Greek(String),
    Func(Func),
    Sqrt,
    Frac,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Subscript(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Cmp(CmpOp),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Letter(c) => format!("symbol {c}"),
            Tok::Greek(g) => format!("symbol \\{g}"),
            Tok::Func(f) => format!("\\{}", f.name()),
            Tok::Sqrt => "\\sqrt".into(),
            Tok::Frac => "\\frac".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Subscript(_) => "'_'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Cmp(op) => format!("'{}'", op.as_str()),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Tok::Num(_)
                | Tok::Letter(_)
                | Tok::Greek(_)
                | Tok::Func(_)
                | Tok::Sqrt
                | Tok::Frac
                | Tok::LParen
                | Tok::LBrace
        )
    }
}

const ATOM: &[&str] = &["number", "symbol", "'('", "'{'", "\\sqrt", "\\frac", "function"];

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut open_braces = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' | b'~' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                if text == "." {
                    return Err(ParseError::Syntax {
                        offset: start,
                        expected: vec!["digit"],
                        found: "'.'".into(),
                    });
                }
                out.push((Tok::Num(text.to_string()), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                out.push((Tok::Letter(c as char), start));
                i += 1;
                continue;
            }
            b'\\' => {
                i += 1;
                let name_start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let name = &src[name_start..i];
                if name.is_empty() {
                    // control symbols: only the spacing ones are meaningful here
                    match bytes.get(i) {
                        Some(b',') | Some(b';') | Some(b'!') | Some(b' ') | Some(b':') => {
                            i += 1;
                            continue;
                        }
                        _ => {
                            let found = src[i..].chars().next().map(String::from).unwrap_or_default();
                            return Err(ParseError::UnknownCommand { offset: start, name: found });
                        }
                    }
                }
                let tok = match name {
                    "cdot" | "times" => Tok::Star,
                    "div" => Tok::Slash,
                    "left" | "right" | "quad" | "qquad" => continue,
                    "sqrt" => Tok::Sqrt,
                    "frac" | "dfrac" | "tfrac" => Tok::Frac,
                    "lt" => Tok::Cmp(CmpOp::Lt),
                    "le" | "leq" => Tok::Cmp(CmpOp::Le),
                    "gt" => Tok::Cmp(CmpOp::Gt),
                    "ge" | "geq" => Tok::Cmp(CmpOp::Ge),
                    "ne" | "neq" => Tok::Cmp(CmpOp::Ne),
                    _ => {
                        if let Some(f) = Func::from_name(name) {
                            Tok::Func(f)
                        } else if is_greek(name) {
                            Tok::Greek(name.to_string())
                        } else {
                            return Err(ParseError::UnknownCommand {
                                offset: start,
                                name: name.to_string(),
                            });
                        }
                    }
                };
                out.push((tok, start));
                continue;
            }
            b'_' => {
                i += 1;
                while i < bytes.len() && bytes[i] == b' ' {
                    i += 1;
                }
                let sub = match bytes.get(i) {
                    Some(b'{') => {
                        let mut depth = 1;
                        let body_start = i + 1;
                        let mut j = body_start;
                        while j < bytes.len() && depth > 0 {
                            match bytes[j] {
                                b'{' => depth += 1,
                                b'}' => depth -= 1,
                                _ => {}
                            }
                            j += 1;
                        }
                        if depth > 0 {
                            return Err(ParseError::UnbalancedBraces { offset: i });
                        }
                        let body = src[body_start..j - 1].trim();
                        i = j;
                        body.to_string()
                    }
                    Some(b) if b.is_ascii_alphanumeric() => {
                        i += 1;
                        (*b as char).to_string()
                    }
                    Some(b'\\') => {
                        let cmd_start = i;
                        i += 1;
                        while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                            i += 1;
                        }
                        src[cmd_start..i].to_string()
                    }
                    _ => String::new(),
                };
                if sub.is_empty() {
                    return Err(ParseError::Syntax {
                        offset: start,
                        expected: vec!["subscript"],
                        found: "nothing".into(),
                    });
                }
                out.push((Tok::Subscript(sub), start));
                continue;
            }
            b'{' => {
                open_braces.push(start);
                out.push((Tok::LBrace, start));
            }
            b'}' => {
                if open_braces.pop().is_none() {
                    return Err(ParseError::UnbalancedBraces { offset: start });
                }
                out.push((Tok::RBrace, start));
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'<' | b'>' | b'=' | b'!' => {
                let next_eq = bytes.get(i + 1) == Some(&b'=');
                let op = match (c, next_eq) {
                    (b'<', true) => CmpOp::Le,
                    (b'<', false) => CmpOp::Lt,
                    (b'>', true) => CmpOp::Ge,
                    (b'>', false) => CmpOp::Gt,
                    (b'=', _) => CmpOp::Eq,
                    (b'!', true) => CmpOp::Ne,
                    _ => {
                        return Err(ParseError::Syntax {
                            offset: start,
                            expected: vec!["'!='"],
                            found: "'!'".into(),
                        })
                    }
                };
                i += if next_eq { 2 } else { 1 };
                out.push((Tok::Cmp(op), start));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: ATOM.to_vec(),
                    found: format!("character {ch:?}"),
                });
            }
        }
        i += 1;
    }
    if let Some(&offset) = open_braces.first() {
        return Err(ParseError::UnbalancedBraces { offset });
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    declared: &'a [Symbol],
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, declared: &'a [Symbol]) -> Result<Self, ParseError> {
        if src.trim().is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(Parser { src, toks: lex(src)?, pos: 0, declared })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["operator", "end of input"]))
        }
    }

    // sum := signed (('+' | '-') signed)*
    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.signed()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.signed()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.signed()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    // signed := '-' signed | '+' signed | explicit
    fn signed(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::neg(self.signed()?))
            }
            Tok::Plus => {
                self.bump();
                self.signed()
            }
            _ => self.explicit(),
        }
    }

    // explicit := implicit (('*' | '/') implicit)*
    fn explicit(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.implicit()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.implicit()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::div(lhs, self.implicit()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    // implicit := power power*
    fn implicit(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while self.peek().starts_atom() {
            lhs = Expr::mul(lhs, self.power()?);
        }
        Ok(lhs)
    }

    // power := atom ('^' exponent)?
    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            Ok(Expr::pow(base, self.exponent()?))
        } else {
            Ok(base)
        }
    }

    // right-associative: a^b^c = a^(b^c)
    fn exponent(&mut self) -> Result<Expr, ParseError> {
        let operand = self.tex_argument()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            Ok(Expr::pow(operand, self.exponent()?))
        } else {
            Ok(operand)
        }
    }

    /// A TeX macro argument: a brace group or a single token. A bare
    /// multi-digit number contributes only its first digit, as in TeX
    /// (`x^23` is `x^{2} 3`).
    fn tex_argument(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::LBrace => self.brace_group(),
            Tok::Num(text) => {
                let first = text.chars().next().unwrap();
                if !first.is_ascii_digit() {
                    return Err(self.error(&["'{'", "digit"]));
                }
                let off = self.offset();
                if text.len() > 1 {
                    self.toks[self.pos] = (Tok::Num(text[1..].to_string()), off + 1);
                } else {
                    self.bump();
                }
                Ok(Expr::Const(f64::from(first.to_digit(10).unwrap())))
            }
            Tok::Letter(c) => {
                self.bump();
                Ok(Expr::Sym(Symbol::latin(c)))
            }
            Tok::Greek(g) => {
                self.bump();
                Ok(Expr::Sym(Symbol::greek(&g)))
            }
            Tok::Sqrt | Tok::Frac | Tok::Func(_) => self.atom(),
            _ => Err(self.error(&["'{'", "digit", "symbol"])),
        }
    }

    fn brace_group(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LBrace, "'{'")?;
        let e = self.sum()?;
        self.expect(Tok::RBrace, "'}'")?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let off = self.offset();
        match self.peek().clone() {
            Tok::Num(text) => {
                self.bump();
                let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: off,
                    expected: vec!["number"],
                    found: text.clone(),
                })?;
                Ok(Expr::Const(v))
            }
            Tok::Letter(c) => {
                self.bump();
                self.symbol_tail(Symbol::latin(c))
            }
            Tok::Greek(g) => {
                self.bump();
                self.symbol_tail(Symbol::greek(&g))
            }
            Tok::Sqrt => {
                self.bump();
                Ok(Expr::sqrt(self.tex_argument()?))
            }
            Tok::Frac => {
                self.bump();
                let num = self.tex_argument()?;
                let den = self.tex_argument()?;
                Ok(Expr::frac(num, den))
            }
            Tok::Func(f) => {
                self.bump();
                let arg = match self.peek() {
                    Tok::LBrace => self.brace_group()?,
                    Tok::LParen => self.paren_group()?,
                    _ => return Err(self.error(&["'{'", "'('"])),
                };
                Ok(Expr::call(f, arg))
            }
            Tok::LParen => self.paren_group(),
            Tok::LBrace => self.brace_group(),
            _ => Err(self.error(ATOM)),
        }
    }

    fn paren_group(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let e = self.sum()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(e)
    }

    fn symbol_tail(&mut self, mut sym: Symbol) -> Result<Expr, ParseError> {
        if let Tok::Subscript(sub) = self.peek().clone() {
            self.bump();
            sym = sym.with_subscript(sub);
        }
        // a declared decorated name such as a^{(2)} is a symbol, not a power
        if let Some(decl) = self.declared.iter().find(|d| **d == sym && d.decoration().is_some()) {
            let dec = decl.decoration().unwrap();
            if let Some(end) = self.decoration_match(dec) {
                self.pos = end;
                return Ok(Expr::Sym(decl.clone()));
            }
        }
        Ok(Expr::Sym(sym))
    }

    /// If the upcoming tokens are `^{<dec>}`, the token index just past them.
    fn decoration_match(&self, dec: &str) -> Option<usize> {
        if self.toks[self.pos].0 != Tok::Caret || self.toks.get(self.pos + 1)?.0 != Tok::LBrace {
            return None;
        }
        let open = self.toks[self.pos + 1].1;
        let mut depth = 0;
        for (k, (t, off)) in self.toks.iter().enumerate().skip(self.pos + 1) {
            match t {
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    depth -= 1;
                    if depth == 0 {
                        let raw = &self.src[open + 1..*off];
                        return same_ignoring_space(raw, dec).then_some(k + 1);
                    }
                }
                Tok::End => return None,
                _ => {}
            }
        }
        None
    }

    fn comparator(&mut self) -> Result<CmpOp, ParseError> {
        match self.peek() {
            Tok::Cmp(op) => {
                let op = *op;
                self.bump();
                Ok(op)
            }
            _ => Err(self.error(&["comparison operator"])),
        }
    }
}

fn same_ignoring_space(a: &str, b: &str) -> bool {
    a.chars().filter(|c| !c.is_whitespace()).eq(b.chars().filter(|c| !c.is_whitespace()))
}

/// Parses an expression in the LaTeX subset.
///
/// Precedence, tightest first: `^` (right-associative), implicit
/// multiplication by juxtaposition, explicit `*` `/` `\cdot` `\times`,
/// unary minus, `+` `-`. Juxtaposition binding tighter than `/` makes
/// `1/2R` mean `1/(2R)`.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    parse_expression_with(text, &[])
}

/// Like [`parse_expression`], but `declared` lists symbols whose declaration
/// carried a superscript decoration; `a^{(2)}` then names that symbol
/// instead of raising `a` to a power.
pub fn parse_expression_with(text: &str, declared: &[Symbol]) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text, declared)?;
    let e = p.sum()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_condition(text: &str) -> Result<Condition, ParseError> {
    parse_condition_with(text, &[])
}

pub fn parse_condition_with(text: &str, declared: &[Symbol]) -> Result<Condition, ParseError> {
    let mut p = Parser::new(text, declared)?;
    let lhs = p.sum()?;
    let op = p.comparator()?;
    let rhs = p.sum()?;
    p.finish()?;
    Ok(Condition { lhs, op, rhs })
}

/// Parses a symbol as written at a declaration site: `R`, `a_1`, `\Delta`,
/// `a^{(2)}`. Here a superscript is always a decoration.
pub fn parse_symbol(text: &str) -> Result<Symbol, ParseError> {
    let mut p = Parser::new(text, &[])?;
    let mut sym = match p.bump() {
        Tok::Letter(c) => Symbol::latin(c),
        Tok::Greek(g) => Symbol::greek(&g),
        _ => {
            p.pos = 0;
            return Err(p.error(&["symbol"]));
        }
    };
    if let Tok::Subscript(sub) = p.peek().clone() {
        p.bump();
        sym = sym.with_subscript(sub);
    }
    if *p.peek() == Tok::Caret {
        p.bump();
        match p.peek().clone() {
            Tok::LBrace => {
                let open = p.offset();
                let close = text.rfind('}').unwrap_or(text.len());
                let dec = text[open + 1..close].trim();
                if dec.is_empty() {
                    return Err(p.error(&["decoration"]));
                }
                sym = sym.with_decoration(dec);
                while !matches!(p.peek(), Tok::End) && p.offset() < close {
                    p.bump();
                }
                p.expect(Tok::RBrace, "'}'")?;
            }
            Tok::Num(n) => {
                p.bump();
                sym = sym.with_decoration(n);
            }
            _ => return Err(p.error(&["'{'"])),
        }
    }
    p.finish()?;
    Ok(sym)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: f64) -> Expr {
        Expr::num(v)
    }

    fn s(name: char) -> Expr {
        Expr::sym(Symbol::latin(name))
    }

    fn sub(name: char, sub: &str) -> Expr {
        Expr::sym(Symbol::latin(name).with_subscript(sub))
    }

    #[test]
    fn mosca_definition() {
        let e = parse_expression("\\sqrt{4 R^2 + H^2}").unwrap();
        let want = Expr::sqrt(Expr::add(
            Expr::mul(c(4.0), Expr::pow(s('R'), c(2.0))),
            Expr::pow(s('H'), c(2.0)),
        ));
        assert_eq!(e, want);
    }

    #[test]
    fn single_symbol() {
        assert_eq!(parse_expression("x").unwrap(), s('x'));
    }

    /// Hand-built trees for the juxtaposition and precedence rules.
    #[test]
    fn juxtaposition_table() {
        let table: Vec<(&str, Expr)> = vec![
            ("2R", Expr::mul(c(2.0), s('R'))),
            ("a_1 b", Expr::mul(sub('a', "1"), s('b'))),
            ("ab", Expr::mul(s('a'), s('b'))),
            ("abc", Expr::mul(Expr::mul(s('a'), s('b')), s('c'))),
            ("0.35d", Expr::mul(c(0.35), s('d'))),
            ("1/2R", Expr::div(c(1.0), Expr::mul(c(2.0), s('R')))),
            ("a*b c", Expr::mul(s('a'), Expr::mul(s('b'), s('c')))),
            ("a b*c", Expr::mul(Expr::mul(s('a'), s('b')), s('c'))),
            ("2x^2", Expr::mul(c(2.0), Expr::pow(s('x'), c(2.0)))),
            ("-a b", Expr::neg(Expr::mul(s('a'), s('b')))),
            ("-a*b", Expr::neg(Expr::mul(s('a'), s('b')))),
            ("-2^2", Expr::neg(Expr::pow(c(2.0), c(2.0)))),
            ("a-b-c", Expr::sub(Expr::sub(s('a'), s('b')), s('c'))),
            ("a/b/c", Expr::div(Expr::div(s('a'), s('b')), s('c'))),
            ("a^b^c", Expr::pow(s('a'), Expr::pow(s('b'), s('c')))),
            ("x^23", Expr::mul(Expr::pow(s('x'), c(2.0)), c(3.0))),
            ("(a+b) c", Expr::mul(Expr::add(s('a'), s('b')), s('c'))),
            ("2(a+b)", Expr::mul(c(2.0), Expr::add(s('a'), s('b')))),
            ("2\\sqrt{x}", Expr::mul(c(2.0), Expr::sqrt(s('x')))),
            (
                "\\frac12 x",
                Expr::mul(Expr::frac(c(1.0), c(2.0)), s('x')),
            ),
            (
                "\\alpha_{max} \\Delta S",
                Expr::mul(
                    Expr::mul(
                        Expr::sym(Symbol::greek("alpha").with_subscript("max")),
                        Expr::sym(Symbol::greek("Delta")),
                    ),
                    s('S'),
                ),
            ),
            ("a \\cdot b", Expr::mul(s('a'), s('b'))),
            ("a + -b", Expr::add(s('a'), Expr::neg(s('b')))),
            ("\\sin(x) y", Expr::mul(Expr::call(Func::Sin, s('x')), s('y'))),
            ("\\left( a \\right) b", Expr::mul(s('a'), s('b'))),
        ];
        for (src, want) in table {
            assert_eq!(parse_expression(src).unwrap(), want, "{src}");
        }
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_expression("a + * b").unwrap_err() {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 4),
            e => panic!("{e:?}"),
        }
        assert_eq!(
            parse_expression("a + \\foo").unwrap_err(),
            ParseError::UnknownCommand { offset: 4, name: "foo".into() }
        );
        assert_eq!(parse_expression("\\sqrt{a").unwrap_err(), ParseError::UnbalancedBraces { offset: 5 });
        assert_eq!(parse_expression("a}").unwrap_err(), ParseError::UnbalancedBraces { offset: 1 });
        assert_eq!(parse_expression("  ").unwrap_err(), ParseError::Empty);
        assert!(matches!(parse_expression("(a"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(parse_expression("\\sin x").is_err());
        assert!(parse_expression("a * -b").is_err());
        assert!(parse_expression("a < b").is_err());
    }

    #[test]
    fn conditions() {
        let c = parse_condition("R > 0").unwrap();
        assert_eq!(c.op, CmpOp::Gt);
        assert_eq!(parse_condition("d \\neq 2R").unwrap().op, CmpOp::Ne);
        assert_eq!(parse_condition("a <= b").unwrap().op, CmpOp::Le);
        assert_eq!(parse_condition("a \\geq b").unwrap().op, CmpOp::Ge);
        assert!(parse_condition("a").is_err());
        assert!(parse_condition("a < b < c").is_err());
    }

    #[test]
    fn declaration_symbols() {
        let a2 = parse_symbol("a^{(2)}").unwrap();
        assert_eq!(a2.decoration(), Some("(2)"));
        assert_eq!(parse_symbol("x_{max}").unwrap().subscript(), Some("max"));
        assert!(parse_symbol("2").is_err());
        assert!(parse_symbol("ab").is_err());

        // decorated names only resolve as symbols when declared
        let declared = [a2.clone()];
        let e = parse_expression_with("a^{(2)} + 1", &declared).unwrap();
        assert_eq!(e, Expr::add(Expr::sym(a2), c(1.0)));
        let plain = parse_expression_with("a^{2}", &declared).unwrap();
        assert_eq!(plain, Expr::pow(s('a'), c(2.0)));
    }
}
