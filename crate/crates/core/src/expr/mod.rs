//! Math expressions written in a LaTeX subset.
//!
//! Teachers write parameters, derived quantities, conditions and answer
//! formulas with the same notation they use on paper: one-letter symbols,
//! Greek commands such as `\alpha`, subscripts like `a_1`, implicit
//! multiplication (`2R`, `4 R^2`), `\sqrt{..}` and `\frac{..}{..}`.
//! The same tree is used both to print a formula and to compute its value,
//! so what the teacher proofreads is exactly what gets evaluated.

mod eval;
mod format;
mod parse;
mod render;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use eval::{evaluate, evaluate_condition, Bindings, EvalError, EQUALITY_TOLERANCE};
pub use format::{format_value, scan_conversions, Conversion, FormatError, FormatSpec};
pub use parse::{
    parse_condition, parse_condition_with, parse_expression, parse_expression_with, parse_symbol,
    ParseError,
};
pub use render::{render_condition, render_expression};

/// Greek letter commands accepted as symbol bases.
pub const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "varepsilon", "zeta", "eta", "theta",
    "vartheta", "iota", "kappa", "lambda", "mu", "nu", "xi", "pi", "varpi", "rho", "varrho",
    "sigma", "varsigma", "tau", "upsilon", "phi", "varphi", "chi", "psi", "omega", "Gamma",
    "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Upsilon", "Phi", "Psi", "Omega",
];

pub(crate) fn is_greek(name: &str) -> bool {
    GREEK.contains(&name)
}

/// A variable name: one Latin letter or one Greek command, with an optional
/// subscript.
///
/// A superscript decoration such as the `(2)` of `a^{(2)}` is carried for
/// display only. Identity (equality, ordering, hashing) looks at the base and
/// the subscript.
#[derive(Clone, Debug)]
pub struct Symbol {
    base: String,
    subscript: Option<String>,
    decoration: Option<String>,
}

impl Symbol {
    /// A plain Latin-letter symbol.
    ///
    /// Panics if `letter` is not an ASCII letter.
    pub fn latin(letter: char) -> Self {
        assert!(letter.is_ascii_alphabetic(), "symbol base must be a Latin letter");
        Symbol { base: letter.to_string(), subscript: None, decoration: None }
    }

    /// A Greek-letter symbol, named without the backslash (`"alpha"`).
    ///
    /// Panics if `name` is not a recognized Greek command.
    pub fn greek(name: &str) -> Self {
        assert!(is_greek(name), "unknown Greek letter {name:?}");
        Symbol { base: name.to_string(), subscript: None, decoration: None }
    }

    pub fn with_subscript(mut self, subscript: impl Into<String>) -> Self {
        self.subscript = Some(subscript.into());
        self
    }

    pub fn with_decoration(mut self, decoration: impl Into<String>) -> Self {
        self.decoration = Some(decoration.into());
        self
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn is_greek(&self) -> bool {
        self.base.len() > 1
    }

    pub fn subscript(&self) -> Option<&str> {
        self.subscript.as_deref()
    }

    pub fn decoration(&self) -> Option<&str> {
        self.decoration.as_deref()
    }

    /// Same identity, decoration removed.
    pub fn undecorated(&self) -> Symbol {
        Symbol { base: self.base.clone(), subscript: self.subscript.clone(), decoration: None }
    }

    fn key(&self) -> (&str, Option<&str>) {
        (&self.base, self.subscript.as_deref())
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_greek() {
            write!(f, "\\{}", self.base)?;
        } else {
            f.write_str(&self.base)?;
        }
        if let Some(sub) = &self.subscript {
            if sub.chars().count() == 1 && sub.chars().all(|c| c.is_ascii_alphanumeric()) {
                write!(f, "_{sub}")?;
            } else {
                write!(f, "_{{{sub}}}")?;
            }
        }
        if let Some(dec) = &self.decoration {
            write!(f, "^{{{dec}}}")?;
        }
        Ok(())
    }
}

/// Functions callable as `\name{arg}` or `\name(arg)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    /// Natural logarithm.
    Ln,
    /// Base-10 logarithm.
    Log,
    Abs,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Log => "log",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "log" => Func::Log,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

/// Expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    /// `\frac{a}{b}`; evaluates exactly like `Div`.
    Frac(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn sym(s: Symbol) -> Expr {
        Expr::Sym(s)
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }

    pub fn sqrt(a: Expr) -> Expr {
        Expr::Sqrt(Box::new(a))
    }

    pub fn frac(a: Expr, b: Expr) -> Expr {
        Expr::Frac(Box::new(a), Box::new(b))
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }

    /// Free symbols, in symbol order.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Expr::Const(_) => {}
            Expr::Sym(s) => {
                out.insert(s.clone());
            }
            Expr::Neg(a) | Expr::Sqrt(a) | Expr::Call(_, a) => a.collect_symbols(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b)
            | Expr::Frac(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// Copy of the tree with every `Frac` turned into `Div`.
    pub fn normalize_fracs(&self) -> Expr {
        let bx = |e: &Expr| Box::new(e.normalize_fracs());
        match self {
            Expr::Const(_) | Expr::Sym(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(bx(a)),
            Expr::Sqrt(a) => Expr::Sqrt(bx(a)),
            Expr::Call(f, a) => Expr::Call(*f, bx(a)),
            Expr::Add(a, b) => Expr::Add(bx(a), bx(b)),
            Expr::Sub(a, b) => Expr::Sub(bx(a), bx(b)),
            Expr::Mul(a, b) => Expr::Mul(bx(a), bx(b)),
            Expr::Div(a, b) | Expr::Frac(a, b) => Expr::Div(bx(a), bx(b)),
            Expr::Pow(a, b) => Expr::Pow(bx(a), bx(b)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_expression(self))
    }
}

/// Comparison operator of a [`Condition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn as_str(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
        }
    }
}

/// A relation that sampled parameters must satisfy, such as `R > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

impl Condition {
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = self.lhs.symbols();
        out.extend(self.rhs.symbols());
        out
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_condition(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoration_does_not_affect_identity() {
        let a = Symbol::latin('a');
        let a2 = Symbol::latin('a').with_decoration("(2)");
        assert_eq!(a, a2);
        assert_eq!(a2.to_string(), "a^{(2)}");
        assert_ne!(a, Symbol::latin('a').with_subscript("1"));
    }

    #[test]
    fn symbol_display() {
        assert_eq!(Symbol::greek("Delta").with_subscript("1").to_string(), "\\Delta_1");
        assert_eq!(Symbol::latin('x').with_subscript("max").to_string(), "x_{max}");
    }

    #[test]
    fn free_symbols() {
        let e = parse_expression("\\sqrt{4 R^2 + H^2}").unwrap();
        let names: Vec<String> = e.symbols().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["H", "R"]);
    }
}
