use super::{Condition, Expr, Func};

/// Binding strength of a rendered fragment, loosest first. Mirrors the
/// parser's grammar levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Signed,
    Explicit,
    Implicit,
    Power,
    Atom,
}

struct Frag {
    text: String,
    level: Level,
}

impl Frag {
    fn new(text: String, level: Level) -> Self {
        Frag { text, level }
    }

    fn at_least(self, level: Level) -> String {
        if self.level >= level {
            self.text
        } else {
            format!("({})", self.text)
        }
    }
}

/// Renders an expression back to LaTeX-subset source with minimal
/// parentheses. `parse_expression` maps the output back to the same tree.
pub fn render_expression(e: &Expr) -> String {
    render(e).text
}

pub fn render_condition(c: &Condition) -> String {
    format!("{} {} {}", render_expression(&c.lhs), c.op.as_str(), render_expression(&c.rhs))
}

fn starts_with_digit(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_digit() || c == '.')
}

fn render(e: &Expr) -> Frag {
    match e {
        Expr::Const(v) => {
            if *v < 0.0 || (*v == 0.0 && v.is_sign_negative()) {
                Frag::new(format!("-{}", -v), Level::Signed)
            } else {
                Frag::new(format!("{v}"), Level::Atom)
            }
        }
        Expr::Sym(s) => Frag::new(s.to_string(), Level::Atom),
        Expr::Add(a, b) => Frag::new(
            format!("{} + {}", render(a).at_least(Level::Sum), render(b).at_least(Level::Signed)),
            Level::Sum,
        ),
        Expr::Sub(a, b) => Frag::new(
            format!("{} - {}", render(a).at_least(Level::Sum), render(b).at_least(Level::Signed)),
            Level::Sum,
        ),
        Expr::Neg(a) => {
            let inner = render(a).at_least(Level::Signed);
            let sep = if inner.starts_with('-') { " " } else { "" };
            Frag::new(format!("-{sep}{inner}"), Level::Signed)
        }
        Expr::Mul(a, b) => {
            let rhs = render(b);
            if rhs.level >= Level::Power && !starts_with_digit(&rhs.text) {
                let lhs = render(a).at_least(Level::Implicit);
                Frag::new(format!("{lhs} {}", rhs.text), Level::Implicit)
            } else if rhs.level >= Level::Implicit {
                let lhs = render(a).at_least(Level::Explicit);
                Frag::new(format!("{lhs} \\cdot {}", rhs.text), Level::Explicit)
            } else {
                let lhs = render(a).at_least(Level::Implicit);
                Frag::new(format!("{lhs} ({})", rhs.text), Level::Implicit)
            }
        }
        Expr::Div(a, b) => Frag::new(
            format!(
                "{} / {}",
                render(a).at_least(Level::Explicit),
                render(b).at_least(Level::Implicit)
            ),
            Level::Explicit,
        ),
        Expr::Pow(a, b) => {
            let base = match &**a {
                Expr::Sym(s) if s.decoration().is_some() => format!("{{{s}}}"),
                _ => render(a).at_least(Level::Atom),
            };
            Frag::new(format!("{base}^{{{}}}", render(b).text), Level::Power)
        }
        Expr::Sqrt(a) => Frag::new(format!("\\sqrt{{{}}}", render(a).text), Level::Atom),
        Expr::Frac(a, b) => Frag::new(
            format!("\\frac{{{}}}{{{}}}", render(a).text, render(b).text),
            Level::Atom,
        ),
        Expr::Call(Func::Abs, a) => Frag::new(format!("\\abs{{{}}}", render(a).text), Level::Atom),
        Expr::Call(f, a) => Frag::new(format!("\\{}({})", f.name(), render(a).text), Level::Atom),
    }
}
