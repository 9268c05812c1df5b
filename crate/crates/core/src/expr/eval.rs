use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use super::{CmpOp, Condition, Expr, Func, Symbol};

/// Absolute tolerance used by `=` and `!=` in conditions.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol {0}")]
    Unbound(Symbol),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("definition of {0} depends on itself")]
    Cycle(Symbol),
}

fn domain(msg: impl Into<String>) -> EvalError {
    EvalError::Domain(msg.into())
}

#[derive(Clone, Debug)]
enum Entry {
    Value(f64),
    Defined(Expr),
}

/// Symbol table mixing concrete parameter values and derived definitions.
///
/// Derived symbols are evaluated when looked up, so rebinding a parameter is
/// immediately visible through every quantity defined from it. Results are
/// cached until the next mutation.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    entries: BTreeMap<Symbol, Entry>,
    cache: RefCell<HashMap<Symbol, f64>>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds (or rebinds) a concrete value.
    pub fn set(&mut self, sym: Symbol, value: f64) {
        self.entries.insert(sym, Entry::Value(value));
        self.cache.get_mut().clear();
    }

    /// Installs a derived definition. Rejects definitions that would make
    /// the dependency graph cyclic; the bindings are unchanged on error.
    pub fn define(&mut self, sym: Symbol, expr: Expr) -> Result<(), EvalError> {
        let mut seen = HashSet::new();
        let mut stack: Vec<Symbol> = expr.symbols().into_iter().collect();
        while let Some(s) = stack.pop() {
            if s == sym {
                return Err(EvalError::Cycle(sym));
            }
            if !seen.insert(s.clone()) {
                continue;
            }
            if let Some(Entry::Defined(e)) = self.entries.get(&s) {
                stack.extend(e.symbols());
            }
        }
        self.entries.insert(sym, Entry::Defined(expr));
        self.cache.get_mut().clear();
        Ok(())
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        self.entries.contains_key(sym)
    }

    pub fn definition(&self, sym: &Symbol) -> Option<&Expr> {
        match self.entries.get(sym) {
            Some(Entry::Defined(e)) => Some(e),
            _ => None,
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.entries.keys()
    }

    /// Current value of `sym`, evaluating its definition if it has one.
    pub fn get(&self, sym: &Symbol) -> Result<f64, EvalError> {
        if let Some(v) = self.cache.borrow().get(sym) {
            return Ok(*v);
        }
        let v = match self.entries.get(sym) {
            Some(Entry::Value(v)) => *v,
            Some(Entry::Defined(e)) => evaluate(e, self)?,
            None if sym.base() == "pi" && sym.subscript().is_none() => std::f64::consts::PI,
            None => return Err(EvalError::Unbound(sym.clone())),
        };
        self.cache.borrow_mut().insert(sym.clone(), v);
        Ok(v)
    }

    /// Every symbol with its current value.
    pub fn snapshot(&self) -> Result<BTreeMap<Symbol, f64>, EvalError> {
        self.entries.keys().map(|s| Ok((s.clone(), self.get(s)?))).collect()
    }
}

fn finite(v: f64, what: &str) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("{what} is not a finite number")))
    }
}

/// Evaluates `e` in double precision against `b`.
///
/// Undefined operations (square root of a negative, division by zero,
/// logarithm of a non-positive value, non-finite results) are errors rather
/// than NaN.
pub fn evaluate(e: &Expr, b: &Bindings) -> Result<f64, EvalError> {
    match e {
        Expr::Const(v) => Ok(*v),
        Expr::Sym(s) => b.get(s),
        Expr::Neg(a) => Ok(-evaluate(a, b)?),
        Expr::Add(x, y) => finite(evaluate(x, b)? + evaluate(y, b)?, "sum"),
        Expr::Sub(x, y) => finite(evaluate(x, b)? - evaluate(y, b)?, "difference"),
        Expr::Mul(x, y) => finite(evaluate(x, b)? * evaluate(y, b)?, "product"),
        Expr::Div(x, y) | Expr::Frac(x, y) => {
            let num = evaluate(x, b)?;
            let den = evaluate(y, b)?;
            if den == 0.0 {
                return Err(domain("division by zero"));
            }
            finite(num / den, "quotient")
        }
        Expr::Pow(x, y) => {
            let base = evaluate(x, b)?;
            let exp = evaluate(y, b)?;
            if base == 0.0 && exp < 0.0 {
                return Err(domain("zero raised to a negative power"));
            }
            if base < 0.0 && exp.fract() != 0.0 {
                return Err(domain("negative base raised to a non-integer power"));
            }
            finite(base.powf(exp), "power")
        }
        Expr::Sqrt(a) => {
            let v = evaluate(a, b)?;
            if v < 0.0 {
                return Err(domain(format!("square root of negative value {v}")));
            }
            Ok(v.sqrt())
        }
        Expr::Call(f, a) => {
            let v = evaluate(a, b)?;
            match f {
                Func::Sin => Ok(v.sin()),
                Func::Cos => Ok(v.cos()),
                Func::Tan => finite(v.tan(), "tangent"),
                Func::Exp => finite(v.exp(), "exponential"),
                Func::Abs => Ok(v.abs()),
                Func::Ln | Func::Log if v <= 0.0 => {
                    Err(domain(format!("logarithm of non-positive value {v}")))
                }
                Func::Ln => Ok(v.ln()),
                Func::Log => Ok(v.log10()),
            }
        }
    }
}

/// Ordering comparators are exact; `=` and `!=` use
/// [`EQUALITY_TOLERANCE`].
pub fn evaluate_condition(c: &Condition, b: &Bindings) -> Result<bool, EvalError> {
    let l = evaluate(&c.lhs, b)?;
    let r = evaluate(&c.rhs, b)?;
    Ok(match c.op {
        CmpOp::Lt => l < r,
        CmpOp::Le => l <= r,
        CmpOp::Gt => l > r,
        CmpOp::Ge => l >= r,
        CmpOp::Eq => (l - r).abs() <= EQUALITY_TOLERANCE,
        CmpOp::Ne => (l - r).abs() > EQUALITY_TOLERANCE,
    })
}
