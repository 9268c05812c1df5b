//! printf-style number formatting.
//!
//! Supports the `f`, `e`, `g` and `d` conversions (and their upper-case
//! forms, plus `i` as a synonym of `d`) with the usual flags, field width and
//! precision. Output matches the C library byte for byte, except that `d`
//! accepts a floating value and rounds it half away from zero first.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("invalid format {pattern:?}: {reason}")]
    Invalid { pattern: String, reason: String },
    #[error("cannot format non-finite value {0}")]
    NonFinite(f64),
}

/// One parsed `%...` conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conversion {
    pub left_align: bool,
    pub plus_sign: bool,
    pub space_sign: bool,
    pub zero_pad: bool,
    pub alternate: bool,
    pub width: usize,
    pub precision: Option<usize>,
    /// One of `f F e E g G d i s`.
    pub kind: char,
}

/// Finds every conversion in `text`, skipping `%%`. Returns the byte range
/// of each conversion and its parsed form.
pub fn scan_conversions(text: &str) -> Result<Vec<(Range<usize>, Conversion)>, FormatError> {
    let invalid = |reason: &str| FormatError::Invalid {
        pattern: text.to_string(),
        reason: reason.to_string(),
    };
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i] != b'%' {
            i += 1;
            continue;
        }
        let start = i;
        i += 1;
        if b.get(i) == Some(&b'%') {
            i += 1;
            continue;
        }
        let mut conv = Conversion {
            left_align: false,
            plus_sign: false,
            space_sign: false,
            zero_pad: false,
            alternate: false,
            width: 0,
            precision: None,
            kind: 'g',
        };
        while let Some(&c) = b.get(i) {
            match c {
                b'-' => conv.left_align = true,
                b'+' => conv.plus_sign = true,
                b' ' => conv.space_sign = true,
                b'0' => conv.zero_pad = true,
                b'#' => conv.alternate = true,
                _ => break,
            }
            i += 1;
        }
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            text[s..*i].parse::<usize>().ok()
        };
        conv.width = digits(&mut i).unwrap_or(0);
        if b.get(i) == Some(&b'.') {
            i += 1;
            conv.precision = Some(digits(&mut i).unwrap_or(0));
        }
        while b.get(i) == Some(&b'l') || b.get(i) == Some(&b'L') {
            i += 1;
        }
        match b.get(i) {
            Some(&c) if b"fFeEgGdis".contains(&c) => conv.kind = c as char,
            Some(_) => return Err(invalid("unsupported conversion")),
            None => return Err(invalid("incomplete conversion")),
        }
        i += 1;
        out.push((start..i, conv));
    }
    Ok(out)
}

/// A printf-style pattern with exactly one numeric conversion, e.g. `%.2f`
/// or `%g~cm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatSpec {
    pattern: String,
    span: Range<usize>,
    conv: Conversion,
}

impl FormatSpec {
    pub fn parse(pattern: &str) -> Result<FormatSpec, FormatError> {
        let convs = scan_conversions(pattern)?;
        let invalid = |reason: &str| FormatError::Invalid {
            pattern: pattern.to_string(),
            reason: reason.to_string(),
        };
        match convs.as_slice() {
            [(span, conv)] if conv.kind != 's' => Ok(FormatSpec {
                pattern: pattern.to_string(),
                span: span.clone(),
                conv: conv.clone(),
            }),
            [(_, _)] => Err(invalid("a numeric conversion is required")),
            [] => Err(invalid("no conversion")),
            _ => Err(invalid("more than one conversion")),
        }
    }

    /// The `%g` format used when nothing else is declared.
    pub fn general() -> FormatSpec {
        FormatSpec::parse("%g").unwrap()
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    pub fn conversion(&self) -> &Conversion {
        &self.conv
    }
}

impl fmt::Display for FormatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern)
    }
}

fn unescape_percent(s: &str) -> String {
    s.replace("%%", "%")
}

/// Formats `v` with `spec`.
pub fn format_value(v: f64, spec: &FormatSpec) -> Result<String, FormatError> {
    if !v.is_finite() {
        return Err(FormatError::NonFinite(v));
    }
    let mut out = unescape_percent(&spec.pattern[..spec.span.start]);
    out.push_str(&convert(v, &spec.conv));
    out.push_str(&unescape_percent(&spec.pattern[spec.span.end..]));
    Ok(out)
}

/// `d.ddd` mantissa and decimal exponent of `|v|` rounded to `prec`
/// fractional digits.
fn exp_parts(v: f64, prec: usize) -> (String, i32) {
    let s = format!("{:.*e}", prec, v.abs());
    let (mant, exp) = s.split_once('e').unwrap();
    (mant.to_string(), exp.parse().unwrap())
}

fn exp_text(mant: &str, exp: i32, upper: bool) -> String {
    let e = if upper { 'E' } else { 'e' };
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}{e}{sign}{:02}", exp.abs())
}

fn with_point(mut digits: String, alternate: bool) -> String {
    if alternate && !digits.contains('.') {
        digits.push('.');
    }
    digits
}

fn strip_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn convert(v: f64, c: &Conversion) -> String {
    let negative = v.is_sign_negative();
    let upper = c.kind.is_ascii_uppercase();
    let mut zero_pad = c.zero_pad && !c.left_align;
    let body = match c.kind.to_ascii_lowercase() {
        'f' => with_point(format!("{:.*}", c.precision.unwrap_or(6), v.abs()), c.alternate),
        'e' => {
            let (mant, exp) = exp_parts(v, c.precision.unwrap_or(6));
            exp_text(&with_point(mant, c.alternate), exp, upper)
        }
        'g' => {
            let p = match c.precision {
                Some(0) => 1,
                Some(p) => p,
                None => 6,
            };
            let (mant, x) = exp_parts(v, p - 1);
            let text = if (x as i64) < p as i64 && x >= -4 {
                let fixed = format!("{:.*}", (p as i64 - 1 - x as i64) as usize, v.abs());
                if c.alternate {
                    with_point(fixed, true)
                } else {
                    strip_zeros(&fixed)
                }
            } else if c.alternate {
                exp_text(&with_point(mant, true), x, upper)
            } else {
                exp_text(&strip_zeros(&mant), x, upper)
            };
            text
        }
        _ => {
            // d, i
            let rounded = v.abs().round();
            let mut digits = format!("{rounded:.0}");
            if let Some(p) = c.precision {
                zero_pad = false;
                if p == 0 && rounded == 0.0 {
                    digits.clear();
                }
                if digits.len() < p {
                    digits = format!("{}{digits}", "0".repeat(p - digits.len()));
                }
            }
            digits
        }
    };
    let is_int = matches!(c.kind, 'd' | 'i');
    let sign = if negative && !(is_int && v.abs().round() == 0.0) {
        "-"
    } else if c.plus_sign {
        "+"
    } else if c.space_sign {
        " "
    } else {
        ""
    };
    let len = sign.len() + body.len();
    if len >= c.width {
        return format!("{sign}{body}");
    }
    let pad = c.width - len;
    if c.left_align {
        format!("{sign}{body}{}", " ".repeat(pad))
    } else if zero_pad {
        format!("{sign}{}{body}", "0".repeat(pad))
    } else {
        format!("{}{sign}{body}", " ".repeat(pad))
    }
}
