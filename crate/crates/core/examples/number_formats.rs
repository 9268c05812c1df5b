//! printf-style number formatting as used for answers and placeholders.
//!
//! Run with `cargo run --example number_formats`.

use quizforge::expr::{format_value, FormatSpec};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = 52f64.sqrt();
    for pattern in ["%.2f", "%g", "%.0f", "%10.4e", "%+08.3f", "%#g", "%d", "d = %.1f cm"] {
        let spec = FormatSpec::parse(pattern)?;
        println!("{pattern:>12}  {:?}", format_value(d, &spec)?);
    }

    // two values that differ internally can print the same
    let spec = FormatSpec::parse("%.2f")?;
    println!("7.211 -> {}, 7.214 -> {}", format_value(7.211, &spec)?, format_value(7.214, &spec)?);

    // %d rounds half away from zero
    let int = FormatSpec::parse("%d")?;
    println!("2.5 -> {}, -2.5 -> {}", format_value(2.5, &int)?, format_value(-2.5, &int)?);

    println!("{:?}", FormatSpec::parse("%.2f and %g").map(|_| ()));
    Ok(())
}
