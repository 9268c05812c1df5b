//! Parse, render and evaluate LaTeX-subset expressions.
//!
//! Run with `cargo run --example expressions`.

use quizforge::expr::{evaluate, evaluate_condition, parse_condition, parse_expression, Bindings, Symbol};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_expression(r"\sqrt{4 R^2 + H^2}")?;
    println!("tree:      {d:?}");
    println!("rendered:  {d}");

    // juxtaposition binds tighter than an explicit slash
    for src in ["1/2R", "2R", r"a_1 b", "x^23", r"\frac{1}{2} R"] {
        println!("{src:>14}  =>  {}", parse_expression(src)?);
    }

    let mut b = Bindings::new();
    b.set(Symbol::latin('R'), 3.0);
    b.set(Symbol::latin('H'), 4.0);
    b.define(Symbol::latin('d'), d)?;
    println!("d(R=3, H=4) = {}", b.get(&Symbol::latin('d'))?);

    // derived values follow their parameters without a recompute call
    b.set(Symbol::latin('R'), 1.0);
    println!("d(R=1, H=4) = {}", b.get(&Symbol::latin('d'))?);

    let cond = parse_condition("d > 2R")?;
    println!("{cond}: {}", evaluate_condition(&cond, &b)?);

    match evaluate(&parse_expression(r"\frac{1}{R - 1}")?, &b) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("1/(R-1) at R=1: {e}"),
    }
    match parse_expression("R + * 2") {
        Ok(e) => println!("unexpected parse {e}"),
        Err(e) => println!("R + * 2: {e}"),
    }
    Ok(())
}
