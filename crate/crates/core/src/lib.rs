//! Parametric multiple-choice quiz engine.
//!
//! The pipeline runs in five stages, one module each:
//!
//! - [`expr`]: LaTeX-subset math expressions (parse, evaluate, render,
//!   printf-style formatting).
//! - [`bank`]: the question-bank language (`.qbk` files), validation and the
//!   normalized checkout listing.
//! - [`instantiate`]: parameter sampling under conditions, answer
//!   materialization and printed-value collision checks.
//! - [`assemble`]: test specifications (`.tsp` files), scrambled copies and
//!   answer keys.
//! - [`emit`]: LaTeX, HTML and plain-text documents plus key files.
//! - [`score`]: grading, per-topic statistics, cohort arithmetic and the
//!   random-guessing baseline.
//!
//! All randomness flows through [`rng::QuizRng`] streams derived from explicit
//! seeds.

pub mod assemble;
pub mod bank;
pub mod emit;
pub mod expr;
pub mod instantiate;
pub mod rng;
pub mod score;
