//! Registered test-function corpus.
//!
//! Each entry carries its analytic growth constant A_f (|f| ≤ A_f(1+x²) on
//! [0,∞)) and, where the function is twice differentiable, its second
//! derivative for the scaled-error experiments.

use crate::error::{Error, Result};
use crate::operator::TestFunction;

/// Labels of the registered corpus, in canonical order.
pub const CORPUS_LABELS: [&str; 7] = ["one", "t", "t2", "exp-neg", "sin", "abs-t-1", "inv-quad"];

/// The default function corpus: constant, linear, quadratic, decaying
/// exponential, sine, a Lipschitz-only kink, and a bounded rational.
pub fn default_corpus() -> Vec<TestFunction> {
    vec![
        TestFunction::new("one", 1.0, |_| 1.0)
            .unwrap()
            .with_second_derivative(|_| 0.0),
        // sup x/(1+x²) = 1/2 at x = 1
        TestFunction::new("t", 0.5, |t| t)
            .unwrap()
            .with_second_derivative(|_| 0.0),
        TestFunction::new("t2", 1.0, |t| t * t)
            .unwrap()
            .with_second_derivative(|_| 2.0),
        TestFunction::new("exp-neg", 1.0, |t: f64| (-t).exp())
            .unwrap()
            .with_second_derivative(|t: f64| (-t).exp()),
        TestFunction::new("sin", 1.0, |t: f64| t.sin())
            .unwrap()
            .with_second_derivative(|t: f64| -t.sin()),
        // Lipschitz but not differentiable at t = 1; no second derivative
        TestFunction::new("abs-t-1", 1.0, |t: f64| (t - 1.0).abs()).unwrap(),
        TestFunction::new("inv-quad", 1.0, |t| 1.0 / (1.0 + t * t))
            .unwrap()
            .with_second_derivative(|t| {
                let d = 1.0 + t * t;
                (6.0 * t * t - 2.0) / (d * d * d)
            }),
    ]
}

/// Looks up a corpus function by label.
pub fn corpus_function(label: &str) -> Result<TestFunction> {
    default_corpus()
        .into_iter()
        .find(|f| f.label() == label)
        .ok_or_else(|| Error::UnknownFunction(label.to_string()))
}
