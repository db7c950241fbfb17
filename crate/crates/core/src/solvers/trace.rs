use std::fmt::Write as _;

use crate::field::Field;
use crate::measurement::Signal;

/// Diagnostics recorded at one iteration, before the update is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterRecord {
    pub iter: usize,
    pub objective: f64,
    pub grad_norm: f64,
    pub rel_err: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxIterations,
    GradientTolerance,
    ErrorTolerance,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::MaxIterations => "max_iterations",
            Termination::GradientTolerance => "gradient_tolerance",
            Termination::ErrorTolerance => "error_tolerance",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveTrace<T: Field> {
    pub records: Vec<IterRecord>,
    pub final_iterate: Signal<T>,
    pub termination: Termination,
}

impl<T: Field> SolveTrace<T> {
    /// Index of the last recorded iteration.
    pub fn iterations(&self) -> usize {
        self.records.last().map_or(0, |r| r.iter)
    }

    pub fn final_rel_err(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.rel_err)
    }

    /// First iteration whose relative error is at or below `threshold`.
    pub fn first_below(&self, threshold: f64) -> Option<usize> {
        self.records
            .iter()
            .find(|r| r.rel_err.is_some_and(|e| e <= threshold))
            .map(|r| r.iter)
    }

    /// Trace as CSV with header `iter,grad_norm,rel_err`. A missing relative
    /// error is written as an empty field.
    pub fn to_csv(&self) -> String {
        trace_csv(&self.records)
    }
}

pub fn trace_csv(records: &[IterRecord]) -> String {
    let mut out = String::from("iter,grad_norm,rel_err\n");
    for r in records {
        let _ = write!(out, "{},{:e},", r.iter, r.grad_norm);
        if let Some(e) = r.rel_err {
            let _ = write!(out, "{e:e}");
        }
        out.push('\n');
    }
    out
}
