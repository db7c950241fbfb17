use std::fmt::Write as _;

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check_id: String,
    pub input: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub pass: bool,
}

/// Ordered list of checks, written as CSV
/// `check_id,input,expected,actual,tolerance,pass`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: CheckRow) -> bool {
        let pass = row.pass;
        self.rows.push(row);
        pass
    }

    /// Records `|actual − expected| ≤ tol`.
    pub fn close(&mut self, id: &str, input: &str, expected: f64, actual: f64, tol: f64) -> bool {
        self.push(CheckRow {
            check_id: id.into(),
            input: input.into(),
            expected: format!("{expected:e}"),
            actual: format!("{actual:e}"),
            tolerance: format!("{tol:e}"),
            pass: (actual - expected).abs() <= tol,
        })
    }

    /// Records a qualitative condition; `actual` is the quantity it was judged on.
    pub fn holds(&mut self, id: &str, input: &str, condition: &str, actual: f64, pass: bool) -> bool {
        self.push(CheckRow {
            check_id: id.into(),
            input: input.into(),
            expected: condition.into(),
            actual: format!("{actual:e}"),
            tolerance: "0".into(),
            pass,
        })
    }

    /// Records `actual ≤ tol`, for violations measured relative to a bound.
    pub fn at_most(&mut self, id: &str, input: &str, condition: &str, actual: f64, tol: f64) -> bool {
        self.push(CheckRow {
            check_id: id.into(),
            input: input.into(),
            expected: condition.into(),
            actual: format!("{actual:e}"),
            tolerance: format!("{tol:e}"),
            pass: actual <= tol,
        })
    }

    /// Records a failure to evaluate a check.
    pub fn error(&mut self, id: &str, input: &str, err: &dyn std::fmt::Display) -> bool {
        self.push(CheckRow {
            check_id: id.into(),
            input: input.into(),
            expected: "evaluates".into(),
            actual: format!("error: {err}"),
            tolerance: "0".into(),
            pass: false,
        })
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn find(&self, check_id: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.check_id == check_id)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,input,expected,actual,tolerance,pass\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                field(&r.check_id),
                field(&r.input),
                field(&r.expected),
                field(&r.actual),
                field(&r.tolerance),
                r.pass
            );
        }
        out
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new();
        assert!(r.close("a", "x=1,y=2", 1.0, 1.0 + 1e-12, 1e-10));
        assert!(!r.holds("b", "", "< 0", 1.0, false));
        let csv = r.to_csv();
        assert!(csv.contains("\"x=1,y=2\""));
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
    }
}
