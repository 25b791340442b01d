//! Sweep rows and their CSV form.

use crate::{HarnessError, Result};
use std::path::Path;

/// Float formatting with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub q: u64,
    /// Cusp divisor v.
    pub cusp: u64,
    pub n: i64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub abs_error: f64,
    pub bound_denominator: f64,
    pub ratio: f64,
}

pub const RECORD_HEADER: [&str; 12] = [
    "q",
    "cusp",
    "n",
    "t",
    "x",
    "y",
    "theta",
    "value_re",
    "value_im",
    "abs_error",
    "bound_denominator",
    "ratio",
];

impl ResultRecord {
    pub fn fields(&self) -> Vec<String> {
        let mut v = vec![self.q.to_string(), self.cusp.to_string(), self.n.to_string()];
        v.extend(
            [
                self.t,
                self.x,
                self.y,
                self.theta,
                self.value_re,
                self.value_im,
                self.abs_error,
                self.bound_denominator,
                self.ratio,
            ]
            .iter()
            .map(|&f| fmt17(f)),
        );
        v
    }

    /// Canonical order: (q, cusp, n, t, y, x, θ).
    pub fn canonical_cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.q, self.cusp, self.n)
            .cmp(&(o.q, o.cusp, o.n))
            .then(self.t.total_cmp(&o.t))
            .then(self.y.total_cmp(&o.y))
            .then(self.x.total_cmp(&o.x))
            .then(self.theta.total_cmp(&o.theta))
    }

    /// |value| / bound_denominator recomputed from the stored fields.
    pub fn recomputed_ratio(&self) -> f64 {
        self.value_re.hypot(self.value_im) / self.bound_denominator
    }
}

pub fn write_records(path: &Path, records: &[ResultRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<ResultRecord>> {
    let mut rd = csv::Reader::from_path(path)?;
    let header: Vec<String> = rd.headers()?.iter().map(str::to_owned).collect();
    if header != RECORD_HEADER {
        return Err(HarnessError::Config(format!("{} does not hold sweep records", path.display())));
    }
    let bad = |what: &str| HarnessError::Config(format!("malformed {what} in {}", path.display()));
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let f = |i: usize| -> Result<f64> { row[i].parse().map_err(|_| bad(RECORD_HEADER[i])) };
        out.push(ResultRecord {
            q: row[0].parse().map_err(|_| bad("q"))?,
            cusp: row[1].parse().map_err(|_| bad("cusp"))?,
            n: row[2].parse().map_err(|_| bad("n"))?,
            t: f(3)?,
            x: f(4)?,
            y: f(5)?,
            theta: f(6)?,
            value_re: f(7)?,
            value_im: f(8)?,
            abs_error: f(9)?,
            bound_denominator: f(10)?,
            ratio: f(11)?,
        });
    }
    Ok(out)
}
