//! Tabulated potentials: UTF-8 CSV with header `x,V` and strictly increasing `x`.

use std::io::Read;
use std::path::Path;

use crate::error::CliError;

/// A potential given at sample points and interpolated linearly between them.
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulated {
    xs: Vec<f64>,
    vs: Vec<f64>,
}

/// Malformed input: the 1-based line and what is wrong with it.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseFailure {
    /// Offending line.
    pub line: u64,
    /// Description.
    pub reason: String,
}

fn fail(line: u64, reason: impl Into<String>) -> ParseFailure {
    ParseFailure { line, reason: reason.into() }
}

impl Tabulated {
    /// Reads and checks a potential file.
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let shown = path.display().to_string();
        let file = std::fs::File::open(path)
            .map_err(|e| CliError::usage(format!("cannot open potential file {shown}: {e}")))?;
        Self::parse(file).map_err(|f| CliError::PotentialFile { path: shown, line: f.line, reason: f.reason })
    }

    /// Parses CSV text.
    pub fn parse<R: Read>(input: R) -> Result<Self, ParseFailure> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(input);
        let header_line = |e: &csv::Error| e.position().map_or(1, |p| p.line());
        let header = rdr.headers().map_err(|e| fail(header_line(&e), format!("unreadable header: {e}")))?.clone();
        if header.iter().collect::<Vec<_>>() != ["x", "V"] {
            return Err(fail(1, "header must be exactly `x,V`"));
        }
        let (mut xs, mut vs) = (Vec::new(), Vec::new());
        let mut last_line = 1;
        for rec in rdr.records() {
            let rec = rec.map_err(|e| fail(header_line(&e), format!("unreadable record: {e}")))?;
            let line = rec.position().map_or(last_line + 1, |p| p.line());
            last_line = line;
            if rec.len() != 2 {
                return Err(fail(line, format!("expected 2 fields, found {}", rec.len())));
            }
            let num = |i: usize| -> Result<f64, ParseFailure> {
                let v: f64 = rec[i].parse().map_err(|_| fail(line, format!("`{}` is not a number", &rec[i])))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(fail(line, format!("`{}` is not finite", &rec[i])))
                }
            };
            let (x, v) = (num(0)?, num(1)?);
            if let Some(&prev) = xs.last() {
                if x <= prev {
                    return Err(fail(line, format!("x = {x} does not increase (previous {prev})")));
                }
            }
            xs.push(x);
            vs.push(v);
        }
        if xs.len() < 2 {
            return Err(fail(last_line, "need at least two data rows"));
        }
        Ok(Self { xs, vs })
    }

    /// First and last abscissa.
    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Linear interpolation; `NaN` outside the tabulated range.
    pub fn value(&self, x: f64) -> f64 {
        let (lo, hi) = self.range();
        if !(lo..=hi).contains(&x) {
            return f64::NAN;
        }
        let i = self.xs.partition_point(|&t| t <= x).clamp(1, self.xs.len() - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let w = (x - x0) / (x1 - x0);
        (1.0 - w) * self.vs[i - 1] + w * self.vs[i]
    }
}
