//! Experiment rows and their CSV/JSON renderings. The column order is part
//! of the interface:
//!
//! `algorithm, instance, m, f, s, n, online, opt, opt_kind, ratio, bound, bound_ok`
//!
//! Rationals print exactly (`49/24`, not a float); `s`, `opt`, `ratio` and
//! `bound` are empty when unavailable. JSON mirrors the same fields and adds
//! the witness assignment when one exists. Rows are sorted by
//! (instance, algorithm, m, f, n) before emission so a fixed seed yields a
//! byte-identical report.

use serde_json::{json, Value};

use crate::model::rat_json;
use crate::value::{format_exact, to_f64, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Result<OutputFormat> {
        match text {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown output format {other:?}; use csv or json"
            ))),
        }
    }
}

/// What the `opt` column actually holds. A lower bound makes the reported
/// ratio an upper bound on the true ratio, which is why the kind travels
/// with every row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptKind {
    Exact,
    Witness,
    LowerBound,
    Failed,
}

impl OptKind {
    pub fn label(self) -> &'static str {
        match self {
            OptKind::Exact => "exact",
            OptKind::Witness => "witness",
            OptKind::LowerBound => "lower-bound",
            OptKind::Failed => "failed",
        }
    }
}

/// Whether the row's ratio respects the algorithm's proven bound. Rows
/// measured against a lower bound can confirm the bound but never refute
/// it, hence the third state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCheck {
    Holds,
    Violated,
    Unknown,
}

impl BoundCheck {
    pub fn label(self) -> &'static str {
        match self {
            BoundCheck::Holds => "yes",
            BoundCheck::Violated => "no",
            BoundCheck::Unknown => "unknown",
        }
    }
}

/// Closed-form bounds are exact rationals wherever the formula is rational;
/// the doubling guarantee involves a logarithm and stays in floating point.
#[derive(Debug, Clone)]
pub enum BoundValue {
    Exact(Rat),
    Approx(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(x) => to_f64(x),
            BoundValue::Approx(x) => *x,
        }
    }

    pub fn render(&self) -> String {
        match self {
            BoundValue::Exact(x) => format_exact(x),
            BoundValue::Approx(x) => format!("{x}"),
        }
    }

    /// ratio <= bound, exactly for rational bounds and within 1e-9 for
    /// floating-point ones.
    pub fn admits(&self, ratio: &Rat) -> bool {
        match self {
            BoundValue::Exact(x) => ratio <= x,
            BoundValue::Approx(x) => to_f64(ratio) <= x + 1e-9,
        }
    }

    fn json(&self) -> Value {
        match self {
            BoundValue::Exact(x) => rat_json(x),
            BoundValue::Approx(x) => json!(x),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub algorithm: String,
    pub instance: String,
    pub m: usize,
    pub f: usize,
    pub s: Option<Rat>,
    pub n: usize,
    pub online: Rat,
    pub opt: Option<Rat>,
    pub opt_kind: OptKind,
    pub ratio: Option<Rat>,
    pub bound: Option<BoundValue>,
    pub bound_ok: BoundCheck,
    pub witness: Option<Vec<usize>>,
}

pub const CSV_HEADER: [&str; 12] = [
    "algorithm",
    "instance",
    "m",
    "f",
    "s",
    "n",
    "online",
    "opt",
    "opt_kind",
    "ratio",
    "bound",
    "bound_ok",
];

impl ReportRow {
    fn record(&self) -> [String; 12] {
        [
            self.algorithm.clone(),
            self.instance.clone(),
            self.m.to_string(),
            self.f.to_string(),
            self.s.as_ref().map(format_exact).unwrap_or_default(),
            self.n.to_string(),
            format_exact(&self.online),
            self.opt.as_ref().map(format_exact).unwrap_or_default(),
            self.opt_kind.label().to_string(),
            self.ratio.as_ref().map(format_exact).unwrap_or_default(),
            self.bound.as_ref().map(BoundValue::render).unwrap_or_default(),
            self.bound_ok.label().to_string(),
        ]
    }

    pub fn json(&self) -> Value {
        let mut row = json!({
            "algorithm": self.algorithm,
            "instance": self.instance,
            "m": self.m,
            "f": self.f,
            "s": self.s.as_ref().map(rat_json),
            "n": self.n,
            "online": rat_json(&self.online),
            "opt": self.opt.as_ref().map(rat_json),
            "opt_kind": self.opt_kind.label(),
            "ratio": self.ratio.as_ref().map(rat_json),
            "bound": self.bound.as_ref().map(BoundValue::json),
            "bound_ok": self.bound_ok.label(),
        });
        if let Some(witness) = &self.witness {
            row["witness"] = json!(witness);
        }
        row
    }
}

pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| {
        (&a.instance, &a.algorithm, a.m, a.f, a.n).cmp(&(
            &b.instance,
            &b.algorithm,
            b.m,
            b.f,
            b.n,
        ))
    });
}

pub fn csv_string(rows: &[ReportRow]) -> Result<String> {
    csv_with_prefix(&[], rows, &[])
}

/// CSV with optional extra leading columns (the sweep tables prepend the
/// swept parameter and its value).
pub fn csv_with_prefix(
    prefix_header: &[&str],
    rows: &[ReportRow],
    prefix_values: &[Vec<String>],
) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = prefix_header.iter().chain(CSV_HEADER.iter()).copied().collect();
    writer
        .write_record(&header)
        .map_err(|e| Error::Config(format!("csv write failed: {e}")))?;
    for (i, row) in rows.iter().enumerate() {
        let mut record: Vec<String> = match prefix_values.get(i) {
            Some(values) => values.clone(),
            None => vec![String::new(); prefix_header.len()],
        };
        record.extend(row.record());
        writer
            .write_record(&record)
            .map_err(|e| Error::Config(format!("csv write failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv write failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv not utf-8: {e}")))
}

pub fn json_rows(rows: &[ReportRow]) -> Value {
    Value::Array(rows.iter().map(ReportRow::json).collect())
}

pub fn render(rows: &[ReportRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => csv_string(rows),
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(&json_rows(rows))?;
            text.push('\n');
            Ok(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::rat;

    fn sample_row(name: &str) -> ReportRow {
        ReportRow {
            algorithm: "greedy".into(),
            instance: name.into(),
            m: 4,
            f: 2,
            s: None,
            n: 3,
            online: rat(5, 2),
            opt: Some(rat(1, 1)),
            opt_kind: OptKind::Exact,
            ratio: Some(rat(5, 2)),
            bound: Some(BoundValue::Exact(rat(5, 2))),
            bound_ok: BoundCheck::Holds,
            witness: Some(vec![1, 2, 3]),
        }
    }

    #[test]
    fn csv_prints_exact_fractions() {
        let text = csv_string(&[sample_row("demo")]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "greedy,demo,4,2,,3,5/2,1,exact,5/2,5/2,yes"
        );
    }

    #[test]
    fn json_mirrors_the_row_and_adds_the_witness() {
        let value = json_rows(&[sample_row("demo")]);
        let row = &value.as_array().unwrap()[0];
        assert_eq!(row["online"], serde_json::json!("5/2"));
        assert_eq!(row["opt"], serde_json::json!(1));
        assert_eq!(row["witness"], serde_json::json!([1, 2, 3]));
        assert_eq!(row["bound_ok"], serde_json::json!("yes"));
    }

    #[test]
    fn rows_sort_by_instance_then_algorithm() {
        let mut rows = vec![sample_row("b"), sample_row("a")];
        rows[0].algorithm = "zz".into();
        sort_rows(&mut rows);
        assert_eq!(rows[0].instance, "a");
        assert_eq!(rows[1].algorithm, "zz");
    }
}
