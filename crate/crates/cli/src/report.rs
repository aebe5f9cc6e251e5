//! Report rows for the reproduction command, with human, CSV, and JSON
//! renderings.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
        }
    }
}

/// Shortest round-trip rendering of a float: plain decimal notation in the
/// human-scale range, scientific notation outside it (where plain notation
/// would pad hundreds of zeros). Either form parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    let magnitude = x.abs();
    if x != 0.0 && !(1e-5..1e17).contains(&magnitude) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// One checked quantity: what was computed, what it should equal, and
/// whether the declared tolerance held.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub label: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: String,
    pub status: Status,
}

impl ReportRow {
    pub fn new(
        id: &str,
        label: &str,
        computed: f64,
        reference: f64,
        tolerance: &str,
        pass: bool,
    ) -> Self {
        let abs_err = (computed - reference).abs();
        let rel_err = if reference != 0.0 {
            abs_err / reference.abs()
        } else {
            abs_err
        };
        ReportRow {
            id: id.to_string(),
            label: label.to_string(),
            computed,
            reference,
            abs_err,
            rel_err,
            tolerance: tolerance.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }
}

pub fn to_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("report rows serialize")
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("id,label,computed,reference,abs_err,rel_err,tolerance,status\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.id,
            row.label,
            fmt_f64(row.computed),
            fmt_f64(row.reference),
            fmt_f64(row.abs_err),
            fmt_f64(row.rel_err),
            row.tolerance,
            row.status
        ));
    }
    out
}

pub fn to_human(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<6} {:<68} {:>24} {:>24} {:>12} {:<22} {}\n",
        "id", "label", "computed", "reference", "rel_err", "tolerance", "status"
    ));
    for row in rows {
        out.push_str(&format!(
            "{:<6} {:<68} {:>24} {:>24} {:>12.3e} {:<22} {}\n",
            row.id,
            row.label,
            fmt_f64(row.computed),
            fmt_f64(row.reference),
            row.rel_err,
            row.tolerance,
            row.status
        ));
    }
    let passed = rows.iter().filter(|r| r.status == Status::Pass).count();
    out.push_str(&format!("\n{passed}/{} rows passed\n", rows.len()));
    out
}
