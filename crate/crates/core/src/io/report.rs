use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::estimators::{HillPlotSeries, Method};
use crate::sim::{BootstrapResult, ReplicationRecord, RvrReport, ScanRow};

/// 17 significant digits, enough to round-trip any `f64`. NaN and infinities
/// are written as empty cells.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn write_text(path: impl AsRef<Path>, text: String) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

/// Pretty-printed JSON. `serde_json` writes the shortest representation that
/// parses back to the same `f64`.
pub fn write_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| crate::error::Error::Io(e.to_string()))?;
    write_text(path, text + "\n")
}

/// One row per replication: estimator values then dependence diagnostics.
pub fn write_estimates_csv(
    methods: &[Method],
    records: &[ReplicationRecord],
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut out = String::from("replication");
    for m in methods {
        write!(out, ",{m}").unwrap();
    }
    out.push_str(",lambda_hat,corr_ab,corr_cd,asymptotic_rvr\n");
    for r in records {
        write!(out, "{}", r.index).unwrap();
        for e in &r.estimates {
            write!(out, ",{}", opt(*e)).unwrap();
        }
        let dep = r.dependence.as_ref();
        writeln!(
            out,
            ",{},{},{},{}",
            opt(dep.map(|d| d.lambda_hat)),
            opt(dep.map(|d| d.corr_ab)),
            opt(dep.map(|d| d.corr_cd)),
            opt(r.asymptotic_rvr)
        )
        .unwrap();
    }
    write_text(path, out)
}

/// Row of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub baseline: Method,
    pub transferred: Method,
    pub rvr: f64,
    pub var_base: f64,
    pub var_new: f64,
    pub lambda_hat: Option<f64>,
}

impl SweepRow {
    pub fn from_report(value: f64, report: &RvrReport) -> Vec<SweepRow> {
        report
            .pairs
            .iter()
            .map(|p| SweepRow {
                value,
                baseline: p.baseline,
                transferred: p.transferred,
                rvr: p.rvr,
                var_base: p.var_base,
                var_new: p.var_new,
                lambda_hat: report.dependence.map(|d| d.lambda_hat),
            })
            .collect()
    }
}

pub fn write_sweep_csv(vary: &str, rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let mut out = format!("{vary},pair,rvr,var_base,var_new,lambda_hat\n");
    for r in rows {
        writeln!(
            out,
            "{},{}_vs_{},{},{},{},{}",
            format_number(r.value),
            r.transferred,
            r.baseline,
            format_number(r.rvr),
            format_number(r.var_base),
            format_number(r.var_new),
            opt(r.lambda_hat)
        )
        .unwrap();
    }
    write_text(path, out)
}

pub fn write_hill_plot_csv(series: &HillPlotSeries, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from("k,hill\n");
    for (k, e) in series.k_values.iter().zip(&series.estimates) {
        writeln!(out, "{k},{}", opt(*e)).unwrap();
    }
    write_text(path, out)
}

pub fn write_scan_csv(rows: &[ScanRow], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from("l,median,q1,q3,mean,negatives,evaluated,failed\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.l,
            format_number(r.median),
            format_number(r.q1),
            format_number(r.q3),
            format_number(r.mean),
            r.negatives,
            r.evaluated,
            r.failed
        )
        .unwrap();
    }
    write_text(path, out)
}

/// Long format: one `(method, index, value)` row per successful resample.
pub fn write_bootstrap_csv(result: &BootstrapResult, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from("method,index,value\n");
    for s in &result.series {
        for (i, v) in s.values.iter().enumerate() {
            writeln!(out, "{},{i},{}", s.method, format_number(*v)).unwrap();
        }
    }
    write_text(path, out)
}
