//! Data behind the three figures, as CSV rows.

use std::io::Write;

use brunel_core::analysis::{diff, thresholds};
use brunel_core::coeffs::psi_eval;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FigureId {
    /// `(p, α_p^(n) - α_p^(n+1))` with `K_n` marked
    Fig1,
    /// `(x, |ψ(x)^n - ψ(x)^(n+1)|)`
    Fig2,
    /// `(x, n ψ(x)^n - (n+1) ψ(x)^(n+1))`
    Fig3,
}

pub const DEFAULT_X_POINTS: usize = 512;
pub const DEFAULT_X_MAX: f64 = 0.9999;

/// `points` uniform abscissae from 0 to 0.9999 inclusive.
pub fn default_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|i| DEFAULT_X_MAX * i as f64 / (points - 1) as f64).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fig1Row {
    pub n: u64,
    /// Real so the `K_n` marker fits the same column.
    pub p: f64,
    pub diff: Option<f64>,
    /// `diff` for data, `K_n` for the marker row.
    pub kind: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub n: u64,
    pub x: f64,
    pub value: f64,
}

pub fn fig1(n_values: &[u64], p_max: u64) -> Vec<Fig1Row> {
    let mut rows = Vec::new();
    for &n in n_values {
        for p in 0..=p_max {
            rows.push(Fig1Row {
                n,
                p: p as f64,
                diff: Some(diff(n, p).to_f64()),
                kind: "diff",
            });
        }
        if let Some(k) = thresholds(n).k {
            rows.push(Fig1Row {
                n,
                p: k.to_f64(),
                diff: None,
                kind: "K_n",
            });
        }
    }
    rows
}

pub fn fig2(n_values: &[u64], xs: &[f64]) -> Vec<CurveRow> {
    curve(n_values, xs, |x, n| (psi_eval(x, n) - psi_eval(x, n + 1)).abs())
}

pub fn fig3(n_values: &[u64], xs: &[f64]) -> Vec<CurveRow> {
    curve(n_values, xs, |x, n| n as f64 * psi_eval(x, n) - (n + 1) as f64 * psi_eval(x, n + 1))
}

fn curve(n_values: &[u64], xs: &[f64], f: impl Fn(f64, u64) -> f64) -> Vec<CurveRow> {
    n_values
        .iter()
        .flat_map(|&n| xs.iter().map(move |&x| (n, x)))
        .map(|(n, x)| CurveRow { n, x, value: f(x, n) })
        .collect()
}

pub fn write_csv<W: Write, T: Serialize>(w: W, header: &[&str], rows: &[T]) -> csv::Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
