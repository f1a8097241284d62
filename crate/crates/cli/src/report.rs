use std::str::FromStr;

use ensemble_parity::{Iteration, RunTrace};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Config(format!("unknown format {other:?}, expected json or csv"))),
        }
    }
}

/// Field order here is the key order in the JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub n: usize,
    pub parity: i8,
    #[serde(rename = "G_parity_reference", skip_serializing_if = "Option::is_none")]
    pub g_parity_reference: Option<i8>,
    pub runs: usize,
    pub uo_calls: usize,
    pub uf_calls: usize,
    pub zero_point: Option<ZeroPointRow>,
    pub trace: Vec<TraceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroPointRow {
    #[serde(rename = "M")]
    pub m: usize,
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    /// 0 for the base run.
    #[serde(rename = "M")]
    pub m: usize,
    pub sign: Option<i64>,
    pub decision: &'static str,
    pub amplitudes: Vec<f64>,
}

impl TraceRow {
    fn from_iteration(it: &Iteration) -> Self {
        Self {
            m: it.m.unwrap_or(0),
            sign: it.sign.map(|s| s.value()),
            decision: it.decision.as_str(),
            amplitudes: it.amplitudes.iter().copied().map(significant12).collect(),
        }
    }
}

impl Report {
    pub fn from_trace(n: usize, trace: &RunTrace, reference: Option<i8>) -> Self {
        Self {
            n,
            parity: trace.parity.value(),
            g_parity_reference: reference,
            runs: trace.runs(),
            uo_calls: trace.uo_calls,
            uf_calls: trace.uf_calls,
            zero_point: trace.zero_point.map(|z| ZeroPointRow { m: z.m, observed: z.observed }),
            trace: trace.iterations.iter().map(TraceRow::from_iteration).collect(),
        }
    }
}

/// Rounds to 12 significant digits and folds `-0` into `0`.
pub fn significant12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Report(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(report),
    }
}

fn render_csv(report: &Report) -> Result<String, CliError> {
    let err = |e: csv::Error| CliError::Report(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["step".to_string(), "M".into(), "sign".into(), "decision".into()];
    header.extend((1..=report.n).map(|k| format!("amplitude_{k}")));
    w.write_record(&header).map_err(err)?;
    for (step, row) in report.trace.iter().enumerate() {
        let mut record = vec![step.to_string(), row.m.to_string(), row.sign.map(|s| s.to_string()).unwrap_or_default()];
        record.push(row.decision.into());
        record.extend(row.amplitudes.iter().map(|a| format!("{a:?}")));
        w.write_record(&record).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Report(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Report(e.to_string()))
}
