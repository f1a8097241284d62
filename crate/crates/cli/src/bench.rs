use std::fs;
use std::time::Instant;

use ensemble_parity::ensemble::run_sequence;
use ensemble_parity::spin::dense_matmul_count;
use ensemble_parity::{MSpec, Sign};
use serde::Serialize;

use crate::error::CliError;
use crate::experiment::ExperimentConfig;
use crate::report::{significant12, Format};

pub const BENCH_REPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub dim: usize,
    /// Best of [`BENCH_REPS`] timed runs.
    pub seconds: f64,
    pub dense_matmuls: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRatio {
    pub n: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub reps: usize,
    pub rows: Vec<BenchRow>,
    /// `time(n) / time(n − 1)` wherever both sizes were measured.
    pub ratios: Vec<BenchRatio>,
}

/// Times one offset run per size. The offset is `M = max(1, N/4)` so both
/// the function oracle and the compiled offset circuit are exercised.
pub fn bench(config: &ExperimentConfig, sizes: &[usize]) -> Result<BenchReport, CliError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let f = config.source.materialise(Some(n))?;
        let spins = config.spin_config(n)?;
        let readout = config.readout()?;
        let spec = MSpec::new(n, (spins.dim() / 4).max(1), Sign::Plus)?;

        let before = dense_matmul_count();
        run_sequence(&spins, &f, Some(&spec), readout)?;
        let mut best = f64::INFINITY;
        for _ in 0..BENCH_REPS {
            let start = Instant::now();
            run_sequence(&spins, &f, Some(&spec), readout)?;
            best = best.min(start.elapsed().as_secs_f64());
        }
        let dense = dense_matmul_count() - before;
        if dense != 0 {
            return Err(CliError::DensePath { n, count: dense });
        }
        rows.push(BenchRow { n, dim: spins.dim(), seconds: best, dense_matmuls: dense });
    }
    let ratios = rows
        .iter()
        .filter_map(|row| {
            let prev = rows.iter().find(|p| p.n + 1 == row.n)?;
            (prev.seconds > 0.0).then(|| BenchRatio { n: row.n, ratio: significant12(row.seconds / prev.seconds) })
        })
        .collect();
    let report = BenchReport { reps: BENCH_REPS, rows, ratios };
    if let Some(path) = &config.out {
        fs::write(path, render_bench(&report, config.format)?)
            .map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(report)
}

pub fn render_bench(report: &BenchReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Report(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &report.rows {
                w.serialize(row).map_err(|e| CliError::Report(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Report(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Report(e.to_string()))
        }
    }
}
