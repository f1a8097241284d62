use std::fs;
use std::path::{Path, PathBuf};

use ensemble_parity::ensemble::DEFAULT_THRESHOLD;
use ensemble_parity::reference::brute_parity;
use ensemble_parity::{solve_parity, PhaseFunction, Readout, RunTrace, SpinSystemConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{render, Format, Report};
use crate::truth_table::parse_truth_table;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSource {
    File(PathBuf),
    /// Each `x` is marked when the next ChaCha8 `f64` draw falls below
    /// `density`, with the generator seeded by `seed_from_u64(seed)`.
    Random { seed: u64, density: f64 },
    ConstPlus,
    ConstMinus,
    Single(usize),
}

impl FunctionSource {
    /// Reads `const-plus`, `const-minus`, `single:<x>`, `file:<path>`, or a
    /// bare path. `random` needs the seed and density from elsewhere.
    pub fn parse(spec: &str, seed: Option<u64>, density: f64) -> Result<Self, CliError> {
        match spec {
            "const-plus" => Ok(Self::ConstPlus),
            "const-minus" => Ok(Self::ConstMinus),
            "random" => {
                let seed = seed.ok_or_else(|| CliError::Config("random functions need --seed".into()))?;
                if !(0.0..=1.0).contains(&density) {
                    return Err(CliError::Config(format!("density {density} outside [0, 1]")));
                }
                Ok(Self::Random { seed, density })
            }
            _ => {
                if let Some(x) = spec.strip_prefix("single:") {
                    let x = x.parse().map_err(|_| CliError::Config(format!("bad index in {spec:?}")))?;
                    Ok(Self::Single(x))
                } else {
                    let path = spec.strip_prefix("file:").unwrap_or(spec);
                    if path.is_empty() {
                        return Err(CliError::Config("empty function source".into()));
                    }
                    Ok(Self::File(path.into()))
                }
            }
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Self::Random { .. })
    }

    /// Builds the function for `n` qubits. File sources carry their own `n`
    /// and reject a conflicting one.
    pub fn materialise(&self, n: Option<usize>) -> Result<PhaseFunction, CliError> {
        if let Self::File(path) = self {
            let f = read_truth_table(path)?;
            return match n {
                Some(n) if n != f.n() => {
                    Err(CliError::Config(format!("--n {n} disagrees with n = {} in {}", f.n(), path.display())))
                }
                _ => Ok(f),
            };
        }
        let n = n.ok_or_else(|| CliError::Config("--n is required unless the function comes from a file".into()))?;
        let f = match *self {
            Self::ConstPlus => PhaseFunction::constant_plus(n)?,
            Self::ConstMinus => PhaseFunction::constant_minus(n)?,
            Self::Single(x) => PhaseFunction::single(n, x)?,
            Self::Random { seed, density } => random_function(n, seed, density)?,
            Self::File(_) => unreachable!(),
        };
        Ok(f)
    }
}

pub fn random_function(n: usize, seed: u64, density: f64) -> Result<PhaseFunction, CliError> {
    let dim = PhaseFunction::constant_plus(n)?.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let marks = (0..dim).map(|_| rng.gen::<f64>() < density).collect();
    Ok(PhaseFunction::from_marks(n, marks)?)
}

pub fn read_truth_table(path: &Path) -> Result<PhaseFunction, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_truth_table(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: Option<usize>,
    pub source: FunctionSource,
    /// One value for every spin, or one per spin.
    pub epsilon: Option<Vec<f64>>,
    pub threshold: f64,
    pub snr: bool,
    pub verify: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(n: Option<usize>, source: FunctionSource) -> Self {
        Self {
            n,
            source,
            epsilon: None,
            threshold: DEFAULT_THRESHOLD,
            snr: false,
            verify: false,
            out: None,
            format: Format::Json,
        }
    }

    pub fn spin_config(&self, n: usize) -> Result<SpinSystemConfig, CliError> {
        let epsilon = match self.epsilon.as_deref() {
            None => vec![1.0; n],
            Some([e]) => vec![*e; n],
            Some(list) if list.len() == n => list.to_vec(),
            Some(list) => {
                return Err(CliError::Config(format!("{} polarisation values given for {n} spins", list.len())))
            }
        };
        Ok(SpinSystemConfig::new(n, epsilon)?)
    }

    pub fn readout(&self) -> Result<Readout, CliError> {
        if !(self.threshold.is_finite() && self.threshold >= 0.0) {
            return Err(CliError::Config(format!("threshold {} must be finite and non-negative", self.threshold)));
        }
        Ok(if self.snr { Readout::snr(self.threshold) } else { Readout::exact(self.threshold) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Mismatch,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Mismatch => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub trace: RunTrace,
    pub report: Report,
    pub rendered: String,
    pub status: Status,
}

/// Runs the protocol, checks it against brute force when asked, and writes
/// the report to `config.out` if set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let f = config.source.materialise(config.n)?;
    let spins = config.spin_config(f.n())?;
    let trace = solve_parity(&spins, &f, config.readout()?)?;
    let reference = config.verify.then(|| brute_parity(&f));
    let status = match reference {
        Some(r) if r != trace.parity.value() => Status::Mismatch,
        _ => Status::Success,
    };
    let report = Report::from_trace(f.n(), &trace, reference);
    let rendered = render(&report, config.format)?;
    if let Some(path) = &config.out {
        fs::write(path, &rendered).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(Outcome { trace, report, rendered, status })
}
