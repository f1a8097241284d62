//! The parity protocol: a base run, the zero-signal test, and the
//! two-partition search over the offset count `M`.

use std::fmt;

use crate::ensemble::{run_sequence, Readout, SignalVector};
use crate::error::{Error, Result};
use crate::oracle::{MSpec, PhaseFunction, Sign, UF_CALLS_PER_UO};
use crate::scalar::Scalar;
use crate::spin::SpinSystemConfig;

/// Spin whose amplitude drives the search.
pub const SEARCH_SPIN: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `par(f)`: `+1` for an even number of marked inputs, `−1` otherwise.
    pub fn value(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn of_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "+1",
            Parity::Odd => "-1",
        })
    }
}

/// What a run told the controller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    /// Base run saw a zero line: `G` is even.
    ZeroSignal,
    /// Base run saw no zero line: start the search with this sign.
    StartSearch,
    /// Offset too small: the signal keeps the sign of `P_1`.
    Raise,
    /// Offset too large: the signal flipped sign.
    Lower,
    /// Spin-1 signal vanished at this `M`.
    ZeroPoint,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::ZeroSignal => "zero-signal",
            Decision::StartSearch => "start-search",
            Decision::Raise => "raise",
            Decision::Lower => "lower",
            Decision::ZeroPoint => "zero-point",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Iteration<T> {
    /// `None` for the base run.
    pub m: Option<usize>,
    pub sign: Option<Sign>,
    pub amplitudes: Vec<T>,
    pub zero_flags: Vec<bool>,
    pub decision: Decision,
}

/// Where the search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroPoint {
    pub m: usize,
    /// False when the zero at `M = N/2` was implied by the bracket rather
    /// than measured.
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace<T> {
    pub iterations: Vec<Iteration<T>>,
    pub uo_calls: usize,
    pub uf_calls: usize,
    pub zero_point: Option<ZeroPoint>,
    pub parity: Parity,
}

impl<T> RunTrace<T> {
    pub fn runs(&self) -> usize {
        self.iterations.len()
    }
}

struct Recorder<T> {
    iterations: Vec<Iteration<T>>,
}

impl<T: Scalar> Recorder<T> {
    fn push(&mut self, m: Option<usize>, sign: Option<Sign>, signal: &SignalVector<T>, decision: Decision) {
        self.iterations.push(Iteration {
            m,
            sign,
            amplitudes: signal.amplitudes().to_vec(),
            zero_flags: signal.zero_flags().to_vec(),
            decision,
        });
    }

    fn finish(self, zero_point: Option<ZeroPoint>, parity: Parity) -> RunTrace<T> {
        let uo_calls = self.iterations.len();
        RunTrace { iterations: self.iterations, uo_calls, uf_calls: UF_CALLS_PER_UO * uo_calls, zero_point, parity }
    }
}

/// Determines `par(f)` with at most `n` oracle runs.
///
/// The search keeps a bracket `lo < hi` on `M` with the signed spin-1
/// signal positive at `lo` and non-positive at `hi`. `lo = 0` is the base
/// run; `hi = N/2` needs no measurement since the full-half offset can never
/// leave a signal of the original sign. The signal moves by exactly one unit
/// per unit of `M`, so a closed bracket pins a zero at `hi`.
pub fn solve_parity<T: Scalar>(
    config: &SpinSystemConfig<T>,
    f: &PhaseFunction,
    readout: Readout<T>,
) -> Result<RunTrace<T>> {
    let mut rec = Recorder { iterations: Vec::new() };
    let base = run_sequence(config, f, None, readout)?;
    if base.any_zero() {
        rec.push(None, None, &base, Decision::ZeroSignal);
        return Ok(rec.finish(None, Parity::Even));
    }
    let Some(sign) = Sign::of(base.amplitude(SEARCH_SPIN)) else {
        return Err(Error::Inconsistent("spin-1 amplitude has no sign but was not flagged zero".into()));
    };
    rec.push(None, Some(sign), &base, Decision::StartSearch);

    let half = config.dim() / 2;
    let (mut lo, mut hi) = (0usize, half);
    let mut hi_measured = false;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let spec = MSpec::new(config.n(), mid, sign)?;
        let signal = run_sequence(config, f, Some(&spec), readout)?;
        if signal.is_zero(SEARCH_SPIN) {
            rec.push(Some(mid), Some(sign), &signal, Decision::ZeroPoint);
            return Ok(rec.finish(Some(ZeroPoint { m: mid, observed: true }), Parity::of_count(mid)));
        }
        if Sign::of(signal.amplitude(SEARCH_SPIN)) == Some(sign) {
            rec.push(Some(mid), Some(sign), &signal, Decision::Raise);
            lo = mid;
        } else {
            rec.push(Some(mid), Some(sign), &signal, Decision::Lower);
            hi = mid;
            hi_measured = true;
        }
    }
    if hi_measured {
        return Err(Error::Inconsistent(format!(
            "signal jumps across zero between M={lo} and M={hi} without vanishing"
        )));
    }
    Ok(rec.finish(Some(ZeroPoint { m: hi, observed: false }), Parity::of_count(hi)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CallCounts {
    pub uo: usize,
    pub uf: usize,
}

/// Worst-case oracle usage for `n` work qubits.
pub fn projected_call_counts(n: usize) -> CallCounts {
    CallCounts { uo: n, uf: UF_CALLS_PER_UO * n }
}
