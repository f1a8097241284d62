//! Simulator for the NMR spin-ensemble parity algorithm.
//!
//! A Boolean function `f: {0..N−1} → {±1}` is compiled into diagonal phase
//! oracles, the ensemble deviation state `Σ_k ε_k I_ky` is pushed through
//! oracle, offset phase shift, a 90°_y pulse and a purge filter, and the
//! per-spin longitudinal signal drives a bisection that settles `par(f)` in at
//! most `n` runs.
//!
//! Matrix-valued types are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`, which is what the tolerances in the
//! test-suite assume.

pub mod ensemble;
pub mod error;
pub mod oracle;
pub mod protocol;
pub mod reference;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use oracle::{
    build_um_compiled, build_um_direct, build_uf, build_uo, canonical_index_set, integer_phase_parameter,
    nonselective_block_shift, selective_phase_shift, CircuitFactor, CompiledCircuit, MSpec, PhaseFunction, Sign,
};
pub use protocol::{projected_call_counts, solve_parity, CallCounts, Decision, Parity, ZeroPoint};
pub use scalar::Scalar;
pub use spin::{coherence_order, unit_number_table, Axis, UnitNumberTable};

pub type Complex64 = num_complex::Complex<f64>;

pub type SpinSystemConfig = spin::SpinSystemConfig<f64>;
pub type Operator = spin::Operator<f64>;
pub type DiagonalUnitary = spin::DiagonalUnitary<f64>;
pub type DeviationState = spin::DeviationState<f64>;
pub type PulseSpec = ensemble::PulseSpec<f64>;
pub type SignalVector = ensemble::SignalVector<f64>;
pub type Readout = ensemble::Readout<f64>;
pub type RunTrace = protocol::RunTrace<f64>;
pub type Iteration = protocol::Iteration<f64>;

pub type SpinSystemConfigF32 = spin::SpinSystemConfig<f32>;
pub type OperatorF32 = spin::Operator<f32>;
pub type DiagonalUnitaryF32 = spin::DiagonalUnitary<f32>;
pub type DeviationStateF32 = spin::DeviationState<f32>;
pub type SignalVectorF32 = ensemble::SignalVector<f32>;
pub type RunTraceF32 = protocol::RunTrace<f32>;
