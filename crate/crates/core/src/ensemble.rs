//! Ensemble dynamics: initial deviation state, hard pulses, the purge filter,
//! longitudinal readout, and closed-form evaluators of the oracle action.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::oracle::{build_um_direct, build_uo, MSpec, PhaseFunction};
use crate::scalar::Scalar;
use crate::spin::{
    accumulate_tensor, build_ds, coherence_order, single, spin_bit, spin_mask, unit_number_table, Axis,
    DeviationState, Mat2, Operator, SpinSystemConfig, Unitary,
};

/// Default zero-detection threshold on readout amplitudes.
pub const DEFAULT_THRESHOLD: f64 = 1e-9;

/// Largest system the product-operator expansion will assemble.
pub const EXPANSION_QUBIT_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseAxis {
    X,
    Y,
}

/// Simultaneous hard pulse `exp(−i·angle·Σ_k I_k,axis)` on every work spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec<T> {
    axis: PulseAxis,
    angle: T,
}

impl<T: Scalar> PulseSpec<T> {
    pub fn new(axis: PulseAxis, angle: T) -> Result<Self> {
        let full = T::PI() + T::PI();
        if !(angle > -full && angle < full) {
            return Err(Error::InvalidConfig(format!("pulse angle {angle} outside (-2π, 2π)")));
        }
        Ok(Self { axis, angle })
    }

    /// The 90°_y pulse of the protocol.
    pub fn y90() -> Self {
        Self { axis: PulseAxis::Y, angle: T::FRAC_PI_2() }
    }

    pub fn axis(&self) -> PulseAxis {
        self.axis
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    /// Single-spin factor `cos(a/2) E − i sin(a/2) σ_axis`.
    pub fn single_spin_rotation(&self) -> Mat2<T> {
        let half = self.angle * T::lit(0.5);
        let (s, c) = half.sin_cos();
        let cc = Complex::new(c, T::zero());
        match self.axis {
            PulseAxis::X => [[cc, Complex::new(T::zero(), -s)], [Complex::new(T::zero(), -s), cc]],
            PulseAxis::Y => [[cc, Complex::new(-s, T::zero())], [Complex::new(s, T::zero()), cc]],
        }
    }

    /// Dense `N×N` pulse propagator; for cross-checks only.
    pub fn to_operator(&self, n: usize) -> Operator<T> {
        crate::spin::tensor_product(&vec![self.single_spin_rotation(); n])
    }
}

/// How the detected amplitude is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReadoutMode {
    /// Integer-valued `2·Tr(ρ I_kz)/ε_k`.
    #[default]
    Exact,
    /// Exact amplitude times `2/N`, the physical fraction of full signal.
    Snr,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Readout<T> {
    pub threshold: T,
    pub mode: ReadoutMode,
}

impl<T: Scalar> Readout<T> {
    pub fn exact(threshold: T) -> Self {
        Self { threshold, mode: ReadoutMode::Exact }
    }

    pub fn snr(threshold: T) -> Self {
        Self { threshold, mode: ReadoutMode::Snr }
    }
}

impl<T: Scalar> Default for Readout<T> {
    fn default() -> Self {
        Self::exact(T::lit(DEFAULT_THRESHOLD))
    }
}

/// Per-spin signed amplitudes with zero-detection flags.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalVector<T> {
    amplitudes: Vec<T>,
    zero: Vec<bool>,
    threshold: T,
    mode: ReadoutMode,
}

impl<T: Scalar> SignalVector<T> {
    fn new(amplitudes: Vec<T>, threshold: T, mode: ReadoutMode) -> Self {
        let zero = amplitudes.iter().map(|a| a.abs() < threshold).collect();
        Self { amplitudes, zero, threshold, mode }
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    /// Amplitude of spin `k` (1-based).
    pub fn amplitude(&self, k: usize) -> T {
        self.amplitudes[k - 1]
    }

    pub fn zero_flags(&self) -> &[bool] {
        &self.zero
    }

    pub fn is_zero(&self, k: usize) -> bool {
        self.zero[k - 1]
    }

    pub fn any_zero(&self) -> bool {
        self.zero.iter().any(|z| *z)
    }

    pub fn threshold(&self) -> T {
        self.threshold
    }

    pub fn mode(&self) -> ReadoutMode {
        self.mode
    }
}

/// `ρ_I(0) = Σ_k ε_k I_ky`, assembled in `O(nN)`.
pub fn initial_state<T: Scalar>(config: &SpinSystemConfig<T>) -> DeviationState<T> {
    let n = config.n();
    let dim = config.dim();
    let mut rho = Operator::zeros(dim);
    let half = T::lit(0.5);
    for (k, &eps) in (1..=n).zip(config.epsilon()) {
        let mask = spin_mask(n, k);
        for x in (0..dim).filter(|x| x & mask == 0) {
            let y = x | mask;
            rho[(x, y)] += Complex::new(T::zero(), -half * eps);
            rho[(y, x)] += Complex::new(T::zero(), half * eps);
        }
    }
    DeviationState::from_operator_unchecked(rho)
}

/// `R ρ R†` with `R = ⊗_k r`, applied one spin at a time in `O(nN²)`.
pub fn apply_pulse<T: Scalar>(state: &DeviationState<T>, pulse: &PulseSpec<T>) -> Result<DeviationState<T>> {
    let dim = state.dim();
    if !dim.is_power_of_two() {
        return Err(Error::Structure { kind: "deviation state", detail: format!("dimension {dim} is not 2^n") });
    }
    let n = dim.trailing_zeros() as usize;
    let r = pulse.single_spin_rotation();
    let mut rho = state.rho().clone();
    let data = rho.as_mut_slice();
    for k in 1..=n {
        let mask = spin_mask(n, k);
        // rows: ρ ← (r ⊗ E) ρ
        for r0 in (0..dim).filter(|x| x & mask == 0) {
            let r1 = r0 | mask;
            for c in 0..dim {
                let a = data[r0 * dim + c];
                let b = data[r1 * dim + c];
                data[r0 * dim + c] = r[0][0] * a + r[0][1] * b;
                data[r1 * dim + c] = r[1][0] * a + r[1][1] * b;
            }
        }
        // columns: ρ ← ρ (r ⊗ E)†
        for row in data.chunks_exact_mut(dim) {
            for c0 in (0..dim).filter(|x| x & mask == 0) {
                let c1 = c0 | mask;
                let a = row[c0];
                let b = row[c1];
                row[c0] = a * r[0][0].conj() + b * r[0][1].conj();
                row[c1] = a * r[1][0].conj() + b * r[1][1].conj();
            }
        }
    }
    Ok(DeviationState::from_operator_unchecked(rho))
}

fn filter_elements<T: Scalar>(state: &DeviationState<T>, keep: impl Fn(usize, usize) -> bool) -> DeviationState<T> {
    let dim = state.dim();
    let mut rho = state.rho().clone();
    for (r, row) in rho.as_mut_slice().chunks_exact_mut(dim).enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            if !keep(r, c) {
                *x = Complex::default();
            }
        }
    }
    DeviationState::from_operator_unchecked(rho)
}

/// Ideal z-gradient: removes every element of nonzero coherence order.
pub fn gradient_filter<T: Scalar>(state: &DeviationState<T>) -> DeviationState<T> {
    filter_elements(state, |r, c| coherence_order(r, c) == 0)
}

/// Ideal zero-quantum dephasing: removes off-diagonal order-0 elements.
pub fn zero_quantum_filter<T: Scalar>(state: &DeviationState<T>) -> DeviationState<T> {
    filter_elements(state, |r, c| r == c || coherence_order(r, c) != 0)
}

/// Full purge pulse: gradient followed by zero-quantum dephasing.
pub fn purge<T: Scalar>(state: &DeviationState<T>) -> DeviationState<T> {
    zero_quantum_filter(&gradient_filter(state))
}

/// Extracts `2·Tr(ρ I_kz)/ε_k` for each spin from a purged state.
pub fn read_signal<T: Scalar>(
    state: &DeviationState<T>,
    config: &SpinSystemConfig<T>,
    readout: Readout<T>,
) -> Result<SignalVector<T>> {
    if state.dim() != config.dim() {
        return Err(Error::DimensionMismatch { expected: config.dim(), found: state.dim() });
    }
    if readout.threshold.is_nan() || readout.threshold < T::zero() {
        return Err(Error::InvalidConfig(format!("detection threshold {} must be non-negative", readout.threshold)));
    }
    let off = state.rho().max_off_diagonal();
    if off > T::structural_tol() {
        return Err(Error::NotDiagonal { max_offdiag: off.to_f64().unwrap_or(f64::NAN) });
    }
    let n = config.n();
    let diag = state.rho().diagonal();
    let scale = match readout.mode {
        ReadoutMode::Exact => T::one(),
        ReadoutMode::Snr => T::lit(2.0) / T::from_count(config.dim() as i64),
    };
    // 2·Tr(ρ I_kz) = Σ_s a_k^s ρ_ss
    let amplitudes = (1..=n)
        .zip(config.epsilon())
        .map(|(k, &eps)| {
            let tr2 = diag.iter().enumerate().fold(T::zero(), |acc, (s, d)| {
                if spin_bit(n, k, s) == 0 {
                    acc + d.re
                } else {
                    acc - d.re
                }
            });
            scale * tr2 / eps
        })
        .collect();
    Ok(SignalVector::new(amplitudes, readout.threshold, readout.mode))
}

fn ds_matrix<T: Scalar>(dim: usize, s: usize) -> Result<Operator<T>> {
    let n = dim.trailing_zeros() as usize;
    build_ds(&unit_number_table(n), s)
}

/// `C_s(θ) ρ C_s(θ)†` from its four-term expansion, with dense products.
pub fn conjugate_selective_analytic<T: Scalar>(state: &DeviationState<T>, s: usize, theta: T) -> Result<DeviationState<T>> {
    let d = ds_matrix::<T>(state.dim(), s)?;
    expand_conjugation(state.rho(), &d, theta, |rho| d.matmul(rho)?.matmul(&d))
}

/// `U_o(θ) ρ U_o(θ)†` from the expansion in `Σ_s g(s) D_s`, with the double
/// sum `Σ_{s,t} g(s) g(t) D_s ρ D_t` taken term by term.
pub fn conjugate_oracle_analytic<T: Scalar>(
    state: &DeviationState<T>,
    f: &PhaseFunction,
    theta: T,
) -> Result<DeviationState<T>> {
    let dim = state.dim();
    if f.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: f.dim() });
    }
    let mut d = Operator::zeros(dim);
    for s in f.marked() {
        d = d.add(&ds_matrix(dim, s)?)?;
    }
    expand_conjugation(state.rho(), &d, theta, |rho| {
        let mut acc = Operator::zeros(dim);
        for s in f.marked() {
            for t in f.marked() {
                // D_s ρ D_t keeps only the (s, t) entry of ρ.
                acc[(s, t)] += rho[(s, t)];
            }
        }
        Ok(acc)
    })
}

fn expand_conjugation<T: Scalar>(
    rho: &Operator<T>,
    d: &Operator<T>,
    theta: T,
    sandwich: impl FnOnce(&Operator<T>) -> Result<Operator<T>>,
) -> Result<DeviationState<T>> {
    let (sin, cos) = theta.sin_cos();
    let one_minus_cos = T::one() - cos;
    let rd = rho.matmul(d)?;
    let dr = d.matmul(rho)?;
    let anti = rd.add(&dr)?;
    let comm = rd.sub(&dr)?;
    let mut out = rho.clone();
    out.add_assign_scaled(&anti, Complex::new(-one_minus_cos, T::zero()))?;
    out.add_assign_scaled(&comm, Complex::new(T::zero(), sin))?;
    let weight = one_minus_cos * one_minus_cos + sin * sin;
    out.add_assign_scaled(&sandwich(rho)?, Complex::new(weight, T::zero()))?;
    Ok(DeviationState::from_operator_unchecked(out))
}

/// `U_o(θ) (Σ_k ε_k I_ky) U_o(θ)†` assembled from its explicit
/// product-operator expansion (single-index anticommutator and sine terms
/// plus the `t > s` pair sum).
pub fn evolved_state_expansion<T: Scalar>(
    config: &SpinSystemConfig<T>,
    f: &PhaseFunction,
    theta: T,
) -> Result<DeviationState<T>> {
    let n = config.n();
    if n > EXPANSION_QUBIT_CAP {
        return Err(Error::SizeCap { n, cap: EXPANSION_QUBIT_CAP });
    }
    if f.n() != n {
        return Err(Error::DimensionMismatch { expected: config.dim(), found: f.dim() });
    }
    let table = unit_number_table(n);
    let eps = config.epsilon();
    let (sin, cos) = theta.sin_cos();
    let one_minus_cos = T::one() - cos;
    let weight = one_minus_cos * one_minus_cos + sin * sin;
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    let iy = single::spin_half::<T>(Axis::Y);
    let ix = single::spin_half::<T>(Axis::X);
    let iz = single::spin_half::<T>(Axis::Z);
    let real = |x: T| Complex::new(x, T::zero());

    let mut rho = initial_state(config).into_operator();
    let marked: Vec<usize> = f.marked().collect();
    let mut factors: Vec<Mat2<T>> = Vec::with_capacity(n);

    for &s in &marked {
        for k in 1..=n {
            factors.clear();
            factors.extend((1..=n).map(|j| if j == k { single::scale(&iy, eps[k - 1]) } else { single::z_projector(table.get(j, s)) }));
            accumulate_tensor(&mut rho, &factors, real(-one_minus_cos))?;

            factors[k - 1] = single::scale(&ix, eps[k - 1] * T::from_count(table.get(k, s) as i64));
            accumulate_tensor(&mut rho, &factors, real(-sin))?;
        }
    }

    for (i, &s) in marked.iter().enumerate() {
        for &t in &marked[i + 1..] {
            for k in 1..=n {
                factors.clear();
                for j in 1..=n {
                    let (a, b) = (table.get(j, s) as i64, table.get(j, t) as i64);
                    let m = if j == k {
                        single::scale(&iy, half * eps[k - 1] * T::from_count(1 - a * b))
                    } else {
                        single::combine(quarter * T::from_count(1 + a * b), half * T::from_count(a + b), &iz)
                    };
                    factors.push(m);
                }
                accumulate_tensor(&mut rho, &factors, real(weight))?;
            }
        }
    }
    Ok(DeviationState::from_operator_unchecked(rho))
}

/// Purged state after `U_o(π/2)`, optionally `U_M(−π/2)`, and `90°_y`.
pub fn final_state<T: Scalar>(
    config: &SpinSystemConfig<T>,
    f: &PhaseFunction,
    mspec: Option<&MSpec>,
) -> Result<DeviationState<T>> {
    if f.n() != config.n() {
        return Err(Error::DimensionMismatch { expected: config.dim(), found: f.dim() });
    }
    let mut state = build_uo(f, T::FRAC_PI_2()).conjugate(&initial_state(config))?;
    if let Some(spec) = mspec {
        if spec.n() != config.n() {
            return Err(Error::InvalidMSpec(format!("spec is for n={}, system has n={}", spec.n(), config.n())));
        }
        state = build_um_direct::<T>(spec)?.conjugate(&state)?;
    }
    let pulsed = apply_pulse(&state, &PulseSpec::y90())?;
    Ok(purge(&pulsed))
}

/// One complete experiment: prepare, oracle, optional offset, pulse, purge, read.
pub fn run_sequence<T: Scalar>(
    config: &SpinSystemConfig<T>,
    f: &PhaseFunction,
    mspec: Option<&MSpec>,
    readout: Readout<T>,
) -> Result<SignalVector<T>> {
    read_signal(&final_state(config, f, mspec)?, config, readout)
}

/// `(2/N) Σ_k ε_k c_k I_kz` for integer coefficients `c_k`.
pub fn longitudinal_state<T: Scalar>(config: &SpinSystemConfig<T>, coefficients: &[i64]) -> Result<DeviationState<T>> {
    let n = config.n();
    if coefficients.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: coefficients.len() });
    }
    let dim = config.dim();
    let norm = T::lit(2.0) / T::from_count(dim as i64);
    let diag: Vec<Complex<T>> = (0..dim)
        .map(|s| {
            let v = (1..=n).fold(T::zero(), |acc, k| {
                let iz = if spin_bit(n, k, s) == 0 { T::lit(0.5) } else { T::lit(-0.5) };
                acc + config.epsilon()[k - 1] * T::from_count(coefficients[k - 1]) * iz
            });
            Complex::new(norm * v, T::zero())
        })
        .collect();
    Ok(DeviationState::from_operator_unchecked(Operator::from_diagonal(&diag)))
}
