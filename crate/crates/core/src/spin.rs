//! Dense spin-½ algebra on `N = 2^n` dimensional Hilbert spaces.
//!
//! Basis convention: computational index `s` carries spin 1 in its most
//! significant bit, spin `n` in its least significant bit. Bit value 0 is the
//! `m = +½` (spin-up) state, so `I_z |0⟩ = +½ |0⟩`.

use std::cell::Cell;
use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default upper bound on the number of work qubits for dense simulation.
pub const DEFAULT_QUBIT_CAP: usize = 12;

thread_local! {
    static DENSE_MATMULS: Cell<u64> = const { Cell::new(0) };
}

/// Number of dense `N×N` matrix products performed on the calling thread.
///
/// Used by the benchmark to confirm the oracle path never falls back to
/// dense multiplication.
pub fn dense_matmul_count() -> u64 {
    DENSE_MATMULS.with(|c| c.get())
}

/// Bit of basis index `s` that belongs to spin `k` (1-based, spin 1 = MSB).
#[inline]
pub fn spin_bit(n: usize, k: usize, s: usize) -> usize {
    (s >> (n - k)) & 1
}

/// Mask selecting spin `k`'s bit in a basis index.
#[inline]
pub fn spin_mask(n: usize, k: usize) -> usize {
    1 << (n - k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinSystemConfig<T> {
    n: usize,
    epsilon: Vec<T>,
    cap: usize,
}

impl<T: Scalar> SpinSystemConfig<T> {
    /// System of `n` work qubits with per-spin polarisations `epsilon`.
    pub fn new(n: usize, epsilon: Vec<T>) -> Result<Self> {
        Self::with_cap(n, epsilon, DEFAULT_QUBIT_CAP)
    }

    /// All polarisations equal to one.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(n, vec![T::one(); n])
    }

    pub fn with_cap(n: usize, epsilon: Vec<T>, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("need at least one work qubit".into()));
        }
        if n > cap {
            return Err(Error::SizeCap { n, cap });
        }
        // 2^n must fit comfortably in usize arithmetic.
        if n >= usize::BITS as usize / 2 {
            return Err(Error::SizeCap { n, cap: usize::BITS as usize / 2 - 1 });
        }
        if epsilon.len() != n {
            return Err(Error::InvalidConfig(format!(
                "expected {n} polarisation parameters, got {}",
                epsilon.len()
            )));
        }
        if let Some(bad) = epsilon.iter().position(|e| e.is_nan() || *e <= T::zero() || !e.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "polarisation of spin {} must be positive and finite, got {}",
                bad + 1,
                epsilon[bad]
            )));
        }
        Ok(Self { n, epsilon, cap })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension `N = 2^n`.
    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn epsilon(&self) -> &[T] {
        &self.epsilon
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub(crate) fn check_spin(&self, k: usize) -> Result<()> {
        check_spin(self.n, k)
    }
}

pub(crate) fn check_spin(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange {
            what: "spin",
            index: k,
            valid: format!("1..={n}"),
        });
    }
    Ok(())
}

pub(crate) fn check_basis(dim: usize, s: usize) -> Result<()> {
    if s >= dim {
        return Err(Error::IndexOutOfRange {
            what: "basis",
            index: s,
            valid: format!("0..{dim}"),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A 2×2 single-spin matrix, row-major.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

/// Single-spin building blocks.
pub mod single {
    use super::*;

    pub fn zero<T: Scalar>() -> Mat2<T> {
        [[Complex::default(); 2]; 2]
    }

    pub fn identity<T: Scalar>() -> Mat2<T> {
        let o = Complex::new(T::one(), T::zero());
        [[o, Complex::default()], [Complex::default(), o]]
    }

    /// `σ_axis / 2`.
    pub fn spin_half<T: Scalar>(axis: Axis) -> Mat2<T> {
        let h = T::lit(0.5);
        let z = Complex::default();
        match axis {
            Axis::X => [[z, Complex::new(h, T::zero())], [Complex::new(h, T::zero()), z]],
            Axis::Y => [[z, Complex::new(T::zero(), -h)], [Complex::new(T::zero(), h), z]],
            Axis::Z => [[Complex::new(h, T::zero()), z], [z, Complex::new(-h, T::zero())]],
        }
    }

    /// `c1·E + c2·M`.
    pub fn combine<T: Scalar>(c1: T, c2: T, m: &Mat2<T>) -> Mat2<T> {
        let e = identity::<T>();
        let mut out = zero::<T>();
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = e[r][c] * c1 + m[r][c] * c2;
            }
        }
        out
    }

    pub fn scale<T: Scalar>(m: &Mat2<T>, by: T) -> Mat2<T> {
        combine(T::zero(), by, m)
    }

    /// `½E + a·I_z`, the projector onto bit 0 (`a = +1`) or bit 1 (`a = −1`).
    pub fn z_projector<T: Scalar>(a: i8) -> Mat2<T> {
        combine(T::lit(0.5), T::from_count(a as i64), &spin_half(Axis::Z))
    }
}

/// Dense `N×N` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Operator<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::default(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![Complex::new(T::one(), T::zero()); dim])
    }

    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Row-major construction; `data.len()` must be a perfect square.
    pub fn from_rows(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::default(), |acc, i| acc + self[(i, i)])
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// Dense product `self · rhs`, `O(N³)`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        DENSE_MATMULS.with(|c| c.set(c.get() + 1));
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for j in 0..n {
                let a = self.data[r * n + j];
                if a == Complex::default() {
                    continue;
                }
                let rhs_row = &rhs.data[j * n..(j + 1) * n];
                let out_row = &mut out.data[r * n..(r + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, by: Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|x| x * by).collect() }
    }

    pub fn scale_real(&self, by: T) -> Self {
        self.scale(Complex::new(by, T::zero()))
    }

    pub fn add_assign_scaled(&mut self, rhs: &Self, by: Complex<T>) -> Result<()> {
        self.check_same_dim(rhs)?;
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b * by;
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ rhs`; `self` occupies the more significant bits.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (a, b) = (self.dim, rhs.dim);
        let mut out = Self::zeros(a * b);
        for r1 in 0..a {
            for c1 in 0..a {
                let x = self[(r1, c1)];
                if x == Complex::default() {
                    continue;
                }
                for r2 in 0..b {
                    for c2 in 0..b {
                        out[(r1 * b + r2, c1 * b + c2)] = x * rhs[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    /// Largest elementwise modulus of `self − rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<T> {
        self.check_same_dim(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt()
    }

    /// Largest modulus of `A − A†` over all entries.
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn max_off_diagonal(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    worst = worst.max(self[(r, c)].norm());
                }
            }
        }
        worst
    }

    /// Hilbert–Schmidt inner product `Tr(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Result<Complex<T>> {
        self.check_same_dim(rhs)?;
        let n = self.dim;
        let mut acc = Complex::default();
        for r in 0..n {
            for c in 0..n {
                acc += self.data[r * n + c] * rhs.data[c * n + r];
            }
        }
        Ok(acc)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        self.check_same_dim(rhs)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    fn check_same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for Operator<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.dim + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Operator<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.dim + c]
    }
}

/// Adds `scale · (m_1 ⊗ m_2 ⊗ … ⊗ m_n)` into `out`, visiting only nonzero
/// entries of the product. Cost is proportional to the number of nonzeros.
pub fn accumulate_tensor<T: Scalar>(out: &mut Operator<T>, factors: &[Mat2<T>], scale: Complex<T>) -> Result<()> {
    let expected = 1usize << factors.len();
    if out.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: out.dim() });
    }
    fn walk<T: Scalar>(
        out: &mut Operator<T>,
        factors: &[Mat2<T>],
        r: usize,
        c: usize,
        acc: Complex<T>,
    ) {
        match factors.split_first() {
            None => out[(r, c)] += acc,
            Some((m, rest)) => {
                for (br, row) in m.iter().enumerate() {
                    for (bc, x) in row.iter().enumerate() {
                        if *x != Complex::default() {
                            walk(out, rest, (r << 1) | br, (c << 1) | bc, acc * x);
                        }
                    }
                }
            }
        }
    }
    if scale != Complex::default() {
        walk(out, factors, 0, 0, scale);
    }
    Ok(())
}

/// Materialises `m_1 ⊗ … ⊗ m_n`.
pub fn tensor_product<T: Scalar>(factors: &[Mat2<T>]) -> Operator<T> {
    let mut out = Operator::zeros(1 << factors.len());
    accumulate_tensor(&mut out, factors, Complex::new(T::one(), T::zero()))
        .expect("dimension derived from factor count");
    out
}

/// `E ⊗ … ⊗ σ_axis/2 ⊗ … ⊗ E` with the spin operator in slot `k`.
pub fn build_spin_operator<T: Scalar>(config: &SpinSystemConfig<T>, k: usize, axis: Axis) -> Result<Operator<T>> {
    config.check_spin(k)?;
    Ok(spin_operator(config.n(), k, axis))
}

pub(crate) fn spin_operator<T: Scalar>(n: usize, k: usize, axis: Axis) -> Operator<T> {
    let factors: Vec<Mat2<T>> = (1..=n)
        .map(|j| if j == k { single::spin_half(axis) } else { single::identity() })
        .collect();
    tensor_product(&factors)
}

/// The unit-number representation `a_k^s ∈ {+1, −1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitNumberTable {
    n: usize,
    values: Vec<Vec<i8>>,
}

impl UnitNumberTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// `a_k^s` for spin `k ∈ 1..=n`. Panics on out-of-range arguments.
    #[inline]
    pub fn get(&self, k: usize, s: usize) -> i8 {
        self.values[k - 1][s]
    }

    /// Row of spin `k` over all basis indices.
    pub fn row(&self, k: usize) -> &[i8] {
        &self.values[k - 1]
    }
}

pub fn unit_number_table(n: usize) -> UnitNumberTable {
    let dim = 1usize << n;
    let values = (1..=n)
        .map(|k| (0..dim).map(|s| 1 - 2 * spin_bit(n, k, s) as i8).collect())
        .collect();
    UnitNumberTable { n, values }
}

/// `D_s = diag(0, …, 1, …, 0)` built directly.
pub fn build_ds<T: Scalar>(table: &UnitNumberTable, s: usize) -> Result<Operator<T>> {
    check_basis(table.dim(), s)?;
    let mut d = Operator::zeros(table.dim());
    d[(s, s)] = Complex::new(T::one(), T::zero());
    Ok(d)
}

/// `D_s` from its product form `⊗_k (½E_k + a_k^s I_kz)`.
pub fn build_ds_tensor<T: Scalar>(table: &UnitNumberTable, s: usize) -> Result<Operator<T>> {
    check_basis(table.dim(), s)?;
    let factors: Vec<Mat2<T>> = (1..=table.n()).map(|k| single::z_projector(table.get(k, s))).collect();
    Ok(tensor_product(&factors))
}

/// Coherence order of the element `|r⟩⟨c|`: total `m` of the ket minus that
/// of the bra, which is `popcount(c) − popcount(r)` with bit 0 ↔ `m = +½`.
#[inline]
pub fn coherence_order(r: usize, c: usize) -> i32 {
    c.count_ones() as i32 - r.count_ones() as i32
}

/// Diagonal unitary stored as its `N` unit-modulus phases.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalUnitary<T> {
    phases: Vec<Complex<T>>,
}

impl<T: Scalar> DiagonalUnitary<T> {
    pub fn identity(dim: usize) -> Self {
        Self { phases: vec![Complex::new(T::one(), T::zero()); dim] }
    }

    pub fn from_phases(phases: Vec<Complex<T>>) -> Result<Self> {
        let tol = T::structural_tol();
        if let Some((i, p)) = phases.iter().enumerate().find(|(_, p)| (p.norm() - T::one()).abs() > tol) {
            return Err(Error::Structure {
                kind: "diagonal unitary",
                detail: format!("|phase[{i}]| = {} deviates from 1", p.norm()),
            });
        }
        Ok(Self { phases })
    }

    pub(crate) fn from_phases_unchecked(phases: Vec<Complex<T>>) -> Self {
        Self { phases }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[Complex<T>] {
        &self.phases
    }

    /// Elementwise product, i.e. the operator product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Ok(Self { phases: self.phases.iter().zip(&rhs.phases).map(|(a, b)| a * b).collect() })
    }

    pub fn adjoint(&self) -> Self {
        Self { phases: self.phases.iter().map(|p| p.conj()).collect() }
    }

    pub fn to_operator(&self) -> Operator<T> {
        Operator::from_diagonal(&self.phases)
    }

    /// Largest phase discrepancy to `rhs` after removing the best global
    /// phase, anchored at the first entry.
    pub fn max_phase_error_up_to_global(&self, rhs: &Self) -> Result<T> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        let Some((a, b)) = self.phases.first().zip(rhs.phases.first()) else {
            return Ok(T::zero());
        };
        let global = b / a;
        Ok(self
            .phases
            .iter()
            .zip(&rhs.phases)
            .fold(T::zero(), |m, (x, y)| m.max((x * global - y).norm())))
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> Result<T> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rhs.dim() });
        }
        Ok(self.phases.iter().zip(&rhs.phases).fold(T::zero(), |m, (x, y)| m.max((x - y).norm())))
    }
}

/// Traceless Hermitian deviation density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationState<T> {
    rho: Operator<T>,
}

impl<T: Scalar> DeviationState<T> {
    /// Validates Hermiticity and tracelessness at the structural tolerance.
    pub fn new(rho: Operator<T>) -> Result<Self> {
        let tol = T::structural_tol();
        let herm = rho.hermiticity_defect();
        if herm > tol {
            return Err(Error::Structure { kind: "deviation state", detail: format!("not Hermitian (defect {herm})") });
        }
        let tr = rho.trace().norm();
        if tr > tol {
            return Err(Error::Structure { kind: "deviation state", detail: format!("trace {tr} is not zero") });
        }
        Ok(Self { rho })
    }

    pub fn zero(dim: usize) -> Self {
        Self { rho: Operator::zeros(dim) }
    }

    pub(crate) fn from_operator_unchecked(rho: Operator<T>) -> Self {
        Self { rho }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn rho(&self) -> &Operator<T> {
        &self.rho
    }

    pub fn into_operator(self) -> Operator<T> {
        self.rho
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> Result<T> {
        self.rho.max_abs_diff(&rhs.rho)
    }

    pub fn is_diagonal(&self, tol: T) -> bool {
        self.rho.max_off_diagonal() <= tol
    }
}

/// Anything that can act on a deviation state as `U ρ U†`.
pub trait Unitary<T: Scalar> {
    fn conjugate(&self, state: &DeviationState<T>) -> Result<DeviationState<T>>;
}

impl<T: Scalar> Unitary<T> for DiagonalUnitary<T> {
    /// Elementwise `ρ'[r][c] = u_r · conj(u_c) · ρ[r][c]`, `O(N²)`.
    fn conjugate(&self, state: &DeviationState<T>) -> Result<DeviationState<T>> {
        let n = state.dim();
        if self.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.dim() });
        }
        let mut rho = state.rho.clone();
        for (r, row) in rho.as_mut_slice().chunks_exact_mut(n).enumerate() {
            let ur = self.phases[r];
            for (x, uc) in row.iter_mut().zip(&self.phases) {
                *x = ur * uc.conj() * *x;
            }
        }
        Ok(DeviationState { rho })
    }
}

impl<T: Scalar> Unitary<T> for Operator<T> {
    /// Dense `U ρ U†`.
    fn conjugate(&self, state: &DeviationState<T>) -> Result<DeviationState<T>> {
        let rho = self.matmul(&state.rho)?.matmul(&self.adjoint())?;
        Ok(DeviationState { rho })
    }
}

/// `U ρ U†` for either a diagonal or a dense unitary.
pub fn conjugate<T: Scalar, U: Unitary<T> + ?Sized>(u: &U, state: &DeviationState<T>) -> Result<DeviationState<T>> {
    u.conjugate(state)
}
