//! Diagonal phase unitaries: selective shifts, the oracles `U_f` / `U_o(θ)`,
//! and the known offset operation `U_M(−π/2)` with its compiled circuit.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Scalar};
use crate::spin::{check_basis, spin_mask, DiagonalUnitary};

/// Every `U_o` application costs two `U_f` calls.
pub const UF_CALLS_PER_UO: usize = 2;

/// Truth table of `f: {0..N−1} → {+1, −1}`; `marks[x]` ⇔ `f(x) = −1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseFunction {
    n: usize,
    marks: Vec<bool>,
}

impl PhaseFunction {
    pub fn from_marks(n: usize, marks: Vec<bool>) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize / 2 {
            return Err(Error::InvalidConfig(format!("unsupported qubit count {n}")));
        }
        let dim = 1usize << n;
        if marks.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: marks.len() });
        }
        Ok(Self { n, marks })
    }

    pub fn from_marked_indices(n: usize, marked: &[usize]) -> Result<Self> {
        let mut f = Self::constant_plus(n)?;
        for &x in marked {
            check_basis(f.dim(), x)?;
            f.marks[x] = true;
        }
        Ok(f)
    }

    /// `f ≡ +1`.
    pub fn constant_plus(n: usize) -> Result<Self> {
        Self::from_marks(n, vec![false; 1usize << n.min(usize::BITS as usize / 2)])
    }

    /// `f ≡ −1`.
    pub fn constant_minus(n: usize) -> Result<Self> {
        Self::from_marks(n, vec![true; 1usize << n.min(usize::BITS as usize / 2)])
    }

    /// Only `f(x0) = −1`.
    pub fn single(n: usize, x0: usize) -> Result<Self> {
        Self::from_marked_indices(n, &[x0])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.marks.len()
    }

    pub fn marks(&self) -> &[bool] {
        &self.marks
    }

    /// `g(x) ∈ {0, 1}`.
    #[inline]
    pub fn g(&self, x: usize) -> u8 {
        self.marks[x] as u8
    }

    /// `f(x) ∈ {+1, −1}`.
    #[inline]
    pub fn value(&self, x: usize) -> i8 {
        if self.marks[x] {
            -1
        } else {
            1
        }
    }

    pub fn marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.marks.iter().enumerate().filter(|(_, m)| **m).map(|(x, _)| x)
    }
}

/// Which half of the spin-1 split the offset set lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `a_1^l = +1` for every member (spin 1 up).
    Plus,
    /// `a_1^l = −1` for every member (spin 1 down).
    Minus,
}

impl Sign {
    #[inline]
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign of a nonzero reading; `None` for exactly zero or NaN.
    pub fn of<T: Scalar>(x: T) -> Option<Sign> {
        if x > T::zero() {
            Some(Sign::Plus)
        } else if x < T::zero() {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Parameters of `U_M(−π/2)`: how many selective shifts and on which half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MSpec {
    n: usize,
    m: usize,
    sign: Sign,
}

/// `M = 2^leading + Σ_{l < leading} b_l 2^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDecomposition {
    pub leading: u32,
    /// `lower[l] = b_l` for `l < leading`.
    pub lower: Vec<bool>,
}

impl BinaryDecomposition {
    pub fn value(&self) -> usize {
        self.lower
            .iter()
            .enumerate()
            .fold(1usize << self.leading, |acc, (l, b)| acc + ((*b as usize) << l))
    }

    /// Positions of set bits, most significant first.
    pub fn set_bits_descending(&self) -> Vec<u32> {
        std::iter::once(self.leading)
            .chain((0..self.leading).rev().filter(|&l| self.lower[l as usize]))
            .collect()
    }
}

impl MSpec {
    pub fn new(n: usize, m: usize, sign: Sign) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize / 2 {
            return Err(Error::InvalidMSpec(format!("unsupported qubit count {n}")));
        }
        let half = 1usize << (n - 1);
        if m == 0 || m > half {
            return Err(Error::InvalidMSpec(format!("M = {m} outside 1..={half}")));
        }
        Ok(Self { n, m, sign })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The value `M_1` carries for spin 1 under the canonical index set.
    pub fn signed_m(&self) -> i64 {
        self.sign.value() * self.m as i64
    }

    pub fn decomposition(&self) -> BinaryDecomposition {
        let leading = usize::BITS - 1 - self.m.leading_zeros();
        let lower = (0..leading).map(|l| (self.m >> l) & 1 == 1).collect();
        BinaryDecomposition { leading, lower }
    }
}

/// `C_s(θ) = exp(−iθ D_s)`.
pub fn selective_phase_shift<T: Scalar>(n: usize, s: usize, theta: T) -> Result<DiagonalUnitary<T>> {
    let dim = 1usize << n;
    check_basis(dim, s)?;
    let mut phases = vec![Complex::new(T::one(), T::zero()); dim];
    phases[s] = cis(-theta);
    Ok(DiagonalUnitary::from_phases_unchecked(phases))
}

/// `U_f |x⟩ = f(x) |x⟩`.
pub fn build_uf<T: Scalar>(f: &PhaseFunction) -> DiagonalUnitary<T> {
    let phases = (0..f.dim())
        .map(|x| Complex::new(T::from_count(f.value(x) as i64), T::zero()))
        .collect();
    DiagonalUnitary::from_phases_unchecked(phases)
}

/// `U_o(θ) = Π_x C_x(θ g(x))`, i.e. phase `exp(−iθ g(x))` on `|x⟩`.
pub fn build_uo<T: Scalar>(f: &PhaseFunction, theta: T) -> DiagonalUnitary<T> {
    let marked = cis(-theta);
    let one = Complex::new(T::one(), T::zero());
    let phases = f.marks().iter().map(|&m| if m { marked } else { one }).collect();
    DiagonalUnitary::from_phases_unchecked(phases)
}

/// `G = Σ_x g(x)`, the number of inputs with `f(x) = −1`.
pub fn integer_phase_parameter(f: &PhaseFunction) -> usize {
    f.marked().count()
}

/// Basis indices whose selective shifts compose `U_M`.
///
/// `Sign::Plus` takes the `M` lowest indices (spin 1 up, nested subcube
/// blocks in order); `Sign::Minus` is the same set with spin 1 flipped.
pub fn canonical_index_set(spec: &MSpec) -> Vec<usize> {
    let offset = match spec.sign {
        Sign::Plus => 0,
        Sign::Minus => spin_mask(spec.n, 1),
    };
    (0..spec.m).map(|i| offset + i).collect()
}

/// `U_M(−π/2) = Π_{l ∈ set} C_l(−π/2)` evaluated factor by factor.
pub fn build_um_direct<T: Scalar>(spec: &MSpec) -> Result<DiagonalUnitary<T>> {
    let theta = -T::FRAC_PI_2();
    canonical_index_set(spec)
        .into_iter()
        .try_fold(DiagonalUnitary::identity(1 << spec.n), |acc, l| {
            acc.compose(&selective_phase_shift(spec.n, l, theta)?)
        })
}

/// `C_0^{width}(θ) = exp(−iθ D_0^{width})`: phase on every index whose
/// first `width` spins are all up.
pub fn nonselective_block_shift<T: Scalar>(n: usize, width: usize, theta: T) -> Result<DiagonalUnitary<T>> {
    if width == 0 || width > n {
        return Err(Error::IndexOutOfRange { what: "block width", index: width, valid: format!("1..={n}") });
    }
    let shifted = cis(-theta);
    let one = Complex::new(T::one(), T::zero());
    let phases = (0..1usize << n)
        .map(|r| if r >> (n - width) == 0 { shifted } else { one })
        .collect();
    Ok(DiagonalUnitary::from_phases_unchecked(phases))
}

/// One factor of the compiled `U_M` circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitFactor {
    /// `C_0^{width}(angle)`.
    BlockShift { width: usize, angle: f64 },
    /// `exp(−iπ I_{spin,x})` when `inverse` is false, `exp(+iπ I_{spin,x})` otherwise.
    SpinFlip { spin: usize, inverse: bool },
}

impl fmt::Display for CircuitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitFactor::BlockShift { width, angle } => write!(f, "C0^{width}({angle:.6})"),
            CircuitFactor::SpinFlip { spin, inverse: false } => write!(f, "exp(-i pi I{spin}x)"),
            CircuitFactor::SpinFlip { spin, inverse: true } => write!(f, "exp(+i pi I{spin}x)"),
        }
    }
}

/// Ordered operator product `F_1 · F_2 · … · F_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledCircuit {
    n: usize,
    factors: Vec<CircuitFactor>,
}

impl CompiledCircuit {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[CircuitFactor] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn block_count(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, CircuitFactor::BlockShift { .. })).count()
    }

    /// Multiplies the factors out without dense matrices.
    ///
    /// The running product is kept as a monomial matrix `Σ_r d_r |r⟩⟨π(r)|`;
    /// block shifts rescale `d`, flips permute `π` and contribute `∓i`.
    pub fn evaluate<T: Scalar>(&self) -> Result<DiagonalUnitary<T>> {
        let dim = 1usize << self.n;
        let mut d = vec![Complex::new(T::one(), T::zero()); dim];
        let mut perm: Vec<usize> = (0..dim).collect();
        for factor in &self.factors {
            match *factor {
                CircuitFactor::BlockShift { width, angle } => {
                    let block = nonselective_block_shift::<T>(self.n, width, T::lit(angle))?;
                    for (dr, &pr) in d.iter_mut().zip(&perm) {
                        *dr *= block.phases()[pr];
                    }
                }
                CircuitFactor::SpinFlip { spin, inverse } => {
                    crate::spin::check_spin(self.n, spin)?;
                    let mask = spin_mask(self.n, spin);
                    // exp(∓iπ I_x) = ∓i σ_x
                    let omega = if inverse {
                        Complex::new(T::zero(), T::one())
                    } else {
                        Complex::new(T::zero(), -T::one())
                    };
                    for (dr, pr) in d.iter_mut().zip(perm.iter_mut()) {
                        *pr ^= mask;
                        *dr *= omega;
                    }
                }
            }
        }
        if perm.iter().enumerate().any(|(r, &p)| r != p) {
            return Err(Error::Inconsistent("compiled circuit is not diagonal: unpaired spin flips".into()));
        }
        DiagonalUnitary::from_phases(d)
    }
}

/// `U_M(−π/2)` as nested block shifts and spin flips.
///
/// For set bits `p_0 > p_1 > … > p_m` of `M` the circuit is
/// `C_0^{n−p_0} X_{n−p_0} C_0^{n−p_1} X_{n−p_1} … C_0^{n−p_m} X⁻¹ … X⁻¹`,
/// where each flip relocates the next smaller block just past the previous
/// one. Zero bits contribute neither a block nor a flip. `Sign::Minus`
/// conjugates the whole circuit by a spin-1 flip.
pub fn build_um_compiled(spec: &MSpec) -> CompiledCircuit {
    let n = spec.n;
    let angle = -std::f64::consts::FRAC_PI_2;
    let bits = spec.decomposition().set_bits_descending();
    let mut factors = Vec::with_capacity(3 * bits.len() + 2);
    if spec.sign == Sign::Minus {
        factors.push(CircuitFactor::SpinFlip { spin: 1, inverse: false });
    }
    for (i, &p) in bits.iter().enumerate() {
        factors.push(CircuitFactor::BlockShift { width: n - p as usize, angle });
        if i + 1 < bits.len() {
            factors.push(CircuitFactor::SpinFlip { spin: n - p as usize, inverse: false });
        }
    }
    for &p in bits[..bits.len() - 1].iter().rev() {
        factors.push(CircuitFactor::SpinFlip { spin: n - p as usize, inverse: true });
    }
    if spec.sign == Sign::Minus {
        factors.push(CircuitFactor::SpinFlip { spin: 1, inverse: true });
    }
    CompiledCircuit { n, factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::unit_number_table;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    type C = Complex<f64>;

    fn close(a: &[C], b: &[C]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12)
    }

    fn cs(v: &[(f64, f64)]) -> Vec<C> {
        v.iter().map(|(r, i)| Complex::new(*r, *i)).collect()
    }

    #[test]
    fn selective_shift_examples() {
        let u = selective_phase_shift::<f64>(3, 5, 0.0).unwrap();
        assert!(close(u.phases(), DiagonalUnitary::identity(8).phases()));
        let u = selective_phase_shift::<f64>(1, 1, PI).unwrap();
        assert!(close(u.phases(), &cs(&[(1.0, 0.0), (-1.0, 0.0)])));
        assert!(selective_phase_shift::<f64>(2, 4, PI).is_err());
    }

    #[test]
    fn selective_shift_leaves_other_basis_states() {
        for r in 0..8 {
            let u = selective_phase_shift::<f64>(3, 6, 1.234).unwrap();
            let p = u.phases()[r];
            if r == 6 {
                assert!((p - cis(-1.234)).norm() < 1e-15);
            } else {
                assert_eq!(p, Complex::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn uf_examples() {
        let f = PhaseFunction::constant_plus(3).unwrap();
        assert!(close(build_uf::<f64>(&f).phases(), DiagonalUnitary::identity(8).phases()));
        let f = PhaseFunction::single(2, 2).unwrap();
        assert!(close(build_uf::<f64>(&f).phases(), &cs(&[(1.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (1.0, 0.0)])));
    }

    #[test]
    fn uo_examples() {
        let f = PhaseFunction::from_marked_indices(2, &[1, 3]).unwrap();
        let u = build_uo::<f64>(&f, FRAC_PI_2);
        assert!(close(u.phases(), &cs(&[(1.0, 0.0), (0.0, -1.0), (1.0, 0.0), (0.0, -1.0)])));
        assert!(close(build_uo::<f64>(&f, PI).phases(), build_uf::<f64>(&f).phases()));
        let id = PhaseFunction::constant_plus(2).unwrap();
        assert!(close(build_uo::<f64>(&id, 0.77).phases(), DiagonalUnitary::identity(4).phases()));
    }

    #[test]
    fn phase_parameter_examples() {
        assert_eq!(integer_phase_parameter(&PhaseFunction::constant_plus(3).unwrap()), 0);
        assert_eq!(integer_phase_parameter(&PhaseFunction::constant_minus(3).unwrap()), 8);
        assert_eq!(integer_phase_parameter(&PhaseFunction::from_marked_indices(2, &[1, 2]).unwrap()), 2);
    }

    #[test]
    fn phase_function_validation() {
        assert!(PhaseFunction::from_marks(2, vec![false; 3]).is_err());
        assert!(PhaseFunction::single(2, 4).is_err());
        assert!(PhaseFunction::constant_plus(0).is_err());
    }

    #[test]
    fn mspec_validation_and_bits() {
        assert!(MSpec::new(3, 0, Sign::Plus).is_err());
        assert!(MSpec::new(3, 5, Sign::Plus).is_err());
        let s = MSpec::new(5, 13, Sign::Minus).unwrap();
        let d = s.decomposition();
        assert_eq!(d.leading, 3);
        assert_eq!(d.lower, vec![true, false, true]);
        assert_eq!(d.value(), 13);
        assert_eq!(d.set_bits_descending(), vec![3, 2, 0]);
        assert_eq!(s.signed_m(), -13);
    }

    #[test]
    fn canonical_set_examples() {
        let n = 3;
        let half = MSpec::new(n, 4, Sign::Plus).unwrap();
        assert_eq!(canonical_index_set(&half), vec![0, 1, 2, 3]);
        let one = MSpec::new(n, 1, Sign::Plus).unwrap();
        assert_eq!(canonical_index_set(&one), vec![0]);
        let neg = MSpec::new(n, 3, Sign::Minus).unwrap();
        assert_eq!(canonical_index_set(&neg), vec![4, 5, 6]);
    }

    #[test]
    fn canonical_sets_have_uniform_spin1_and_are_nested() {
        for n in 1..=6 {
            let t = unit_number_table(n);
            for sign in [Sign::Plus, Sign::Minus] {
                let mut prev: Vec<usize> = Vec::new();
                for m in 1..=(1usize << (n - 1)) {
                    let spec = MSpec::new(n, m, sign).unwrap();
                    let set = canonical_index_set(&spec);
                    assert_eq!(set.len(), m);
                    assert!(set.iter().all(|&l| t.get(1, l) as i64 == sign.value()));
                    assert_eq!(set.iter().map(|&l| t.get(1, l) as i64).sum::<i64>(), spec.signed_m());
                    assert_eq!(&set[..prev.len()], &prev[..]);
                    prev = set;
                }
            }
        }
    }

    #[test]
    fn um_direct_examples() {
        let s = MSpec::new(2, 1, Sign::Plus).unwrap();
        assert!(close(build_um_direct::<f64>(&s).unwrap().phases(), &cs(&[(0.0, 1.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)])));
        let s = MSpec::new(2, 2, Sign::Plus).unwrap();
        assert!(close(build_um_direct::<f64>(&s).unwrap().phases(), &cs(&[(0.0, 1.0), (0.0, 1.0), (1.0, 0.0), (1.0, 0.0)])));
    }

    #[test]
    fn block_shift_examples() {
        let a = nonselective_block_shift::<f64>(3, 3, 0.4).unwrap();
        let b = selective_phase_shift::<f64>(3, 0, 0.4).unwrap();
        assert!(close(a.phases(), b.phases()));
        let u = nonselective_block_shift::<f64>(2, 1, -FRAC_PI_2).unwrap();
        assert!(close(u.phases(), &cs(&[(0.0, 1.0), (0.0, 1.0), (1.0, 0.0), (1.0, 0.0)])));
        let id = nonselective_block_shift::<f64>(4, 2, 0.0).unwrap();
        assert!(close(id.phases(), DiagonalUnitary::identity(16).phases()));
        assert!(nonselective_block_shift::<f64>(3, 0, 1.0).is_err());
        assert!(nonselective_block_shift::<f64>(3, 4, 1.0).is_err());
    }

    #[test]
    fn compiled_power_of_two_is_single_block() {
        let n = 5;
        for k in 0..n - 1 {
            let spec = MSpec::new(n, 1 << k, Sign::Plus).unwrap();
            let circ = build_um_compiled(&spec);
            assert_eq!(circ.factors(), &[CircuitFactor::BlockShift { width: n - k, angle: -FRAC_PI_2 }]);
        }
    }

    #[test]
    fn compiled_three_bit_example() {
        // M = 2^k + 2^l + 2^0 with k=3, l=1, n=5.
        let n = 5;
        let spec = MSpec::new(n, 8 + 2 + 1, Sign::Plus).unwrap();
        let circ = build_um_compiled(&spec);
        let a = -FRAC_PI_2;
        assert_eq!(
            circ.factors(),
            &[
                CircuitFactor::BlockShift { width: n - 3, angle: a },
                CircuitFactor::SpinFlip { spin: n - 3, inverse: false },
                CircuitFactor::BlockShift { width: n - 1, angle: a },
                CircuitFactor::SpinFlip { spin: n - 1, inverse: false },
                CircuitFactor::BlockShift { width: n, angle: a },
                CircuitFactor::SpinFlip { spin: n - 1, inverse: true },
                CircuitFactor::SpinFlip { spin: n - 3, inverse: true },
            ]
        );
        let direct = build_um_direct::<f64>(&spec).unwrap();
        assert!(circ.evaluate::<f64>().unwrap().max_abs_diff(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn compiled_matches_direct_small_sweep() {
        for n in 1..=6 {
            for sign in [Sign::Plus, Sign::Minus] {
                for m in 1..=(1usize << (n - 1)) {
                    let spec = MSpec::new(n, m, sign).unwrap();
                    let circ = build_um_compiled(&spec);
                    assert!(circ.factor_count() <= 3 * n + 1);
                    let err = circ
                        .evaluate::<f64>()
                        .unwrap()
                        .max_phase_error_up_to_global(&build_um_direct(&spec).unwrap())
                        .unwrap();
                    assert!(err < 1e-12, "n={n} m={m} sign={sign}: {err}");
                }
            }
        }
    }

    #[test]
    fn unpaired_flip_is_rejected() {
        let circ = CompiledCircuit { n: 2, factors: vec![CircuitFactor::SpinFlip { spin: 1, inverse: false }] };
        assert!(matches!(circ.evaluate::<f64>(), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn f32_um_matches() {
        let spec = MSpec::new(4, 5, Sign::Plus).unwrap();
        let a = build_um_compiled(&spec).evaluate::<f32>().unwrap();
        let b = build_um_direct::<f32>(&spec).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-6);
    }

    fn arb_function() -> impl Strategy<Value = PhaseFunction> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 1 << n)
                .prop_map(move |m| PhaseFunction::from_marks(n, m).unwrap())
        })
    }

    proptest! {
        #[test]
        fn uf_is_product_of_selective_shifts(f in arb_function()) {
            let product = (0..f.dim()).try_fold(DiagonalUnitary::identity(f.dim()), |acc, x| {
                acc.compose(&selective_phase_shift(f.n(), x, PI * f.g(x) as f64)?)
            }).unwrap();
            prop_assert!(product.max_abs_diff(&build_uf(&f)).unwrap() < 1e-12);
            let sq = build_uf::<f64>(&f).compose(&build_uf(&f)).unwrap();
            prop_assert!(sq.max_abs_diff(&DiagonalUnitary::identity(f.dim())).unwrap() == 0.0);
        }

        #[test]
        fn uo_phase_additivity(f in arb_function(), a in -PI..PI, b in -PI..PI) {
            let lhs = build_uo::<f64>(&f, a).compose(&build_uo(&f, b)).unwrap();
            prop_assert!(lhs.max_abs_diff(&build_uo(&f, a + b)).unwrap() < 1e-12);
        }

        #[test]
        fn diagonal_unitaries_commute(f in arb_function(), theta in -PI..PI, m_frac in 0.0f64..1.0, minus in any::<bool>()) {
            let half = 1usize << (f.n() - 1);
            let m = 1 + ((half - 1) as f64 * m_frac) as usize;
            let spec = MSpec::new(f.n(), m, if minus { Sign::Minus } else { Sign::Plus }).unwrap();
            let uo = build_uo::<f64>(&f, theta);
            let um = build_um_direct::<f64>(&spec).unwrap();
            let ab = um.to_operator().matmul(&uo.to_operator()).unwrap();
            let ba = uo.to_operator().matmul(&um.to_operator()).unwrap();
            prop_assert!(ab.max_abs_diff(&ba).unwrap() < 1e-12);
        }
    }
}
