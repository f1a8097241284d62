#![allow(dead_code)]

use ensemble_parity::{Complex64, DeviationState, MSpec, Operator, PhaseFunction, Sign, SpinSystemConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_function(rng: &mut impl Rng, n: usize) -> PhaseFunction {
    let density: f64 = rng.gen_range(0.05..0.95);
    PhaseFunction::from_marks(n, (0..1usize << n).map(|_| rng.gen_bool(density)).collect()).unwrap()
}

pub fn random_config(rng: &mut impl Rng, n: usize) -> SpinSystemConfig {
    SpinSystemConfig::new(n, (0..n).map(|_| rng.gen_range(0.2..2.0)).collect()).unwrap()
}

pub fn random_mspec(rng: &mut impl Rng, n: usize) -> MSpec {
    let m = rng.gen_range(1..=(1usize << (n - 1)));
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    MSpec::new(n, m, sign).unwrap()
}

/// Random traceless Hermitian matrix with entries of order one.
pub fn random_state(rng: &mut impl Rng, n: usize) -> DeviationState {
    let dim = 1usize << n;
    let mut m = Operator::zeros(dim);
    for r in 0..dim {
        for c in r..dim {
            if r == c {
                m[(r, r)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            } else {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(r, c)] = z;
                m[(c, r)] = z.conj();
            }
        }
    }
    let shift = m.trace() / Complex64::new(dim as f64, 0.0);
    DeviationState::new(m.sub(&Operator::identity(dim).scale(shift)).unwrap()).unwrap()
}

pub fn all_functions(n: usize) -> impl Iterator<Item = PhaseFunction> {
    let dim = 1usize << n;
    (0u64..(1u64 << dim)).map(move |bits| {
        PhaseFunction::from_marks(n, (0..dim).map(|x| bits >> x & 1 == 1).collect()).unwrap()
    })
}

/// Prints a one-line verdict and fails the test when `passed` is false.
pub fn verdict(id: &str, title: &str, passed: bool, detail: impl AsRef<str>) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {title} -- {}", detail.as_ref());
    assert!(passed, "criterion {id} failed: {}", detail.as_ref());
}
