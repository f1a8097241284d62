//! Brute-force ground truth: parity, `G`, `P_k`, `M_k` and the exact offset
//! signal, computed by direct iteration over the truth table.
//!
//! Nothing here calls into the ensemble simulator; the only shared input is
//! the unit-number table.

use crate::oracle::{canonical_index_set, MSpec, PhaseFunction};
use crate::spin::UnitNumberTable;

/// `Π_x f(x)`.
pub fn brute_parity(f: &PhaseFunction) -> i8 {
    (0..f.dim()).fold(1i8, |acc, x| acc * f.value(x))
}

/// `G = Σ_x g(x)`.
pub fn brute_g(f: &PhaseFunction) -> i64 {
    (0..f.dim()).map(|x| f.g(x) as i64).sum()
}

/// `P_k = Σ_s g(s) a_k^s` for `k = 1..n`.
pub fn brute_pk(f: &PhaseFunction, table: &UnitNumberTable) -> Vec<i64> {
    (1..=table.n())
        .map(|k| (0..f.dim()).map(|s| f.g(s) as i64 * table.get(k, s) as i64).sum())
        .collect()
}

/// `M_k = Σ_{l ∈ set} a_k^l` over the canonical index set of `spec`.
pub fn brute_mk(spec: &MSpec, table: &UnitNumberTable) -> Vec<i64> {
    let set = canonical_index_set(spec);
    (1..=table.n())
        .map(|k| set.iter().map(|&l| table.get(k, l) as i64).sum())
        .collect()
}

/// Exact readout of the offset experiment, per spin.
///
/// With `h(x) = g(x) − m(x) ∈ {−1, 0, 1}` (`m` the indicator of the offset
/// set) every spin-`k` pair `(x, x')`, `a_k^x = +1`, contributes
/// `sin(π/2 · (h(x) − h(x')))`. That is `h(x) − h(x')` except when the
/// difference is ±2, where the contribution vanishes; summing the linear
/// part alone gives `P_k − M_k`.
pub fn brute_offset_signal(f: &PhaseFunction, spec: Option<&MSpec>, table: &UnitNumberTable) -> Vec<i64> {
    let dim = f.dim();
    let mut in_set = vec![false; dim];
    if let Some(spec) = spec {
        for l in canonical_index_set(spec) {
            in_set[l] = true;
        }
    }
    let h = |x: usize| f.g(x) as i64 - in_set[x] as i64;
    (1..=table.n())
        .map(|k| {
            let partner_mask = 1usize << (table.n() - k);
            (0..dim)
                .filter(|&x| table.get(k, x) == 1)
                .map(|x| match h(x) - h(x ^ partner_mask) {
                    2 | -2 => 0,
                    d => d,
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceReport {
    pub parity: i8,
    pub g: i64,
    pub p: Vec<i64>,
    /// `(M, sign, M_k)` for each offset spec requested.
    pub m: Vec<(MSpec, Vec<i64>)>,
}

pub fn reference_report(f: &PhaseFunction, table: &UnitNumberTable, specs: &[MSpec]) -> ReferenceReport {
    ReferenceReport {
        parity: brute_parity(f),
        g: brute_g(f),
        p: brute_pk(f, table),
        m: specs.iter().map(|s| (*s, brute_mk(s, table))).collect(),
    }
}
