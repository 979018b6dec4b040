//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use motcalc_core::abvar::{AbelianVarietyModel, PointVector, VarietyParams};
use motcalc_core::exactlin::{rat, RatMatrix};
use motcalc_core::galmod::GaloisLattice;
use motcalc_core::onemotive::{AbelianPair, OneMotive};
use motcalc_core::radical::MultSpace;

/// Deterministic small integers in `-3..=3`.
pub fn entry(seed: usize) -> i64 {
    ((seed.wrapping_mul(2654435761) >> 7) % 7) as i64 - 3
}

pub fn dense_matrix(rows: usize, cols: usize, seed: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rat(entry(seed + i * cols + j)));
        }
    }
    m
}

/// `[ℤ^r → G]` with `G` an extension of an elliptic curve by `𝔾_m^s`,
/// generic points and a generic `ψ`.
pub fn extension_motive(r: usize, s: usize) -> OneMotive {
    let n = r.max(s).max(1);
    let e = Arc::new(AbelianVarietyModel::new(VarietyParams::simple("E", "Ed", 1, n)).unwrap());
    let d = Arc::new(AbelianVarietyModel::new(VarietyParams::simple("Ed", "E", 1, n)).unwrap());
    let unit = |k: usize| (0..n).map(|t| rat(i64::from(t == k))).collect::<Vec<_>>();
    let v = PointVector::new("E", n, (0..r).map(unit).collect()).unwrap();
    let vstar = PointVector::new("Ed", n, (0..s).map(unit).collect()).unwrap();
    let names: Vec<String> = (0..r * s).map(|k| format!("t{k}")).collect();
    let mult = Arc::new(MultSpace::new(names, vec![], vec![]).unwrap());
    OneMotive::new(
        "bench",
        GaloisLattice::trivial_rank(r),
        GaloisLattice::trivial_rank(s),
        Some(AbelianPair::new(e, d).unwrap()),
        v,
        vstar,
        RatMatrix::identity(r * s),
        mult,
    )
    .unwrap()
}

/// `[ℤ^r → 𝔾_m^s]` with `ψ` drawn from `dense_matrix`.
pub fn torus_motive(r: usize, s: usize) -> OneMotive {
    let names: Vec<String> = (0..r * s).map(|k| format!("q{k}")).collect();
    let mult = Arc::new(MultSpace::new(names, vec![], vec![]).unwrap());
    OneMotive::new(
        "bench",
        GaloisLattice::trivial_rank(r),
        GaloisLattice::trivial_rank(s),
        None,
        PointVector::on_zero_variety(r),
        PointVector::on_zero_variety(s),
        dense_matrix(r * s, r * s, r + s),
        mult,
    )
    .unwrap()
}
