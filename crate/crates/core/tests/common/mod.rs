#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::sync::{Arc, OnceLock};

use motcalc_core::abvar::{AbelianVarietyModel, PointVector, VarietyParams};
use motcalc_core::exactlin::{rat, rat_vec, RatMatrix, Rational, Subspace};
use motcalc_core::galmod::GaloisLattice;
use motcalc_core::onemotive::{AbelianPair, OneMotive};
use motcalc_core::radical::MultSpace;
use num_traits::Zero;
use proptest::prelude::*;

/// Small description of a motive over `E` (point space ℚ²) with dual `Ed`.
#[derive(Clone, Debug)]
pub struct MotiveSketch {
    pub with_a: bool,
    pub v: Vec<[i64; 2]>,
    pub vstar: Vec<[i64; 2]>,
    /// One entry per `(i, j)`, over two multiplicative generators.
    pub psi: Vec<[i64; 2]>,
    pub rel_a: Option<[i64; 2]>,
    pub rel_mult: Option<[i64; 2]>,
}

impl MotiveSketch {
    pub fn r(&self) -> usize {
        self.v.len()
    }

    pub fn s(&self) -> usize {
        self.vstar.len()
    }

    pub fn build(&self) -> OneMotive {
        let (r, s) = (self.r(), self.s());
        let mult = Arc::new(
            MultSpace::new(
                vec!["t1".into(), "t2".into()],
                self.rel_mult.iter().map(|x| rat_vec(x)).collect(),
                vec![],
            )
            .unwrap(),
        );
        let psi = RatMatrix::from_columns(
            2,
            &self.psi.iter().map(|x| rat_vec(x)).collect::<Vec<_>>(),
        )
        .unwrap_or_else(|_| RatMatrix::zeros(2, 0));
        let psi = if r * s == 0 { RatMatrix::zeros(2, 0) } else { psi };
        if !self.with_a {
            return OneMotive::new(
                "M",
                GaloisLattice::trivial_rank(r),
                GaloisLattice::trivial_rank(s),
                None,
                PointVector::on_zero_variety(r),
                PointVector::on_zero_variety(s),
                psi,
                mult,
            )
            .unwrap();
        }
        let mut ep = VarietyParams::simple("E", "Ed", 1, 2);
        ep.relations = self.rel_a.iter().map(|x| rat_vec(x)).collect();
        let e = Arc::new(AbelianVarietyModel::new(ep).unwrap());
        let d = Arc::new(AbelianVarietyModel::new(VarietyParams::simple("Ed", "E", 1, 2)).unwrap());
        let pts = |xs: &[[i64; 2]], base: &str| {
            PointVector::new(base, 2, xs.iter().map(|x| rat_vec(x)).collect()).unwrap()
        };
        OneMotive::new(
            "M",
            GaloisLattice::trivial_rank(r),
            GaloisLattice::trivial_rank(s),
            Some(AbelianPair::new(e, d).unwrap()),
            pts(&self.v, "E"),
            pts(&self.vstar, "Ed"),
            psi,
            mult,
        )
        .unwrap()
    }
}

fn point() -> impl Strategy<Value = [i64; 2]> {
    prop_oneof![
        Just([0, 0]),
        Just([1, 0]),
        Just([0, 1]),
        Just([1, 1]),
        Just([2, 0]),
        Just([1, -1]),
    ]
}

pub fn sketch(max_r: usize, max_s: usize) -> impl Strategy<Value = MotiveSketch> {
    (0..=max_r, 0..=max_s, any::<bool>()).prop_flat_map(|(r, s, with_a)| {
        (
            proptest::collection::vec(point(), r),
            proptest::collection::vec(point(), s),
            proptest::collection::vec(point(), r * s),
            proptest::option::of(point().prop_filter("nonzero", |p| p != &[0, 0])),
            proptest::option::of(point().prop_filter("nonzero", |p| p != &[0, 0])),
        )
            .prop_map(move |(v, vstar, psi, rel_a, rel_mult)| MotiveSketch {
                with_a,
                v: if with_a { v } else { vec![[0, 0]; r] },
                vstar: if with_a { vstar } else { vec![[0, 0]; s] },
                psi,
                rel_a,
                rel_mult,
            })
    })
}

/// Every subspace of ℚⁿ (n ≤ 3) spanned by vectors with entries in −2..=2,
/// grouped by dimension.
pub fn candidates(n: usize) -> &'static [Vec<Subspace>] {
    static CACHE: OnceLock<BTreeMap<usize, Vec<Vec<Subspace>>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        let mut out = BTreeMap::new();
        for n in 0..=3 {
            out.insert(n, enumerate(n));
        }
        out
    });
    &all[&n]
}

fn enumerate(n: usize) -> Vec<Vec<Subspace>> {
    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    let total = 5usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 5) as i64 - 2;
                c /= 5;
                d
            })
            .collect();
        if let Some(first) = v.iter().find(|x| **x != 0) {
            if *first > 0 {
                vectors.push(rat_vec(&v));
            }
        }
    }
    let mut by_dim: Vec<HashSet<Subspace>> = vec![HashSet::new(); n + 1];
    by_dim[0].insert(Subspace::zero(n));
    let mut frontier: Vec<Subspace> = vec![Subspace::zero(n)];
    for k in 1..=n {
        let mut next = HashSet::new();
        for s in &frontier {
            for v in &vectors {
                if s.contains(v).unwrap() {
                    continue;
                }
                let mut basis = s.basis_vectors();
                basis.push(v.clone());
                next.insert(Subspace::span(n, &basis).unwrap());
            }
        }
        by_dim[k] = next.clone();
        frontier = next.into_iter().collect();
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// `p ∈ B_W`: solve `P_j = Σ_l w_{jl} Q_l + ρ_j` with `ρ_j` in the relations.
pub fn oracle_contains(p: &PointVector, relations: &Subspace, w: &Subspace) -> bool {
    let n = p.point_dim();
    let m = p.multiplicity();
    let wb = w.basis_vectors();
    let rel = relations.basis_vectors();
    let unknowns = wb.len() * n + m * rel.len();
    let mut a = RatMatrix::zeros(m * n, unknowns);
    for (l, wl) in wb.iter().enumerate() {
        for j in 0..m {
            for t in 0..n {
                a.set(j * n + t, l * n + t, wl[j].clone());
            }
        }
    }
    for j in 0..m {
        for (q, rv) in rel.iter().enumerate() {
            for t in 0..n {
                a.set(j * n + t, wb.len() * n + j * rel.len() + q, rv[t].clone());
            }
        }
    }
    a.solve(p.coords()).unwrap().is_some()
}

/// Smallest candidate subspace satisfying `ok`; `None` if none of the
/// enumerated candidates does.
pub fn smallest_candidate(n: usize, ok: impl Fn(&Subspace) -> bool) -> Option<Subspace> {
    for layer in candidates(n) {
        let hits: Vec<&Subspace> = layer.iter().filter(|s| ok(s)).collect();
        if let Some(first) = hits.first() {
            assert!(hits.iter().all(|h| h == first), "minimal candidate is not unique");
            return Some((*first).clone());
        }
    }
    None
}

pub fn oracle_w(p: &PointVector, relations: &Subspace) -> Option<Subspace> {
    smallest_candidate(p.multiplicity(), |w| oracle_contains(p, relations, w))
}

/// Every character orthogonal to `s` kills the bracket on `W_A × W_{A*}`.
pub fn kills_bracket(s: &Subspace, wa: &Subspace, ws: &Subspace, r: usize, sdim: usize) -> bool {
    let perp = s.orthogonal();
    perp.basis_vectors().iter().all(|c| {
        wa.basis_vectors().iter().all(|u| {
            ws.basis_vectors().iter().all(|w| {
                let mut acc = Rational::zero();
                for i in 0..r {
                    for j in 0..sdim {
                        acc += &c[i * sdim + j] * &u[i] * &w[j];
                    }
                }
                acc.is_zero()
            })
        })
    })
}

/// Every character orthogonal to `s` vanishes on `ψ` modulo relations.
pub fn kills_psi(s: &Subspace, m: &OneMotive) -> bool {
    s.orthogonal().basis_vectors().iter().all(|c| {
        let val = m.psi().mul_vec(c).unwrap();
        m.mult().is_zero(&val).unwrap()
    })
}

pub fn scale_motive(m: &OneMotive, n: i64) -> OneMotive {
    let k = rat(n);
    m.with_data(m.v().scaled(&k), m.vstar().scaled(&k), m.psi().scale(&(&k * &k)))
        .unwrap()
}
