#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

use motcalc_cli::schema::{Exponents, InputDocument, MotiveDecl, PointRef, VarietyDecl, Q};
use motcalc_core::abvar::PointVector;
use motcalc_core::exactlin::{rat_vec, RatMatrix, Rational, Subspace};
use motcalc_core::onemotive::OneMotive;
use num_traits::Zero;
use proptest::prelude::*;

pub const CORPUS: [&str; 7] = [
    "sec39_gm3.json",
    "sec39_z4_gm.json",
    "z0.json",
    "z1.json",
    "ell_indep.json",
    "ell_rel.json",
    "ext_weil.json",
];

pub fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn motcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

// ---- brute-force oracle ----

/// Every subspace of ℚⁿ (n ≤ 3) spanned by vectors with entries in −2..=2,
/// grouped by dimension.
pub fn candidates(n: usize) -> &'static [Vec<Subspace>] {
    static CACHE: [OnceLock<Vec<Vec<Subspace>>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[n].get_or_init(|| enumerate(n))
}

fn enumerate(n: usize) -> Vec<Vec<Subspace>> {
    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    for code in 0..5usize.pow(n as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % 5) as i64 - 2;
                c /= 5;
                d
            })
            .collect();
        if v.iter().find(|x| **x != 0).is_some_and(|f| *f > 0) {
            vectors.push(rat_vec(&v));
        }
    }
    let mut layers = vec![vec![Subspace::zero(n)]];
    for _ in 1..=n {
        let mut next = HashSet::new();
        for s in layers.last().unwrap() {
            for v in &vectors {
                if !s.contains(v).unwrap() {
                    let mut basis = s.basis_vectors();
                    basis.push(v.clone());
                    next.insert(Subspace::span(n, &basis).unwrap());
                }
            }
        }
        layers.push(next.into_iter().collect());
    }
    layers
}

/// Smallest enumerated subspace satisfying `ok`, checked to be unique.
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

/// `p ∈ B_W`: `P_j = Σ_l w_{jl} Q_l + ρ_j` with `ρ_j` a relation.
pub fn oracle_contains(p: &PointVector, relations: &Subspace, w: &Subspace) -> bool {
    let (n, m) = (p.point_dim(), p.multiplicity());
    let wb = w.basis_vectors();
    let rel = relations.basis_vectors();
    let mut a = RatMatrix::zeros(m * n, wb.len() * n + m * rel.len());
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

pub fn oracle_w(p: &PointVector, relations: &Subspace) -> Option<Subspace> {
    smallest_candidate(p.multiplicity(), |w| oracle_contains(p, relations, w))
}

pub fn kills_bracket(s: &Subspace, wa: &Subspace, ws: &Subspace, r: usize, sdim: usize) -> bool {
    s.orthogonal().basis_vectors().iter().all(|c| {
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

pub fn kills_psi(s: &Subspace, m: &OneMotive) -> bool {
    s.orthogonal().basis_vectors().iter().all(|c| {
        let val = m.psi().mul_vec(c).unwrap();
        m.mult().is_zero(&val).unwrap()
    })
}

/// `(dim B, dim Z)` found by enumeration; `None` if the enumeration range
/// is too small for this motive.
pub fn oracle_dims(m: &OneMotive) -> Option<(usize, usize)> {
    let (r, s) = (m.r(), m.s());
    let (wa, ws) = match m.abelian() {
        Some(pair) => (
            oracle_w(m.v(), pair.a.relations())?,
            oracle_w(m.vstar(), pair.astar.relations())?,
        ),
        None => (Subspace::zero(r), Subspace::zero(s)),
    };
    let g = m.g();
    let z1 = smallest_candidate(r * s, |c| kills_bracket(c, &wa, &ws, r, s))?;
    let z = smallest_candidate(r * s, |c| z1.is_subspace_of(c).unwrap() && kills_psi(c, m))?;
    Some((g * (wa.dim() + ws.dim()), z.dim()))
}

// ---- random documents ----

fn q(n: i64) -> Q {
    Q::int(n)
}

fn small() -> impl Strategy<Value = i64> {
    -2i64..=2
}

fn exps(names: &[&str], xs: &[i64]) -> Exponents {
    names
        .iter()
        .zip(xs)
        .filter(|(_, x)| **x != 0)
        .map(|(n, x)| (n.to_string(), q(*x)))
        .collect()
}

/// A random valid document: one motive with ranks ≤ 3, optionally over
/// `E` (point space ℚ², dual `Ed`), with random point and multiplicative
/// relations.
pub fn random_document() -> impl Strategy<Value = InputDocument> {
    (0usize..=3, 0usize..=3, any::<bool>()).prop_flat_map(|(r, s, with_a)| {
        (
            proptest::collection::vec([small(), small()], r),
            proptest::collection::vec([small(), small()], s),
            proptest::collection::vec([small(), small(), small()], r * s),
            proptest::collection::vec([small(), small()], 0..=1),
            proptest::collection::vec([small(), small(), small()], 0..=2),
        )
            .prop_map(move |(v, vstar, psi, rel_a, rel_mult)| {
                let names = ["t1", "t2", "t3"];
                let coords = |p: &[i64; 2]| PointRef::Coords(vec![q(p[0]), q(p[1])]);
                let varieties = if with_a {
                    vec![
                        VarietyDecl {
                            relations: rel_a.iter().map(|p| vec![q(p[0]), q(p[1])]).collect(),
                            ..variety("E", "Ed")
                        },
                        variety("Ed", "E"),
                    ]
                } else {
                    Vec::new()
                };
                let motive = MotiveDecl {
                    name: "M".into(),
                    x_rank: r,
                    yv_rank: s,
                    x_action: vec![],
                    yv_action: vec![],
                    a: with_a.then(|| "E".to_string()),
                    astar: with_a.then(|| "Ed".to_string()),
                    v: if with_a { v.iter().map(coords).collect() } else { vec![] },
                    vstar: if with_a { vstar.iter().map(coords).collect() } else { vec![] },
                    psi: if r * s == 0 {
                        Vec::new()
                    } else {
                        (0..r)
                        .map(|i| (0..s).map(|j| exps(&names, &psi[i * s + j])).collect())
                        .collect()
                    },
                    reductive_dim: None,
                };
                InputDocument {
                    mult_basis: names.iter().map(|n| n.to_string()).collect(),
                    mult_relations: rel_mult.iter().map(|x| exps(&names, x)).collect(),
                    varieties,
                    motives: vec![motive],
                    ..InputDocument::default()
                }
            })
    })
}

pub fn variety(name: &str, dual: &str) -> VarietyDecl {
    VarietyDecl {
        name: name.into(),
        g: 1,
        dual: dual.into(),
        point_space_dim: 2,
        points: BTreeMap::new(),
        relations: vec![],
        end_generators: vec![],
        end_commutative: true,
        end_action: vec![],
        dual_transfer: None,
        galois_action: vec![],
    }
}
