mod common;

use common::*;
use motcalc_core::abvar::{smallest_subvariety, AbelianVarietyModel, PointVector, VarietyParams};
use motcalc_core::exactlin::{rat_vec, Subspace};
use motcalc_core::radical::{derived_torus_z1, smallest_b, torus_z, unipotent_radical};
use proptest::prelude::*;

#[test]
fn ell_rel_matches_enumeration() {
    // P2 = 2 P1 on a one-dimensional point space
    let e = AbelianVarietyModel::new(VarietyParams::simple("E", "E", 1, 1)).unwrap();
    let p = PointVector::new("E", 1, vec![rat_vec(&[1]), rat_vec(&[2])]).unwrap();
    let w = smallest_subvariety(&e, &p).unwrap();
    let oracle = oracle_w(&p, e.relations()).unwrap();
    assert_eq!(oracle, Subspace::span_i64(2, &[&[1, 2]]).unwrap());
    assert_eq!(w.space, oracle);
    assert_eq!(w.dim, 1);
}

#[test]
fn ell_rel_through_declared_relation() {
    let mut params = VarietyParams::simple("E", "E", 1, 2);
    params.relations = vec![rat_vec(&[-2, 1])];
    let e = AbelianVarietyModel::new(params).unwrap();
    let p = PointVector::new("E", 2, vec![rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
    assert_eq!(
        smallest_subvariety(&e, &p).unwrap().space,
        oracle_w(&p, e.relations()).unwrap()
    );
}

#[test]
fn ext_weil_matches_enumeration() {
    let sk = MotiveSketch {
        with_a: true,
        v: vec![[1, 0]],
        vstar: vec![[0, 1]],
        psi: vec![[1, 0]],
        rel_a: None,
        rel_mult: None,
    };
    let m = sk.build();
    let pair = m.abelian().unwrap();
    let wa = oracle_w(m.v(), pair.a.relations()).unwrap();
    let ws = oracle_w(m.vstar(), pair.astar.relations()).unwrap();
    let z1 = smallest_candidate(1, |s| kills_bracket(s, &wa, &ws, 1, 1)).unwrap();
    let z = smallest_candidate(1, |s| z1.is_subspace_of(s).unwrap() && kills_psi(s, &m)).unwrap();
    let dims = (wa.dim() + ws.dim(), z.dim(), wa.dim() + ws.dim() + z.dim());
    assert_eq!(dims, (2, 1, 3));
    let rep = unipotent_radical(&m, None).unwrap();
    assert_eq!(
        (rep.dims.dim_b, rep.dims.dim_z, rep.dims.dim_unipotent),
        dims
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radical_matches_enumeration(sk in sketch(3, 3).prop_filter("small character space", |s| s.r() * s.s() <= 3)) {
        let m = sk.build();
        let b = smallest_b(&m).unwrap();
        let (r, s) = (m.r(), m.s());
        let (wa, ws) = match m.abelian() {
            Some(pair) => (
                oracle_w(m.v(), pair.a.relations()).unwrap(),
                oracle_w(m.vstar(), pair.astar.relations()).unwrap(),
            ),
            None => (Subspace::zero(r), Subspace::zero(s)),
        };
        prop_assert_eq!(&b.a_side.space, &wa);
        prop_assert_eq!(&b.astar_side.space, &ws);
        let z1 = derived_torus_z1(&m, &b).unwrap();
        let oz1 = smallest_candidate(r * s, |c| kills_bracket(c, &wa, &ws, r, s)).unwrap();
        prop_assert_eq!(&z1, &oz1);
        let z = torus_z(&m, &z1).unwrap();
        if let Some(oz) = smallest_candidate(r * s, |c| z1.is_subspace_of(c).unwrap() && kills_psi(c, &m)) {
            prop_assert_eq!(z, oz);
        }
    }
}
