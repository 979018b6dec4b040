//! The weight −1 and −2 pieces of the endomorphism algebra of `Gr M`.
//!
//! Coordinates: `E₋₁ = X^v⊗A ⊕ A*⊗Y` has one slot per `e*_i ⊗ A`
//! (`i < r`, primal slots) followed by one slot per `A* ⊗ f_j` (`j < s`,
//! dual slots). `E₋₂ = X^v⊗Y` has index `i·s + j`. When the motive has no
//! abelian part `E₋₁` has no slots.

use num_traits::Zero;

use crate::biext::{Slot, TorusPairingClass};
use crate::error::Result;
use crate::exactlin::{rat, RatMatrix, Rational};
use crate::galmod::{dual, tensor, GaloisLattice};
use crate::onemotive::GradedPieces;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEndData {
    r: usize,
    s: usize,
    slots: Vec<Slot>,
    em2: GaloisLattice,
    product: TorusPairingClass,
    bracket: TorusPairingClass,
}

impl GradedEndData {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Slots of `E₋₁`.
    pub fn em1_slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Number of `A`-copies and `A*`-copies in `E₋₁`.
    pub fn em1_dims(&self) -> (usize, usize) {
        if self.slots.is_empty() {
            (0, 0)
        } else {
            (self.r, self.s)
        }
    }

    pub fn em2(&self) -> &GaloisLattice {
        &self.em2
    }

    /// The composition product `P(x, y) = y ∘ x`.
    pub fn product(&self) -> &TorusPairingClass {
        &self.product
    }

    pub fn bracket(&self) -> &TorusPairingClass {
        &self.bracket
    }

    /// Replaces the bracket; for negative controls in tests.
    pub fn with_bracket(&self, bracket: TorusPairingClass) -> Self {
        GradedEndData {
            bracket,
            ..self.clone()
        }
    }
}

fn em1_slots(g: &GradedPieces) -> Vec<Slot> {
    match &g.abelian {
        None => Vec::new(),
        Some(pair) => {
            let name = pair.a.name();
            let mut v = vec![Slot::primal(name); g.r()];
            v.extend(std::iter::repeat_n(Slot::dual(name), g.s()));
            v
        }
    }
}

pub fn build_e(g: &GradedPieces) -> Result<GradedEndData> {
    let (r, s) = (g.r(), g.s());
    let slots = em1_slots(g);
    let em2 = tensor(&dual(&g.x), &g.y)?;
    let n = slots.len();
    let mut product = Vec::with_capacity(r * s);
    let mut bracket = Vec::with_capacity(r * s);
    for i in 0..r {
        for j in 0..s {
            let mut p = RatMatrix::zeros(n, n);
            if n > 0 {
                p.set(i, r + j, rat(1));
            }
            // [x, y] = P(x, y) − P(y, x)
            bracket.push(p.sub(&p.transpose())?);
            product.push(p);
        }
    }
    let product = TorusPairingClass::new(slots.clone(), slots.clone(), em2.clone(), product)?;
    let bracket = TorusPairingClass::new(slots.clone(), slots.clone(), em2.clone(), bracket)?;
    Ok(GradedEndData {
        r,
        s,
        slots,
        em2,
        product,
        bracket,
    })
}

/// Coefficient tables of the action of `E` on `Gr M`.
///
/// * `alpha1`: `slots × r`; entry `(p, k)` is the multiple of the
///   `A`-argument of slot `p` obtained by evaluating on `e_k`.
/// * `alpha2`: `slots × s`; row `p` is the `Y`-vector multiplying the Weil
///   symbol when slot `p` is evaluated on a point of `A`.
/// * `gamma[k]`: `s × rs`; column `i·s + j` is the value of `e*_i ⊗ f_j` on `e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMaps {
    pub alpha1: RatMatrix,
    pub alpha2: RatMatrix,
    pub gamma: Vec<RatMatrix>,
}

/// Coefficient tables of the action of `E` on `Gr M*`.
///
/// * `alpha2_star`: `slots × s`; entry `(p, k)` is the multiple of the
///   `A*`-argument of slot `p` obtained on `f*_k`.
/// * `alpha1_star`: `slots × r`; row `p` is the `X^v`-vector multiplying
///   the Weil symbol when slot `p` is evaluated on a point of `A*`.
/// * `gamma_star[k]`: `r × rs`; column `i·s + j` is the value of `e*_i ⊗ f_j` on `f*_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualActionMaps {
    pub alpha2_star: RatMatrix,
    pub alpha1_star: RatMatrix,
    pub gamma_star: Vec<RatMatrix>,
}

pub fn action_maps(g: &GradedPieces) -> ActionMaps {
    let (r, s) = (g.r(), g.s());
    let n = em1_slots(g).len();
    let mut alpha1 = RatMatrix::zeros(n, r);
    let mut alpha2 = RatMatrix::zeros(n, s);
    if n > 0 {
        for i in 0..r {
            alpha1.set(i, i, rat(1));
        }
        for j in 0..s {
            alpha2.set(r + j, j, rat(1));
        }
    }
    let gamma = (0..r)
        .map(|k| {
            let mut m = RatMatrix::zeros(s, r * s);
            for j in 0..s {
                m.set(j, k * s + j, rat(1));
            }
            m
        })
        .collect();
    ActionMaps {
        alpha1,
        alpha2,
        gamma,
    }
}

pub fn dual_action_maps(g: &GradedPieces) -> DualActionMaps {
    let (r, s) = (g.r(), g.s());
    let n = em1_slots(g).len();
    let mut alpha2_star = RatMatrix::zeros(n, s);
    let mut alpha1_star = RatMatrix::zeros(n, r);
    if n > 0 {
        for j in 0..s {
            alpha2_star.set(r + j, j, rat(1));
        }
        for i in 0..r {
            alpha1_star.set(i, i, rat(1));
        }
    }
    let gamma_star = (0..s)
        .map(|k| {
            let mut m = RatMatrix::zeros(r, r * s);
            for i in 0..r {
                m.set(i, i * s + k, rat(1));
            }
            m
        })
        .collect();
    DualActionMaps {
        alpha2_star,
        alpha1_star,
        gamma_star,
    }
}

/// Outcome of a Lie-axiom check; `witness` describes the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCheck {
    pub ok: bool,
    pub witness: Option<String>,
}

impl LieCheck {
    fn pass() -> Self {
        LieCheck {
            ok: true,
            witness: None,
        }
    }

    fn fail(msg: String) -> Self {
        LieCheck {
            ok: false,
            witness: Some(msg),
        }
    }
}

fn row_times(scalar: &Rational, row: &[Rational]) -> Vec<Rational> {
    row.iter().map(|x| scalar * x).collect()
}

fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `Σ_l c_l · m[:, l]` for the bracket coefficients `c` at one slot pair.
fn through_gamma(e: &GradedEndData, p: usize, q: usize, m: &RatMatrix) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); m.rows()];
    for (l, c) in e.bracket.components().iter().enumerate() {
        let cl = c.get(p, q);
        if cl.is_zero() {
            continue;
        }
        for (t, o) in out.iter_mut().enumerate() {
            *o += cl * m.get(t, l);
        }
    }
    out
}

fn check_shape(e: &GradedEndData) -> LieCheck {
    if !e.bracket.is_antisymmetric() {
        return LieCheck::fail("bracket is not antisymmetric".into());
    }
    // Jacobi: [[x, y], z] lands in weight −3, so every E₋₂ ⊗ E₋₁ block of
    // the extended bracket vanishes and the composite is zero.
    let ext = extended_bracket_blocks(e);
    for (l, c) in ext.iter().enumerate() {
        if !c.is_zero() {
            return LieCheck::fail(format!("[E₋₂, E₋₁] component {l} is nonzero"));
        }
    }
    LieCheck::pass()
}

/// The bracket restricted to `E₋₂ × E₋₁`, which is structurally zero.
fn extended_bracket_blocks(e: &GradedEndData) -> Vec<RatMatrix> {
    vec![RatMatrix::zeros(e.em2.rank(), e.slots.len()); e.em2.rank()]
}

/// Checks that `E` acts on `Gr M` compatibly with the bracket: for basis
/// slots `p, q` and `e_k`, `y(x(e_k)) − x(y(e_k)) = γ([x_p, y_q], e_k)`, with
/// `x` acting first. Also checks antisymmetry and the Jacobi identity.
pub fn verify_lie_module(e: &GradedEndData, g: &GradedPieces) -> LieCheck {
    let shape = check_shape(e);
    if !shape.ok {
        return shape;
    }
    let maps = action_maps(g);
    let n = e.slots.len();
    let composite = |p: usize, q: usize, k: usize| -> Vec<Rational> {
        row_times(maps.alpha1.get(p, k), &maps.alpha2.row(q))
    };
    for p in 0..n {
        for q in 0..n {
            for k in 0..e.r {
                let lhs = sub_vec(&composite(p, q, k), &composite(q, p, k));
                let rhs = through_gamma(e, p, q, &maps.gamma[k]);
                if lhs != rhs {
                    return LieCheck::fail(format!(
                        "action and bracket disagree on slots ({p}, {q}) at e_{k}"
                    ));
                }
            }
        }
    }
    LieCheck::pass()
}

/// The same check on `Gr M*`. The action there is contragredient, so the
/// commutator of actions equals `−γ*([x, y], f*_k)`.
pub fn verify_dual_lie_module(e: &GradedEndData, g: &GradedPieces) -> LieCheck {
    let shape = check_shape(e);
    if !shape.ok {
        return shape;
    }
    let maps = dual_action_maps(g);
    let n = e.slots.len();
    let composite = |p: usize, q: usize, k: usize| -> Vec<Rational> {
        row_times(maps.alpha2_star.get(p, k), &maps.alpha1_star.row(q))
    };
    for p in 0..n {
        for q in 0..n {
            for k in 0..e.s {
                let lhs = sub_vec(&composite(p, q, k), &composite(q, p, k));
                let rhs: Vec<Rational> = through_gamma(e, p, q, &maps.gamma_star[k])
                    .into_iter()
                    .map(|x| -x)
                    .collect();
                if lhs != rhs {
                    return LieCheck::fail(format!(
                        "dual action and bracket disagree on slots ({p}, {q}) at f*_{k}"
                    ));
                }
            }
        }
    }
    LieCheck::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abvar::{AbelianVarietyModel, VarietyParams};
    use crate::biext::{antisymmetrize, assemble_example_biext};
    use crate::onemotive::AbelianPair;
    use std::sync::Arc;

    fn curve() -> Arc<AbelianVarietyModel> {
        Arc::new(AbelianVarietyModel::new(VarietyParams::simple("E", "E", 1, 1)).unwrap())
    }

    fn pieces(r: usize, with_a: bool, s: usize) -> GradedPieces {
        let e = curve();
        GradedPieces {
            x: GaloisLattice::trivial_rank(r),
            abelian: with_a.then(|| AbelianPair::new(e.clone(), e).unwrap()),
            y: GaloisLattice::trivial_rank(s),
        }
    }

    #[test]
    fn build_e_examples() {
        let e = build_e(&pieces(1, false, 3)).unwrap();
        assert_eq!(e.em1_dims(), (0, 0));
        assert_eq!(e.em2().rank(), 3);
        assert!(e.bracket().is_zero());
        let e = build_e(&pieces(1, true, 0)).unwrap();
        assert_eq!(e.em1_dims(), (1, 0));
        assert_eq!(e.em2().rank(), 0);
        assert!(e.bracket().is_zero());
        let e = build_e(&pieces(1, true, 1)).unwrap();
        assert_eq!(e.bracket().component(0), &RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn bracket_matches_assembled_class() {
        let c = curve();
        for r in 0..=3 {
            for s in 0..=3 {
                let e = build_e(&pieces(r, true, s)).unwrap();
                if r == 0 || s == 0 {
                    assert!(e.bracket().is_zero());
                    continue;
                }
                let p = antisymmetrize(&assemble_example_biext(r, s, &c).unwrap()).unwrap();
                assert_eq!(e.bracket().components(), p.components());
                assert_eq!(e.bracket().left(), p.left());
            }
        }
    }

    #[test]
    fn action_map_values() {
        let m = action_maps(&pieces(2, true, 1));
        assert_eq!(m.alpha1.get(0, 0), &rat(1));
        assert_eq!(m.alpha1.get(0, 1), &rat(0));
        assert_eq!(m.alpha2.row(2), vec![rat(1)]);
        let d = dual_action_maps(&pieces(2, true, 2));
        assert_eq!(d.alpha2_star.get(2, 0), &rat(1));
        assert_eq!(d.alpha2_star.get(2, 1), &rat(0));
        // γ* on mismatched indices
        assert_eq!(d.gamma_star[0].get(0, 1), &rat(0));
        // α1* mirrors α2: transpose of the block tables agrees
        let m = action_maps(&pieces(2, true, 2));
        assert_eq!(
            d.alpha1_star.transpose().column_vectors()[..2],
            m.alpha1.transpose().column_vectors()[..2]
        );
    }

    #[test]
    fn lie_module_holds() {
        for r in 0..=3 {
            for s in 0..=3 {
                for a in [false, true] {
                    let g = pieces(r, a, s);
                    let e = build_e(&g).unwrap();
                    assert!(verify_lie_module(&e, &g).ok, "r={r} s={s} a={a}");
                    assert!(verify_dual_lie_module(&e, &g).ok, "r={r} s={s} a={a}");
                }
            }
        }
    }

    #[test]
    fn corrupted_bracket_is_caught() {
        let g = pieces(1, true, 1);
        let e = build_e(&g).unwrap();
        let flipped = e.with_bracket(e.bracket().scale(&rat(-1)));
        let res = verify_lie_module(&flipped, &g);
        assert!(!res.ok);
        assert!(res.witness.unwrap().contains("slots"));
        let lopsided = TorusPairingClass::new(
            e.em1_slots().to_vec(),
            e.em1_slots().to_vec(),
            e.em2().clone(),
            vec![RatMatrix::from_i64(&[&[0, 1], &[0, 0]])],
        )
        .unwrap();
        assert!(!verify_lie_module(&e.with_bracket(lopsided), &g).ok);
    }

    #[test]
    fn dual_pieces_give_negated_permuted_bracket() {
        let (r, s) = (2, 3);
        let e = build_e(&pieces(r, true, s)).unwrap();
        let d = build_e(&pieces(s, true, r)).unwrap();
        assert_eq!(d.em1_dims(), (s, r));
        assert_eq!(d.em2().rank(), e.em2().rank());
        // slot map: A_i ↦ s + i, A*_j ↦ j; component (i, j) ↦ (j, i)
        let perm = |p: usize| if p < r { s + p } else { p - r };
        for i in 0..r {
            for j in 0..s {
                let c = e.bracket().component(i * s + j);
                let cd = d.bracket().component(j * r + i);
                for p in 0..r + s {
                    for q in 0..r + s {
                        assert_eq!(cd.get(perm(p), perm(q)), &-c.get(p, q).clone());
                    }
                }
            }
        }
    }
}
