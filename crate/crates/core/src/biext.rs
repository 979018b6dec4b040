//! Biextension classes as torus-valued bilinear forms.
//!
//! A class pairs a left list of coordinate slots with a right list. Each
//! slot is either one copy of an abelian variety `A`, one copy of its dual
//! `A*`, or a torus coordinate. For every basis element of the target
//! cocharacter lattice there is a rational coefficient matrix. A nonzero
//! coefficient between an `A`-slot and an `A*`-slot (in either order)
//! stands for that multiple of the Weil symbol `⟨a, b⟩_A`, always read with
//! the `A`-argument first. The symbol itself is never evaluated.

use num_traits::Zero;

use crate::abvar::AbelianVarietyModel;
use crate::error::{Error, Result};
use crate::exactlin::{frac, rat, RatMatrix};
use crate::galmod::GaloisLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Primal,
    Dual,
}

/// One coordinate of a graded space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// A copy of `variety` (primal side) or of its dual. `variety` always
    /// names the primal side, so `⟨·,·⟩_variety` pairs the two.
    Abelian { variety: String, side: Side },
    Torus,
}

impl Slot {
    pub fn primal(variety: &str) -> Self {
        Slot::Abelian {
            variety: variety.to_string(),
            side: Side::Primal,
        }
    }

    pub fn dual(variety: &str) -> Self {
        Slot::Abelian {
            variety: variety.to_string(),
            side: Side::Dual,
        }
    }

    /// Whether a nonzero coefficient may sit at (self, other).
    pub fn pairs_with(&self, other: &Slot) -> bool {
        match (self, other) {
            (Slot::Torus, Slot::Torus) => true,
            (
                Slot::Abelian { variety: a, side: s },
                Slot::Abelian { variety: b, side: t },
            ) => a == b && s != t,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPairingClass {
    left: Vec<Slot>,
    right: Vec<Slot>,
    target: GaloisLattice,
    /// One `left × right` matrix per target basis element.
    coeffs: Vec<RatMatrix>,
}

impl TorusPairingClass {
    pub fn new(
        left: Vec<Slot>,
        right: Vec<Slot>,
        target: GaloisLattice,
        coeffs: Vec<RatMatrix>,
    ) -> Result<Self> {
        if coeffs.len() != target.rank() {
            return Err(Error::dim("pairing components", target.rank(), coeffs.len()));
        }
        for c in &coeffs {
            if c.rows() != left.len() || c.cols() != right.len() {
                return Err(Error::dim("pairing block", left.len() * right.len(), c.rows() * c.cols()));
            }
            for (p, lp) in left.iter().enumerate() {
                for (q, rq) in right.iter().enumerate() {
                    if !lp.pairs_with(rq) && !c.get(p, q).is_zero() {
                        return Err(Error::invalid(format!(
                            "nonzero coefficient between {lp:?} and {rq:?} violates weights"
                        )));
                    }
                }
            }
        }
        Ok(TorusPairingClass {
            left,
            right,
            target,
            coeffs,
        })
    }

    pub fn zero(left: Vec<Slot>, right: Vec<Slot>, target: GaloisLattice) -> Self {
        let coeffs = vec![RatMatrix::zeros(left.len(), right.len()); target.rank()];
        TorusPairingClass {
            left,
            right,
            target,
            coeffs,
        }
    }

    pub fn left(&self) -> &[Slot] {
        &self.left
    }

    pub fn right(&self) -> &[Slot] {
        &self.right
    }

    pub fn target(&self) -> &GaloisLattice {
        &self.target
    }

    pub fn components(&self) -> &[RatMatrix] {
        &self.coeffs
    }

    pub fn component(&self, l: usize) -> &RatMatrix {
        &self.coeffs[l]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatMatrix::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.left == self.right
    }

    pub fn scale(&self, k: &crate::exactlin::Rational) -> Self {
        TorusPairingClass {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.left != other.left || self.right != other.right || self.target != other.target {
            return Err(Error::invalid("adding pairing classes on different spaces"));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(TorusPairingClass {
            coeffs,
            ..self.clone()
        })
    }

    /// True iff `c(x, y) = −c(y, x)` on every pair of basis slots.
    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && self
                .coeffs
                .iter()
                .all(|c| *c == c.transpose().scale(&rat(-1)))
    }
}

/// The Poincaré class on `A × A*` with target `ℤ(1)`.
pub fn poincare_class(a: &AbelianVarietyModel) -> Result<TorusPairingClass> {
    if a.g() == 0 {
        return Err(Error::invalid("the Poincaré class needs g ≥ 1"));
    }
    if a.dual_name().is_empty() {
        return Err(Error::invalid(format!("`{}` has no registered dual", a.name())));
    }
    TorusPairingClass::new(
        vec![Slot::primal(a.name())],
        vec![Slot::dual(a.name())],
        GaloisLattice::trivial_rank(1),
        vec![RatMatrix::identity(1)],
    )
}

/// `s*c`: the class on the swapped spaces. Under the sign rule
/// `s*B ↔ −b∘s` its coefficients are the negated transpose.
pub fn swap_pullback(c: &TorusPairingClass) -> TorusPairingClass {
    TorusPairingClass {
        left: c.right.clone(),
        right: c.left.clone(),
        target: c.target.clone(),
        coeffs: c.coeffs.iter().map(|m| m.transpose().scale(&rat(-1))).collect(),
    }
}

fn check_square(c: &TorusPairingClass) -> Result<()> {
    if !c.is_square() {
        return Err(Error::invalid("operation needs identical left and right spaces"));
    }
    Ok(())
}

/// `B ∧ s*B`, i.e. the form `b − b∘s` without normalization.
pub fn symmetrize_biext(c: &TorusPairingClass) -> Result<TorusPairingClass> {
    check_square(c)?;
    let coeffs = c
        .coeffs
        .iter()
        .map(|m| m.sub(&m.transpose()))
        .collect::<Result<_>>()?;
    Ok(TorusPairingClass {
        coeffs,
        ..c.clone()
    })
}

/// `(b − b∘s) / 2`; idempotent.
pub fn antisymmetrize(c: &TorusPairingClass) -> Result<TorusPairingClass> {
    Ok(symmetrize_biext(c)?.scale(&frac(1, 2)))
}

/// The quadratic class of the Σ-torsor `d*c` on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTorsorClass {
    base: Vec<Slot>,
    quadratic_class: TorusPairingClass,
}

impl SigmaTorsorClass {
    pub fn base(&self) -> &[Slot] {
        &self.base
    }

    pub fn quadratic_class(&self) -> &TorusPairingClass {
        &self.quadratic_class
    }

    pub fn is_trivial(&self) -> bool {
        self.quadratic_class.is_zero()
    }

    pub fn scale(&self, k: &crate::exactlin::Rational) -> Self {
        SigmaTorsorClass {
            base: self.base.clone(),
            quadratic_class: self.quadratic_class.scale(k),
        }
    }
}

pub fn diagonal_restrict(c: &TorusPairingClass) -> Result<SigmaTorsorClass> {
    check_square(c)?;
    Ok(SigmaTorsorClass {
        base: c.left.clone(),
        quadratic_class: c.clone(),
    })
}

/// The class `ℙ` on `(A^x + A*^y)²` with target `ℤ^{x·y}(1)`: component
/// `l = i·y + j` carries `⟨a_i, b_j⟩` at `(A_i, A*_j)` and its swap at
/// `(A*_j, A_i)`.
pub fn assemble_example_biext(
    x: usize,
    y: usize,
    a: &AbelianVarietyModel,
) -> Result<TorusPairingClass> {
    if x == 0 || y == 0 {
        return Err(Error::invalid("assemble_example_biext needs x ≥ 1 and y ≥ 1"));
    }
    let slots = example_slots(x, y, a.name());
    let n = x + y;
    let mut coeffs = Vec::with_capacity(x * y);
    for i in 0..x {
        for j in 0..y {
            let mut m = RatMatrix::zeros(n, n);
            m.set(i, x + j, rat(1));
            m.set(x + j, i, rat(-1));
            coeffs.push(m);
        }
    }
    TorusPairingClass::new(
        slots.clone(),
        slots,
        GaloisLattice::trivial_rank(x * y),
        coeffs,
    )
}

/// `x` copies of `A` followed by `y` copies of `A*`.
pub fn example_slots(x: usize, y: usize, variety: &str) -> Vec<Slot> {
    let mut v = vec![Slot::primal(variety); x];
    v.extend(std::iter::repeat_n(Slot::dual(variety), y));
    v
}

fn pulled_slots(slots: &[Slot], f: &RatMatrix) -> Result<Vec<Slot>> {
    if f.rows() != slots.len() {
        return Err(Error::dim("pullback map", slots.len(), f.rows()));
    }
    let mut out = Vec::with_capacity(f.cols());
    for k in 0..f.cols() {
        let mut label: Option<&Slot> = None;
        for (p, s) in slots.iter().enumerate() {
            if f.get(p, k).is_zero() {
                continue;
            }
            match label {
                None => label = Some(s),
                Some(prev) if prev == s => {}
                Some(_) => {
                    return Err(Error::invalid(
                        "pullback map mixes coordinates of different slot types",
                    ))
                }
            }
        }
        out.push(label.cloned().unwrap_or(Slot::Torus));
    }
    Ok(out)
}

/// `(u, w) ↦ c(f_left·u, f_right·w)`.
pub fn pullback(
    c: &TorusPairingClass,
    f_left: &RatMatrix,
    f_right: &RatMatrix,
) -> Result<TorusPairingClass> {
    let left = pulled_slots(&c.left, f_left)?;
    let right = pulled_slots(&c.right, f_right)?;
    let ft = f_left.transpose();
    let coeffs = c
        .coeffs
        .iter()
        .map(|m| ft.mul(m)?.mul(f_right))
        .collect::<Result<Vec<_>>>()?;
    TorusPairingClass::new(left, right, c.target.clone(), coeffs)
}

/// Pushes the target along `proj` (a `k × rank(target)` matrix). The image
/// lattice carries the trivial action of the same group; use
/// [`pushforward_to`] to supply its action.
pub fn pushforward_character(
    c: &TorusPairingClass,
    proj: &RatMatrix,
) -> Result<TorusPairingClass> {
    let target = GaloisLattice::trivial(c.target.group(), proj.rows());
    pushforward_to(c, proj, target)
}

pub fn pushforward_to(
    c: &TorusPairingClass,
    proj: &RatMatrix,
    target: GaloisLattice,
) -> Result<TorusPairingClass> {
    if proj.cols() != c.target.rank() {
        return Err(Error::dim("pushforward projection", c.target.rank(), proj.cols()));
    }
    if proj.rows() != target.rank() {
        return Err(Error::dim("pushforward target", target.rank(), proj.rows()));
    }
    let mut coeffs = Vec::with_capacity(proj.rows());
    for k in 0..proj.rows() {
        let mut m = RatMatrix::zeros(c.left.len(), c.right.len());
        for (l, cl) in c.coeffs.iter().enumerate() {
            let p = proj.get(k, l);
            if !p.is_zero() {
                m = m.add(&cl.scale(p))?;
            }
        }
        coeffs.push(m);
    }
    TorusPairingClass::new(c.left.clone(), c.right.clone(), target, coeffs)
}
