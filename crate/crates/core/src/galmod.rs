//! Lattices with an action of a finite group through explicit generator
//! matrices.
//!
//! The absolute Galois group always acts through a finite quotient on the
//! lattices of a 1-motive, so the calculus only ever needs generator
//! matrices of that quotient. The trivial group (no generators) is the
//! default.

use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Subspace};

/// A finite group presented by a number of generators and, optionally,
/// relator words. A word letter `k > 0` stands for generator `k - 1`,
/// and `-k` for its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ActionGroup {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

impl ActionGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for word in &relators {
            for &letter in word {
                let idx = letter.unsigned_abs() as usize;
                if letter == 0 || idx > generators {
                    return Err(Error::invalid(format!(
                        "relator letter {letter} does not name one of {generators} generators"
                    )));
                }
            }
        }
        Ok(ActionGroup {
            generators,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators == 0
    }
}

/// A free ℤ-module of finite rank with one invertible integer matrix per
/// group generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisLattice {
    group: ActionGroup,
    rank: usize,
    action: Vec<RatMatrix>,
}

impl GaloisLattice {
    /// Lattice of the given rank where every generator acts trivially.
    pub fn trivial(group: &ActionGroup, rank: usize) -> Self {
        GaloisLattice {
            group: group.clone(),
            rank,
            action: vec![RatMatrix::identity(rank); group.generator_count()],
        }
    }

    /// Trivial lattice over the trivial group.
    pub fn trivial_rank(rank: usize) -> Self {
        Self::trivial(&ActionGroup::trivial(), rank)
    }

    pub fn new(group: &ActionGroup, rank: usize, action: Vec<RatMatrix>) -> Result<Self> {
        if action.len() != group.generator_count() {
            return Err(Error::dim(
                "lattice action matrices",
                group.generator_count(),
                action.len(),
            ));
        }
        for (k, g) in action.iter().enumerate() {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::dim("lattice action matrix", rank, g.rows()));
            }
            if !g.is_integral() {
                return Err(Error::invalid(format!(
                    "action matrix of generator {} is not integral",
                    k + 1
                )));
            }
            let det = g.determinant()?;
            if det != crate::exactlin::rat(1) && det != crate::exactlin::rat(-1) {
                return Err(Error::invalid(format!(
                    "action matrix of generator {} has determinant {det}, expected ±1",
                    k + 1
                )));
            }
        }
        Ok(GaloisLattice {
            group: group.clone(),
            rank,
            action,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> &ActionGroup {
        &self.group
    }

    pub fn action(&self) -> &[RatMatrix] {
        &self.action
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action
            .iter()
            .all(|g| *g == RatMatrix::identity(self.rank))
    }

    /// Evaluates every relator word; returns one message per relator that
    /// does not act as the identity. Callers surface these as warnings.
    pub fn relator_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (n, word) in self.group.relators.iter().enumerate() {
            let mut acc = RatMatrix::identity(self.rank);
            for &letter in word {
                let g = &self.action[letter.unsigned_abs() as usize - 1];
                let m = if letter > 0 {
                    g.clone()
                } else {
                    g.inverse().expect("action matrices are invertible")
                };
                acc = acc.mul(&m).expect("square matrices of lattice rank");
            }
            if acc != RatMatrix::identity(self.rank) {
                out.push(format!(
                    "relator #{} does not act trivially on a rank-{} lattice",
                    n + 1,
                    self.rank
                ));
            }
        }
        out
    }
}

/// Tensor product; basis `e_i ⊗ f_j` sits at flat index `i·rank(b) + j`.
pub fn tensor(a: &GaloisLattice, b: &GaloisLattice) -> Result<GaloisLattice> {
    check_same_group(a, b)?;
    Ok(GaloisLattice {
        group: a.group.clone(),
        rank: a.rank * b.rank,
        action: a
            .action
            .iter()
            .zip(&b.action)
            .map(|(x, y)| x.kron(y))
            .collect(),
    })
}

/// Dual lattice: each generator acts by the inverse transpose.
pub fn dual(a: &GaloisLattice) -> GaloisLattice {
    GaloisLattice {
        group: a.group.clone(),
        rank: a.rank,
        action: a
            .action
            .iter()
            .map(|g| {
                g.inverse()
                    .expect("action matrices are invertible")
                    .transpose()
            })
            .collect(),
    }
}

pub fn check_same_group(a: &GaloisLattice, b: &GaloisLattice) -> Result<()> {
    if a.group != b.group {
        return Err(Error::GroupMismatch {
            left: a.group.generator_count(),
            right: b.group.generator_count(),
        });
    }
    Ok(())
}

/// Smallest subspace containing `s` and stable under every matrix in `action`.
pub fn stable_closure_under(action: &[RatMatrix], s: &Subspace) -> Result<Subspace> {
    let mut current = s.clone();
    loop {
        let mut next = current.clone();
        for g in action {
            next = next.sum(&current.image(g)?)?;
        }
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

/// Smallest subspace of `l ⊗ ℚ` containing `s` and stable under the action.
pub fn stable_closure(l: &GaloisLattice, s: &Subspace) -> Result<Subspace> {
    if s.ambient() != l.rank() {
        return Err(Error::dim("stable closure", l.rank(), s.ambient()));
    }
    stable_closure_under(&l.action, s)
}

/// True iff `f ∘ g_from = g_to ∘ f` for every generator, where the two
/// sides may differ by vectors of `modulo` (column by column).
pub fn equivariant_modulo(
    f: &RatMatrix,
    from: &[RatMatrix],
    to: &[RatMatrix],
    modulo: Option<&Subspace>,
) -> Result<bool> {
    if from.len() != to.len() {
        return Err(Error::GroupMismatch {
            left: from.len(),
            right: to.len(),
        });
    }
    for (gf, gt) in from.iter().zip(to) {
        let lhs = f.mul(gf)?;
        let rhs = gt.mul(f)?;
        let diff = lhs.sub(&rhs)?;
        if diff.is_zero() {
            continue;
        }
        match modulo {
            None => return Ok(false),
            Some(rel) => {
                for col in diff.column_vectors() {
                    if !rel.contains(&col)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// True iff `f` (a `rank(to) × rank(from)` matrix) commutes with the actions.
pub fn check_equivariance(f: &RatMatrix, from: &GaloisLattice, to: &GaloisLattice) -> Result<bool> {
    check_same_group(from, to)?;
    if f.cols() != from.rank || f.rows() != to.rank {
        return Err(Error::dim("equivariance map", to.rank * from.rank, f.rows() * f.cols()));
    }
    equivariant_modulo(f, &from.action, &to.action, None)
}
