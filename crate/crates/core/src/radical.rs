//! The unipotent radical `W₋₁` of the motivic Lie algebra: the abelian part
//! `B`, the tori `Z₁ ⊆ Z`, and the extension of `B` by `Z(1)`.
//!
//! Characters of `X^v⊗Y` are vectors of ℚ^{r·s} indexed `i·s + j`, paired
//! with cocharacters by the dot product.

use num_traits::Zero;

use crate::abvar::{module_annihilator, smallest_subvariety, PointVector, SubvarietyData};
use crate::error::{Error, Result};
use crate::exactlin::{kernel, RatMatrix, Rational, Subspace};
use crate::galmod::{dual, stable_closure_under, tensor};
use crate::onemotive::OneMotive;

/// `k* ⊗ ℚ` on declared multiplicatively independent generators, modulo
/// optional declared relations. Roots of unity are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultSpace {
    names: Vec<String>,
    relations: Subspace,
    /// Galois action on the generators, one matrix per group generator;
    /// empty means trivial.
    action: Vec<RatMatrix>,
}

impl MultSpace {
    pub fn new(
        names: Vec<String>,
        relations: Vec<Vec<Rational>>,
        action: Vec<RatMatrix>,
    ) -> Result<Self> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::invalid(format!("multiplicative generator `{a}` repeated")));
            }
        }
        let relations = Subspace::span(n, &relations)?;
        for g in &action {
            if g.rows() != n || g.cols() != n || g.inverse().is_none() {
                return Err(Error::invalid(
                    "Galois action on multiplicative generators must be invertible",
                ));
            }
            if !relations.image(g)?.is_subspace_of(&relations)? {
                return Err(Error::invalid(
                    "multiplicative relations are not Galois-stable",
                ));
            }
        }
        Ok(MultSpace {
            names,
            relations,
            action,
        })
    }

    pub fn empty() -> Self {
        MultSpace {
            names: Vec::new(),
            relations: Subspace::zero(0),
            action: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn action(&self) -> &[RatMatrix] {
        &self.action
    }

    pub fn action_for(&self, generators: usize) -> Vec<RatMatrix> {
        if self.action.is_empty() {
            vec![RatMatrix::identity(self.dim()); generators]
        } else {
            self.action.clone()
        }
    }

    pub fn is_zero(&self, x: &[Rational]) -> Result<bool> {
        self.relations.contains(x)
    }
}

/// `(b₁, b₂) = ((v(e_i))_i, (v*(f*_j))_j)`.
pub fn extract_b(m: &OneMotive) -> (PointVector, PointVector) {
    (m.v().clone(), m.vstar().clone())
}

/// `B ⊆ X^v⊗A ⊕ A*⊗Y` as a pair of End⁰-submodules `W_A ⊆ D^r`, `W_{A*} ⊆ D^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BData {
    pub a_side: SubvarietyData,
    pub astar_side: SubvarietyData,
    pub dim: usize,
}

impl BData {
    pub fn algebra_dim(&self) -> usize {
        self.a_side.algebra_dim
    }
}

fn galois_on_modules(action: &[RatMatrix], d: usize) -> Vec<RatMatrix> {
    action
        .iter()
        .map(|g| g.kron(&RatMatrix::identity(d)))
        .collect()
}

pub fn smallest_b(m: &OneMotive) -> Result<BData> {
    let (r, s) = (m.r(), m.s());
    let Some(pair) = m.abelian() else {
        return Ok(BData {
            a_side: SubvarietyData::zero(r, 1),
            astar_side: SubvarietyData::zero(s, 1),
            dim: 0,
        });
    };
    let mut wa = smallest_subvariety(&pair.a, m.v())?;
    let mut ws = smallest_subvariety(&pair.astar, m.vstar())?;
    let xv = dual(m.x());
    let y = dual(m.yv());
    wa.space = stable_closure_under(&galois_on_modules(xv.action(), wa.algebra_dim), &wa.space)?;
    ws.space = stable_closure_under(&galois_on_modules(y.action(), ws.algebra_dim), &ws.space)?;
    wa.dim = pair.a.g() * wa.module_rank();
    ws.dim = pair.astar.g() * ws.module_rank();
    Ok(BData {
        dim: wa.dim + ws.dim,
        a_side: wa,
        astar_side: ws,
    })
}

/// Characters killing the bracket restricted to `B`:
/// `K = {c : Σ c_ij u_i w_j = 0 in End⁰ for all u ∈ W_A, w ∈ W_{A*}}`.
pub fn bracket_killing_characters(m: &OneMotive, b: &BData) -> Result<Subspace> {
    let (r, s) = (m.r(), m.s());
    let Some(pair) = m.abelian() else {
        return Ok(Subspace::full(r * s));
    };
    let alg = pair.a.end_algebra();
    let d = alg.dim();
    let mut rows = Vec::new();
    for u in b.a_side.space.basis_vectors() {
        for w in b.astar_side.space.basis_vectors() {
            // products u_i · w_j in End⁰, one column of coordinates per (i, j)
            let prods: Vec<Vec<Rational>> = (0..r)
                .flat_map(|i| {
                    let ui = u[i * d..(i + 1) * d].to_vec();
                    let w = &w;
                    (0..s).map(move |j| alg.mul(&ui, &w[j * d..(j + 1) * d]))
                })
                .collect();
            for t in 0..d {
                rows.push(prods.iter().map(|p| p[t].clone()).collect::<Vec<_>>());
            }
        }
    }
    Ok(kernel(&RatMatrix::from_rows(r * s, &rows)?))
}

/// Smallest Galois-stable `Z₁ ⊆ X^v⊗Y ⊗ ℚ` through which the bracket on
/// `B` factors.
pub fn derived_torus_z1(m: &OneMotive, b: &BData) -> Result<Subspace> {
    let k = bracket_killing_characters(m, b)?;
    let em2 = tensor(&dual(m.x()), &dual(m.yv()))?;
    stable_closure_under(em2.action(), &k.orthogonal())
}

/// Characters `c ⊥ Z₁` with `c(b̃) = Σ c_ij ψ(e_i, f*_j) = 0`.
pub fn vanishing_characters(m: &OneMotive, z1: &Subspace) -> Result<Subspace> {
    let on_psi = m.mult().relations().preimage(m.psi())?;
    z1.orthogonal().intersect(&on_psi)
}

/// Smallest Galois-stable `Z ⊇ Z₁` whose torus contains `π(b̃)`.
pub fn torus_z(m: &OneMotive, z1: &Subspace) -> Result<Subspace> {
    let rr = vanishing_characters(m, z1)?;
    let em2 = tensor(&dual(m.x()), &dual(m.yv()))?;
    stable_closure_under(em2.action(), &z1.sum(&rr.orthogonal())?)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReductiveDim {
    /// Given by the caller.
    Supplied(usize),
    /// Forced when there is no abelian part.
    Determined(usize),
    /// Left as the dimension of the Lie algebra of the motivic group of `A`.
    Symbolic(String),
}

impl ReductiveDim {
    pub fn value(&self) -> Option<usize> {
        match self {
            ReductiveDim::Supplied(n) | ReductiveDim::Determined(n) => Some(*n),
            ReductiveDim::Symbolic(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ReductiveDim::Supplied(n) => format!("{n}, supplied"),
            ReductiveDim::Determined(n) => format!("{n}"),
            ReductiveDim::Symbolic(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    pub dim_b: usize,
    pub dim_z: usize,
    pub dim_unipotent: usize,
    pub reductive: ReductiveDim,
}

impl Dims {
    pub fn total(&self) -> Option<usize> {
        self.reductive.value().map(|r| r + self.dim_unipotent)
    }
}

/// Images `V(z)` for the basis characters `z` of `Z^v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Extension {
    /// Basis characters of `Z^v`, as vectors of ℚ^{r·s}.
    pub zv_basis: Vec<Vec<Rational>>,
    /// Galois action on `Z^v` in that basis.
    pub zv_action: Vec<RatMatrix>,
    /// `A ⊗ Y^v` component of each `V(z)`: a point of `A^s`.
    pub a_part: Vec<PointVector>,
    /// `X ⊗ A*` component of each `V(z)`: a point of `(A*)^r`.
    pub astar_part: Vec<PointVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalReport {
    pub motive: String,
    pub r: usize,
    pub s: usize,
    pub b1: PointVector,
    pub b2: PointVector,
    pub b: BData,
    pub z1: Subspace,
    pub vanishing: Subspace,
    pub z: Subspace,
    pub extension: Extension,
    pub dims: Dims,
    /// `Z₁ = 0`: the radical is abelian.
    pub quasi_deficient: bool,
    /// Dimension of the derived torus `Z₁(1)`.
    pub derived_dim: usize,
}

fn character_action_on_quotient(m: &OneMotive, basis: &RatMatrix) -> Result<Vec<RatMatrix>> {
    if basis.cols() == 0 {
        return Ok(vec![RatMatrix::zeros(0, 0); m.x().group().generator_count()]);
    }
    let chars = tensor(m.x(), m.yv())?;
    let ut = basis.transpose();
    let gram_inv = ut
        .mul(basis)?
        .inverse()
        .expect("basis columns are independent");
    chars
        .action()
        .iter()
        .map(|g| gram_inv.mul(&ut)?.mul(&g.mul(basis)?))
        .collect()
}

fn extension_images(m: &OneMotive, z: &Subspace) -> Result<Extension> {
    let (r, s) = (m.r(), m.s());
    let zv_basis = z.basis_vectors();
    let zv_action = character_action_on_quotient(m, z.basis())?;
    let (v, vs) = (m.v(), m.vstar());
    let mut a_part = Vec::with_capacity(zv_basis.len());
    let mut astar_part = Vec::with_capacity(zv_basis.len());
    for c in &zv_basis {
        let combine = |p: &PointVector, coeff: &dyn Fn(usize) -> Rational, count: usize| {
            let mut acc = vec![Rational::zero(); p.point_dim()];
            for k in 0..count {
                let ck = coeff(k);
                if ck.is_zero() {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(p.entry(k)) {
                    *a += &ck * x;
                }
            }
            acc
        };
        let a_entries: Vec<Vec<Rational>> = (0..s)
            .map(|j| combine(v, &|i| c[i * s + j].clone(), r))
            .collect();
        let astar_entries: Vec<Vec<Rational>> = (0..r)
            .map(|i| combine(vs, &|j| c[i * s + j].clone(), s))
            .collect();
        a_part.push(PointVector::new(v.base(), v.point_dim(), a_entries)?);
        astar_part.push(PointVector::new(vs.base(), vs.point_dim(), astar_entries)?);
    }
    Ok(Extension {
        zv_basis,
        zv_action,
        a_part,
        astar_part,
    })
}

/// The reductive part's dimension when it does not depend on the abelian
/// part: 1 for a pure torus part, 0 when `A = Y = 0`.
pub fn default_reductive_dim(m: &OneMotive) -> ReductiveDim {
    match (m.abelian(), m.s()) {
        (None, 0) => ReductiveDim::Determined(0),
        (None, _) => ReductiveDim::Determined(1),
        (Some(pair), _) => ReductiveDim::Symbolic(format!("dim Lie G_mot({})", pair.a.name())),
    }
}

pub fn unipotent_radical(m: &OneMotive, reductive: Option<usize>) -> Result<RadicalReport> {
    let (b1, b2) = extract_b(m);
    let b = smallest_b(m)?;
    let z1 = derived_torus_z1(m, &b)?;
    let vanishing = vanishing_characters(m, &z1)?;
    let z = torus_z(m, &z1)?;
    let extension = extension_images(m, &z)?;
    let reductive = match reductive {
        Some(n) => ReductiveDim::Supplied(n),
        None => default_reductive_dim(m),
    };
    let dims = Dims {
        dim_b: b.dim,
        dim_z: z.dim(),
        dim_unipotent: b.dim + z.dim(),
        reductive,
    };
    Ok(RadicalReport {
        motive: m.name().to_string(),
        r: m.r(),
        s: m.s(),
        b1,
        b2,
        quasi_deficient: z1.is_zero(),
        derived_dim: z1.dim(),
        b,
        z1,
        vanishing,
        z,
        extension,
        dims,
    })
}

/// The 1-motive `[V: Z^v → B*]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalDual {
    pub zv_rank: usize,
    pub zv_action: Vec<RatMatrix>,
    /// `A`-part of `B*` inside `A^s`; same module as `W_{A*}`.
    pub bstar_a: SubvarietyData,
    /// `A*`-part of `B*` inside `(A*)^r`; same module as `W_A`.
    pub bstar_astar: SubvarietyData,
    pub dim_bstar: usize,
    pub v_a: Vec<PointVector>,
    pub v_astar: Vec<PointVector>,
}

pub fn radical_cartier_dual(rep: &RadicalReport) -> RadicalDual {
    // A and A* have the same dimension, so the swapped modules keep theirs
    let bstar_a = rep.b.astar_side.clone();
    let bstar_astar = rep.b.a_side.clone();
    RadicalDual {
        zv_rank: rep.extension.zv_basis.len(),
        zv_action: rep.extension.zv_action.clone(),
        dim_bstar: bstar_a.dim + bstar_astar.dim,
        bstar_a,
        bstar_astar,
        v_a: rep.extension.a_part.clone(),
        v_astar: rep.extension.astar_part.clone(),
    }
}

/// Dimensions `(dim B, dim Z)` of the radical of `[V: Z^v → B*]`, computed
/// as the smallest subvarieties of `A^{s·n}` and `(A*)^{r·n}` containing
/// the images `V(z)` (`n = rank Z^v`). The dual has no torus, so `dim Z = 0`.
pub fn radical_dual_dims(m: &OneMotive, d: &RadicalDual) -> Result<(usize, usize)> {
    let Some(pair) = m.abelian() else {
        return Ok((0, 0));
    };
    let stack = |parts: &[PointVector], base: &str, dim: usize| -> Result<PointVector> {
        let entries = parts.iter().flat_map(PointVector::entries).collect();
        PointVector::new(base, dim, entries)
    };
    let pa = stack(&d.v_a, pair.a.name(), pair.a.point_dim())?;
    let ps = stack(&d.v_astar, pair.astar.name(), pair.astar.point_dim())?;
    let da = smallest_subvariety(&pair.a, &pa)?.dim;
    let ds = smallest_subvariety(&pair.astar, &ps)?.dim;
    Ok((da + ds, 0))
}

/// True iff `B` contains the annihilators of both relation modules of `b`.
pub fn b_relation_check(m: &OneMotive, b: &BData) -> Result<bool> {
    let Some(pair) = m.abelian() else {
        return Ok(true);
    };
    let alg = pair.a.end_algebra();
    let na = crate::abvar::relation_module(&pair.a, m.v())?;
    let ns = crate::abvar::relation_module(&pair.astar, m.vstar())?;
    let wa = module_annihilator(alg, m.r(), &na)?;
    let ws = module_annihilator(alg, m.s(), &ns)?;
    Ok(wa.is_subspace_of(&b.a_side.space)? && ws.is_subspace_of(&b.astar_side.space)?)
}
