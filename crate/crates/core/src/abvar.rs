//! Isogeny-class models of abelian varieties.
//!
//! An abelian variety is modelled by its dimension, a rational
//! endomorphism algebra given by generator matrices, and a finite
//! dimensional ℚ-vector space standing for `A(k) ⊗ ℚ`. Points of interest
//! are tracked as vectors of that space; linear relations among them are
//! declared by the user and quotiented out. Nothing here ever certifies
//! independence of points: that is input data.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{kernel, RatMatrix, Rational, Subspace};

/// A finite dimensional ℚ-algebra of `degree × degree` matrices, given by
/// generators. The ℚ-basis of the generated algebra is computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebraRep {
    degree: usize,
    generators: Vec<RatMatrix>,
    commutative: bool,
    /// Each basis element is the product of the generators named by its word.
    words: Vec<Vec<usize>>,
    basis: Vec<RatMatrix>,
    /// `structure[i][j]` = coordinates of `basis[i] · basis[j]`.
    structure: Vec<Vec<Vec<Rational>>>,
}

impl EndAlgebraRep {
    /// The default algebra ℚ.
    pub fn rationals() -> Self {
        Self::new(1, Vec::new(), true).expect("ℚ is a valid algebra")
    }

    /// `commutative` is the declared flag; it is verified against the generators.
    pub fn new(degree: usize, generators: Vec<RatMatrix>, commutative: bool) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("endomorphism algebra degree must be at least 1"));
        }
        for g in &generators {
            if g.rows() != degree || g.cols() != degree {
                return Err(Error::dim("endomorphism generator", degree, g.rows()));
            }
        }
        let commute = generators.iter().enumerate().all(|(i, a)| {
            generators[i + 1..]
                .iter()
                .all(|b| a.mul(b).unwrap() == b.mul(a).unwrap())
        });
        if commutative && !commute {
            return Err(Error::invalid(
                "endomorphism algebra declared commutative but generators do not commute",
            ));
        }

        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut basis = vec![RatMatrix::identity(degree)];
        let mut flat: Vec<Vec<Rational>> = vec![basis[0].entries().to_vec()];
        let mut frontier = 0;
        while frontier < basis.len() {
            for (k, g) in generators.iter().enumerate() {
                let cand = basis[frontier].mul(g)?;
                let mut trial = flat.clone();
                trial.push(cand.entries().to_vec());
                let rank = Subspace::span(degree * degree, &trial)?.dim();
                if rank > flat.len() {
                    let mut w = words[frontier].clone();
                    w.push(k);
                    words.push(w);
                    flat.push(cand.entries().to_vec());
                    basis.push(cand);
                }
            }
            frontier += 1;
        }
        let coords_matrix = RatMatrix::from_columns(degree * degree, &flat)?;
        let coords = |m: &RatMatrix| -> Vec<Rational> {
            coords_matrix
                .solve(m.entries())
                .expect("shape")
                .expect("algebra closed under products")
        };
        let structure = basis
            .iter()
            .map(|a| basis.iter().map(|b| coords(&a.mul(b).unwrap())).collect())
            .collect();
        Ok(EndAlgebraRep {
            degree,
            generators,
            commutative: commute,
            words,
            basis,
            structure,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// ℚ-dimension of the generated algebra.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_rationals(&self) -> bool {
        self.dim() == 1
    }

    /// Product of two elements given in basis coordinates.
    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (t, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[t] += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Coefficient of basis element `t` in `basis[i] · basis[j]`.
    pub fn structure_constant(&self, i: usize, j: usize, t: usize) -> &Rational {
        &self.structure[i][j][t]
    }

    /// Field test used to gate sub-variety computations: the algebra must be
    /// commutative and every basis element, generator and pairwise basis sum
    /// must be invertible. This is a necessary condition only; the input is
    /// trusted to present a field when it passes.
    pub fn looks_like_field(&self) -> bool {
        if !self.commutative {
            return false;
        }
        let invertible = |m: &RatMatrix| !m.determinant().expect("square").is_zero();
        let n = self.basis.len();
        for i in 0..n {
            if !invertible(&self.basis[i]) {
                return false;
            }
            for j in i + 1..n {
                for k in [1i64, -1, 2] {
                    let m = self.basis[i]
                        .add(&self.basis[j].scale(&crate::exactlin::rat(k)))
                        .unwrap();
                    if !invertible(&m) {
                        return false;
                    }
                }
            }
        }
        self.generators.iter().all(invertible)
    }

    /// Extends a generator action (one `n × n` matrix per generator) to every
    /// basis element, checking that it respects the algebra relations.
    pub fn realize(&self, generator_action: &[RatMatrix], n: usize) -> Result<Vec<RatMatrix>> {
        if generator_action.len() != self.generators.len() {
            return Err(Error::dim(
                "endomorphism action matrices",
                self.generators.len(),
                generator_action.len(),
            ));
        }
        for m in generator_action {
            if m.rows() != n || m.cols() != n {
                return Err(Error::dim("endomorphism action matrix", n, m.rows()));
            }
        }
        let acts: Vec<RatMatrix> = self
            .words
            .iter()
            .map(|w| {
                w.iter().fold(RatMatrix::identity(n), |acc, &k| {
                    acc.mul(&generator_action[k]).unwrap()
                })
            })
            .collect();
        // basis[i]·gen[k] = Σ c_t basis[t] must hold for the action as well
        for (i, b) in self.basis.iter().enumerate() {
            for (k, g) in self.generators.iter().enumerate() {
                let prod = b.mul(g)?;
                let flat: Vec<Vec<Rational>> =
                    self.basis.iter().map(|m| m.entries().to_vec()).collect();
                let c = RatMatrix::from_columns(self.degree * self.degree, &flat)?
                    .solve(prod.entries())?
                    .expect("closed algebra");
                let mut expect = RatMatrix::zeros(n, n);
                for (t, ct) in c.iter().enumerate() {
                    if !ct.is_zero() {
                        expect = expect.add(&acts[t].scale(ct))?;
                    }
                }
                if acts[i].mul(&generator_action[k])? != expect {
                    return Err(Error::invalid(
                        "endomorphism action does not satisfy the algebra relations",
                    ));
                }
            }
        }
        Ok(acts)
    }
}

/// Parameters for [`AbelianVarietyModel::new`].
#[derive(Clone, Debug)]
pub struct VarietyParams {
    pub name: String,
    pub g: usize,
    pub dual: String,
    pub point_dim: usize,
    pub end_algebra: Option<Arc<EndAlgebraRep>>,
    pub end_action: Vec<RatMatrix>,
    pub dual_transfer: Option<Vec<RatMatrix>>,
    pub points: BTreeMap<String, Vec<Rational>>,
    pub relations: Vec<Vec<Rational>>,
    /// One matrix per group generator acting on the point space; empty for
    /// the trivial group.
    pub galois_action: Vec<RatMatrix>,
}

impl VarietyParams {
    pub fn simple(name: &str, dual: &str, g: usize, point_dim: usize) -> Self {
        VarietyParams {
            name: name.to_string(),
            g,
            dual: dual.to_string(),
            point_dim,
            end_algebra: None,
            end_action: Vec::new(),
            dual_transfer: None,
            points: BTreeMap::new(),
            relations: Vec::new(),
            galois_action: Vec::new(),
        }
    }
}

/// An abelian variety up to isogeny together with its tracked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianVarietyModel {
    name: String,
    g: usize,
    dual_name: String,
    point_dim: usize,
    end_algebra: Arc<EndAlgebraRep>,
    end_action: Vec<RatMatrix>,
    basis_action: Vec<RatMatrix>,
    dual_transfer: Option<Vec<RatMatrix>>,
    points: BTreeMap<String, Vec<Rational>>,
    relations: Subspace,
    galois_action: Vec<RatMatrix>,
}

impl AbelianVarietyModel {
    pub fn new(p: VarietyParams) -> Result<Self> {
        if p.g == 0 {
            return Err(Error::invalid(format!(
                "abelian variety `{}` must have dimension g ≥ 1",
                p.name
            )));
        }
        let n = p.point_dim;
        let alg = p
            .end_algebra
            .unwrap_or_else(|| Arc::new(EndAlgebraRep::rationals()));
        let basis_action = alg.realize(&p.end_action, n).map_err(|e| match e {
            Error::Validation(m) => Error::invalid(format!("variety `{}`: {m}", p.name)),
            other => other,
        })?;
        if let Some(dt) = &p.dual_transfer {
            if dt.len() != alg.generators().len() {
                return Err(Error::dim(
                    "dual transfer matrices",
                    alg.generators().len(),
                    dt.len(),
                ));
            }
        }
        for (name, v) in &p.points {
            if v.len() != n {
                return Err(Error::invalid(format!(
                    "point `{name}` of `{}` has {} coordinates, expected {n}",
                    p.name,
                    v.len()
                )));
            }
        }
        let relations = Subspace::span(n, &p.relations).map_err(|_| {
            Error::invalid(format!("relations of `{}` must have {n} coordinates", p.name))
        })?;
        for m in &p.galois_action {
            if m.rows() != n || m.cols() != n || m.inverse().is_none() {
                return Err(Error::invalid(format!(
                    "Galois action on the points of `{}` must be invertible {n}×{n} matrices",
                    p.name
                )));
            }
        }
        for m in basis_action.iter().chain(&p.galois_action) {
            if !relations.image(m)?.is_subspace_of(&relations)? {
                return Err(Error::invalid(format!(
                    "declared relations of `{}` are not stable under its endomorphisms and Galois action",
                    p.name
                )));
            }
        }
        Ok(AbelianVarietyModel {
            name: p.name,
            g: p.g,
            dual_name: p.dual,
            point_dim: n,
            end_algebra: alg,
            end_action: p.end_action,
            basis_action,
            dual_transfer: p.dual_transfer,
            points: p.points,
            relations,
            galois_action: p.galois_action,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dual_name(&self) -> &str {
        &self.dual_name
    }

    pub fn point_dim(&self) -> usize {
        self.point_dim
    }

    pub fn end_algebra(&self) -> &Arc<EndAlgebraRep> {
        &self.end_algebra
    }

    pub fn end_action(&self) -> &[RatMatrix] {
        &self.end_action
    }

    /// Action of each basis element of the endomorphism algebra on points.
    pub fn basis_action(&self) -> &[RatMatrix] {
        &self.basis_action
    }

    pub fn dual_transfer(&self) -> Option<&[RatMatrix]> {
        self.dual_transfer.as_deref()
    }

    pub fn tracked_points(&self) -> &BTreeMap<String, Vec<Rational>> {
        &self.points
    }

    pub fn point(&self, name: &str) -> Option<&Vec<Rational>> {
        self.points.get(name)
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Galois action on the point space, one matrix per group generator.
    /// Falls back to identities when none was declared.
    pub fn galois_action(&self, generators: usize) -> Vec<RatMatrix> {
        if self.galois_action.is_empty() {
            vec![RatMatrix::identity(self.point_dim); generators]
        } else {
            self.galois_action.clone()
        }
    }

    /// True iff `x` is zero in `A(k) ⊗ ℚ` modulo the declared relations.
    pub fn is_zero_point(&self, x: &[Rational]) -> Result<bool> {
        self.relations.contains(x)
    }

    fn with_derived_dual_algebra(&self, source: &AbelianVarietyModel) -> Result<Self> {
        let transfer = source.dual_transfer.clone().ok_or_else(|| {
            Error::Unsupported(format!(
                "variety `{}` has endomorphisms beyond ℚ but no dual_transfer for `{}`",
                source.name, self.name
            ))
        })?;
        let p = VarietyParams {
            name: self.name.clone(),
            g: self.g,
            dual: self.dual_name.clone(),
            point_dim: self.point_dim,
            end_algebra: Some(source.end_algebra.clone()),
            end_action: transfer,
            dual_transfer: Some(source.end_action.clone()),
            points: self.points.clone(),
            relations: self.relations.basis_vectors(),
            galois_action: self.galois_action.clone(),
        };
        AbelianVarietyModel::new(p)
    }
}

/// Registered varieties keyed by name, with symmetric dual links.
#[derive(Clone, Debug, Default)]
pub struct VarietyRegistry {
    models: BTreeMap<String, Arc<AbelianVarietyModel>>,
}

impl VarietyRegistry {
    /// Builds the registry and links every variety with its dual. When only
    /// one side of a pair declares a nontrivial endomorphism algebra, the
    /// other side receives it through `dual_transfer`.
    pub fn new(models: Vec<AbelianVarietyModel>) -> Result<Self> {
        let mut map: BTreeMap<String, AbelianVarietyModel> = BTreeMap::new();
        for m in models {
            if map.contains_key(&m.name) {
                return Err(Error::invalid(format!("variety `{}` declared twice", m.name)));
            }
            map.insert(m.name.clone(), m);
        }
        let names: Vec<String> = map.keys().cloned().collect();
        for name in &names {
            let a = map[name].clone();
            let Some(d) = map.get(&a.dual_name).cloned() else {
                return Err(Error::invalid(format!(
                    "variety `{name}` names dual `{}` which is not declared",
                    a.dual_name
                )));
            };
            if d.dual_name != a.name {
                return Err(Error::invalid(format!(
                    "dual link is not symmetric: `{name}` → `{}` → `{}`",
                    d.name, d.dual_name
                )));
            }
            if d.g != a.g {
                return Err(Error::invalid(format!(
                    "`{name}` and its dual `{}` have different dimensions",
                    d.name
                )));
            }
            if d.name == a.name {
                if !a.end_algebra.is_rationals()
                    && a.dual_transfer.as_deref() != Some(a.end_action.as_slice())
                {
                    return Err(Error::Unsupported(format!(
                        "self-dual model `{name}` needs dual_transfer equal to its end_action"
                    )));
                }
                continue;
            }
            if !a.end_algebra.is_rationals() && d.end_algebra.is_rationals() {
                let derived = d.with_derived_dual_algebra(&a)?;
                map.insert(d.name.clone(), derived);
            } else if !a.end_algebra.is_rationals() {
                if a.end_algebra.generators() != d.end_algebra.generators() {
                    return Err(Error::invalid(format!(
                        "`{name}` and `{}` declare different endomorphism algebras",
                        d.name
                    )));
                }
                if let Some(t) = &a.dual_transfer {
                    if t != &d.end_action {
                        return Err(Error::invalid(format!(
                            "dual_transfer of `{name}` disagrees with the end_action of `{}`",
                            d.name
                        )));
                    }
                }
            }
        }
        Ok(VarietyRegistry {
            models: map.into_iter().map(|(k, v)| (k, Arc::new(v))).collect(),
        })
    }

    pub fn get(&self, name: &str) -> Option<&Arc<AbelianVarietyModel>> {
        self.models.get(name)
    }

    pub fn dual_of(&self, name: &str) -> Option<&Arc<AbelianVarietyModel>> {
        self.models.get(name).and_then(|m| self.models.get(&m.dual_name))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<AbelianVarietyModel>> {
        self.models.values()
    }
}

/// A point of `A^m`, stored as `m` consecutive blocks of point-space
/// coordinates. `base` names the variety; an empty base with zero-length
/// blocks stands for points of the zero variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointVector {
    base: String,
    multiplicity: usize,
    point_dim: usize,
    coords: Vec<Rational>,
}

impl PointVector {
    pub fn new(base: &str, point_dim: usize, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let multiplicity = entries.len();
        let mut coords = Vec::with_capacity(multiplicity * point_dim);
        for e in entries {
            if e.len() != point_dim {
                return Err(Error::dim("point coordinates", point_dim, e.len()));
            }
            coords.extend(e);
        }
        Ok(PointVector {
            base: base.to_string(),
            multiplicity,
            point_dim,
            coords,
        })
    }

    /// `m` copies of the zero point of the zero variety.
    pub fn on_zero_variety(multiplicity: usize) -> Self {
        PointVector {
            base: String::new(),
            multiplicity,
            point_dim: 0,
            coords: Vec::new(),
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn point_dim(&self) -> usize {
        self.point_dim
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn entry(&self, j: usize) -> &[Rational] {
        &self.coords[j * self.point_dim..(j + 1) * self.point_dim]
    }

    pub fn entries(&self) -> Vec<Vec<Rational>> {
        (0..self.multiplicity).map(|j| self.entry(j).to_vec()).collect()
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        PointVector {
            coords: self.coords.iter().map(|x| x * k).collect(),
            ..self.clone()
        }
    }

    /// Columns are the `m` points: a `point_dim × m` matrix.
    pub fn as_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(self.point_dim, &self.entries()).expect("uniform blocks")
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A sub-abelian variety of `A^m` up to isogeny, as an End⁰-submodule of
/// `End⁰(A)^m` flattened to ℚ^{d·m} (index `j·d + t` for basis element `t`
/// in slot `j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubvarietyData {
    pub space: Subspace,
    pub algebra_dim: usize,
    pub multiplicity: usize,
    /// Dimension of the subvariety: `g · dim_{End⁰} W`.
    pub dim: usize,
}

impl SubvarietyData {
    pub fn zero(multiplicity: usize, algebra_dim: usize) -> Self {
        SubvarietyData {
            space: Subspace::zero(multiplicity * algebra_dim),
            algebra_dim,
            multiplicity,
            dim: 0,
        }
    }

    pub fn module_rank(&self) -> usize {
        self.space.dim() / self.algebra_dim.max(1)
    }
}

fn check_base(model: &AbelianVarietyModel, p: &PointVector) -> Result<()> {
    if p.base != model.name || p.point_dim != model.point_dim {
        return Err(Error::invalid(format!(
            "point vector over `{}` used with variety `{}`",
            p.base, model.name
        )));
    }
    Ok(())
}

/// The `n × d·m` matrix sending `(φ_j)` to `Σ_j φ_j(P_j)`.
fn evaluation_matrix(model: &AbelianVarietyModel, p: &PointVector) -> RatMatrix {
    let d = model.end_algebra.dim();
    let cols: Vec<Vec<Rational>> = (0..p.multiplicity)
        .flat_map(|j| {
            model
                .basis_action
                .iter()
                .map(move |act| act.mul_vec(p.entry(j)).unwrap())
        })
        .collect();
    debug_assert_eq!(cols.len(), d * p.multiplicity);
    RatMatrix::from_columns(model.point_dim, &cols).expect("point-space columns")
}

/// `N = {φ ∈ End⁰(A)^m : Σ_j φ_j(P_j) = 0 in A(k) ⊗ ℚ}` modulo declared relations.
pub fn relation_module(model: &AbelianVarietyModel, p: &PointVector) -> Result<Subspace> {
    check_base(model, p)?;
    let ev = evaluation_matrix(model, p);
    model.relations.preimage(&ev)
}

/// Annihilator of an End⁰-submodule `n ⊆ D^m` for the D-bilinear pairing
/// `(φ, w) ↦ Σ_j φ_j w_j`.
pub fn module_annihilator(alg: &EndAlgebraRep, m: usize, n: &Subspace) -> Result<Subspace> {
    let d = alg.dim();
    if n.ambient() != d * m {
        return Err(Error::dim("module annihilator", d * m, n.ambient()));
    }
    let mut rows = Vec::new();
    for phi in n.basis_vectors() {
        for t in 0..d {
            let mut row = vec![Rational::zero(); d * m];
            for j in 0..m {
                for s in 0..d {
                    let c = &phi[j * d + s];
                    if c.is_zero() {
                        continue;
                    }
                    for u in 0..d {
                        row[j * d + u] += c * alg.structure_constant(s, u, t);
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(kernel(&RatMatrix::from_rows(d * m, &rows)?))
}

/// Smallest abelian subvariety (up to isogeny) of `A^m` containing `p`.
pub fn smallest_subvariety(model: &AbelianVarietyModel, p: &PointVector) -> Result<SubvarietyData> {
    let alg = &model.end_algebra;
    if !alg.is_rationals() && !alg.looks_like_field() {
        return Err(Error::Unsupported(format!(
            "endomorphism algebra of `{}` is not a field",
            model.name
        )));
    }
    let n = relation_module(model, p)?;
    let w = module_annihilator(alg, p.multiplicity, &n)?;
    let d = alg.dim();
    Ok(SubvarietyData {
        dim: model.g * (w.dim() / d),
        space: w,
        algebra_dim: d,
        multiplicity: p.multiplicity,
    })
}

/// True iff `p` lies in the subvariety described by `w`, i.e. there are
/// points `Q_k` with `P = Σ_k w_k·Q_k` modulo the declared relations, where
/// `w_k` runs over a ℚ-basis of `w`.
pub fn subvariety_contains(
    model: &AbelianVarietyModel,
    w: &SubvarietyData,
    p: &PointVector,
) -> Result<bool> {
    check_base(model, p)?;
    let n = model.point_dim;
    let d = model.end_algebra.dim();
    let m = p.multiplicity;
    let wb = w.space.basis_vectors();
    let rel = model.relations.basis_vectors();
    // unknowns: Q_k ∈ ℚⁿ for each basis vector, and coefficients of relations per slot
    let unknowns = wb.len() * n + m * rel.len();
    let mut system = RatMatrix::zeros(m * n, unknowns);
    for (k, wk) in wb.iter().enumerate() {
        for j in 0..m {
            let mut act = RatMatrix::zeros(n, n);
            for t in 0..d {
                let c = &wk[j * d + t];
                if !c.is_zero() {
                    act = act.add(&model.basis_action[t].scale(c))?;
                }
            }
            for r in 0..n {
                for c in 0..n {
                    system.set(j * n + r, k * n + c, act.get(r, c).clone());
                }
            }
        }
    }
    let off = wb.len() * n;
    for j in 0..m {
        for (q, rv) in rel.iter().enumerate() {
            for r in 0..n {
                system.set(j * n + r, off + j * rel.len() + q, rv[r].clone());
            }
        }
    }
    Ok(system.solve(p.coords())?.is_some())
}

/// Scales a vector of End⁰ coordinates by the algebra unit (helper for tests
/// and isogeny checks).
pub fn unit_coords(alg: &EndAlgebraRep) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); alg.dim()];
    v[0] = Rational::one();
    v
}
