//! 1-motives in 7-tuple form: lattices `X` and `Y^v`, the abelian part and
//! its dual, the points `v`, `v*` and the trivialization `ψ`.

use std::sync::Arc;

use crate::abvar::{AbelianVarietyModel, PointVector};
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};
use crate::galmod::{check_same_group, dual, equivariant_modulo, tensor, GaloisLattice};
use crate::radical::MultSpace;

/// The abelian variety `A` together with its registered dual `A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPair {
    pub a: Arc<AbelianVarietyModel>,
    pub astar: Arc<AbelianVarietyModel>,
}

impl AbelianPair {
    pub fn new(a: Arc<AbelianVarietyModel>, astar: Arc<AbelianVarietyModel>) -> Result<Self> {
        if a.dual_name() != astar.name() || astar.dual_name() != a.name() {
            return Err(Error::invalid(format!(
                "`{}` and `{}` are not registered as dual to each other",
                a.name(),
                astar.name()
            )));
        }
        Ok(AbelianPair { a, astar })
    }

    pub fn g(&self) -> usize {
        self.a.g()
    }

    pub fn swapped(&self) -> Self {
        AbelianPair {
            a: self.astar.clone(),
            astar: self.a.clone(),
        }
    }
}

/// A 1-motive `(X, Y^v, A, A*, v, v*, ψ)`.
///
/// `psi` is a `dim(MultSpace) × (r·s)` matrix; column `i·s + j` holds
/// `ψ(e_i, f*_j)` in `k* ⊗ ℚ` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMotive {
    name: String,
    x: GaloisLattice,
    yv: GaloisLattice,
    abelian: Option<AbelianPair>,
    v: PointVector,
    vstar: PointVector,
    psi: RatMatrix,
    mult: Arc<MultSpace>,
}

impl OneMotive {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        x: GaloisLattice,
        yv: GaloisLattice,
        abelian: Option<AbelianPair>,
        v: PointVector,
        vstar: PointVector,
        psi: RatMatrix,
        mult: Arc<MultSpace>,
    ) -> Result<Self> {
        check_same_group(&x, &yv)?;
        let (r, s) = (x.rank(), yv.rank());
        let gens = x.group().generator_count();
        if mult.action().len() != gens && !mult.action().is_empty() {
            return Err(Error::GroupMismatch {
                left: gens,
                right: mult.action().len(),
            });
        }
        if psi.rows() != mult.dim() || psi.cols() != r * s {
            return Err(Error::invalid(format!(
                "motive `{name}`: ψ must have {r}×{s} entries of length {}",
                mult.dim()
            )));
        }
        if v.multiplicity() != r {
            return Err(Error::invalid(format!(
                "motive `{name}`: v has {} entries but X has rank {r}",
                v.multiplicity()
            )));
        }
        if vstar.multiplicity() != s {
            return Err(Error::invalid(format!(
                "motive `{name}`: v* has {} entries but Y^v has rank {s}",
                vstar.multiplicity()
            )));
        }
        match &abelian {
            Some(pair) => {
                check_point_base(name, "v", &v, &pair.a)?;
                check_point_base(name, "v*", &vstar, &pair.astar)?;
                for model in [&pair.a, &pair.astar] {
                    let act = model.galois_action(gens);
                    if act.len() != gens {
                        return Err(Error::GroupMismatch {
                            left: gens,
                            right: act.len(),
                        });
                    }
                }
            }
            None => {
                if v.point_dim() != 0 || vstar.point_dim() != 0 {
                    return Err(Error::invalid(format!(
                        "motive `{name}` has no abelian part but v or v* carries coordinates"
                    )));
                }
            }
        }
        let m = OneMotive {
            name: name.to_string(),
            x,
            yv,
            abelian,
            v,
            vstar,
            psi,
            mult,
        };
        m.check_equivariance()?;
        Ok(m)
    }

    fn check_equivariance(&self) -> Result<()> {
        let gens = self.x.group().generator_count();
        if gens == 0 {
            return Ok(());
        }
        if let Some(pair) = &self.abelian {
            let ok_v = equivariant_modulo(
                &self.v.as_matrix(),
                self.x.action(),
                &pair.a.galois_action(gens),
                Some(pair.a.relations()),
            )?;
            let ok_vs = equivariant_modulo(
                &self.vstar.as_matrix(),
                self.yv.action(),
                &pair.astar.galois_action(gens),
                Some(pair.astar.relations()),
            )?;
            if !ok_v || !ok_vs {
                return Err(Error::invalid(format!(
                    "motive `{}`: {} is not Galois-equivariant",
                    self.name,
                    if ok_v { "v*" } else { "v" }
                )));
            }
        }
        let xy = tensor(&self.x, &self.yv)?;
        let ok_psi = equivariant_modulo(
            &self.psi,
            xy.action(),
            &self.mult.action_for(gens),
            Some(self.mult.relations()),
        )?;
        if !ok_psi {
            return Err(Error::invalid(format!(
                "motive `{}`: ψ is not Galois-equivariant",
                self.name
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x(&self) -> &GaloisLattice {
        &self.x
    }

    pub fn yv(&self) -> &GaloisLattice {
        &self.yv
    }

    pub fn r(&self) -> usize {
        self.x.rank()
    }

    pub fn s(&self) -> usize {
        self.yv.rank()
    }

    /// Dimension of the abelian part (0 when there is none).
    pub fn g(&self) -> usize {
        self.abelian.as_ref().map_or(0, AbelianPair::g)
    }

    pub fn abelian(&self) -> Option<&AbelianPair> {
        self.abelian.as_ref()
    }

    pub fn v(&self) -> &PointVector {
        &self.v
    }

    pub fn vstar(&self) -> &PointVector {
        &self.vstar
    }

    pub fn psi(&self) -> &RatMatrix {
        &self.psi
    }

    pub fn psi_entry(&self, i: usize, j: usize) -> Vec<Rational> {
        self.psi.column(i * self.s() + j)
    }

    pub fn mult(&self) -> &Arc<MultSpace> {
        &self.mult
    }

    /// Same motive with `(v, v*, ψ)` replaced; used for isogeny and
    /// perturbation checks. Validation runs again.
    pub fn with_data(&self, v: PointVector, vstar: PointVector, psi: RatMatrix) -> Result<Self> {
        OneMotive::new(
            &self.name,
            self.x.clone(),
            self.yv.clone(),
            self.abelian.clone(),
            v,
            vstar,
            psi,
            self.mult.clone(),
        )
    }
}

fn check_point_base(
    motive: &str,
    label: &str,
    p: &PointVector,
    model: &AbelianVarietyModel,
) -> Result<()> {
    if p.base() != model.name() || p.point_dim() != model.point_dim() {
        return Err(Error::invalid(format!(
            "motive `{motive}`: {label} must be points of `{}`",
            model.name()
        )));
    }
    Ok(())
}

/// Ranks and dimensions of one step of the weight filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightStep {
    pub lattice_rank: usize,
    pub abelian_dim: usize,
    pub torus_rank: usize,
}

impl WeightStep {
    /// Dimension of the semi-abelian part.
    pub fn group_dim(&self) -> usize {
        self.abelian_dim + self.torus_rank
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightFiltration {
    pub w0: WeightStep,
    pub wm1: WeightStep,
    pub wm2: WeightStep,
}

pub fn weight_filtration(m: &OneMotive) -> WeightFiltration {
    let (r, s, g) = (m.r(), m.s(), m.g());
    WeightFiltration {
        w0: WeightStep {
            lattice_rank: r,
            abelian_dim: g,
            torus_rank: s,
        },
        wm1: WeightStep {
            lattice_rank: 0,
            abelian_dim: g,
            torus_rank: s,
        },
        wm2: WeightStep {
            lattice_rank: 0,
            abelian_dim: 0,
            torus_rank: s,
        },
    }
}

/// `Gr_0 = X`, `Gr_{-1} = A`, `Gr_{-2} = Y(1)` with `Y` the cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPieces {
    pub x: GaloisLattice,
    pub abelian: Option<AbelianPair>,
    pub y: GaloisLattice,
}

impl GradedPieces {
    pub fn r(&self) -> usize {
        self.x.rank()
    }

    pub fn s(&self) -> usize {
        self.y.rank()
    }

    pub fn g(&self) -> usize {
        self.abelian.as_ref().map_or(0, AbelianPair::g)
    }
}

pub fn gr(m: &OneMotive) -> GradedPieces {
    GradedPieces {
        x: m.x.clone(),
        abelian: m.abelian.clone(),
        y: dual(&m.yv),
    }
}

fn toggle_dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// `(Y^v, X, A*, A, v*, v, ψᵗ)`. An involution on the data.
pub fn cartier_dual(m: &OneMotive) -> OneMotive {
    let (r, s) = (m.r(), m.s());
    let mut psi = RatMatrix::zeros(m.psi.rows(), r * s);
    for i in 0..r {
        for j in 0..s {
            for k in 0..m.psi.rows() {
                psi.set(k, j * r + i, m.psi.get(k, i * s + j).clone());
            }
        }
    }
    OneMotive {
        name: toggle_dual_name(&m.name),
        x: m.yv.clone(),
        yv: m.x.clone(),
        abelian: m.abelian.as_ref().map(AbelianPair::swapped),
        v: m.vstar.clone(),
        vstar: m.v.clone(),
        psi,
        mult: m.mult.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abvar::VarietyParams;
    use crate::exactlin::rat_vec;
    use crate::galmod::ActionGroup;

    fn gm_motive(r: usize, s: usize, psi_cols: &[&[i64]], names: &[&str]) -> OneMotive {
        let mult = Arc::new(MultSpace::new(
            names.iter().map(|n| n.to_string()).collect(),
            Vec::new(),
            Vec::new(),
        ).unwrap());
        let cols: Vec<Vec<Rational>> = psi_cols.iter().map(|c| rat_vec(c)).collect();
        let psi = if cols.is_empty() {
            RatMatrix::zeros(names.len(), 0)
        } else {
            RatMatrix::from_columns(names.len(), &cols).unwrap()
        };
        OneMotive::new(
            "M",
            GaloisLattice::trivial_rank(r),
            GaloisLattice::trivial_rank(s),
            None,
            PointVector::on_zero_variety(r),
            PointVector::on_zero_variety(s),
            psi,
            mult,
        )
        .unwrap()
    }

    fn elliptic_pair() -> AbelianPair {
        let mut p = VarietyParams::simple("E", "E", 1, 2);
        p.points.insert("P".into(), rat_vec(&[1, 0]));
        p.points.insert("Q".into(), rat_vec(&[0, 1]));
        let e = Arc::new(AbelianVarietyModel::new(p).unwrap());
        AbelianPair::new(e.clone(), e).unwrap()
    }

    #[test]
    fn weight_filtration_examples() {
        let m = gm_motive(1, 3, &[&[1, 0], &[0, 1], &[0, 0]], &["q1", "q2"]);
        let w = weight_filtration(&m);
        assert_eq!((w.wm1.group_dim(), w.wm2.group_dim()), (3, 3));
        let z0 = gm_motive(1, 0, &[], &[]);
        let w = weight_filtration(&z0);
        assert_eq!((w.wm1.group_dim(), w.wm2.group_dim()), (0, 0));
        let z1 = gm_motive(0, 1, &[], &[]);
        let w = weight_filtration(&z1);
        assert_eq!((w.wm1.group_dim(), w.wm2.group_dim()), (1, 1));
    }

    #[test]
    fn graded_pieces() {
        let m = gm_motive(1, 3, &[&[1, 0], &[0, 1], &[0, 0]], &["q1", "q2"]);
        let g = gr(&m);
        assert_eq!((g.r(), g.g(), g.s()), (1, 0, 3));
        let pair = elliptic_pair();
        let v = PointVector::new("E", 2, vec![rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
        let m = OneMotive::new(
            "M",
            GaloisLattice::trivial_rank(2),
            GaloisLattice::trivial_rank(0),
            Some(pair),
            v,
            PointVector::new("E", 2, vec![]).unwrap(),
            RatMatrix::zeros(0, 0),
            Arc::new(MultSpace::empty()),
        )
        .unwrap();
        let g = gr(&m);
        assert_eq!((g.r(), g.g(), g.s()), (2, 1, 0));
    }

    #[test]
    fn dual_of_z0_is_z1() {
        let z0 = gm_motive(1, 0, &[], &[]);
        let d = cartier_dual(&z0);
        assert_eq!((d.r(), d.s(), d.g()), (0, 1, 0));
        assert_eq!(cartier_dual(&d), z0);
    }

    #[test]
    fn dual_transposes_psi() {
        let m = gm_motive(2, 3, &[&[1], &[2], &[3], &[4], &[5], &[6]], &["q"]);
        let d = cartier_dual(&m);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(d.psi_entry(j, i), m.psi_entry(i, j));
            }
        }
        assert_eq!(cartier_dual(&d), m);
    }

    #[test]
    fn dual_swaps_points() {
        let pair = elliptic_pair();
        let v = PointVector::new("E", 2, vec![rat_vec(&[1, 0])]).unwrap();
        let m = OneMotive::new(
            "M",
            GaloisLattice::trivial_rank(1),
            GaloisLattice::trivial_rank(0),
            Some(pair),
            v.clone(),
            PointVector::new("E", 2, vec![]).unwrap(),
            RatMatrix::zeros(0, 0),
            Arc::new(MultSpace::empty()),
        )
        .unwrap();
        let d = cartier_dual(&m);
        assert_eq!((d.r(), d.s()), (0, 1));
        assert_eq!(d.vstar(), &v);
        assert!(d.v().is_zero() && d.v().multiplicity() == 0);
        let gd = gr(&d);
        assert_eq!((gd.r(), gd.g(), gd.s()), (0, 1, 1));
    }

    #[test]
    fn rejects_non_equivariant_psi() {
        let swap = ActionGroup::new(1, vec![vec![1, 1]]).unwrap();
        let x = GaloisLattice::new(&swap, 2, vec![RatMatrix::from_i64(&[&[0, 1], &[1, 0]])]).unwrap();
        let yv = GaloisLattice::trivial(&swap, 1);
        let mult = Arc::new(
            MultSpace::new(vec!["q1".into(), "q2".into()], Vec::new(), Vec::new()).unwrap(),
        );
        // σ swaps e1, e2 but fixes q1, q2: ψ must have equal columns
        let bad = RatMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let r = OneMotive::new(
            "M",
            x.clone(),
            yv.clone(),
            None,
            PointVector::on_zero_variety(2),
            PointVector::on_zero_variety(1),
            bad,
            mult.clone(),
        );
        assert!(matches!(r, Err(Error::Validation(_))));
        let good = RatMatrix::from_i64(&[&[1, 1], &[0, 0]]);
        assert!(OneMotive::new(
            "M",
            x,
            yv,
            None,
            PointVector::on_zero_variety(2),
            PointVector::on_zero_variety(1),
            good,
            mult,
        )
        .is_ok());
    }

    #[test]
    fn equivariance_holds_modulo_relations() {
        let swap = ActionGroup::new(1, vec![vec![1, 1]]).unwrap();
        let x = GaloisLattice::new(&swap, 2, vec![RatMatrix::from_i64(&[&[0, 1], &[1, 0]])]).unwrap();
        let yv = GaloisLattice::trivial(&swap, 0);
        let mut p = VarietyParams::simple("E", "E", 1, 2);
        // points P1, P2 declared equal
        p.relations = vec![rat_vec(&[1, -1])];
        let e = Arc::new(AbelianVarietyModel::new(p).unwrap());
        let pair = AbelianPair::new(e.clone(), e).unwrap();
        let v = PointVector::new("E", 2, vec![rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
        let m = OneMotive::new(
            "M",
            x,
            yv,
            Some(pair),
            v,
            PointVector::new("E", 2, vec![]).unwrap(),
            RatMatrix::zeros(0, 0),
            Arc::new(MultSpace::empty()),
        );
        assert!(m.is_ok());
    }
}
