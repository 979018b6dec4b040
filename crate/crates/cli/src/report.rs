//! Machine-readable and text reports. Struct field order is the JSON key
//! order, so equal inputs give byte-identical output.

use std::fmt::Write as _;

use motcalc_core::abvar::{PointVector, SubvarietyData};
use motcalc_core::exactlin::{RatMatrix, Subspace};
use motcalc_core::liestruct::{build_e, GradedEndData};
use motcalc_core::onemotive::{cartier_dual, gr, weight_filtration, OneMotive, WeightStep};
use motcalc_core::radical::{radical_cartier_dual, radical_dual_dims, RadicalReport, ReductiveDim};
use num_traits::Zero;
use serde::Serialize;

use crate::error::CliResult;
use crate::schema::{from_rationals, matrix_to_rows, Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub motives: Vec<MotiveReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotiveReport {
    pub name: String,
    pub weights: Weights,
    pub gr: GrSummary,
    #[serde(rename = "E")]
    pub e: ESummary,
    pub b: PointsReport,
    #[serde(rename = "B")]
    pub b_space: BReport,
    #[serde(rename = "Z1")]
    pub z1: SpaceReport,
    #[serde(rename = "Z")]
    pub z: SpaceReport,
    pub extension: ExtensionReport,
    pub dims: DimsReport,
    pub quasi_deficient: bool,
    pub derived_dim: usize,
    pub dual: DualReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<InvariantCheck>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub lattice_rank: usize,
    pub abelian_dim: usize,
    pub torus_rank: usize,
    pub group_dim: usize,
}

impl From<WeightStep> for Step {
    fn from(w: WeightStep) -> Self {
        Step {
            lattice_rank: w.lattice_rank,
            abelian_dim: w.abelian_dim,
            torus_rank: w.torus_rank,
            group_dim: w.group_dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weights {
    #[serde(rename = "W0")]
    pub w0: Step,
    #[serde(rename = "W-1")]
    pub wm1: Step,
    #[serde(rename = "W-2")]
    pub wm2: Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrSummary {
    pub name: String,
    #[serde(rename = "X_rank")]
    pub x_rank: usize,
    #[serde(rename = "A")]
    pub a: Option<String>,
    pub g: usize,
    #[serde(rename = "Y_rank")]
    pub y_rank: usize,
}

/// One nonzero bracket coefficient: `[left, right]` has `coeff` times the
/// Weil symbol in the `E₋₂` coordinate `component`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketEntry {
    pub component: String,
    pub left: String,
    pub right: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ESummary {
    #[serde(rename = "Em1_A_copies")]
    pub em1_a: usize,
    #[serde(rename = "Em1_Astar_copies")]
    pub em1_astar: usize,
    #[serde(rename = "Em2_rank")]
    pub em2_rank: usize,
    pub bracket: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointsReport {
    pub v: Vec<Vector>,
    pub vstar: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub basis: Vec<Vector>,
    pub dim: usize,
}

impl From<&Subspace> for SpaceReport {
    fn from(s: &Subspace) -> Self {
        SpaceReport {
            basis: s.basis_vectors().iter().map(|v| from_rationals(v)).collect(),
            dim: s.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    /// Basis of the coefficient module in `D^n` (`D = End⁰`), flattened.
    pub basis: Vec<Vector>,
    pub dim: usize,
}

impl From<&SubvarietyData> for SideReport {
    fn from(s: &SubvarietyData) -> Self {
        SideReport {
            basis: SpaceReport::from(&s.space).basis,
            dim: s.dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BReport {
    #[serde(rename = "A_side")]
    pub a_side: SideReport,
    #[serde(rename = "Astar_side")]
    pub astar_side: SideReport,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    #[serde(rename = "Zv_basis")]
    pub zv_basis: Vec<Vector>,
    #[serde(rename = "Zv_action")]
    pub zv_action: Vec<Matrix>,
    /// Per basis character, a point of `A^s`.
    #[serde(rename = "V_A")]
    pub v_a: Vec<Vec<Vector>>,
    /// Per basis character, a point of `(A*)^r`.
    #[serde(rename = "V_Astar")]
    pub v_astar: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsReport {
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    pub dim_unipotent: usize,
    pub reductive: ReductiveReport,
    pub total: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductiveReport {
    pub kind: &'static str,
    pub value: Option<usize>,
    pub label: String,
}

impl From<&ReductiveDim> for ReductiveReport {
    fn from(r: &ReductiveDim) -> Self {
        let kind = match r {
            ReductiveDim::Supplied(_) => "supplied",
            ReductiveDim::Determined(_) => "determined",
            ReductiveDim::Symbolic(_) => "symbolic",
        };
        ReductiveReport {
            kind,
            value: r.value(),
            label: r.label(),
        }
    }
}

/// The Cartier dual `M*` and the dual `[V: Z^v → B*]` of the radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    pub name: String,
    #[serde(rename = "X_rank")]
    pub x_rank: usize,
    #[serde(rename = "Yv_rank")]
    pub yv_rank: usize,
    #[serde(rename = "A")]
    pub a: Option<String>,
    #[serde(rename = "Zv_rank")]
    pub zv_rank: usize,
    #[serde(rename = "dim_Bstar")]
    pub dim_bstar: usize,
    /// `(dim B, dim Z)` of the radical of `[V: Z^v → B*]`.
    pub radical_dims: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn points(p: &PointVector) -> Vec<Vector> {
    p.entries().iter().map(|e| from_rationals(e)).collect()
}

fn slot_label(p: usize, r: usize, a: &str) -> String {
    if p < r {
        format!("e*{p}⊗{a}")
    } else {
        format!("{a}*⊗f{}", p - r)
    }
}

fn bracket_table(e: &GradedEndData, a: &str) -> Vec<BracketEntry> {
    let (r, s) = (e.r(), e.s());
    let mut out = Vec::new();
    for (l, c) in e.bracket().components().iter().enumerate() {
        for p in 0..c.rows() {
            for q in 0..c.cols() {
                let x = c.get(p, q);
                if !x.is_zero() {
                    out.push(BracketEntry {
                        component: format!("e*{}⊗f{}", l / s.max(1), l % s.max(1)),
                        left: slot_label(p, r, a),
                        right: slot_label(q, r, a),
                        coeff: crate::schema::Q(x.clone()).to_string(),
                    });
                }
            }
        }
    }
    out
}

fn action_rows(ms: &[RatMatrix]) -> Vec<Matrix> {
    ms.iter().map(matrix_to_rows).collect()
}

pub fn gr_summary(m: &OneMotive) -> GrSummary {
    let g = gr(m);
    GrSummary {
        name: m.name().to_string(),
        x_rank: g.r(),
        a: g.abelian.as_ref().map(|p| p.a.name().to_string()),
        g: g.g(),
        y_rank: g.s(),
    }
}

pub fn motive_report(m: &OneMotive, rep: &RadicalReport) -> CliResult<MotiveReport> {
    let w = weight_filtration(m);
    let pieces = gr(m);
    let e = build_e(&pieces)?;
    let a_name = m.abelian().map(|p| p.a.name().to_string()).unwrap_or_default();
    let (em1_a, em1_astar) = e.em1_dims();
    let d = cartier_dual(m);
    let rd = radical_cartier_dual(rep);
    let (db, dz) = radical_dual_dims(m, &rd)?;
    Ok(MotiveReport {
        name: m.name().to_string(),
        weights: Weights {
            w0: w.w0.into(),
            wm1: w.wm1.into(),
            wm2: w.wm2.into(),
        },
        gr: gr_summary(m),
        e: ESummary {
            em1_a,
            em1_astar,
            em2_rank: e.em2().rank(),
            bracket: bracket_table(&e, &a_name),
        },
        b: PointsReport {
            v: points(&rep.b1),
            vstar: points(&rep.b2),
        },
        b_space: BReport {
            a_side: (&rep.b.a_side).into(),
            astar_side: (&rep.b.astar_side).into(),
            dim: rep.b.dim,
        },
        z1: (&rep.z1).into(),
        z: (&rep.z).into(),
        extension: ExtensionReport {
            zv_basis: rep.extension.zv_basis.iter().map(|v| from_rationals(v)).collect(),
            zv_action: action_rows(&rep.extension.zv_action),
            v_a: rep.extension.a_part.iter().map(points).collect(),
            v_astar: rep.extension.astar_part.iter().map(points).collect(),
        },
        dims: DimsReport {
            dim_b: rep.dims.dim_b,
            dim_z: rep.dims.dim_z,
            dim_unipotent: rep.dims.dim_unipotent,
            reductive: (&rep.dims.reductive).into(),
            total: rep.dims.total(),
        },
        quasi_deficient: rep.quasi_deficient,
        derived_dim: rep.derived_dim,
        dual: DualReport {
            name: d.name().to_string(),
            x_rank: d.r(),
            yv_rank: d.s(),
            a: d.abelian().map(|p| p.a.name().to_string()),
            zv_rank: rd.zv_rank,
            dim_bstar: rd.dim_bstar,
            radical_dims: [db, dz],
        },
        invariants: None,
    })
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, m) in self.motives.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            render_text(&mut out, m);
        }
        out
    }
}

fn join(v: &[Vector]) -> String {
    let rows: Vec<String> = v
        .iter()
        .map(|r| {
            let cs: Vec<String> = r.iter().map(|q| q.to_string()).collect();
            format!("({})", cs.join(", "))
        })
        .collect();
    format!("span{{{}}}", rows.join(", "))
}

fn render_text(out: &mut String, m: &MotiveReport) {
    let _ = writeln!(out, "motive {}", m.name);
    let a = m.gr.a.as_deref().unwrap_or("0");
    let _ = writeln!(
        out,
        "  Gr: X rank {}, A = {} (g = {}), Y rank {}",
        m.gr.x_rank, a, m.gr.g, m.gr.y_rank
    );
    let _ = writeln!(
        out,
        "  weights: W-1 = G of dim {} (abelian {}, torus {}), W-2 = torus of rank {}",
        m.weights.wm1.group_dim, m.weights.wm1.abelian_dim, m.weights.wm1.torus_rank, m.weights.wm2.torus_rank
    );
    let _ = writeln!(
        out,
        "  E: E-1 = {} copies of A + {} of A*, E-2 rank {}, {} bracket terms",
        m.e.em1_a,
        m.e.em1_astar,
        m.e.em2_rank,
        m.e.bracket.len()
    );
    let _ = writeln!(
        out,
        "  B: dim {} (A side {}, A* side {})",
        m.b_space.dim,
        join(&m.b_space.a_side.basis),
        join(&m.b_space.astar_side.basis)
    );
    let _ = writeln!(out, "  Z1: dim {} {}", m.z1.dim, join(&m.z1.basis));
    let _ = writeln!(out, "  Z: dim {} {}", m.z.dim, join(&m.z.basis));
    if m.quasi_deficient {
        let _ = writeln!(out, "  quasi-deficient: the radical is abelian");
    }
    let red = match m.dims.reductive.value {
        Some(n) if m.dims.reductive.kind == "supplied" => format!("{n}, user"),
        Some(n) => n.to_string(),
        None => m.dims.reductive.label.clone(),
    };
    let _ = writeln!(
        out,
        "  dim Lie = dim B ({}) + dim Z ({}) + reductive ({})",
        m.dims.dim_b, m.dims.dim_z, red
    );
    match m.dims.total {
        Some(t) => {
            let _ = writeln!(out, "  total: {t} (unipotent {})", m.dims.dim_unipotent);
        }
        None => {
            let _ = writeln!(out, "  unipotent: {}", m.dims.dim_unipotent);
        }
    }
    let _ = writeln!(
        out,
        "  dual: {} with radical dual [V: Z^v (rank {}) -> B* (dim {})]",
        m.dual.name, m.dual.zv_rank, m.dual.dim_bstar
    );
    if let Some(checks) = &m.invariants {
        for c in checks {
            let _ = writeln!(
                out,
                "  check {}: {}",
                c.name,
                if c.ok { "ok" } else { "FAILED" }
            );
        }
    }
}
