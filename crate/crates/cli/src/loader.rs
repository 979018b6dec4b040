//! Turns an [`InputDocument`] into validated core objects.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use log::warn;
use motcalc_core::abvar::{AbelianVarietyModel, EndAlgebraRep, PointVector, VarietyParams, VarietyRegistry};
use motcalc_core::exactlin::{RatMatrix, Rational};
use motcalc_core::galmod::{ActionGroup, GaloisLattice};
use motcalc_core::onemotive::{AbelianPair, OneMotive};
use motcalc_core::radical::MultSpace;

use crate::error::{CliError, CliResult};
use crate::schema::{matrix_from_rows, to_rationals, Exponents, InputDocument, Matrix, MotiveDecl, PointRef};

/// A validated document: motives in input order, each with its reductive
/// dimension override.
#[derive(Clone, Debug)]
pub struct LoadedDocument {
    pub document: InputDocument,
    pub registry: VarietyRegistry,
    pub motives: Vec<LoadedMotive>,
}

#[derive(Clone, Debug)]
pub struct LoadedMotive {
    pub motive: OneMotive,
    pub reductive_dim: Option<usize>,
}

pub fn read_document(path: &Path) -> CliResult<InputDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(InputDocument::parse(&text)?)
}

pub fn load_path(path: &Path) -> CliResult<LoadedDocument> {
    load(read_document(path)?)
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn matrices(ms: &[Matrix], n: usize, what: &str) -> CliResult<Vec<RatMatrix>> {
    ms.iter()
        .map(|m| {
            if m.len() != n {
                return Err(invalid(format!("{what}: expected {n} rows, found {}", m.len())));
            }
            matrix_from_rows(m, n).map_err(|e| invalid(format!("{what}: {e}")))
        })
        .collect()
}

fn exponent_vector(e: &Exponents, basis: &[String], what: &str) -> CliResult<Vec<Rational>> {
    let mut v = vec![Rational::from_integer(0.into()); basis.len()];
    for (name, q) in e {
        let i = basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| invalid(format!("{what}: unknown multiplicative generator `{name}`")))?;
        v[i] = q.0.clone();
    }
    Ok(v)
}

fn lattice(group: &ActionGroup, rank: usize, action: &[Matrix], what: &str) -> CliResult<GaloisLattice> {
    let l = if action.is_empty() {
        GaloisLattice::trivial(group, rank)
    } else {
        GaloisLattice::new(group, rank, matrices(action, rank, what)?)
            .map_err(|e| invalid(format!("{what}: {e}")))?
    };
    for w in l.relator_violations() {
        warn!("{what}: {w}");
    }
    Ok(l)
}

fn variety(decl: &crate::schema::VarietyDecl) -> CliResult<AbelianVarietyModel> {
    let n = decl.point_space_dim;
    let what = format!("variety `{}`", decl.name);
    let end_algebra = if decl.end_generators.is_empty() {
        None
    } else {
        let degree = decl.end_generators[0].len();
        let gens = matrices(&decl.end_generators, degree, &what)?;
        Some(Arc::new(EndAlgebraRep::new(degree, gens, decl.end_commutative)?))
    };
    let points: BTreeMap<String, Vec<Rational>> = decl
        .points
        .iter()
        .map(|(k, v)| (k.clone(), to_rationals(v)))
        .collect();
    let params = VarietyParams {
        name: decl.name.clone(),
        g: decl.g,
        dual: decl.dual.clone(),
        point_dim: n,
        end_algebra,
        end_action: matrices(&decl.end_action, n, &what)?,
        dual_transfer: match &decl.dual_transfer {
            None => None,
            Some(ms) => Some(matrices(ms, n, &what)?),
        },
        points,
        relations: decl.relations.iter().map(|r| to_rationals(r)).collect(),
        galois_action: matrices(&decl.galois_action, n, &what)?,
    };
    Ok(AbelianVarietyModel::new(params)?)
}

fn points(
    refs: &[PointRef],
    count: usize,
    model: Option<&AbelianVarietyModel>,
    what: &str,
) -> CliResult<PointVector> {
    let Some(model) = model else {
        let nonzero = refs.iter().any(|r| match r {
            PointRef::Named(_) => true,
            PointRef::Coords(c) => !c.is_empty(),
        });
        if nonzero {
            return Err(invalid(format!("{what}: points given but the motive has no abelian part")));
        }
        return Ok(PointVector::on_zero_variety(count));
    };
    let n = model.point_dim();
    if refs.is_empty() {
        return Ok(PointVector::new(model.name(), n, vec![vec![Rational::from_integer(0.into()); n]; count])?);
    }
    if refs.len() != count {
        return Err(invalid(format!("{what}: expected {count} points, found {}", refs.len())));
    }
    let entries = refs
        .iter()
        .map(|r| match r {
            PointRef::Named(name) => model
                .point(name)
                .cloned()
                .ok_or_else(|| invalid(format!("{what}: `{}` has no point `{name}`", model.name()))),
            PointRef::Coords(c) if c.len() == n => Ok(to_rationals(c)),
            PointRef::Coords(c) => Err(invalid(format!(
                "{what}: point has {} coordinates, `{}` has point space of dimension {n}",
                c.len(),
                model.name()
            ))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(PointVector::new(model.name(), n, entries)?)
}

fn motive(
    decl: &MotiveDecl,
    group: &ActionGroup,
    registry: &VarietyRegistry,
    mult: &Arc<MultSpace>,
) -> CliResult<OneMotive> {
    let (r, s) = (decl.x_rank, decl.yv_rank);
    let x = lattice(group, r, &decl.x_action, "X_action")?;
    let yv = lattice(group, s, &decl.yv_action, "Yv_action")?;
    let pair = match (&decl.a, &decl.astar) {
        (None, None) => None,
        (None, Some(_)) => return Err(invalid("`Astar` given without `A`")),
        (Some(a), astar) => {
            let am = registry
                .get(a)
                .ok_or_else(|| invalid(format!("unknown variety `{a}`")))?;
            let dm = registry.dual_of(a).expect("registry links duals");
            if let Some(d) = astar {
                if d != dm.name() {
                    return Err(invalid(format!(
                        "`Astar` is `{d}` but the registered dual of `{a}` is `{}`",
                        dm.name()
                    )));
                }
            }
            Some(AbelianPair::new(am.clone(), dm.clone())?)
        }
    };
    let v = points(&decl.v, r, pair.as_ref().map(|p| p.a.as_ref()), "v")?;
    let vstar = points(&decl.vstar, s, pair.as_ref().map(|p| p.astar.as_ref()), "vstar")?;
    let mut psi = RatMatrix::zeros(mult.dim(), r * s);
    if !decl.psi.is_empty() {
        if decl.psi.len() != r || decl.psi.iter().any(|row| row.len() != s) {
            return Err(invalid(format!("psi must be a {r}×{s} array")));
        }
        for (i, row) in decl.psi.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let col = exponent_vector(e, mult.names(), "psi")?;
                for (k, c) in col.into_iter().enumerate() {
                    psi.set(k, i * s + j, c);
                }
            }
        }
    }
    Ok(OneMotive::new(&decl.name, x, yv, pair, v, vstar, psi, mult.clone())?)
}

pub fn load(document: InputDocument) -> CliResult<LoadedDocument> {
    let group = match &document.group {
        None => ActionGroup::trivial(),
        Some(g) => ActionGroup::new(g.generators, g.relators.clone())?,
    };
    let mult_relations = document
        .mult_relations
        .iter()
        .map(|e| exponent_vector(e, &document.mult_basis, "mult_relations"))
        .collect::<CliResult<Vec<_>>>()?;
    let mult_action = matrices(&document.mult_action, document.mult_basis.len(), "mult_action")?;
    if !mult_action.is_empty() && mult_action.len() != group.generator_count() {
        return Err(invalid("mult_action needs one matrix per group generator"));
    }
    let mult = Arc::new(MultSpace::new(document.mult_basis.clone(), mult_relations, mult_action)?);
    let models = document
        .varieties
        .iter()
        .map(variety)
        .collect::<CliResult<Vec<_>>>()?;
    for m in &models {
        let alg = m.end_algebra();
        if !alg.is_rationals() && !alg.looks_like_field() {
            return Err(CliError::Unsupported(format!(
                "variety `{}`: endomorphism algebras that are not fields",
                m.name()
            )));
        }
        let given = m.galois_action(group.generator_count()).len();
        if given != group.generator_count() {
            return Err(invalid(format!(
                "variety `{}`: galois_action needs one matrix per group generator",
                m.name()
            )));
        }
    }
    let registry = VarietyRegistry::new(models)?;
    let mut seen = std::collections::HashSet::new();
    let mut motives = Vec::with_capacity(document.motives.len());
    for decl in &document.motives {
        if !seen.insert(decl.name.clone()) {
            return Err(invalid(format!("motive `{}` declared twice", decl.name)));
        }
        let m = motive(decl, &group, &registry, &mult).map_err(|e| e.in_motive(&decl.name))?;
        motives.push(LoadedMotive {
            motive: m,
            reductive_dim: decl.reductive_dim.or(document.options.reductive_dim),
        });
    }
    Ok(LoadedDocument {
        document,
        registry,
        motives,
    })
}
