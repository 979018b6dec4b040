use std::path::Path;

use motcalc_core::exactlin::{rat, Rational};
use motcalc_core::liestruct::{build_e, verify_dual_lie_module, verify_lie_module};
use motcalc_core::onemotive::{cartier_dual, gr, OneMotive};
use motcalc_core::radical::{b_relation_check, unipotent_radical, RadicalReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::loader::{load, load_path, read_document, LoadedMotive};
use crate::report::{gr_summary, motive_report, GrSummary, InvariantCheck, ReportDocument};
use crate::schema::InputDocument;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub check_invariants: bool,
    pub reductive_dim: Option<usize>,
}

fn check(name: &str, ok: bool, detail: Option<String>) -> InvariantCheck {
    InvariantCheck {
        name: name.to_string(),
        ok,
        detail: if ok { None } else { detail },
    }
}

fn scaled(m: &OneMotive, n: i64) -> CliResult<OneMotive> {
    let k = rat(n);
    let k2: Rational = &k * &k;
    Ok(m.with_data(m.v().scaled(&k), m.vstar().scaled(&k), m.psi().scale(&k2))?)
}

/// The property suite on one motive.
pub fn invariant_checks(m: &OneMotive, rep: &RadicalReport) -> CliResult<Vec<InvariantCheck>> {
    let mut out = Vec::new();
    let d = cartier_dual(m);
    out.push(check("dual_involution", cartier_dual(&d) == *m, None));
    let drep = unipotent_radical(&d, None)?;
    let same = (drep.dims.dim_b, drep.dims.dim_z) == (rep.dims.dim_b, rep.dims.dim_z);
    out.push(check(
        "dual_dims",
        same,
        Some(format!(
            "dual has (dim B, dim Z) = ({}, {})",
            drep.dims.dim_b, drep.dims.dim_z
        )),
    ));
    let mut iso = true;
    for n in [2, 3, 5] {
        let sm = scaled(m, n)?;
        let srep = unipotent_radical(&sm, None)?;
        iso &= srep.b == rep.b && srep.z1 == rep.z1 && srep.z == rep.z;
    }
    out.push(check("isogeny_invariance", iso, None));
    out.push(check(
        "additivity",
        rep.dims.dim_unipotent == rep.dims.dim_b + rep.dims.dim_z,
        None,
    ));
    out.push(check("z1_in_z", rep.z1.is_subspace_of(&rep.z)?, None));
    out.push(check("b_contains_relations", b_relation_check(m, &rep.b)?, None));
    let pieces = gr(m);
    let e = build_e(&pieces)?;
    out.push(check("bracket_antisymmetric", e.bracket().is_antisymmetric(), None));
    let lie = verify_lie_module(&e, &pieces);
    out.push(check("lie_module", lie.ok, lie.witness));
    let dlie = verify_dual_lie_module(&e, &pieces);
    out.push(check("dual_lie_module", dlie.ok, dlie.witness));
    Ok(out)
}

fn analyze_one(lm: &LoadedMotive, opts: AnalyzeOptions) -> CliResult<crate::report::MotiveReport> {
    let m = &lm.motive;
    let rep = unipotent_radical(m, opts.reductive_dim.or(lm.reductive_dim))?;
    let mut report = motive_report(m, &rep)?;
    if opts.check_invariants {
        report.invariants = Some(invariant_checks(m, &rep)?);
    }
    Ok(report)
}

pub fn analyze_document(doc: InputDocument, opts: AnalyzeOptions) -> CliResult<ReportDocument> {
    let loaded = load(doc)?;
    let motives = loaded
        .motives
        .par_iter()
        .map(|lm| analyze_one(lm, opts).map_err(|e| e.in_motive(lm.motive.name())))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ReportDocument { motives })
}

/// Analyzes every motive in the file. A failed invariant is reported as
/// [`CliError::Invariant`] only after the full report is built, so callers
/// can still print it.
pub fn analyze(path: &Path, opts: AnalyzeOptions) -> CliResult<ReportDocument> {
    analyze_document(read_document(path)?, opts)
}

pub fn failed_invariants(report: &ReportDocument) -> Option<CliError> {
    let failed: Vec<String> = report
        .motives
        .iter()
        .flat_map(|m| {
            m.invariants
                .iter()
                .flatten()
                .filter(|c| !c.ok)
                .map(move |c| format!("{}: {}", m.name, c.name))
        })
        .collect();
    if failed.is_empty() {
        None
    } else {
        Some(CliError::Invariant(failed.join(", ")))
    }
}

/// The Cartier-dual document, validated by loading it.
pub fn dual(path: &Path) -> CliResult<InputDocument> {
    let doc = read_document(path)?;
    load(doc.clone())?;
    let d = doc.cartier_dual();
    load(d.clone())?;
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrDocument {
    pub motives: Vec<GrSummary>,
}

pub fn graded(path: &Path) -> CliResult<GrDocument> {
    let loaded = load_path(path)?;
    Ok(GrDocument {
        motives: loaded.motives.iter().map(|lm| gr_summary(&lm.motive)).collect(),
    })
}

impl GrDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}
