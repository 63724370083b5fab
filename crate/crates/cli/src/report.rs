//! The full invariant dossier for one target.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Result;
use lch_core::augment;
use lch_core::dga::{action_certificate, ActionCertificate, CheckOutcome};
use lch_core::front;
use lch_core::linhom::{
    self, fillability_report, poincare_polynomial, FillabilityReport,
};

use crate::input::ResolvedTarget;

/// Renders the dossier; the bool is true when every structural check passed.
pub fn render(target: &ResolvedTarget, limit: usize) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    let dga = &target.dga;
    writeln!(out, "target: {}", target.label)?;
    if let Some(plat) = &target.plat {
        writeln!(out, "plat: {plat}")?;
        match front::parse_plat(plat).and_then(|f| front::classical_invariants(&f)) {
            Ok((tb, rot)) => writeln!(out, "classical: tb = {tb}, rot = {rot}")?,
            Err(front::FrontError::MultiComponent(n)) => {
                writeln!(out, "classical: {n} components (per-component values not computed)")?
            }
            Err(e) => writeln!(out, "classical: error: {e}")?,
        }
    }
    let gens: Vec<String> = dga
        .generators()
        .map(|g| format!("{}:{}", g.name, g.degree))
        .collect();
    writeln!(out, "generators: {} ({})", dga.num_generators(), gens.join(" "))?;

    match dga.check_d_squared() {
        CheckOutcome::Ok => writeln!(out, "d^2 = 0: PASS")?,
        CheckOutcome::Failed(w) => {
            ok = false;
            writeln!(out, "d^2 = 0: FAIL (d^2({}) = {})", w.generator, w.residue)?;
        }
    }
    match dga.check_grading() {
        CheckOutcome::Ok => writeln!(out, "degree -1 homogeneity: PASS")?,
        CheckOutcome::Failed(w) => {
            ok = false;
            writeln!(
                out,
                "degree -1 homogeneity: FAIL (word {} in d({}) has degree {}, expected {})",
                w.word, w.generator, w.got, w.expected
            )?;
        }
    }
    match action_certificate(dga) {
        ActionCertificate::Feasible { .. } => writeln!(out, "action filtration: FEASIBLE")?,
        ActionCertificate::Infeasible { cycle } => {
            ok = false;
            writeln!(out, "action filtration: INFEASIBLE (cycle {})", cycle.join(" -> "))?;
        }
        ActionCertificate::DeclaredViolation { generator, word } => {
            ok = false;
            writeln!(
                out,
                "action filtration: DECLARED ACTIONS VIOLATED at d({generator}) word {word}"
            )?;
        }
    }

    let set = augment::enumerate_augmentations(dga, limit)?;
    writeln!(out, "augmentations: {}", set.augs.len())?;
    let mut multiset: BTreeMap<String, usize> = BTreeMap::new();
    for (i, e) in set.augs.iter().enumerate() {
        let complex = linhom::linearized_boundary(dga, e)?;
        let poly = poincare_polynomial(&complex.homology_dims()).to_string();
        let values: Vec<String> = e
            .to_map(dga)
            .into_iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect();
        writeln!(out, "  #{i} ({}): poincare {poly}", values.join(","))?;
        *multiset.entry(poly).or_default() += 1;
    }
    let rendered: Vec<String> = multiset
        .iter()
        .map(|(p, c)| format!("{p} x{c}"))
        .collect();
    writeln!(out, "poincare multiset: [{}]", rendered.join(", "))?;

    match fillability_report(dga, limit)? {
        FillabilityReport::NoAugmentation => {
            writeln!(out, "fillability: no augmentation: not exactly fillable")?;
        }
        FillabilityReport::PerAugmentation(verdicts) => {
            for (i, v) in verdicts.iter().enumerate() {
                if v.pass {
                    let genus = v
                        .genus
                        .map(|g| format!(", genus bound {g}"))
                        .unwrap_or_default();
                    writeln!(out, "fillability #{i}: necessary conditions hold{genus}")?;
                } else {
                    writeln!(out, "fillability #{i}: FAIL ({})", v.reasons.join("; "))?;
                }
            }
        }
    }
    Ok((out, ok))
}
