//! Input resolution: `library:<id>` targets, plat files and Dga JSON files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use lch_core::dga::Dga;
use lch_core::front;
use lch_core::library;

/// Where a Dga came from; reports want the plat when there is one.
pub struct ResolvedTarget {
    pub label: String,
    pub plat: Option<String>,
    pub dga: Dga,
}

pub fn resolve_target(spec: &str) -> Result<ResolvedTarget> {
    if let Some(id) = spec.strip_prefix("library:") {
        let entry = library::entry(id).ok_or_else(|| {
            anyhow!(
                "unknown library entry {id:?}; available: {}",
                library::entries()
                    .iter()
                    .map(|e| e.id)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })?;
        let dga = front::dga_from_plat(entry.plat)
            .with_context(|| format!("building the Dga of library:{id}"))?;
        return Ok(ResolvedTarget {
            label: spec.to_string(),
            plat: Some(entry.plat.to_string()),
            dga,
        });
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    if path.extension().is_some_and(|e| e == "plat") {
        let dga = front::dga_from_plat(&text).with_context(|| format!("resolving {spec}"))?;
        return Ok(ResolvedTarget {
            label: spec.to_string(),
            plat: Some(text.trim().to_string()),
            dga,
        });
    }
    let dga = Dga::from_json_str(&text).with_context(|| format!("parsing {spec}"))?;
    Ok(ResolvedTarget {
        label: spec.to_string(),
        plat: None,
        dga,
    })
}

/// The degree-0 generator budget for augmentation enumeration, overridable
/// through LCH_MAX_DEG0.
pub fn degree_zero_limit() -> Result<usize> {
    match std::env::var("LCH_MAX_DEG0") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("LCH_MAX_DEG0 must be a nonnegative integer, got {v:?}")),
        Err(std::env::VarError::NotPresent) => Ok(lch_core::augment::DEFAULT_MAX_DEGREE_ZERO),
        Err(e) => bail!("reading LCH_MAX_DEG0: {e}"),
    }
}

/// Loads a morphism file; `source`/`target` inside it are library targets or
/// paths relative to the morphism file's directory.
pub fn resolve_morphism(spec: &str) -> Result<lch_core::cobord::DgaMorphism> {
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    let json: lch_core::cobord::MorphismJson =
        serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let resolve_side = |side: &str| -> Result<Dga> {
        if side.starts_with("library:") {
            Ok(resolve_target(side)?.dga)
        } else {
            Ok(resolve_target(base.join(side).to_str().unwrap())?.dga)
        }
    };
    let source = resolve_side(&json.source)?;
    let target = resolve_side(&json.target)?;
    Ok(json.into_morphism(source, target)?)
}
