//! Bundled example data: resolutions of the worked examples and the
//! blow-up ideal. Names resolve here before the filesystem is consulted.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Result, ZetaError};
use crate::parse::parse_poly;
use crate::resolution::ResolutionData;
use crate::MultiPoly;

const PARABOLA: &str = include_str!("../data/parabola.json");
const CUSP: &str = include_str!("../data/cusp.json");
const CUSP_BAD: &str = include_str!("../data/cusp_bad.json");
const LINE: &str = include_str!("../data/line.json");
const BLOWUP: &str = include_str!("../data/blowup.json");

/// Names accepted by [`resolution`].
pub const RESOLUTIONS: &[&str] = &["cusp", "cusp_bad", "line", "parabola"];
/// Names accepted by [`ideal`].
pub const IDEALS: &[&str] = &["blowup"];

fn bundled(name: &str) -> Option<&'static str> {
    match name.replace('-', "_").as_str() {
        "parabola" => Some(PARABOLA),
        "cusp" => Some(CUSP),
        "cusp_bad" => Some(CUSP_BAD),
        "line" => Some(LINE),
        "blowup" | "blow_up" => Some(BLOWUP),
        _ => None,
    }
}

/// A bundled resolution by name.
pub fn resolution(name: &str) -> Result<ResolutionData> {
    match bundled(name) {
        Some(src) if src != BLOWUP => ResolutionData::from_json(src),
        _ => Err(ZetaError::InvalidArgument(format!(
            "no bundled resolution `{name}` (known: {})",
            RESOLUTIONS.join(", ")
        ))),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| ZetaError::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

/// A bundled name, or else a path to a JSON resolution file.
pub fn load_resolution(name_or_path: &str) -> Result<ResolutionData> {
    if bundled(name_or_path).is_some() {
        return resolution(name_or_path);
    }
    ResolutionData::from_json(&read(Path::new(name_or_path))?)
}

/// An ideal `(g_1, ..., g_r)` in `ambient_dim` variables with a target order.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealData {
    pub ambient_dim: usize,
    pub generators: Vec<MultiPoly>,
    pub order: u32,
}

#[derive(Deserialize)]
struct RawIdeal {
    ambient_dim: usize,
    generators: Vec<String>,
    order: u32,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

impl IdealData {
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawIdeal =
            serde_json::from_str(src).map_err(|e| ZetaError::InvalidArgument(e.to_string()))?;
        let parsed = raw
            .generators
            .iter()
            .map(|g| parse_poly(g, None))
            .collect::<Result<Vec<_>>>()?;
        let mut vars: Vec<String> = Vec::new();
        for g in &parsed {
            for v in g.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        if vars.len() > raw.ambient_dim {
            return Err(ZetaError::ArityMismatch {
                expected: raw.ambient_dim,
                got: vars.len(),
            });
        }
        vars.sort();
        let mut i = 0;
        while vars.len() < raw.ambient_dim {
            let name = format!("w{i}");
            if !vars.contains(&name) {
                vars.push(name);
            }
            i += 1;
        }
        let generators = parsed
            .iter()
            .map(|g| g.with_vars(&vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealData {
            ambient_dim: raw.ambient_dim,
            generators,
            order: raw.order,
        })
    }
}

/// A bundled ideal by name.
pub fn ideal(name: &str) -> Result<IdealData> {
    match bundled(name) {
        Some(src) if src == BLOWUP => IdealData::from_json(src),
        _ => Err(ZetaError::InvalidArgument(format!(
            "no bundled ideal `{name}` (known: {})",
            IDEALS.join(", ")
        ))),
    }
}

pub fn load_ideal(name_or_path: &str) -> Result<IdealData> {
    match ideal(name_or_path) {
        Ok(d) => Ok(d),
        Err(_) if bundled(name_or_path).is_none() => IdealData::from_json(&read(Path::new(name_or_path))?),
        Err(e) => Err(e),
    }
}
