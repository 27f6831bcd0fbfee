//! Printed values to compare against, read from `data/targets.json` (bundled)
//! or a user-supplied file with the same layout.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use wres_core::boundary_engine::{CaseIndices, CaseTarget, TargetKey};
use wres_core::exact_scalars::{Monomial, PolyScalar, Var};
use wres_core::heat_nonminimal::SpecializationTarget;

use super::config::Preset;
use super::eval::eval_str;

pub const BUNDLED: &str = include_str!("../../../../data/targets.json");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum KeyRepr {
    /// Only `"total"` is accepted.
    Named(String),
    Tuple { tuple: [i64; 5] },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetEntry {
    pub id: String,
    #[serde(default)]
    pub equation: String,
    #[serde(default)]
    pub quote: String,
    pub key: KeyRepr,
    /// Expression in the DSL.
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresetTargets {
    pub n: u8,
    pub entries: Vec<TargetEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecializationEntry {
    pub id: String,
    #[serde(default)]
    pub equation: String,
    #[serde(default)]
    pub quote: String,
    pub p: u32,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub id: String,
    #[serde(default)]
    pub equation: String,
    #[serde(default)]
    pub quote: String,
    pub k: u32,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WresEntry {
    pub id: String,
    #[serde(default)]
    pub equation: String,
    #[serde(default)]
    pub quote: String,
    pub m: u32,
    pub k: u32,
    pub value: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct HeatTargets {
    #[serde(default)]
    pub specializations: Vec<SpecializationEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub wres: Vec<WresEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetsFile {
    pub version: u32,
    #[serde(default)]
    pub presets: BTreeMap<String, PresetTargets>,
    #[serde(default)]
    pub heat: HeatTargets,
}

#[derive(Debug, thiserror::Error)]
pub enum TargetError {
    #[error("cannot read targets file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed targets file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("target `{id}`: {msg}")]
    Entry { id: String, msg: String },
    #[error("targets for preset {preset} are stated in dimension {file}, the run uses {run}")]
    Dimension { preset: String, file: u8, run: u8 },
}

fn entry_err(id: &str, msg: impl Into<String>) -> TargetError {
    TargetError::Entry { id: id.to_string(), msg: msg.into() }
}

/// Value of a target expression with `pi^e` split off: `(rest, e)`.
pub fn split_pi(p: &PolyScalar) -> (PolyScalar, i32) {
    let common = p.common_factor(|v| v == Var::Pi);
    let e = common.exponent(Var::Pi);
    let rest = p.div_monomial(&Monomial::var(Var::Pi, e)).expect("common factor divides");
    (rest, e as i32)
}

impl TargetsFile {
    pub fn bundled() -> TargetsFile {
        serde_json::from_str(BUNDLED).expect("bundled targets parse")
    }

    pub fn parse(text: &str) -> Result<TargetsFile, TargetError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: Option<&Path>) -> Result<TargetsFile, TargetError> {
        match path {
            None => Ok(Self::bundled()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| TargetError::Io { path: p.display().to_string(), source })?;
                Self::parse(&text)
            }
        }
    }

    fn section(&self, preset: Preset) -> Option<&PresetTargets> {
        self.presets.get(preset.name()).or_else(|| self.presets.get(preset.alias()))
    }

    /// Targets for a preset; empty when the file has none.
    pub fn case_targets(&self, preset: Preset, n: u8) -> Result<Vec<CaseTarget>, TargetError> {
        let Some(sec) = self.section(preset) else { return Ok(Vec::new()) };
        if sec.n != n {
            return Err(TargetError::Dimension { preset: preset.name().into(), file: sec.n, run: n });
        }
        sec.entries
            .iter()
            .map(|e| {
                let key = match &e.key {
                    KeyRepr::Named(s) if s == "total" => TargetKey::Total,
                    KeyRepr::Named(s) => return Err(entry_err(&e.id, format!("unknown key `{s}`, expected \"total\" or a tuple"))),
                    KeyRepr::Tuple { tuple: [r, l, k, j, a] } => {
                        let small = |v: i64| i32::try_from(v).map_err(|_| entry_err(&e.id, "tuple entry out of range"));
                        let nonneg = |v: i64| u32::try_from(v).map_err(|_| entry_err(&e.id, "k, j and |alpha| must be non-negative"));
                        TargetKey::Case(CaseIndices::new(small(*r)?, small(*l)?, nonneg(*k)?, nonneg(*j)?, nonneg(*a)?))
                    }
                };
                let value = eval_str(&e.value, n).map_err(|m| entry_err(&e.id, m))?;
                Ok(CaseTarget { id: e.id.clone(), key, value })
            })
            .collect()
    }

    pub fn specialization_targets(&self) -> Result<Vec<SpecializationTarget>, TargetError> {
        self.heat
            .specializations
            .iter()
            .map(|e| Ok(SpecializationTarget { id: e.id.clone(), p: e.p, printed: eval_str(&e.value, 4).map_err(|m| entry_err(&e.id, m))? }))
            .collect()
    }

    /// `(id, k, value)` for every bracket target.
    pub fn bracket_targets(&self) -> Result<Vec<(String, u32, PolyScalar)>, TargetError> {
        self.heat
            .brackets
            .iter()
            .map(|e| Ok((e.id.clone(), e.k, eval_str(&e.value, 4).map_err(|m| entry_err(&e.id, m))?)))
            .collect()
    }

    /// The claim stated for `(m, k)`, with its power of `pi` split off.
    pub fn wres_claim(&self, m: u32, k: u32) -> Result<Option<(String, PolyScalar, i32)>, TargetError> {
        let Some(e) = self.heat.wres.iter().find(|e| e.m == m && e.k == k) else { return Ok(None) };
        let v = eval_str(&e.value, 4).map_err(|msg| entry_err(&e.id, msg))?;
        let (rest, pe) = split_pi(&v);
        Ok(Some((e.id.clone(), rest, pe)))
    }
}
