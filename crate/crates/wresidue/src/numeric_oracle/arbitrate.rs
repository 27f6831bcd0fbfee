//! Discrepancy arbitration: which of two symbolic candidates the quadrature supports.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;
use serde::Serialize;
use wres_core::boundary_engine::{CaseIndices, CaseOracle, OracleQuery, OracleVerdict, Winner};
use wres_core::exact_scalars::PolyScalar;
use wres_core::symbol_engine::OperatorSpec;

use super::case::{CaseEvaluator, QuadratureSettings};
use super::draw::ParamDraw;
use super::eval::NumericEval;
use super::gamma::GammaRep;
use super::OracleError;

type CaseTable = Vec<(CaseIndices, Vec<Complex64>)>;

/// Numeric oracle with a fixed seed and draw count. Per-draw values of every
/// tuple are cached by operator pair, so several queries share one pass.
#[derive(Debug)]
pub struct QuadratureOracle {
    pub seed: u64,
    pub draws: u32,
    /// Relative tolerance, scaled by `max(1, |numeric|)`.
    pub tolerance: f64,
    pub settings: QuadratureSettings,
    cache: Mutex<HashMap<String, CaseTable>>,
}

impl Default for QuadratureOracle {
    fn default() -> Self {
        Self::new(20240917, 20)
    }
}

/// Per-draw comparison of two candidate values with the numeric one.
pub fn compare_candidates(
    numeric: &[Complex64],
    draws: &[ParamDraw],
    engine: &PolyScalar,
    target: &PolyScalar,
    tolerance: f64,
) -> Result<OracleVerdict, OracleError> {
    let mut v = OracleVerdict { draws: numeric.len() as u32, tolerance, engine_agree: 0, target_agree: 0, max_engine_dev: 0.0, max_target_dev: 0.0 };
    for (x, d) in numeric.iter().zip(draws) {
        let rep = GammaRep::new(d.n)?;
        let scale = x.norm().max(1.0);
        let de = (engine.eval_numeric(d, &rep)? - x).norm() / scale;
        let dt = (target.eval_numeric(d, &rep)? - x).norm() / scale;
        v.max_engine_dev = v.max_engine_dev.max(de);
        v.max_target_dev = v.max_target_dev.max(dt);
        v.engine_agree += (de <= tolerance) as u32;
        v.target_agree += (dt <= tolerance) as u32;
    }
    Ok(v)
}

impl QuadratureOracle {
    pub fn new(seed: u64, draws: u32) -> Self {
        QuadratureOracle { seed, draws, tolerance: 1e-8, settings: QuadratureSettings::default(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn table(&self, left: &OperatorSpec, right: &OperatorSpec, draws: &[ParamDraw]) -> Result<CaseTable, OracleError> {
        let key = format!("{left:?}|{right:?}");
        if let Some(t) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let ev = CaseEvaluator::new(left, right, self.settings)?;
        let tuples = ev.tuples();
        let mut cols = vec![Vec::with_capacity(draws.len()); tuples.len()];
        for d in draws {
            for (c, v) in cols.iter_mut().zip(ev.evaluate(&tuples, d)?) {
                c.push(v);
            }
        }
        let table: CaseTable = tuples.into_iter().zip(cols).collect();
        self.cache.lock().expect("cache lock").insert(key, table.clone());
        Ok(table)
    }

    pub fn sample(&self, n: u8) -> Vec<ParamDraw> {
        ParamDraw::seeded(n, self.seed, self.draws as usize)
    }

    /// Numeric values of the queried case (or the total) per draw.
    pub fn numeric_values(&self, q: &OracleQuery<'_>, draws: &[ParamDraw]) -> Result<Vec<Complex64>, OracleError> {
        let table = self.table(q.left, q.right, draws)?;
        let mut out = vec![Complex64::new(0.0, 0.0); draws.len()];
        let mut found = false;
        for (t, vals) in &table {
            if q.indices.map_or(true, |i| i == *t) {
                found = true;
                out.iter_mut().zip(vals).for_each(|(o, v)| *o += v);
            }
        }
        if !found {
            return Err(OracleError::Unsupported(format!("no admissible tuple matches {}", q.key)));
        }
        Ok(out)
    }

    pub fn run(&self, q: &OracleQuery<'_>, engine: &PolyScalar, target: &PolyScalar) -> Result<OracleVerdict, OracleError> {
        let draws = self.sample(q.left.n);
        let numeric = self.numeric_values(q, &draws)?;
        compare_candidates(&numeric, &draws, engine, target, self.tolerance)
    }
}

impl CaseOracle for QuadratureOracle {
    fn arbitrate(&self, q: &OracleQuery<'_>, engine: &PolyScalar, target: &PolyScalar) -> Result<OracleVerdict, String> {
        self.run(q, engine, target).map_err(|e| e.to_string())
    }
}

pub fn winner_name(w: Winner) -> &'static str {
    match w {
        Winner::Engine => "engine",
        Winner::Target => "target",
        Winner::Both => "both",
        Winner::Neither => "both-fail",
    }
}

/// JSON form of a verdict.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerdictRecord {
    pub draws: u32,
    pub tolerance: f64,
    pub engine_agree: u32,
    pub target_agree: u32,
    pub max_engine_dev: f64,
    pub max_target_dev: f64,
    pub winner: &'static str,
}

impl From<&OracleVerdict> for VerdictRecord {
    fn from(v: &OracleVerdict) -> Self {
        VerdictRecord {
            draws: v.draws,
            tolerance: v.tolerance,
            engine_agree: v.engine_agree,
            target_agree: v.target_agree,
            max_engine_dev: v.max_engine_dev,
            max_target_dev: v.max_target_dev,
            winner: winner_name(v.winner()),
        }
    }
}
