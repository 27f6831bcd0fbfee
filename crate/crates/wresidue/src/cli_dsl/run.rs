//! Preset pipelines. Each produces a serializable report; `all_match` drives
//! the exit status (0 when everything matches, 2 otherwise, 1 on errors).

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use wres_core::boundary_engine::{
    assemble_theorem_report, compute_phi, metric_sector, torsion_sector, BoundaryError, CaseIndices, CaseOracle, CaseResult,
    LedgerEntry, OracleOutcome, OraclePolicy, PhiResult, TheoremId, TheoremReport, Winner,
};
use wres_core::exact_scalars::print::{canonical, latex};
use wres_core::exact_scalars::{fmt_rational, rat, PolyScalar, Rational};
use wres_core::heat_nonminimal::{
    bracket_form, lemma_symbols_compose, nonminimal_a2, verify_factorization, verify_specializations, wres_nonminimal, Dim, HeatError,
    HeatParams, LogAtom, WresReport,
};

use crate::numeric_oracle::{richardson_wres, QuadratureOracle, VerdictRecord};

use super::ast::symbol_op_name;
use super::config::{ConfigError, Format, OracleMode, Preset, RunConfig};
use super::emit;
use super::targets::{TargetError, TargetsFile};

pub const EXIT_MATCH: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Targets(#[from] TargetError),
    #[error("boundary engine: {0}")]
    Boundary(#[from] BoundaryError),
    #[error("heat coefficients: {0}")]
    Heat(#[from] HeatError),
    #[error("{0}")]
    Other(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A report that can be printed in every output format.
pub trait Report: Serialize {
    fn all_match(&self) -> bool;
    fn text(&self) -> String;
    fn latex(&self) -> String;

    fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    fn render(&self, f: Format) -> String {
        match f {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Latex => self.latex(),
        }
    }

    fn exit_code(&self) -> i32 {
        if self.all_match() {
            EXIT_MATCH
        } else {
            EXIT_MISMATCH
        }
    }
}

/// Write `<stem>.txt`, `<stem>.json` and `<stem>.tex` into `dir`.
pub fn write_outputs(dir: &Path, stem: &str, r: &impl Report) -> Result<Vec<PathBuf>, RunError> {
    std::fs::create_dir_all(dir).map_err(|source| RunError::Io { path: dir.display().to_string(), source })?;
    let mut out = Vec::new();
    for f in [Format::Text, Format::Json, Format::Latex] {
        let p = dir.join(format!("{stem}.{}", f.extension()));
        let mut body = r.render(f);
        if !body.ends_with('\n') {
            body.push('\n');
        }
        std::fs::write(&p, body).map_err(|source| RunError::Io { path: p.display().to_string(), source })?;
        out.push(p);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IndexRecord {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl From<CaseIndices> for IndexRecord {
    fn from(t: CaseIndices) -> Self {
        IndexRecord { r: t.r, l: t.l, k: t.k, j: t.j, alpha: t.alpha }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub label: String,
    pub indices: IndexRecord,
    pub value: String,
    pub value_latex: String,
    pub integrand_trace: String,
}

impl CaseRecord {
    fn new(c: &CaseResult, n: u8) -> Self {
        CaseRecord {
            label: c.label.clone(),
            indices: c.indices.into(),
            value: canonical(&c.value, Some(n)),
            value_latex: latex(&c.value, Some(n)),
            integrand_trace: c.integrand_trace.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRecord {
    /// `not-run`, `failed` or `ran`.
    pub status: &'static str,
    pub error: Option<String>,
    pub verdict: Option<VerdictRecord>,
}

impl From<&OracleOutcome> for OracleRecord {
    fn from(o: &OracleOutcome) -> Self {
        match o {
            OracleOutcome::NotRun => OracleRecord { status: "not-run", error: None, verdict: None },
            OracleOutcome::Failed(e) => OracleRecord { status: "failed", error: Some(e.clone()), verdict: None },
            OracleOutcome::Ran(v) => OracleRecord { status: "ran", error: None, verdict: Some(v.into()) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerRecord {
    pub key: String,
    pub target_id: String,
    pub target: String,
    pub target_latex: String,
    pub engine: String,
    pub engine_latex: String,
    /// `match` or `mismatch`.
    pub status: &'static str,
    pub oracle: OracleRecord,
}

impl LedgerRecord {
    fn new(e: &LedgerEntry, n: u8) -> Self {
        LedgerRecord {
            key: e.key.clone(),
            target_id: e.target_id.clone(),
            target: canonical(&e.target, Some(n)),
            target_latex: latex(&e.target, Some(n)),
            engine: canonical(&e.engine, Some(n)),
            engine_latex: latex(&e.engine, Some(n)),
            status: if e.verdict.is_match() { "match" } else { "mismatch" },
            oracle: e.verdict.oracle().into(),
        }
    }

    pub fn is_match(&self) -> bool {
        self.status == "match"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremRecord {
    pub id: &'static str,
    pub text: String,
    pub latex: String,
    pub checks: Vec<CheckRecord>,
}

impl From<&TheoremReport> for TheoremRecord {
    fn from(r: &TheoremReport) -> Self {
        TheoremRecord {
            id: r.id.name(),
            text: r.text.clone(),
            latex: r.latex.clone(),
            checks: r.checks.iter().map(|c| CheckRecord { name: c.name.clone(), passed: c.passed }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionRecord {
    pub three_form: bool,
    pub vectorial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorRecord {
    pub metric: String,
    pub torsion: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub preset: &'static str,
    pub n: u8,
    pub p1: u32,
    pub p2: u32,
    pub left: &'static str,
    pub right: &'static str,
    pub projector: &'static str,
    pub torsion: TorsionRecord,
    pub cases: Vec<CaseRecord>,
    pub total: String,
    pub total_latex: String,
    pub sectors: SectorRecord,
    pub ledger: Vec<LedgerRecord>,
    pub reports: Vec<TheoremRecord>,
    pub all_match: bool,
    #[serde(skip)]
    pub phi: Option<PhiResult>,
}

impl Report for PhiReport {
    fn all_match(&self) -> bool {
        self.all_match
    }

    fn text(&self) -> String {
        emit::phi_text(self)
    }

    fn latex(&self) -> String {
        emit::phi_latex(self)
    }
}

fn theorems(p: Preset) -> &'static [TheoremId] {
    match p {
        Preset::Sec3 => &[TheoremId::Volume4, TheoremId::GravityBoundary],
        Preset::Sec5 => &[TheoremId::Volume6],
        Preset::Sec6 => &[TheoremId::ChiralVolume4],
        Preset::Heat7 | Preset::Custom => &[],
    }
}

fn oracle_for(cfg: &RunConfig) -> Option<QuadratureOracle> {
    (cfg.oracle.mode != OracleMode::Off).then(|| QuadratureOracle::new(cfg.oracle.seed, cfg.oracle.draws))
}

/// The boundary pipeline for a preset, with its ledger and statements.
pub fn run_phi(cfg: &RunConfig, targets: &TargetsFile) -> Result<PhiReport, RunError> {
    if cfg.preset == Preset::Heat7 {
        return Err(ConfigError(String::from("preset heat7 has no boundary term; use the heat subcommand")).into());
    }
    cfg.validate()?;
    let case_targets = targets.case_targets(cfg.preset, cfg.n)?;
    let oracle = oracle_for(cfg);
    let policy = if cfg.oracle.mode == OracleMode::Always { OraclePolicy::Always } else { OraclePolicy::Mismatches };
    let (left, right) = (cfg.left_spec(), cfg.right_spec());
    let phi = compute_phi(&left, &right, &case_targets, oracle.as_ref().map(|o| o as &dyn CaseOracle), policy)?;
    let n = phi.n;
    let mut reports = Vec::new();
    if cfg.torsion.three_form && cfg.torsion.vectorial {
        for id in theorems(cfg.preset) {
            reports.push(TheoremRecord::from(&assemble_theorem_report(*id, &phi)?));
        }
    }
    let ledger: Vec<LedgerRecord> = phi.ledger.iter().map(|e| LedgerRecord::new(e, n)).collect();
    let all_match = ledger.iter().all(LedgerRecord::is_match) && reports.iter().all(|r| r.checks.iter().all(|c| c.passed));
    Ok(PhiReport {
        preset: cfg.preset.name(),
        n,
        p1: phi.p1,
        p2: phi.p2,
        left: symbol_op_name(cfg.left),
        right: symbol_op_name(cfg.right),
        projector: cfg.projector.name(),
        torsion: TorsionRecord { three_form: cfg.torsion.three_form, vectorial: cfg.torsion.vectorial },
        cases: phi.cases.iter().map(|c| CaseRecord::new(c, n)).collect(),
        total: canonical(&phi.total, Some(n)),
        total_latex: latex(&phi.total, Some(n)),
        sectors: SectorRecord { metric: canonical(&metric_sector(&phi.total), Some(n)), torsion: canonical(&torsion_sector(&phi.total), Some(n)) },
        ledger,
        reports,
        all_match,
        phi: Some(phi),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub preset: &'static str,
    pub n: u8,
    pub case: CaseRecord,
    pub ledger: Option<LedgerRecord>,
    pub all_match: bool,
}

impl Report for CaseReport {
    fn all_match(&self) -> bool {
        self.all_match
    }

    fn text(&self) -> String {
        emit::case_text(self)
    }

    fn latex(&self) -> String {
        emit::case_latex(self)
    }
}

/// Parse `a(II)`-style labels or `r,l,k,j,alpha` tuples.
fn select<'a>(phi: &'a PhiReport, sel: &str) -> Result<&'a CaseRecord, RunError> {
    let tuple: Option<Vec<i64>> = sel.trim_matches(|c| c == '(' || c == ')').split(',').map(|s| s.trim().parse().ok()).collect();
    let found = match tuple {
        Some(t) if t.len() == 5 => {
            phi.cases.iter().find(|c| [c.indices.r as i64, c.indices.l as i64, c.indices.k as i64, c.indices.j as i64, c.indices.alpha as i64] == t[..])
        }
        _ => phi.cases.iter().find(|c| c.label == sel),
    };
    found.ok_or_else(|| {
        let labels: Vec<&str> = phi.cases.iter().map(|c| c.label.as_str()).collect();
        RunError::Other(format!("no case `{sel}`; available: {} (or a tuple r,l,k,j,alpha)", labels.join(", ")))
    })
}

pub fn run_case(cfg: &RunConfig, targets: &TargetsFile, sel: &str) -> Result<CaseReport, RunError> {
    let phi = run_phi(cfg, targets)?;
    let case = select(&phi, sel)?.clone();
    let ledger = phi.ledger.iter().find(|l| l.key == case.label).cloned();
    let all_match = ledger.as_ref().map_or(true, LedgerRecord::is_match);
    Ok(CaseReport { preset: phi.preset, n: phi.n, case, ledger, all_match })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatArgs {
    pub m: u32,
    pub k: u32,
    pub a2: Rational,
    pub b2: Rational,
    /// Run the Richardson check.
    pub numeric: bool,
    pub seed: u64,
}

impl Default for HeatArgs {
    fn default() -> Self {
        HeatArgs { m: 4, k: 4, a2: rat(1, 1), b2: rat(1, 1), numeric: true, seed: 20240917 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRecord {
    pub id: String,
    pub label: String,
    pub derived: String,
    pub printed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesRecord {
    pub order: u32,
    pub terms: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WresRecord {
    pub pi_power: i32,
    pub pole: Option<u32>,
    pub series: Vec<SeriesRecord>,
    pub limit: String,
    pub without_gamma: String,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub value: String,
    pub matches_limit: bool,
    pub matches_without_gamma: bool,
    /// `match` or `disagreement`.
    pub status: &'static str,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RichardsonRecord {
    pub rijij: f64,
    pub steps: Vec<f64>,
    pub samples: Vec<f64>,
    pub extrapolated: f64,
    pub exact: f64,
    pub slope: Option<(f64, f64)>,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationRecord {
    pub samples: u32,
    pub dimension: u32,
    pub max_degree: u32,
    pub factorization: bool,
    pub lemma_symbols: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeatReport {
    pub m: u32,
    pub k: u32,
    pub a2: String,
    pub b2: String,
    pub a2_expression: String,
    pub wres: WresRecord,
    pub claim: Option<ClaimRecord>,
    pub richardson: Option<RichardsonRecord>,
    pub specializations: Vec<ComparisonRecord>,
    pub brackets: Vec<ComparisonRecord>,
    pub factorization: FactorizationRecord,
    pub all_match: bool,
    #[serde(skip)]
    pub raw: Option<WresReport>,
}

impl Report for HeatReport {
    fn all_match(&self) -> bool {
        self.all_match
    }

    fn text(&self) -> String {
        emit::heat_text(self)
    }

    fn latex(&self) -> String {
        emit::heat_latex(self)
    }
}

fn pi_string(p: &PolyScalar, e: i32) -> String {
    if p.is_zero() {
        String::from("0")
    } else if e == 0 {
        canonical(p, None)
    } else {
        format!("({}) * pi^{}", canonical(p, None), e)
    }
}

fn random_covector(rng: &mut ChaCha8Rng, len: usize) -> Vec<PolyScalar> {
    loop {
        let xi: Vec<PolyScalar> = (0..len).map(|_| PolyScalar::frac(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
        if xi.iter().any(|x| !x.is_zero()) {
            return xi;
        }
    }
}

/// Factorization of the nonminimal symbol and the composed first-order
/// symbols on forms of degree up to 4, over 100 random rational covectors.
pub fn factorization_battery(args: &HeatArgs) -> Result<FactorizationRecord, RunError> {
    let dim = if args.m % 2 == 0 && args.m <= 8 { args.m } else { 4 };
    let top = dim.min(4);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut fact, mut lemma) = (true, true);
    let samples = 100;
    for _ in 0..samples {
        let xi = random_covector(&mut rng, dim as usize);
        fact &= verify_factorization(&args.a2, &args.b2, &xi, top)?.holds();
        lemma &= lemma_symbols_compose(&args.a2, &args.b2, &xi, top)?;
    }
    Ok(FactorizationRecord { samples, dimension: dim, max_degree: top, factorization: fact, lemma_symbols: lemma })
}

pub fn run_heat(args: &HeatArgs, targets: &TargetsFile) -> Result<HeatReport, RunError> {
    let params = HeatParams::new(Dim::Value(args.m), args.k, args.a2.clone(), args.b2.clone());
    let symbolic = nonminimal_a2(&HeatParams { m: Dim::Symbolic, ..params.clone() })?;
    let rep = wres_nonminimal(&params)?;

    let series = rep
        .series
        .as_ref()
        .map(|s| {
            s.iter()
                .enumerate()
                .map(|(i, c)| SeriesRecord {
                    order: i as u32,
                    terms: c.iter().map(|(a, p)| (if *a == LogAtom::One { String::from("1") } else { a.name().to_string() }, canonical(p, None))).collect(),
                })
                .collect()
        })
        .unwrap_or_default();
    let wres = WresRecord {
        pi_power: rep.pi_exp,
        pole: rep.pole,
        series,
        limit: pi_string(&rep.limit, rep.pi_exp),
        without_gamma: pi_string(&rep.without_gamma, rep.pi_exp),
        text: rep.to_string(),
    };

    let claim = targets.wres_claim(args.m, args.k)?.map(|(id, value, pe)| {
        let c = rep.compare(&value, pe);
        let status = if c.matches_limit { "match" } else { "disagreement" };
        let note = match (c.matches_limit, c.matches_without_gamma, rep.pole) {
            (true, ..) => String::from("the stated value equals the engine limit"),
            (false, true, Some(_)) => String::from(
                "the stated value equals the product without the 1/Gamma factor, i.e. the eps^1 coefficient; the eps -> 0 limit is 0",
            ),
            (false, _, _) => format!("engine limit {}", pi_string(&rep.limit, rep.pi_exp)),
        };
        ClaimRecord { id, value: pi_string(&value, pe), matches_limit: c.matches_limit, matches_without_gamma: c.matches_without_gamma, status, note }
    });

    let richardson = if args.numeric {
        let rijij = 1.0;
        let chk = richardson_wres(&params, rijij, 1e-6).map_err(|e| RunError::Other(e.to_string()))?;
        Some(RichardsonRecord {
            rijij,
            passed: chk.passed(),
            steps: chk.steps,
            samples: chk.samples,
            extrapolated: chk.extrapolated,
            exact: chk.exact,
            slope: chk.slope,
            tolerance: chk.tolerance,
        })
    } else {
        None
    };

    let specializations: Vec<ComparisonRecord> = verify_specializations(&targets.specialization_targets()?)
        .into_iter()
        .map(|c| ComparisonRecord {
            id: c.id,
            label: format!("a_2 on {}-forms", c.p),
            derived: canonical(&c.derived, None),
            printed: canonical(&c.printed, None),
            matches: c.matches,
        })
        .collect();

    let mut brackets = Vec::new();
    for (id, k, printed) in targets.bracket_targets()? {
        let e = nonminimal_a2(&HeatParams::new(Dim::Symbolic, k, args.a2.clone(), args.b2.clone()))?;
        let (x, _) = bracket_form(&e);
        brackets.push(ComparisonRecord {
            id,
            label: format!("coefficient of ((a^2/2)^(2-m/2) - (b^2/2)^(2-m/2)) at k = {k}"),
            derived: canonical(&x, None),
            printed: canonical(&printed, None),
            matches: x == printed,
        });
    }

    let factorization = factorization_battery(args)?;
    let all_match = claim.as_ref().map_or(true, |c| c.matches_limit)
        && richardson.as_ref().map_or(true, |r| r.passed)
        && specializations.iter().all(|c| c.matches)
        && brackets.iter().all(|c| c.matches)
        && factorization.factorization
        && factorization.lemma_symbols;
    Ok(HeatReport {
        m: args.m,
        k: args.k,
        a2: fmt_rational(&args.a2),
        b2: fmt_rational(&args.b2),
        a2_expression: symbolic.to_string(),
        wres,
        claim,
        richardson,
        specializations,
        brackets,
        factorization,
        all_match,
        raw: Some(rep),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArbitrationRecord {
    pub preset: &'static str,
    pub key: String,
    pub target_id: String,
    pub ledger_status: &'static str,
    pub oracle: OracleRecord,
    /// Whether the engine value agreed with the quadrature.
    pub engine_confirmed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub seed: u64,
    pub draws: u32,
    pub tolerance: f64,
    pub entries: Vec<ArbitrationRecord>,
    pub all_match: bool,
}

impl Report for OracleReport {
    fn all_match(&self) -> bool {
        self.all_match
    }

    fn text(&self) -> String {
        emit::oracle_text(self)
    }

    fn latex(&self) -> String {
        emit::oracle_latex(self)
    }
}

/// Send every ledger entry of the given presets to the quadrature oracle.
/// The status is a match when the engine agrees with the quadrature everywhere.
pub fn run_oracle(cfgs: &[RunConfig], targets: &TargetsFile) -> Result<OracleReport, RunError> {
    let first = cfgs.first().ok_or_else(|| RunError::Other(String::from("no preset selected")))?;
    let mut entries = Vec::new();
    for cfg in cfgs {
        let mut c = cfg.clone();
        c.oracle.mode = OracleMode::Always;
        let phi = run_phi(&c, targets)?;
        let raw = phi.phi.as_ref().expect("phi result kept");
        for (rec, e) in phi.ledger.iter().zip(&raw.ledger) {
            let engine_confirmed = matches!(e.verdict.oracle(), OracleOutcome::Ran(v) if matches!(v.winner(), Winner::Engine | Winner::Both));
            entries.push(ArbitrationRecord {
                preset: phi.preset,
                key: rec.key.clone(),
                target_id: rec.target_id.clone(),
                ledger_status: rec.status,
                oracle: rec.oracle.clone(),
                engine_confirmed,
            });
        }
    }
    let all_match = entries.iter().all(|e| e.engine_confirmed);
    Ok(OracleReport { seed: first.oracle.seed, draws: first.oracle.draws, tolerance: 1e-8, entries, all_match })
}

/// Result of the `eval` subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub expression: String,
    pub n: u8,
    pub kind: &'static str,
    pub value: String,
    pub value_latex: Option<String>,
}

impl Report for EvalReport {
    fn all_match(&self) -> bool {
        true
    }

    fn text(&self) -> String {
        self.value.clone()
    }

    fn latex(&self) -> String {
        emit::eval_latex(self)
    }
}

pub fn run_eval(src: &str, n: u8) -> Result<EvalReport, RunError> {
    if n < 2 || n % 2 != 0 || n > wres_core::multilinear::MAX_DIM {
        return Err(ConfigError(format!("n must be even and between 2 and {}, got {n}", wres_core::multilinear::MAX_DIM)).into());
    }
    let e = super::parser::parse_expr(src).map_err(|e| RunError::Other(e.to_string()))?;
    let v = super::eval::Context::new(n).eval(&e).map_err(|e| RunError::Other(e.to_string()))?;
    let (kind, tex) = match &v {
        super::eval::Value::Scalar(x) => ("scalar", x.as_constant().map(|p| latex(&p, Some(n)))),
        super::eval::Value::Clifford(_) => ("clifford", None),
    };
    Ok(EvalReport { expression: e.to_string(), n, kind, value: v.render(n), value_latex: tex })
}
