//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria whose failure is understood and recorded are listed in `KNOWN_RED`;
//! they still print FAIL. The process exits non-zero when any other criterion
//! fails, or when a listed one starts passing.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wres_core::boundary_engine::{metric_sector, torsion_sector, OracleOutcome, PhiResult, Winner};
use wres_core::exact_scalars::{rat, GaussianRational, Monomial, PolyScalar, Var, XnRational};
use wres_core::multilinear::{CliffordElem, GAMMA_SQUARE};
use wres_core::symbol_engine::{build_operator_jet, BaseOperator, OperatorSpec, Torsion};
use wresidue::cli_dsl::{run_heat, run_oracle, run_phi, HeatArgs, OracleMode, Preset, Projector, RunConfig, TargetsFile};
use wresidue::cli_dsl::run::PhiReport;
use wresidue::numeric_oracle::eval::eval_xn_at;
use wresidue::numeric_oracle::gamma::trace;
use wresidue::numeric_oracle::quadrature::integrate_real_line;
use wresidue::numeric_oracle::symbols::NumericModel;
use wresidue::numeric_oracle::{evaluate_numeric, omega, GammaRep, ParamDraw};

/// Failing on purpose: the printed p = 1 specialization has the opposite sign.
const KNOWN_RED: &[&str] = &["6a"];

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(id: &'static str, f: impl FnOnce() -> Result<(bool, String), String>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, passed, detail, elapsed: start.elapsed() }
}

fn phi(preset: Preset, mode: OracleMode) -> Result<(PhiReport, PhiResult), String> {
    let mut cfg = RunConfig::preset(preset);
    cfg.oracle.mode = mode;
    let mut r = run_phi(&cfg, &TargetsFile::bundled()).map_err(|e| e.to_string())?;
    let raw = r.phi.take().ok_or("missing result")?;
    Ok((r, raw))
}

fn poly(terms: &[(Var, i64, i64)]) -> PolyScalar {
    let mut p = PolyScalar::zero();
    for (v, a, b) in terms {
        p.add_term(Monomial::var(*v, 1), &GaussianRational::new(rat(*a, *b), rat(0, 1)));
    }
    p
}

fn pi_omega() -> Monomial {
    Monomial::from_pairs(vec![(Var::Pi, 1), (Var::Omega, 1)])
}

fn sum_a(n: u8) -> PolyScalar {
    let mut p = PolyScalar::zero();
    for i in 1..n {
        p.add_term(Monomial::var(Var::A(i, i, n), 1), &GaussianRational::one());
    }
    p
}

fn times_pi_omega(p: &PolyScalar) -> PolyScalar {
    p * &PolyScalar::term(pi_omega(), GaussianRational::one())
}

/// Ledger entry `key`: exact match, or a mismatch the oracle settles for the engine.
fn ledger_route(raw: &PhiResult, key: &str, draws: u32) -> Result<(bool, String), String> {
    let e = raw.ledger.iter().find(|e| e.key == key).ok_or_else(|| format!("no ledger entry `{key}`"))?;
    if e.verdict.is_match() {
        return Ok((true, String::from("exact match")));
    }
    match e.verdict.oracle() {
        OracleOutcome::Ran(v) => {
            let ok = v.draws >= draws && matches!(v.winner(), Winner::Engine) && v.tolerance <= 1e-8;
            Ok((
                ok,
                format!(
                    "mismatch; oracle engine {}/{} (max dev {:.1e}), target {}/{}",
                    v.engine_agree, v.draws, v.max_engine_dev, v.target_agree, v.draws
                ),
            ))
        }
        other => Ok((false, format!("mismatch; oracle {other:?}"))),
    }
}

fn hp_coefficient(p: &PolyScalar) -> Option<GaussianRational> {
    // hp sector with pi and Omega stripped, as a single rational
    let m = metric_sector(p);
    let stripped = m.div_monomial(&pi_omega()).or_else(|| m.div_monomial(&Monomial::var(Var::Omega, 1)))?;
    let hp = Monomial::var(Var::Hp, 1);
    let found = stripped.terms().find(|(mono, _)| **mono == hp).map(|(_, c)| c.clone());
    found
}

fn criterion1() -> Result<(bool, String), String> {
    let (_, raw) = phi(Preset::Sec3, OracleMode::Off)?;
    let hp = |c: i64| times_pi_omega(&poly(&[(Var::Hp, c, 8)]));
    let want = [("a(I)", PolyScalar::zero()), ("a(II)", hp(-3)), ("a(III)", hp(3))];
    let mut sum = PolyScalar::zero();
    let mut ok = true;
    for (label, w) in &want {
        let c = raw.case(label).ok_or_else(|| format!("no case {label}"))?;
        ok &= c.value == *w;
        sum = &sum + &c.value;
    }
    ok &= sum.is_zero();
    Ok((ok, String::from("a(I) = 0, a(II) = -3/8 hp pi Omega, a(III) = 3/8 hp pi Omega, sum 0")))
}

fn criterion2() -> Result<(bool, String), String> {
    let (_, raw) = phi(Preset::Sec3, OracleMode::Mismatches)?;
    let exact = raw.total == times_pi_omega(&sum_a(4)).scale(&GaussianRational::int(-1));
    let (ledger_ok, note) = ledger_route(&raw, "total", 20)?;
    Ok((exact || ledger_ok, format!("total = -sumA pi Omega: {exact}; ledger {note}")))
}

fn criterion3() -> Result<(bool, String), String> {
    let (_, raw) = phi(Preset::Sec5, OracleMode::Mismatches)?;
    let mut mags = Vec::new();
    for c in &raw.cases {
        if let Some(h) = hp_coefficient(&c.value) {
            mags.push((c.label.clone(), num_traits::Signed::abs(&h.re)));
        }
    }
    mags.sort_by(|a, b| a.1.cmp(&b.1));
    let got: Vec<_> = mags.iter().map(|(_, m)| m.clone()).collect();
    let want = vec![rat(5, 8), rat(5, 8), rat(15, 8), rat(15, 8)];
    let magnitudes = got == want;
    let five = raw.cases.len() == 5;
    let cancels = metric_sector(&raw.total).is_zero();
    let two = times_pi_omega(&sum_a(6)).scale(&GaussianRational::int(-2));
    let torsion_exact = torsion_sector(&raw.total) == two;
    let (ledger_ok, note) = ledger_route(&raw, "total", 20)?;
    let ok = five && magnitudes && cancels && (torsion_exact || ledger_ok);
    let shown: Vec<String> = mags.iter().map(|(l, m)| format!("{l} {m}")).collect();
    Ok((ok, format!("{} cases, |hp| {}; hp sector cancels: {cancels}; torsion -2 sumA: {torsion_exact}; ledger {note}", raw.cases.len(), shown.join(", "))))
}

fn criterion4() -> Result<(bool, String), String> {
    let (_, raw) = phi(Preset::Sec6, OracleMode::Mismatches)?;
    let mut inner = poly(&[]);
    inner.add_term(Monomial::var(Var::A(1, 2, 3), 1), &GaussianRational::one());
    inner.add_term(Monomial::var(Var::A(2, 1, 3), 1), &GaussianRational::int(-1));
    inner.add_term(Monomial::var(Var::A(3, 1, 2), 1), &GaussianRational::one());
    let want = times_pi_omega(&(&inner + &sum_a(4))).scale(&GaussianRational::frac(-1, 2));
    let exact = raw.total == want;
    let (ledger_ok, note) = ledger_route(&raw, "total", 20)?;
    let p = Projector::ChiralPlus.element(4).ok_or("no projector")?;
    let idem = &p * &p == p;
    Ok(((exact || ledger_ok) && idem, format!("total exact: {exact}; ledger {note}; P+^2 = P+: {idem}")))
}

fn criterion5() -> Result<(bool, String), String> {
    let (rep, _) = phi(Preset::Sec3, OracleMode::Off)?;
    let gr = rep.reports.iter().find(|r| r.id == "gravity-boundary").ok_or("no gravity report")?;
    let check = gr.checks.iter().find(|c| c.name.starts_with("I_Gr,b")).ok_or("no I_Gr,b check")?;
    let shown = gr.text.lines().find(|l| l.starts_with("I_Gr,b")).unwrap_or_default().to_string();
    Ok((check.passed, shown))
}

fn heat() -> Result<wresidue::cli_dsl::run::HeatReport, String> {
    run_heat(&HeatArgs { a2: rat(2, 1), b2: rat(2, 1), ..HeatArgs::default() }, &TargetsFile::bundled()).map_err(|e| e.to_string())
}

fn criterion6(which: char) -> Result<(bool, String), String> {
    let h = heat()?;
    Ok(match which {
        'a' => {
            let bad: Vec<String> = h.specializations.iter().filter(|s| !s.matches).map(|s| format!("{}: derived {} vs printed {}", s.id, s.derived, s.printed)).collect();
            let brackets: Vec<String> = h.brackets.iter().map(|b| format!("{} matches: {}", b.id, b.matches)).collect();
            (bad.is_empty() && h.specializations.len() == 5, format!("{} of 5 agree; {}; {}", 5 - bad.len(), bad.join("; "), brackets.join(", ")))
        }
        'b' => {
            let f = &h.factorization;
            (f.factorization && f.samples >= 100 && f.max_degree >= 4, format!("{} rational covectors, forms of degree <= {}", f.samples, f.max_degree))
        }
        _ => (h.factorization.lemma_symbols, String::from("composed first-order symbols")),
    })
}

fn criterion7() -> Result<(bool, String), String> {
    let h = heat()?;
    let claim = h.claim.ok_or("no claim for m = 4, k = 4")?;
    let r = h.richardson.ok_or("no Richardson run")?;
    let documented = claim.status == "match" || (claim.status == "disagreement" && !claim.note.is_empty());
    Ok((
        !h.wres.series.is_empty() && r.passed && r.tolerance <= 1e-6 && documented,
        format!("limit {}; claim {} is a {}; Richardson extrapolated {:.2e}", h.wres.limit, claim.value, claim.status, r.extrapolated),
    ))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

fn gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)), rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
}

fn coefficient(rng: &mut ChaCha8Rng, n: u8) -> PolyScalar {
    let monos = [
        Monomial::one(),
        Monomial::var(Var::Hp, 1),
        Monomial::var(Var::Xi(1), 1),
        Monomial::var(Var::Xi(n - 1), 2),
        Monomial::from_pairs(vec![(Var::Xi(1), 1), (Var::A(1, 2, n), 1)]),
    ];
    let mut p = PolyScalar::zero();
    for _ in 0..rng.gen_range(1..=2) {
        p.add_term(monos[rng.gen_range(0..monos.len())].clone(), &gaussian(rng));
    }
    p
}

fn clifford(rng: &mut ChaCha8Rng, n: u8) -> CliffordElem {
    let mut e = CliffordElem::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let num = (0..rng.gen_range(1..=2)).map(|_| coefficient(rng, n)).collect();
        let coeff = XnRational::new(num, rng.gen_range(0..=2), rng.gen_range(0..=2));
        e = &e + &CliffordElem::word(n, rng.gen_range(0..(1u32 << n)), coeff);
    }
    e
}

fn decaying(rng: &mut ChaCha8Rng, n: u8) -> XnRational {
    let (dp, dm) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
    let len = rng.gen_range(1..=(dp + dm - 1) as usize);
    XnRational::new((0..len).map(|_| coefficient(rng, n)).collect(), dp, dm)
}

fn criterion8() -> Result<(bool, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    let mut axioms = true;
    for n in [2u8, 4, 6, 8] {
        let one = CliffordElem::identity(n);
        for i in 1..=n {
            for j in 1..=n {
                let (gi, gj) = (CliffordElem::gamma(n, i), CliffordElem::gamma(n, j));
                let want = if i == j { one.scale_gaussian(&GaussianRational::int(2 * GAMMA_SQUARE)) } else { CliffordElem::zero(n) };
                axioms &= &(&gi * &gj) + &(&gj * &gi) == want;
            }
        }
    }
    if !axioms {
        failures.push("Clifford relations");
    }

    let mut cyclic = true;
    for _ in 0..40 {
        let n = [2u8, 4, 6][rng.gen_range(0..3)];
        let (a, b, c) = (clifford(&mut rng, n), clifford(&mut rng, n), clifford(&mut rng, n));
        cyclic &= (&(&a * &b) * &c).spinor_trace() == (&(&b * &c) * &a).spinor_trace();
    }
    if !cyclic {
        failures.push("trace cyclicity");
    }

    let mut projections = true;
    for _ in 0..100 {
        let f = decaying(&mut rng, 4);
        let (p, m) = (f.pi_plus().map_err(|e| e.to_string())?, f.pi_minus().map_err(|e| e.to_string())?);
        projections &= &p + &m == f && p.pi_plus().map_err(|e| e.to_string())? == p && p.pi_minus().map_err(|e| e.to_string())?.is_zero();
        projections &= f.pf_decompose().recompose() == f;
    }
    if !projections {
        failures.push("pi+ projections / partial fractions");
    }

    let mut traces = 0;
    for _ in 0..200 {
        let n = [2u8, 4, 6][rng.gen_range(0..3)];
        let rep = GammaRep::new(n).map_err(|e| e.to_string())?;
        let d = ParamDraw::sample(n, &mut rng);
        let (a, b) = (clifford(&mut rng, n), clifford(&mut rng, n));
        let symbolic = evaluate_numeric(&(&a * &b).spinor_trace(), &d, &rep).map_err(|e| e.to_string())?;
        let ma = evaluate_numeric(&a, &d, &rep).map_err(|e| e.to_string())?;
        let mb = evaluate_numeric(&b, &d, &rep).map_err(|e| e.to_string())?;
        traces += close(symbolic, trace(&(ma * mb)), 1e-9) as u32;
    }
    if traces < 200 {
        failures.push("symbolic vs matrix trace");
    }

    let mut lines = 0;
    let rep4 = GammaRep::new(4).map_err(|e| e.to_string())?;
    for _ in 0..100 {
        let f = decaying(&mut rng, 4);
        let d = ParamDraw::sample(4, &mut rng);
        let exact = evaluate_numeric(&f.integrate_real_line().map_err(|e| e.to_string())?, &d, &rep4).map_err(|e| e.to_string())?;
        let quad = integrate_real_line(|x| eval_xn_at(&f, Complex64::new(x, 0.0), &d).unwrap(), 1e-13, 1e-12).map_err(|e| e.to_string())?;
        lines += close(exact, quad.value, 1e-8) as u32;
    }
    if lines < 100 {
        failures.push("line integral vs quadrature");
    }

    let mut moments = true;
    for n in [4u8, 6] {
        let rep = GammaRep::new(n).map_err(|e| e.to_string())?;
        let d = ParamDraw::flat(n);
        let total = evaluate_numeric(&wres_core::boundary_engine::integrate_sphere(&PolyScalar::one(), n), &d, &rep).map_err(|e| e.to_string())?;
        moments &= close(total, Complex64::new(omega(n), 0.0), 1e-12);
    }
    if !moments {
        failures.push("sphere moments");
    }

    let mut homogeneous = true;
    for n in [4u8, 6] {
        let rep = GammaRep::new(n).map_err(|e| e.to_string())?;
        for op in [BaseOperator::DInv, BaseOperator::DStarInvSq] {
            let jet = build_operator_jet(&OperatorSpec::new(op, n).with_torsion(Torsion::FULL)).map_err(|e| e.to_string())?;
            for _ in 0..5 {
                let d = ParamDraw::sample(n, &mut rng);
                let s: f64 = rng.gen_range(0.2..5.0);
                let model = NumericModel::new(&rep, &d, Torsion::FULL);
                let xi: Vec<f64> = d.xi_prime.iter().map(|x| x * s).collect();
                let num = model.jet(op, &xi, Complex64::new(d.xn * s, 0.0)).map_err(|e| e.to_string())?;
                let top = op.leading_order();
                let exact = evaluate_numeric(jet.value(top).map_err(|e| e.to_string())?, &d, &rep).map_err(|e| e.to_string())?;
                let want = exact * Complex64::new(s.powi(top), 0.0);
                homogeneous &= (&num.top - &want).norm() <= 1e-10 * (1.0 + want.norm());
            }
        }
    }
    if !homogeneous {
        failures.push("homogeneity");
    }

    Ok((
        failures.is_empty(),
        format!("traces {traces}/200 at 1e-9, line integrals {lines}/100 at 1e-8; failing: {}", if failures.is_empty() { String::from("none") } else { failures.join(", ") }),
    ))
}

fn criterion9() -> Result<(bool, String), String> {
    let start = Instant::now();
    let cfgs: Vec<RunConfig> = Preset::PHI.iter().map(|p| RunConfig::preset(*p)).collect();
    let report = run_oracle(&cfgs, &TargetsFile::bundled()).map_err(|e| e.to_string())?;
    let _ = heat()?;
    let secs = start.elapsed().as_secs_f64();
    let confirmed = report.entries.iter().filter(|e| e.engine_confirmed).count();
    Ok((
        secs < 300.0 && report.draws >= 20 && confirmed == report.entries.len(),
        format!("{} presets, {} ledger entries, engine confirmed on {confirmed}, {secs:.1} s", cfgs.len(), report.entries.len()),
    ))
}

fn with_budget(o: Outcome, budget: Duration) -> Outcome {
    if o.elapsed < budget {
        o
    } else {
        Outcome { passed: false, detail: format!("{} (over {} s)", o.detail, budget.as_secs()), ..o }
    }
}

fn main() {
    let outcomes = vec![
        with_budget(timed("1", criterion1), Duration::from_secs(5)),
        timed("2", criterion2),
        with_budget(timed("3", criterion3), Duration::from_secs(30)),
        timed("4", criterion4),
        timed("5", criterion5),
        timed("6a", || criterion6('a')),
        timed("6b", || criterion6('b')),
        timed("6c", || criterion6('c')),
        timed("7", criterion7),
        timed("8", criterion8),
        with_budget(timed("9", criterion9), Duration::from_secs(300)),
    ];
    let mut unexpected = Vec::new();
    for o in &outcomes {
        let known = KNOWN_RED.contains(&o.id);
        let tag = match (o.passed, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {:<3} {:<12} {:>7.2} s  {}", o.id, tag, o.elapsed.as_secs_f64(), o.detail);
        if o.passed == known {
            unexpected.push(o.id);
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed} of {} criteria pass", outcomes.len());
    if !unexpected.is_empty() {
        println!("unexpected outcome for: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
