//! Text and LaTeX renderings of the run reports. JSON comes from serde.

use std::fmt::Write;

use super::run::{CaseRecord, CaseReport, ComparisonRecord, EvalReport, HeatReport, LedgerRecord, OracleRecord, OracleReport, PhiReport};

/// Escape text for LaTeX outside math mode.
pub fn escape_tex(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '_' | '&' | '%' | '$' | '#' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(c),
        }
    }
    out
}

fn document(title: &str, body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amsmath}}\n\\begin{{document}}\n\\section*{{{}}}\n{}\\end{{document}}\n",
        escape_tex(title),
        body
    )
}

fn tt(s: &str) -> String {
    format!("\\texttt{{{}}}", escape_tex(s))
}

fn oracle_line(o: &OracleRecord) -> String {
    match (o.status, &o.verdict, &o.error) {
        (_, Some(v), _) => format!(
            "oracle: {} ({} draws, tol {:e}; engine agrees on {}, target on {}; max dev engine {:.2e}, target {:.2e})",
            v.winner, v.draws, v.tolerance, v.engine_agree, v.target_agree, v.max_engine_dev, v.max_target_dev
        ),
        (_, None, Some(e)) => format!("oracle failed: {e}"),
        _ => String::from("oracle: not run"),
    }
}

fn case_line(c: &CaseRecord) -> String {
    let i = &c.indices;
    format!("{:<8} (r={}, l={}, k={}, j={}, |alpha|={})  {}", c.label, i.r, i.l, i.k, i.j, i.alpha, c.value)
}

fn ledger_text(out: &mut String, l: &LedgerRecord) {
    let _ = writeln!(out, "  [{}] {} ({})", l.status, l.key, l.target_id);
    let _ = writeln!(out, "      target: {}", l.target);
    let _ = writeln!(out, "      engine: {}", l.engine);
    if l.oracle.status != "not-run" {
        let _ = writeln!(out, "      {}", oracle_line(&l.oracle));
    }
}

fn status_line(ok: bool) -> &'static str {
    if ok {
        "status: all targets match"
    } else {
        "status: mismatches present"
    }
}

pub fn phi_text(r: &PhiReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "preset {} (n = {}, left {}, right {}, projector {})", r.preset, r.n, r.left, r.right, r.projector);
    let _ = writeln!(s, "cases:");
    for c in &r.cases {
        let _ = writeln!(s, "  {}", case_line(c));
    }
    let _ = writeln!(s, "total: {}", r.total);
    let _ = writeln!(s, "  metric sector: {}", r.sectors.metric);
    let _ = writeln!(s, "  torsion sector: {}", r.sectors.torsion);
    if !r.ledger.is_empty() {
        let _ = writeln!(s, "ledger:");
        for l in &r.ledger {
            ledger_text(&mut s, l);
        }
    }
    for t in &r.reports {
        let _ = writeln!(s, "statement {}:", t.id);
        for line in t.text.lines() {
            let _ = writeln!(s, "  {line}");
        }
        for c in &t.checks {
            let _ = writeln!(s, "  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
        }
    }
    let _ = write!(s, "{}", status_line(r.all_match));
    s
}

fn ledger_tex(b: &mut String, ledger: &[LedgerRecord]) {
    if ledger.is_empty() {
        return;
    }
    b.push_str("\\subsection*{Ledger}\n\\begin{itemize}\n");
    for l in ledger {
        let _ = writeln!(
            b,
            "\\item {} {} ({}): target $ {} $, engine $ {} $. {}",
            tt(&l.status.to_uppercase()),
            tt(&l.key),
            tt(&l.target_id),
            l.target_latex,
            l.engine_latex,
            escape_tex(&oracle_line(&l.oracle))
        );
    }
    b.push_str("\\end{itemize}\n");
}

pub fn phi_latex(r: &PhiReport) -> String {
    let mut b = String::new();
    let _ = writeln!(b, "Dimension $n = {}$, orders $({}, {})$, projector {}.\n", r.n, r.p1, r.p2, tt(r.projector));
    b.push_str("\\begin{itemize}\n");
    for c in &r.cases {
        let i = &c.indices;
        let _ = writeln!(b, "\\item {} $(r,l,k,j,|\\alpha|) = ({},{},{},{},{})$: $ {} $", tt(&c.label), i.r, i.l, i.k, i.j, i.alpha, c.value_latex);
    }
    b.push_str("\\end{itemize}\n");
    let _ = writeln!(b, "\\[ \\Phi = {} \\]", r.total_latex);
    ledger_tex(&mut b, &r.ledger);
    for t in &r.reports {
        let _ = writeln!(b, "\\subsection*{{{}}}\n\\[ {} \\]", escape_tex(t.id), t.latex);
        for c in &t.checks {
            let _ = writeln!(b, "{}: {}\\\\", escape_tex(&c.name), if c.passed { "pass" } else { "fail" });
        }
    }
    let _ = writeln!(b, "\n{}", escape_tex(status_line(r.all_match)));
    document(&format!("Boundary term, preset {}", r.preset), &b)
}

pub fn case_text(r: &CaseReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "preset {} (n = {})", r.preset, r.n);
    let _ = writeln!(s, "{}", case_line(&r.case));
    let _ = writeln!(s, "integrand trace: {}", r.case.integrand_trace);
    if let Some(l) = &r.ledger {
        ledger_text(&mut s, l);
    }
    let _ = write!(s, "{}", status_line(r.all_match));
    s
}

pub fn case_latex(r: &CaseReport) -> String {
    let i = &r.case.indices;
    let mut b = format!("$(r,l,k,j,|\\alpha|) = ({},{},{},{},{})$\n\\[ {} \\]\n", i.r, i.l, i.k, i.j, i.alpha, r.case.value_latex);
    if let Some(l) = &r.ledger {
        ledger_tex(&mut b, std::slice::from_ref(l));
    }
    document(&format!("Case {}, preset {}", r.case.label, r.preset), &b)
}

fn comparisons_text(s: &mut String, title: &str, rows: &[ComparisonRecord]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(s, "{title}:");
    for c in rows {
        let _ = writeln!(s, "  [{}] {} ({})", if c.matches { "match" } else { "mismatch" }, c.label, c.id);
        if c.matches {
            let _ = writeln!(s, "      {}", c.derived);
        } else {
            let _ = writeln!(s, "      derived: {}\n      printed: {}", c.derived, c.printed);
        }
    }
}

pub fn heat_text(r: &HeatReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "nonminimal operator on {}-forms, m = {}, a^2 = {}, b^2 = {}", r.k, r.m, r.a2, r.b2);
    let _ = writeln!(s, "a_2 = {}", r.a2_expression);
    let _ = writeln!(s, "{}", r.wres.text);
    if let Some(c) = &r.claim {
        let _ = writeln!(s, "claim {} = {}: {} ({})", c.id, c.value, c.status, c.note);
    }
    if let Some(x) = &r.richardson {
        let _ = writeln!(
            s,
            "richardson (Rijij = {}): extrapolated {:.3e}, exact {:.3e}{}, tol {:e}: {}",
            x.rijij,
            x.extrapolated,
            x.exact,
            x.slope.map(|(a, b)| format!(", eps^1 coefficient {a:.9} vs {b:.9}")).unwrap_or_default(),
            x.tolerance,
            if x.passed { "pass" } else { "FAIL" }
        );
    }
    comparisons_text(&mut s, "specializations", &r.specializations);
    comparisons_text(&mut s, "brackets", &r.brackets);
    let f = &r.factorization;
    let _ = writeln!(
        s,
        "factorization on forms of degree <= {} in dimension {} over {} covectors: {}; composed first-order symbols: {}",
        f.max_degree,
        f.dimension,
        f.samples,
        if f.factorization { "holds" } else { "FAILS" },
        if f.lemma_symbols { "holds" } else { "FAILS" }
    );
    let _ = write!(s, "{}", status_line(r.all_match));
    s
}

fn comparisons_tex(b: &mut String, title: &str, rows: &[ComparisonRecord]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(b, "\\subsection*{{{}}}\n\\begin{{itemize}}", escape_tex(title));
    for c in rows {
        let _ = writeln!(
            b,
            "\\item {} {}: derived {}, printed {}",
            if c.matches { "match" } else { "MISMATCH" },
            escape_tex(&c.label),
            tt(&c.derived),
            tt(&c.printed)
        );
    }
    b.push_str("\\end{itemize}\n");
}

pub fn heat_latex(r: &HeatReport) -> String {
    let mut b = String::new();
    let _ = writeln!(b, "$m = {}$, $k = {}$, $a^2 = {}$, $b^2 = {}$.\n", r.m, r.k, escape_tex(&r.a2), escape_tex(&r.b2));
    b.push_str("\\begin{verbatim}\n");
    b.push_str(&r.wres.text);
    b.push_str("\n\\end{verbatim}\n");
    if let Some(c) = &r.claim {
        let _ = writeln!(b, "Claim {}: {} is a {}. {}\n", tt(&c.id), tt(&c.value), c.status, escape_tex(&c.note));
    }
    if let Some(x) = &r.richardson {
        let _ = writeln!(b, "Richardson extrapolation: {:.3e} against {:.3e} ({}).\n", x.extrapolated, x.exact, if x.passed { "pass" } else { "fail" });
    }
    comparisons_tex(&mut b, "Specializations", &r.specializations);
    comparisons_tex(&mut b, "Brackets", &r.brackets);
    let _ = writeln!(b, "\n{}", escape_tex(status_line(r.all_match)));
    document("Nonminimal operator on forms", &b)
}

pub fn oracle_text(r: &OracleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "quadrature oracle: seed {}, {} draws, tolerance {:e}", r.seed, r.draws, r.tolerance);
    for e in &r.entries {
        let _ = writeln!(
            s,
            "  [{}] {} {} ({}), ledger {}: {}",
            if e.engine_confirmed { "engine confirmed" } else { "ENGINE REJECTED" },
            e.preset,
            e.key,
            e.target_id,
            e.ledger_status,
            oracle_line(&e.oracle)
        );
    }
    let _ = write!(s, "{}", if r.all_match { "status: engine confirmed everywhere" } else { "status: engine rejected somewhere" });
    s
}

pub fn oracle_latex(r: &OracleReport) -> String {
    let mut b = String::from("\\begin{itemize}\n");
    for e in &r.entries {
        let _ = writeln!(
            b,
            "\\item {} {} {}: {}",
            tt(e.preset),
            tt(&e.key),
            if e.engine_confirmed { "engine confirmed" } else { "engine rejected" },
            escape_tex(&oracle_line(&e.oracle))
        );
    }
    b.push_str("\\end{itemize}\n");
    document(&format!("Quadrature oracle, seed {}", r.seed), &b)
}

pub fn eval_latex(r: &EvalReport) -> String {
    let body = match &r.value_latex {
        Some(t) => format!("{}\n\\[ {} \\]\n", tt(&r.expression), t),
        None => format!("{}\n\\begin{{verbatim}}\n{}\n\\end{{verbatim}}\n", tt(&r.expression), r.value),
    };
    document("Expression", &body)
}
