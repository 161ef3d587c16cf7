//! Deterministic plain-text reports built from the analysis pipeline.

use std::fmt::Write as _;

use thiserror::Error;

use crate::catalog::{CatalogError, CatalogName};
use crate::code::SphericalCode;
use crate::codefile::{load_code, LoadError};
use crate::design::{check_syst1, classify, DesignProfile};
use crate::field::{fmt_rational, QuadExt};
use crate::lp::{
    bannai_inequality, lp_certificate, pair_sum_lemma, verify_root_match_with, LpCertificate,
};
use crate::orthopoly::harmonic_dim;
use crate::rationality::{
    grid_check_three, grid_check_two, rationality_verdict_with, scan_s3, scan_s45, Exception,
};
use crate::scheme::{
    build_scheme, cycle_notation, dense_cross_check, galois_action, qpoly_orderings,
    IdempotentSource, SchemeTables,
};

/// Largest code for the dense `|C|×|C|` cross-check.
pub const DENSE_LIMIT: usize = 64;

#[derive(Debug, Error)]
pub enum TargetError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("`{0}` is in the extended corpus; pass --deep to analyze it")]
    Extended(String),
}

/// Resolves `catalog:<name>` or a file path.
pub fn resolve_target(target: &str, deep: bool) -> Result<SphericalCode, TargetError> {
    match target.strip_prefix("catalog:") {
        Some(name) => {
            let name: CatalogName = name.parse()?;
            if name.is_extended() && !deep {
                return Err(TargetError::Extended(name.to_string()));
            }
            Ok(name.construct()?)
        }
        None => Ok(load_code(target)?),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub deep: bool,
    pub approx: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    /// Expectations that failed; empty means exit status 0.
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn list<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Builder {
    text: String,
    violations: Vec<String>,
}

impl Builder {
    fn section(&mut self, name: &str) {
        writeln!(self.text, "[{name}]").unwrap();
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.text, "  {key} = {value}").unwrap();
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.violations.push(what.into());
        }
    }
}

pub fn analyze(code: &SphericalCode, opts: AnalyzeOptions) -> Report {
    let mut b = Builder {
        text: String::new(),
        violations: Vec::new(),
    };
    writeln!(b.text, "code {}", code.label()).unwrap();
    let profile = classify(code);
    profile_section(&mut b, code, &profile);
    let tables = scheme_sections(&mut b, code, &profile, opts);
    levenshtein_section(&mut b, code, &profile);
    let cert = lp_section(&mut b, code, &profile);
    rationality_section(&mut b, code, &profile, tables.as_ref());
    if opts.approx {
        approx_section(&mut b, code, &cert);
    }
    if b.violations.is_empty() {
        writeln!(b.text, "verdict: ok").unwrap();
    } else {
        writeln!(b.text, "verdict: {} violation(s)", b.violations.len()).unwrap();
        for v in &b.violations {
            writeln!(b.text, "  violation: {v}").unwrap();
        }
    }
    Report {
        text: b.text,
        violations: b.violations,
    }
}

fn profile_section(b: &mut Builder, code: &SphericalCode, p: &DesignProfile) {
    b.section("profile");
    b.line("n", p.n);
    b.line("size", p.size);
    b.line("spectrum", code.spectrum());
    let dist = code.distance_distribution();
    match dist.uniform_counts() {
        Some(c) => b.line("distribution", format!("{} uniform", list(c))),
        None => b.line("distribution", "not uniform"),
    }
    b.line("s", p.s);
    match &p.strength.first_nonzero {
        Some((k, v)) => b.line("t", format!("{} (S_{k} = {v})", p.t())),
        None => b.line(
            "t",
            format!("{} (every moment up to the cap vanishes)", p.t()),
        ),
    }
    b.expect(
        !p.strength.cap_reached(),
        "moment sums vanish beyond the 2s bound",
    );
    b.line("antipodal", yes(p.antipodal));
    b.line("symmetric spectrum", yes(p.symmetric));
    b.line("dgs bound", p.dgs_bound);
    b.line("tight", yes(p.tight));
    b.line("delsarte", yes(p.delsarte));
    if p.delsarte {
        let bad = (0..=p.t() as u32).find(|&j| !check_syst1(code, j).iter().all(QuadExt::is_zero));
        match bad {
            None => b.line(
                "moment identities",
                format!("zero residuals for j = 0..{}", p.t()),
            ),
            Some(j) => b.line("moment identities", format!("nonzero residual at j = {j}")),
        }
        b.expect(bad.is_none(), "moment identity residuals");
        b.expect(
            p.uniform,
            "Delsarte code with non-uniform distance distribution",
        );
    }
}

fn scheme_sections(
    b: &mut Builder,
    code: &SphericalCode,
    p: &DesignProfile,
    opts: AnalyzeOptions,
) -> Option<SchemeTables> {
    b.section("scheme");
    let tables = match build_scheme(code) {
        Ok(t) => t,
        Err(e) => {
            b.line("status", format!("failed: {e}"));
            b.expect(!p.delsarte, format!("Delsarte code without a scheme: {e}"));
            return None;
        }
    };
    b.line("source", source_name(tables.source));
    b.line("intersection numbers", "constant");
    let valencies: Vec<usize> = (0..=tables.s).map(|i| tables.valency(i)).collect();
    b.line("valencies", list(&valencies));
    b.line("multiplicities", list(&tables.mult));
    let idem = tables.verify_idempotency();
    b.line("idempotency", if idem.is_ok() { "exact" } else { "fails" });
    b.expect(idem.is_ok(), "idempotency");
    b.line(
        "resolution of identity",
        yes(tables.resolution_of_identity()),
    );
    b.expect(tables.resolution_of_identity(), "resolution of identity");
    b.line("krein nonnegative", yes(tables.krein_nonnegative()));
    b.expect(
        tables.krein_nonnegative() && tables.krein_identity_row(),
        "Krein parameters",
    );
    if p.delsarte {
        let n = p.n as u64;
        let expected: Vec<QuadExt> = (0..tables.s)
            .map(|k| QuadExt::from_int(harmonic_dim(n, k as u64) as i64))
            .collect();
        b.expect(
            tables.mult[..tables.s] == expected[..],
            "multiplicities differ from h_k",
        );
        let rational_middle =
            (2..tables.s).all(|k| tables.evalues[k].iter().all(QuadExt::is_rational));
        b.expect(
            rational_middle,
            "irrational idempotent value for 2 <= k <= s-1",
        );
    }
    if opts.deep && code.size() <= DENSE_LIMIT {
        let dense = dense_cross_check(code, &tables);
        b.line(
            "dense cross-check",
            dense
                .as_ref()
                .map_or_else(|e| e.clone(), |_| "exact".into()),
        );
        b.expect(dense.is_ok(), "dense cross-check");
    }

    b.section("orderings");
    let report = qpoly_orderings(&tables);
    b.line(
        "natural",
        if report.natural_ordering_qpoly {
            "q-polynomial"
        } else {
            "not q-polynomial"
        },
    );
    if report.alternates.is_empty() {
        b.line("alternates", "none");
    }
    for alt in &report.alternates {
        let classes: Vec<String> = alt.classes.iter().map(ToString::to_string).collect();
        let tag = match classes.len() {
            0 => "unlisted".to_string(),
            1 => format!("class {}", classes[0]),
            _ => format!("ambiguous: classes {}", classes.join(", ")),
        };
        b.line("alternate", format!("{alt} {tag}"));
    }
    if p.delsarte {
        b.expect(
            report.natural_ordering_qpoly,
            "natural ordering is not Q-polynomial",
        );
        b.expect(
            report.structures() <= 2,
            "more than two Q-polynomial structures",
        );
        b.expect(
            report.unlisted().is_empty(),
            "alternate ordering outside the classification",
        );
    }

    b.section("galois");
    match galois_action(&tables) {
        Ok(pi) => {
            b.line("action", cycle_notation(&pi));
            if p.delsarte && p.s >= 6 {
                b.expect(
                    pi.iter().enumerate().all(|(k, &v)| k == v),
                    "nontrivial Galois action with s >= 6",
                );
            }
        }
        Err(e) => {
            b.line("action", format!("anomaly: {e}"));
            b.expect(false, format!("Galois action: {e}"));
        }
    }
    Some(tables)
}

fn levenshtein_section(b: &mut Builder, code: &SphericalCode, p: &DesignProfile) {
    b.section("levenshtein");
    match verify_root_match_with(code, p) {
        Ok(m) => {
            b.line("r", &m.lev.r);
            b.line("polynomial", &m.lev.poly);
            b.line("residuals", list(&m.residuals));
            b.expect(m.matched(), "Levenshtein residuals");
            b.line(
                "pair-sum lemma",
                pair_sum_lemma(&code.spectrum().values, p.tight),
            );
        }
        Err(e) => b.line("status", format!("skipped: {e}")),
    }
}

fn lp_section(b: &mut Builder, code: &SphericalCode, p: &DesignProfile) -> LpCertificate {
    b.section("lp");
    let cert = lp_certificate(code);
    b.line("polynomial", &cert.poly);
    b.line(
        "g",
        format!(
            "[{}]",
            cert.g
                .g
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    match &cert.bound {
        Some(v) => b.line("bound", v),
        None => b.line("bound", "none (g_0 <= 0)"),
    }
    if let Some(k) = cert.negative_at {
        b.line("negative coefficient", format!("g_{k}"));
    }
    b.line("attained", yes(cert.attained));
    if p.delsarte && p.sharp() {
        b.expect(cert.attained, "LP bound not attained");
    }
    cert
}

fn rationality_section(
    b: &mut Builder,
    code: &SphericalCode,
    p: &DesignProfile,
    tables: Option<&SchemeTables>,
) {
    b.section("rationality");
    let v = rationality_verdict_with(code, p);
    b.line("all rational", yes(v.all_rational));
    if !v.all_rational {
        b.line("irrational", list(&v.irrational_values));
    }
    b.line(
        "exception",
        match v.exception {
            Exception::Icosahedron => "icosahedron",
            Exception::None => "none",
        },
    );
    b.line("theorem applicable", yes(v.theorem_applicable));
    b.line("theorem holds", yes(v.theorem_holds()));
    b.expect(
        v.theorem_holds(),
        "irrational inner products outside the icosahedron",
    );
    if let (Some(t), true) = (tables, p.delsarte) {
        b.expect(
            v.all_rational == t.is_rational(),
            "rational spectrum but irrational idempotents",
        );
    }
}

fn approx_section(b: &mut Builder, code: &SphericalCode, cert: &LpCertificate) {
    b.section("approx (untrusted decimal hints)");
    let vals: Vec<String> = code
        .spectrum()
        .values
        .iter()
        .map(|a| format!("{:.15}", a.to_f64()))
        .collect();
    b.line("spectrum", format!("({})", vals.join(", ")));
    if let Some(v) = &cert.bound {
        b.line("bound", format!("{:.15}", v.to_f64()));
    }
}

fn source_name(source: IdempotentSource) -> &'static str {
    match source {
        IdempotentSource::Gegenbauer => "gegenbauer",
        IdempotentSource::Spectral => "spectral (exploratory)",
    }
}

/// LP certificate of a code.
pub fn bound_report(code: &SphericalCode) -> Report {
    let mut b = Builder {
        text: String::new(),
        violations: Vec::new(),
    };
    writeln!(b.text, "code {}", code.label()).unwrap();
    let p = classify(code);
    lp_section(&mut b, code, &p);
    Report {
        text: b.text,
        violations: b.violations,
    }
}

/// Full scheme tables with exact literals.
pub fn scheme_report(code: &SphericalCode) -> Report {
    let mut b = Builder {
        text: String::new(),
        violations: Vec::new(),
    };
    writeln!(b.text, "code {}", code.label()).unwrap();
    let tables = match build_scheme(code) {
        Ok(t) => t,
        Err(e) => {
            writeln!(b.text, "not a scheme: {e}").unwrap();
            b.violations.push(e.to_string());
            return Report {
                text: b.text,
                violations: b.violations,
            };
        }
    };
    let d = tables.s + 1;
    b.section("relations");
    for (l, a) in tables.values.iter().enumerate() {
        writeln!(
            b.text,
            "  R_{l}: <x,y> = {a}, valency {}",
            tables.valency(l)
        )
        .unwrap();
    }
    b.section("intersection numbers");
    for k in 0..d {
        for i in 0..d {
            let row: Vec<usize> = (0..d).map(|j| tables.p[i][j][k]).collect();
            writeln!(b.text, "  p_{i}j^{k} = {}", list(&row)).unwrap();
        }
    }
    b.section("idempotents");
    for (k, e) in tables.evalues.iter().enumerate() {
        writeln!(b.text, "  E_{k} = {}", list(e)).unwrap();
    }
    b.line("multiplicities", list(&tables.mult));
    b.line("source", source_name(tables.source));
    b.section("krein");
    for i in 0..d {
        for j in i..d {
            writeln!(b.text, "  q_{i}{j}^k = {}", list(&tables.krein[i][j])).unwrap();
        }
    }
    if tables.verify_idempotency().is_err() {
        b.violations.push("idempotency".into());
    }
    Report {
        text: b.text,
        violations: b.violations,
    }
}

/// Certificates for `scan --s`.
pub fn scan_report(s: u32, n_min: u64, n_max: u64) -> Report {
    let mut b = Builder {
        text: String::new(),
        violations: Vec::new(),
    };
    match s {
        3 => {
            b.section("s=3");
            for cert in scan_s3(n_min, n_max) {
                writeln!(b.text, "  {cert}").unwrap();
                b.expect(
                    cert.only_tight(),
                    format!("n = {}: consistency away from n^2 + n", cert.n),
                );
            }
        }
        4 | 5 => {
            writeln!(b.text, "[s={s}]").unwrap();
            let grid = if s == 4 {
                grid_check_two(8)
            } else {
                grid_check_three(5)
            };
            writeln!(
                b.text,
                "  grid identity over {} rational candidates: {}; -1 reached: {}",
                grid.points,
                if grid.identity_holds {
                    "exact"
                } else {
                    "fails"
                },
                yes(!grid.contradiction)
            )
            .unwrap();
            b.expect(grid.identity_holds && grid.contradiction, "grid identity");
            for cert in scan_s45(s, n_min, n_max) {
                writeln!(b.text, "  {cert}").unwrap();
            }
            let bad: Vec<_> = scan_s45(s, n_min.max(3), n_max)
                .into_iter()
                .filter(|c| !c.contradiction())
                .collect();
            b.expect(bad.is_empty(), "missing contradiction certificate");
        }
        _ => unreachable!("s is validated by the caller"),
    }
    b.section("multiplicity inequality");
    for n in n_min.max(3)..=n_max {
        let v = bannai_inequality(n, s as u64);
        writeln!(
            b.text,
            "  n={n} s={s}: {n} >= {} {}",
            fmt_rational(&v.rhs),
            if v.holds { "holds" } else { "fails" }
        )
        .unwrap();
    }
    Report {
        text: b.text,
        violations: b.violations,
    }
}

/// Catalog names with their expected profiles.
pub fn catalog_list() -> String {
    let mut out = String::new();
    for name in CatalogName::corpus() {
        let e = name.expected();
        writeln!(
            out,
            "{name}: n={} |C|={} s={} t={} tight={} delsarte={}{}",
            e.n,
            e.size,
            e.s,
            e.t,
            yes(e.tight),
            yes(e.delsarte),
            if name.is_extended() {
                " (extended)"
            } else {
                ""
            }
        )
        .unwrap();
    }
    out
}
