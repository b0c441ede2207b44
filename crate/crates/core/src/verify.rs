//! Pass/fail verification of Poisson, cocycle, Casimir and metriplectic
//! conditions. Exact checks carry no tolerance; a failure always comes with
//! the nonzero object rendered as its residual.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brackets::{metriplectic_field, symmetric_bracket, Dissipation, MetriplecticSystem};
use crate::multivector::{schouten_bb, sharp, BivectorField, FieldError};
use crate::poly::Polynomial;
use crate::scalar::random_small_rational;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Holds for structural reasons (e.g. the chart is too small, or the
    /// quantity vanishes identically).
    Trivial,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Trivial => "trivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    /// Canonical text of the offending object; empty unless the check failed.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct Record<'a> {
    subject: &'a str,
    name: &'a str,
    status: CheckStatus,
    residual: &'a str,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), seed: None, checks: Vec::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, CheckStatus::Pass, String::new());
    }

    pub fn trivial(&mut self, name: impl Into<String>) {
        self.push(name, CheckStatus::Trivial, String::new());
    }

    /// Records a failure; an empty residual is replaced by a placeholder so
    /// that failures are never silent.
    pub fn fail(&mut self, name: impl Into<String>, residual: impl Into<String>) {
        let mut residual = residual.into();
        if residual.is_empty() {
            residual = "(unspecified)".into();
        }
        self.push(name, CheckStatus::Fail, residual);
    }

    /// Pass when `residual` is `None`, fail with it otherwise.
    pub fn record(&mut self, name: impl Into<String>, residual: Option<String>) {
        match residual {
            None => self.pass(name),
            Some(r) => self.fail(name, r),
        }
    }

    fn push(&mut self, name: impl Into<String>, status: CheckStatus, residual: String) {
        self.checks.push(CheckResult { name: name.into(), status, residual });
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = if prefix.is_empty() { c.name } else { format!("{prefix}: {}", c.name) };
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn status_of(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("report {}", self.subject);
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}\n", c.status, c.name));
            for line in c.residual.lines() {
                out.push_str(&format!("      {line}\n"));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!("  {} checks, {} failed\n", self.checks.len(), failed));
        out
    }

    /// One JSON object per check.
    pub fn to_json_lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                let rec = Record { subject: &self.subject, name: &c.name, status: c.status, residual: &c.residual };
                serde_json::to_string(&rec).expect("plain strings serialize")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `[P, P] == 0`.
pub fn check_jacobi(p: &BivectorField<Rational>) -> VerificationReport {
    let mut report = VerificationReport::new("jacobi");
    let sn = schouten_bb(p, p).expect("a bivector shares its own chart");
    if sn.is_trivially_zero() {
        report.trivial("[pi,pi] = 0");
    } else {
        report.record("[pi,pi] = 0", (!sn.is_zero()).then(|| sn.render()));
    }
    report
}

/// `[P, a] == 0` and `[a, a] == 0`.
pub fn check_cocycle(
    p: &BivectorField<Rational>,
    a: &BivectorField<Rational>,
) -> Result<VerificationReport, FieldError> {
    let mut report = VerificationReport::new("cocycle");
    let pa = schouten_bb(p, a)?;
    let aa = schouten_bb(a, a)?;
    if pa.is_trivially_zero() {
        report.trivial("[pi,a] = 0");
        report.trivial("[a,a] = 0");
        return Ok(report);
    }
    report.record("[pi,a] = 0", (!pa.is_zero()).then(|| pa.render()));
    report.record("[a,a] = 0", (!aa.is_zero()).then(|| aa.render()));
    Ok(report)
}

/// `sharp(P, C) == 0`.
pub fn check_casimir(p: &BivectorField<Rational>, c: &Polynomial<Rational>) -> Result<VerificationReport, FieldError> {
    let mut report = VerificationReport::new("casimir");
    let v = sharp(p, c)?;
    if c.is_constant() {
        report.trivial("sharp(pi, C) = 0");
    } else {
        report.record("sharp(pi, C) = 0", (!v.is_zero()).then(|| v.render()));
    }
    Ok(report)
}

pub const POSITIVITY_FUNCTIONS: usize = 10;
pub const POSITIVITY_POINTS: usize = 1000;
pub const SAMPLE_MAX_DENOMINATOR: i64 = 64;

/// Random polynomial of total degree at most `max_degree` with `terms`
/// monomials and small rational coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    nvars: usize,
    max_degree: u32,
    terms: usize,
) -> Polynomial<Rational> {
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let coeff = random_small_rational(rng, 8) * Rational::from_integer(rng.gen_range(1..=4).into());
        out.push((exps, coeff));
    }
    Polynomial::from_terms(nvars, out)
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, nvars: usize) -> Vec<Rational> {
    (0..nvars)
        .map(|_| {
            random_small_rational(rng, SAMPLE_MAX_DENOMINATOR) * Rational::from_integer(rng.gen_range(1..=3).into())
        })
        .collect()
}

/// The four axioms of a metriplectic system:
/// (i) S is a Casimir of the base structure;
/// (ii) `((H, x_i)) == 0` for every coordinate;
/// (iii) `dS/dt` equals the production polynomial `tau a(dS,dH)^2`;
/// (iv) `((f, f)) >= 0` at random rational points for random `f`.
pub fn check_metriplectic_axioms(system: &MetriplecticSystem<Rational>, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("metriplectic").with_seed(seed);
    let chart = system.chart();
    let n = chart.dim();

    let s_sharp = sharp(system.structure().base(), system.entropy()).expect("entropy on system chart");
    report.record("(i) entropy is a base Casimir", (!s_sharp.is_zero()).then(|| s_sharp.render()));

    let mut degenerate = Vec::new();
    for i in 0..n {
        let v = symmetric_bracket(system, system.hamiltonian(), &chart.coordinate(i)).expect("same chart");
        if !v.is_zero() {
            degenerate.push(format!("{}: {}", chart.name(i), v.render(chart.names())));
        }
    }
    report.record("(ii) ((H, x_i)) = 0", (!degenerate.is_empty()).then(|| degenerate.join("\n")));

    let ds_dt = metriplectic_field(system).apply(system.entropy()).expect("same chart");
    let expected = match (system.dissipation(), system.production_factor()) {
        (Dissipation::Cocycle, Some(a)) => (&a * &a).scale(system.tau()),
        _ => system.entropy_production(),
    };
    let name = "(iii) dS/dt = tau a(dS,dH)^2";
    if ds_dt != expected {
        let diff = &ds_dt - &expected;
        report.fail(name, format!("dS/dt - production = {}", diff.render(chart.names())));
    } else if ds_dt.is_zero() {
        report.trivial(name);
    } else {
        report.pass(name);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials: Vec<(Polynomial<Rational>, u64)> =
        (0..POSITIVITY_FUNCTIONS).map(|_| (random_polynomial(&mut rng, n, 2, 6), rng.gen())).collect();
    let outcomes: Vec<(bool, Option<String>)> = trials
        .par_iter()
        .map(|(f, sub_seed)| {
            let ff = symmetric_bracket(system, f, f).expect("same chart");
            if ff.is_zero() {
                return (true, None);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*sub_seed);
            for _ in 0..POSITIVITY_POINTS {
                let x = random_point(&mut rng, n);
                let v = ff.eval(&x).expect("point has chart length");
                if v < Rational::from_integer(0.into()) {
                    let at: Vec<String> = x.iter().map(|r| r.to_string()).collect();
                    return (
                        false,
                        Some(format!("f = {}\n((f,f)) = {} at ({})", f.render(chart.names()), v, at.join(", "))),
                    );
                }
            }
            (false, None)
        })
        .collect();
    let name = "(iv) ((f, f)) >= 0";
    if let Some(r) = outcomes.iter().find_map(|(_, r)| r.clone()) {
        report.fail(name, r);
    } else if outcomes.iter().all(|(zero, _)| *zero) {
        report.trivial(name);
    } else {
        report.pass(name);
    }
    report
}

pub const FD_STEP: f64 = 1e-5;
pub const FD_TOLERANCE: f64 = 1e-6;

/// Symbolic gradient against central differences at random points of
/// `[-1, 1]^n`. The error measure is `|fd - exact| / max(1, |exact|)`.
pub fn gradient_fd_check(f: &Polynomial<Rational>, samples: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("gradient").with_seed(seed);
    let n = f.nvars();
    let grad = f.gradient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0f64, 0usize, Vec::new());
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        for (i, gi) in grad.iter().enumerate() {
            let exact = gi.eval_real(&x).expect("point has nvars length");
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += FD_STEP;
            xm[i] -= FD_STEP;
            let fd =
                (f.eval_real(&xp).expect("same length") - f.eval_real(&xm).expect("same length")) / (2.0 * FD_STEP);
            let err = (fd - exact).abs() / exact.abs().max(1.0);
            if err > worst.0 || err.is_nan() {
                worst = (err, i, x.clone());
            }
        }
    }
    let name = "central differences agree with symbolic gradient";
    if worst.0 < FD_TOLERANCE {
        report.pass(name);
    } else {
        report.fail(name, format!("max error {:e} in component {} at {:?}", worst.0, worst.1, worst.2));
    }
    report
}

/// Full battery on a system: Jacobi of the base, cocycle conditions,
/// registered Casimirs of both structures, and the metriplectic axioms.
pub fn check_system(subject: &str, system: &MetriplecticSystem<Rational>, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new(subject).with_seed(seed);
    let structure = system.structure();
    report.absorb("jacobi", check_jacobi(structure.base()));
    if !structure.cocycle().is_zero() {
        let r = check_cocycle(structure.base(), &structure.scaled_cocycle()).expect("cocycle shares the base chart");
        report.absorb("cocycle", r);
    }
    for c in system.casimirs() {
        let r = check_casimir(structure.base(), &c.poly).expect("casimir on system chart");
        report.absorb(&format!("casimir {}", c.name), r);
    }
    let deformed = structure.deformed();
    for c in system.extended_casimirs() {
        let r = check_casimir(&deformed, &c.poly).expect("casimir on system chart");
        report.absorb(&format!("extended casimir {}", c.name), r);
    }
    report.absorb("", check_metriplectic_axioms(system, seed));
    report
}
