use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use metriplectic::brackets::{symmetric_bracket, DeformedPoissonStructure, MetriplecticSystem, NamedPolynomial};
use metriplectic::integrate::{simulate_batch, Scheme, SimulationError, Trajectory};
use metriplectic::models::{model_by_name, registry_examples};
use metriplectic::multivector::poisson_bracket;
use metriplectic::parser::{load_model_with_seed, parse_expression};
use metriplectic::scalar::{parse_rational, to_real};
use metriplectic::verify::{check_system, VerificationReport};
use metriplectic::{CoordinateChart, Poly, Rational};

use crate::{CheckArgs, EvalArgs, SimulateArgs};

pub const OUT_DIR_ENV: &str = "METRIPLECTIC_OUT_DIR";

pub enum Outcome {
    Ok,
    /// Verification failed; the report is already printed.
    Failed,
    Usage(String),
    Runtime(String),
}

impl Outcome {
    /// Prints any pending message and returns the exit code.
    pub fn report(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Failed => 1,
            Outcome::Usage(msg) => {
                if !msg.is_empty() {
                    eprintln!("error: {msg}");
                }
                2
            }
            Outcome::Runtime(msg) => {
                eprintln!("error: {msg}");
                3
            }
        }
    }
}

macro_rules! usage {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(msg) => return Outcome::Usage(msg.to_string()),
        }
    };
}

/// Everything a command needs from a builtin or a model file.
struct Target {
    name: String,
    structure: DeformedPoissonStructure<Rational>,
    casimirs: Vec<NamedPolynomial<Rational>>,
    extended: Vec<NamedPolynomial<Rational>>,
    hamiltonian: Poly,
    entropy: Poly,
    tau: Rational,
}

impl Target {
    fn chart(&self) -> &CoordinateChart {
        self.structure.chart()
    }

    fn system(
        &self,
        hamiltonian: Option<&str>,
        entropy: Option<&str>,
        tau: Option<&str>,
    ) -> Result<MetriplecticSystem<Rational>, String> {
        let parse = |text: Option<&str>, default: &Poly| match text {
            Some(t) => parse_expression(t, self.chart()).map_err(|e| e.to_string()),
            None => Ok(default.clone()),
        };
        let h = parse(hamiltonian, &self.hamiltonian)?;
        let s = parse(entropy, &self.entropy)?;
        let tau = match tau {
            Some(t) => parse_rational(t).ok_or_else(|| format!("malformed rational '{t}' for --tau"))?,
            None => self.tau.clone(),
        };
        MetriplecticSystem::new(self.structure.clone(), h, s)
            .and_then(|sys| sys.with_casimirs(self.casimirs.clone()))
            .and_then(|sys| sys.with_extended_casimirs(self.extended.clone()))
            .map(|sys| sys.with_tau(tau))
            .map_err(|e| e.to_string())
    }
}

fn is_file_target(target: &str) -> bool {
    target.ends_with(".model") || Path::new(target).is_file()
}

enum Resolved {
    Target(Box<Target>, Option<VerificationReport>),
    /// A model file that could not be loaded: message and exit code.
    Rejected(String, u8),
}

fn resolve(target: &str, seed: u64) -> Result<Resolved, String> {
    if is_file_target(target) {
        return match load_model_with_seed(target, seed) {
            Ok(m) => {
                let sys = m.system;
                let t = Target {
                    name: m.name,
                    structure: sys.structure().clone(),
                    casimirs: sys.casimirs().to_vec(),
                    extended: sys.extended_casimirs().to_vec(),
                    hamiltonian: sys.hamiltonian().clone(),
                    entropy: sys.entropy().clone(),
                    tau: sys.tau().clone(),
                };
                Ok(Resolved::Target(Box::new(t), Some(m.report)))
            }
            Err(e) => Ok(Resolved::Rejected(format!("{target}: [{}] {e}", e.class()), e.exit_code() as u8)),
        };
    }
    let m = model_by_name(target).map_err(|e| e.to_string())?;
    let t = Target {
        name: m.name.clone(),
        structure: m.structure(),
        casimirs: m.casimirs.clone(),
        extended: m.extended_casimirs.clone(),
        hamiltonian: m.default_hamiltonian.clone(),
        entropy: m.default_entropy.clone(),
        tau: Rational::from_integer(1.into()),
    };
    Ok(Resolved::Target(Box::new(t), None))
}

fn rejected(msg: String, code: u8) -> Outcome {
    eprintln!("{msg}");
    match code {
        1 => Outcome::Failed,
        _ => Outcome::Usage(String::new()),
    }
}

pub fn models(name: Option<&str>) -> Outcome {
    match name {
        Some(n) => {
            let m = usage!(model_by_name(n));
            print!("{m}");
        }
        None => {
            for m in registry_examples() {
                let names = |list: &[NamedPolynomial<Rational>]| {
                    if list.is_empty() {
                        "-".to_string()
                    } else {
                        list.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(",")
                    }
                };
                println!(
                    "{:<24} dim={:<3} casimirs={:<8} extended={:<22} cocycle={}",
                    m.name,
                    m.dim(),
                    names(&m.casimirs),
                    names(&m.extended_casimirs),
                    if m.cocycle.is_some() { "yes" } else { "no" }
                );
            }
        }
    }
    Outcome::Ok
}

pub fn check(args: &CheckArgs) -> Outcome {
    let (target, file_report) = match usage!(resolve(&args.target, args.seed)) {
        Resolved::Target(t, r) => (*t, r),
        Resolved::Rejected(msg, code) => return rejected(msg, code),
    };
    let report = match file_report {
        Some(r) if args.hamiltonian.is_none() && args.entropy.is_none() => r,
        _ => {
            let system = usage!(target.system(args.hamiltonian.as_deref(), args.entropy.as_deref(), None));
            check_system(&target.name, &system, args.seed)
        }
    };
    if args.json {
        println!("{}", report.to_json_lines());
    } else {
        print!("{report}");
    }
    if report.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    }
}

fn parse_state(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|v| {
            let v = v.trim();
            v.parse::<f64>()
                .ok()
                .or_else(|| parse_rational(v).and_then(|r| num_to_f64(&r)))
                .ok_or_else(|| format!("cannot read '{v}' as a number"))
        })
        .collect()
}

fn num_to_f64(r: &Rational) -> Option<f64> {
    let v: f64 = to_real(r);
    v.is_finite().then_some(v)
}

fn initial_states(spec: &str) -> Result<(Vec<Vec<f64>>, bool), String> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let states = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse_state)
                .collect::<Result<Vec<_>, _>>()?;
            if states.is_empty() {
                return Err(format!("{path} contains no initial conditions"));
            }
            Ok((states, true))
        }
        None => Ok((vec![parse_state(spec)?], false)),
    }
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn output_path(args: &SimulateArgs, model: &str) -> PathBuf {
    match &args.output {
        Some(p) => PathBuf::from(p),
        None => {
            let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
            dir.join(format!("{}.csv", sanitize(model)))
        }
    }
}

fn batch_path(base: &Path, k: usize) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("trajectory");
    let name = match base.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{k}.{ext}"),
        None => format!("{stem}_{k}"),
    };
    base.with_file_name(name)
}

fn write_csv(path: &Path, traj: &Trajectory<f64>) -> Result<(), String> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    }
    let file = File::create(path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    traj.write_csv(BufWriter::new(file)).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

pub fn simulate(args: &SimulateArgs) -> Outcome {
    let scheme: Scheme = usage!(args.scheme.parse());
    if !(args.dt > 0.0 && args.dt.is_finite()) {
        return Outcome::Usage("--dt must be positive".into());
    }
    if args.steps == 0 {
        return Outcome::Usage("--steps must be at least 1".into());
    }
    let target = match usage!(resolve(&args.model, args.seed)) {
        Resolved::Target(t, _) => *t,
        Resolved::Rejected(msg, code) => return rejected(msg, code),
    };
    let system = usage!(target.system(args.hamiltonian.as_deref(), args.entropy.as_deref(), args.tau.as_deref()));
    let (states, batch) = usage!(initial_states(&args.initial));
    let dim = system.chart().dim();
    for (k, s) in states.iter().enumerate() {
        if s.len() != dim {
            return Outcome::Usage(format!(
                "initial condition {k} has {} values, chart {} has {dim}",
                s.len(),
                system.chart()
            ));
        }
    }
    let base = output_path(args, &target.name);
    println!("model={} scheme={scheme} dt={} steps={} seed={}", target.name, args.dt, args.steps, args.seed);
    let results = simulate_batch(&system, &states, args.dt, args.steps, scheme, args.jobs);
    let mut failure = None;
    for (k, result) in results.into_iter().enumerate() {
        let path = if batch { batch_path(&base, k) } else { base.clone() };
        let traj = match result {
            Ok(t) => t,
            Err(SimulationError::Step { last_t, source, partial }) => {
                if let Err(e) = write_csv(&path, &partial) {
                    return Outcome::Runtime(e);
                }
                failure.get_or_insert(format!("trajectory {k}: integration failed after t = {last_t}: {source}"));
                continue;
            }
            Err(e) => return Outcome::Usage(e.to_string()),
        };
        if let Err(e) = write_csv(&path, &traj) {
            return Outcome::Runtime(e);
        }
        println!("wrote {} ({} records)", path.display(), traj.records.len());
    }
    match failure {
        Some(msg) => Outcome::Runtime(msg),
        None => Outcome::Ok,
    }
}

enum Point {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

fn parse_point(text: &str) -> Result<Point, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if let Some(exact) = parts.iter().map(|p| parse_rational(p)).collect::<Option<Vec<_>>>() {
        return Ok(Point::Exact(exact));
    }
    Ok(Point::Float(parse_state(text)?))
}

fn value_at(p: &Poly, at: &Point) -> String {
    match at {
        Point::Exact(x) => p.eval(x).map(|v| v.to_string()),
        Point::Float(x) => p.eval_real(x).map(|v| format!("{v:e}")),
    }
    .expect("point length checked")
}

pub fn eval(args: &EvalArgs) -> Outcome {
    if args.expr.is_none() && args.bracket.is_none() {
        return Outcome::Usage("nothing to evaluate: pass --expr and/or --bracket".into());
    }
    let target = match usage!(resolve(&args.model, metriplectic::parser::DEFAULT_SEED)) {
        Resolved::Target(t, _) => *t,
        Resolved::Rejected(msg, code) => return rejected(msg, code),
    };
    let chart = target.chart().clone();
    let at = usage!(parse_point(&args.at));
    let len = match &at {
        Point::Exact(x) => x.len(),
        Point::Float(x) => x.len(),
    };
    if len != chart.dim() {
        return Outcome::Usage(format!("--at has {len} values, chart {chart} has {}", chart.dim()));
    }
    if let Some(e) = &args.expr {
        let p = usage!(parse_expression(e, &chart));
        println!("{}", value_at(&p, &at));
    }
    if let Some(b) = &args.bracket {
        let Some((f, g)) = b.split_once(',') else {
            return Outcome::Usage("--bracket expects two expressions separated by ','".into());
        };
        let f = usage!(parse_expression(f, &chart));
        let g = usage!(parse_expression(g, &chart));
        let system = usage!(target.system(args.hamiltonian.as_deref(), args.entropy.as_deref(), None));
        let pb = poisson_bracket(&system.structure().deformed(), &f, &g).expect("same chart");
        let sb = symmetric_bracket(&system, &f, &g).expect("same chart");
        println!("poisson = {}", value_at(&pb, &at));
        println!("symmetric = {}", value_at(&sb, &at));
    }
    Outcome::Ok
}
