//! Float time integration of metriplectic fields with per-step diagnostics.
//!
//! Fields are compiled once into flat evaluation plans; every record stores
//! `H`, `S`, the registered Casimirs and the entropy production evaluated
//! from their exact polynomial formulas at the float state.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::brackets::{metriplectic_field, MetriplecticSystem};
use crate::multivector::VectorField;
use crate::poly::Polynomial;
use crate::scalar::{to_real, Real, Scalar};

pub const MIDPOINT_MAX_ITERATIONS: usize = 50;
pub const MIDPOINT_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Rk4,
    Midpoint,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Rk4 => "rk4",
            Scheme::Midpoint => "midpoint",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rk4" => Ok(Scheme::Rk4),
            "midpoint" => Ok(Scheme::Midpoint),
            other => Err(format!("unknown scheme '{other}' (expected rk4 or midpoint)")),
        }
    }
}

/// Polynomial flattened to `(coefficient, [(variable, exponent)])` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledPolynomial<F> {
    nvars: usize,
    terms: Vec<(F, Vec<(usize, u32)>)>,
}

impl<F: Real> CompiledPolynomial<F> {
    pub fn new<T: Scalar>(p: &Polynomial<T>) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let factors = m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
                (to_real::<F, T>(c), factors)
            })
            .collect();
        CompiledPolynomial { nvars: p.nvars(), terms }
    }

    pub fn eval(&self, x: &[F]) -> F {
        debug_assert_eq!(x.len(), self.nvars);
        let mut acc = F::zero();
        for (c, factors) in &self.terms {
            let mut term = *c;
            for &(i, e) in factors {
                term = term * x[i].powi(e as i32);
            }
            acc = acc + term;
        }
        acc
    }
}

/// Right-hand side of an autonomous ODE.
pub trait Rhs<F> {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[F], out: &mut [F]);
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledField<F> {
    components: Vec<CompiledPolynomial<F>>,
}

impl<F: Real> CompiledField<F> {
    pub fn new<T: Scalar>(field: &VectorField<T>) -> Self {
        CompiledField { components: field.components().iter().map(CompiledPolynomial::new).collect() }
    }
}

impl<F: Real> Rhs<F> for CompiledField<F> {
    fn dim(&self) -> usize {
        self.components.len()
    }

    fn eval(&self, x: &[F], out: &mut [F]) {
        for (o, c) in out.iter_mut().zip(&self.components) {
            *o = c.eval(x);
        }
    }
}

/// Adapts a closure `f(x, out)` to [`Rhs`].
pub struct FnRhs<G> {
    pub dim: usize,
    pub f: G,
}

impl<F, G: Fn(&[F], &mut [F])> Rhs<F> for FnRhs<G> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[F], out: &mut [F]) {
        (self.f)(x, out)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    #[error("non-finite value in component {component}")]
    NonFinite { component: usize },
    #[error("implicit midpoint did not converge in {iterations} iterations (last update {residual:e})")]
    Diverged { iterations: usize, residual: f64 },
}

fn axpy<F: Real>(x: &[F], a: F, k: &[F]) -> Vec<F> {
    x.iter().zip(k).map(|(&xi, &ki)| xi + a * ki).collect()
}

fn check_finite<F: Real>(x: &[F]) -> Result<(), StepError> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(component) => Err(StepError::NonFinite { component }),
        None => Ok(()),
    }
}

/// One step of the chosen scheme.
pub fn step<F: Real, R: Rhs<F> + ?Sized>(rhs: &R, x: &[F], dt: F, scheme: Scheme) -> Result<Vec<F>, StepError> {
    let n = x.len();
    let two = F::from_f64(2.0).unwrap();
    let half = dt / two;
    let mut k1 = vec![F::zero(); n];
    rhs.eval(x, &mut k1);
    let next = match scheme {
        Scheme::Rk4 => {
            let mut k2 = vec![F::zero(); n];
            let mut k3 = vec![F::zero(); n];
            let mut k4 = vec![F::zero(); n];
            rhs.eval(&axpy(x, half, &k1), &mut k2);
            rhs.eval(&axpy(x, half, &k2), &mut k3);
            rhs.eval(&axpy(x, dt, &k3), &mut k4);
            let sixth = dt / F::from_f64(6.0).unwrap();
            (0..n).map(|i| x[i] + sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i])).collect()
        }
        Scheme::Midpoint => {
            let scale = x.iter().fold(F::one(), |m, v| m.max(v.abs()));
            let tol = F::from_f64(MIDPOINT_TOLERANCE).unwrap() * scale;
            let mut y = axpy(x, dt, &k1);
            let mut k = vec![F::zero(); n];
            let mut converged = false;
            let mut last = F::infinity();
            for _ in 0..MIDPOINT_MAX_ITERATIONS {
                let mid: Vec<F> = x.iter().zip(&y).map(|(&a, &b)| (a + b) / two).collect();
                rhs.eval(&mid, &mut k);
                let y_new = axpy(x, dt, &k);
                last = y_new.iter().zip(&y).fold(F::zero(), |m, (&a, &b)| m.max((a - b).abs()));
                y = y_new;
                if !last.is_finite() {
                    break;
                }
                if last <= tol {
                    converged = true;
                    break;
                }
            }
            if !converged {
                check_finite(&y)?;
                return Err(StepError::Diverged {
                    iterations: MIDPOINT_MAX_ITERATIONS,
                    residual: last.to_f64().unwrap_or(f64::NAN),
                });
            }
            y
        }
    };
    check_finite(&next)?;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticRecord<F> {
    pub t: F,
    pub state: Vec<F>,
    pub hamiltonian: F,
    pub entropy: F,
    pub casimirs: Vec<F>,
    pub production: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<F> {
    pub coordinates: Vec<String>,
    pub casimir_names: Vec<String>,
    pub records: Vec<DiagnosticRecord<F>>,
    pub dt: F,
    pub scheme: Scheme,
}

impl<F: Real> Trajectory<F> {
    pub fn last(&self) -> Option<&DiagnosticRecord<F>> {
        self.records.last()
    }

    /// `max_k |H(t_k) - H(t_0)|`.
    pub fn hamiltonian_drift(&self) -> F {
        let h0 = self.records[0].hamiltonian;
        self.records.iter().fold(F::zero(), |m, r| m.max((r.hamiltonian - h0).abs()))
    }

    /// Largest single-step decrease of `S` (zero if `S` never decreases).
    pub fn max_entropy_decrease(&self) -> F {
        self.records.windows(2).fold(F::zero(), |m, w| m.max(w[0].entropy - w[1].entropy))
    }

    pub fn casimir_drift(&self, index: usize) -> F {
        let c0 = self.records[0].casimirs[index];
        self.records.iter().fold(F::zero(), |m, r| m.max((r.casimirs[index] - c0).abs()))
    }

    pub fn casimir_index(&self, name: &str) -> Option<usize> {
        self.casimir_names.iter().position(|n| n == name)
    }

    /// CSV with header `t,<coordinates>,H,S,<casimirs>,production` and
    /// 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut header = vec!["t".to_string()];
        header.extend(self.coordinates.iter().cloned());
        header.push("H".into());
        header.push("S".into());
        header.extend(self.casimir_names.iter().cloned());
        header.push("production".into());
        writeln!(w, "{}", header.join(","))?;
        let fmt = |v: F| format!("{:.16e}", v.to_f64().unwrap_or(f64::NAN));
        for r in &self.records {
            let mut row = vec![fmt(r.t)];
            row.extend(r.state.iter().map(|&v| fmt(v)));
            row.push(fmt(r.hamiltonian));
            row.push(fmt(r.entropy));
            row.extend(r.casimirs.iter().map(|&v| fmt(v)));
            row.push(fmt(r.production));
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulationError<F> {
    #[error("invalid simulation input: {0}")]
    InvalidInput(String),
    #[error("step failed after t = {last_t}: {source}")]
    Step {
        /// Time of the last good record.
        last_t: f64,
        source: StepError,
        partial: Box<Trajectory<F>>,
    },
}

/// Everything needed to advance and monitor one system in floats.
#[derive(Debug, Clone)]
pub struct CompiledSystem<F> {
    pub field: CompiledField<F>,
    hamiltonian: CompiledPolynomial<F>,
    entropy: CompiledPolynomial<F>,
    casimirs: Vec<CompiledPolynomial<F>>,
    production: Production<F>,
    coordinates: Vec<String>,
    casimir_names: Vec<String>,
}

#[derive(Debug, Clone)]
enum Production<F> {
    /// `tau * A^2`.
    Square {
        tau: F,
        factor: CompiledPolynomial<F>,
    },
    Polynomial(CompiledPolynomial<F>),
}

impl<F: Real> CompiledSystem<F> {
    pub fn new<T: Scalar>(system: &MetriplecticSystem<T>) -> Self {
        let production = match system.production_factor() {
            Some(a) => Production::Square { tau: to_real(system.tau()), factor: CompiledPolynomial::new(&a) },
            None => Production::Polynomial(CompiledPolynomial::new(&system.entropy_production())),
        };
        let all = system.casimirs().iter().chain(system.extended_casimirs());
        CompiledSystem {
            field: CompiledField::new(&metriplectic_field(system)),
            hamiltonian: CompiledPolynomial::new(system.hamiltonian()),
            entropy: CompiledPolynomial::new(system.entropy()),
            casimirs: all.clone().map(|c| CompiledPolynomial::new(&c.poly)).collect(),
            production,
            coordinates: system.chart().names().to_vec(),
            casimir_names: all.map(|c| c.name.clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn record(&self, t: F, state: Vec<F>) -> DiagnosticRecord<F> {
        let production = match &self.production {
            Production::Square { tau, factor } => {
                let a = factor.eval(&state);
                *tau * a * a
            }
            Production::Polynomial(p) => p.eval(&state),
        };
        DiagnosticRecord {
            t,
            hamiltonian: self.hamiltonian.eval(&state),
            entropy: self.entropy.eval(&state),
            casimirs: self.casimirs.iter().map(|c| c.eval(&state)).collect(),
            production,
            state,
        }
    }

    pub fn simulate(
        &self,
        x0: &[F],
        dt: F,
        n_steps: usize,
        scheme: Scheme,
    ) -> Result<Trajectory<F>, SimulationError<F>> {
        if x0.len() != self.dim() {
            return Err(SimulationError::InvalidInput(format!(
                "initial state has {} components, chart has {}",
                x0.len(),
                self.dim()
            )));
        }
        if !(dt > F::zero() && dt.is_finite()) {
            return Err(SimulationError::InvalidInput("dt must be positive and finite".into()));
        }
        if n_steps == 0 {
            return Err(SimulationError::InvalidInput("n_steps must be at least 1".into()));
        }
        if x0.iter().any(|v| !v.is_finite()) {
            return Err(SimulationError::InvalidInput("initial state is not finite".into()));
        }
        let mut traj = Trajectory {
            coordinates: self.coordinates.clone(),
            casimir_names: self.casimir_names.clone(),
            records: Vec::with_capacity(n_steps + 1),
            dt,
            scheme,
        };
        traj.records.push(self.record(F::zero(), x0.to_vec()));
        let mut x = x0.to_vec();
        for k in 1..=n_steps {
            match step(&self.field, &x, dt, scheme) {
                Ok(next) => {
                    x = next;
                    let t = dt * F::from_usize(k).unwrap();
                    traj.records.push(self.record(t, x.clone()));
                }
                Err(source) => {
                    let last_t = traj.records.last().map_or(0.0, |r| r.t.to_f64().unwrap_or(f64::NAN));
                    return Err(SimulationError::Step { last_t, source, partial: Box::new(traj) });
                }
            }
        }
        Ok(traj)
    }
}

pub fn simulate<F: Real, T: Scalar>(
    system: &MetriplecticSystem<T>,
    x0: &[F],
    dt: F,
    n_steps: usize,
    scheme: Scheme,
) -> Result<Trajectory<F>, SimulationError<F>> {
    CompiledSystem::new(system).simulate(x0, dt, n_steps, scheme)
}

/// Runs one trajectory per initial condition on up to `jobs` threads.
/// Output order matches input order and each run is independent of `jobs`.
pub fn simulate_batch<F: Real, T: Scalar>(
    system: &MetriplecticSystem<T>,
    initials: &[Vec<F>],
    dt: F,
    n_steps: usize,
    scheme: Scheme,
    jobs: usize,
) -> Vec<Result<Trajectory<F>, SimulationError<F>>> {
    let compiled = CompiledSystem::new(system);
    let run = || initials.par_iter().map(|x0| compiled.simulate(x0, dt, n_steps, scheme)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => initials.iter().map(|x0| compiled.simulate(x0, dt, n_steps, scheme)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    /// `None` when the errors vanish and no order can be read off.
    pub order: Option<f64>,
    /// Final-state max-norm errors at `dt`, `dt/2`, `dt/4`.
    pub errors: [f64; 3],
    pub note: String,
}

/// Empirical convergence order over the horizon `n_steps * dt`, from the
/// errors at `dt`, `dt/2`, `dt/4` against a `dt/16` reference run.
pub fn estimate_order<T: Scalar>(
    system: &MetriplecticSystem<T>,
    x0: &[f64],
    dt: f64,
    n_steps: usize,
    scheme: Scheme,
) -> Result<OrderEstimate, SimulationError<f64>> {
    let compiled = CompiledSystem::<f64>::new(system);
    let final_state = |div: usize| -> Result<Vec<f64>, SimulationError<f64>> {
        let traj = compiled.simulate(x0, dt / div as f64, n_steps * div, scheme)?;
        Ok(traj.records.last().expect("at least one record").state.clone())
    };
    let reference = final_state(16)?;
    let mut errors = [0.0; 3];
    for (slot, div) in errors.iter_mut().zip([1, 2, 4]) {
        let x = final_state(div)?;
        *slot = x.iter().zip(&reference).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    }
    if errors.iter().any(|&e| e == 0.0 || !e.is_finite()) {
        return Ok(OrderEstimate {
            order: None,
            errors,
            note: "error vanishes or is not finite at some step size; order undefined".into(),
        });
    }
    // least-squares slope of log2(error) against log2(h)
    let xs = [0.0, -1.0, -2.0];
    let ys = errors.map(f64::log2);
    let mx = xs.iter().sum::<f64>() / 3.0;
    let my = ys.iter().sum::<f64>() / 3.0;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(OrderEstimate { order: Some(num / den), errors, note: String::new() })
}
