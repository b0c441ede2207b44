//! Metriplectic structure built on a deformed Poisson bivector.
//!
//! A [`MetriplecticSystem`] couples a base Poisson bivector `pi`, a 2-cocycle
//! `a`, a Hamiltonian `H`, an entropy `S` (a Casimir of `pi`) and a
//! temperature `tau`. The symmetric bracket is induced by a 4-bracket; by
//! default the 4-tensor is `a ⊗ a` with `a` already scaled by `epsilon`.
//!
//! State evolution is `x^i' = {x^i, H} + tau ((S, x^i))`.

use thiserror::Error;

use crate::multivector::{
    poisson_bracket, sharp, BivectorField, CoordinateChart, FieldError, SymmetricTensorField, VectorField,
};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("entropy is not a Casimir of the base structure; sharp(pi, S) =\n{residual}")]
    EntropyNotCasimir { residual: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPolynomial<T> {
    pub name: String,
    pub poly: Polynomial<T>,
}

impl<T> NamedPolynomial<T> {
    pub fn new(name: impl Into<String>, poly: Polynomial<T>) -> Self {
        NamedPolynomial { name: name.into(), poly }
    }
}

/// `pi_eps = pi + eps * a`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedPoissonStructure<T> {
    base: BivectorField<T>,
    cocycle: BivectorField<T>,
    epsilon: T,
}

impl<T: Scalar> DeformedPoissonStructure<T> {
    pub fn new(base: BivectorField<T>, cocycle: BivectorField<T>) -> Result<Self, FieldError> {
        base.chart().same_as(cocycle.chart())?;
        Ok(DeformedPoissonStructure { base, cocycle, epsilon: T::one() })
    }

    /// A structure with no deformation (zero cocycle).
    pub fn undeformed(base: BivectorField<T>) -> Self {
        let cocycle = BivectorField::zero(base.chart());
        DeformedPoissonStructure { base, cocycle, epsilon: T::one() }
    }

    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn base(&self) -> &BivectorField<T> {
        &self.base
    }

    pub fn cocycle(&self) -> &BivectorField<T> {
        &self.cocycle
    }

    pub fn epsilon(&self) -> &T {
        &self.epsilon
    }

    pub fn chart(&self) -> &CoordinateChart {
        self.base.chart()
    }

    /// `eps * a`, the bivector that feeds the dissipative 4-tensor.
    pub fn scaled_cocycle(&self) -> BivectorField<T> {
        self.cocycle.scale(&self.epsilon)
    }

    pub fn deformed(&self) -> BivectorField<T> {
        self.base.try_add(&self.scaled_cocycle()).expect("base and cocycle share a chart")
    }
}

/// Source of the (4,0)-tensor behind a 4-bracket `(f,g;h,k)`.
#[derive(Debug, Clone, PartialEq)]
pub enum FourBracketSpec<T> {
    /// `a(df,dg) a(dh,dk)`.
    TensorProduct(BivectorField<T>),
    /// Contravariant Kulkarni–Nomizu product of two symmetric tensors.
    KulkarniNomizu { sigma: SymmetricTensorField<T>, mu: SymmetricTensorField<T> },
}

impl<T: Scalar> FourBracketSpec<T> {
    pub fn chart(&self) -> &CoordinateChart {
        match self {
            FourBracketSpec::TensorProduct(a) => a.chart(),
            FourBracketSpec::KulkarniNomizu { sigma, .. } => sigma.chart(),
        }
    }

    fn validate(&self) -> Result<(), FieldError> {
        if let FourBracketSpec::KulkarniNomizu { sigma, mu } = self {
            sigma.chart().same_as(mu.chart())?;
        }
        Ok(())
    }

    /// Evaluates the tensor on four covectors given by their components.
    pub fn on_covectors(
        &self,
        df: &[Polynomial<T>],
        dg: &[Polynomial<T>],
        dh: &[Polynomial<T>],
        dk: &[Polynomial<T>],
    ) -> Polynomial<T> {
        match self {
            FourBracketSpec::TensorProduct(a) => {
                let left = a.pair(df, dg);
                if left.is_zero() {
                    return left;
                }
                &left * &a.pair(dh, dk)
            }
            FourBracketSpec::KulkarniNomizu { sigma, mu } => {
                let t1 = &sigma.pair(df, dg) * &mu.pair(dh, dk);
                let t2 = &sigma.pair(df, dk) * &mu.pair(dg, dh);
                let t3 = &mu.pair(df, dg) * &sigma.pair(dh, dk);
                let t4 = &mu.pair(df, dk) * &sigma.pair(dg, dh);
                &(&(&t1 - &t2) + &t3) - &t4
            }
        }
    }
}

fn gradient_checked<T: Scalar>(chart: &CoordinateChart, f: &Polynomial<T>) -> Result<Vec<Polynomial<T>>, FieldError> {
    if f.nvars() != chart.dim() {
        return Err(FieldError::DimensionMismatch { chart: chart.dim(), operand: f.nvars() });
    }
    Ok(f.gradient())
}

/// `(f,g;h,k) = T(df,dg,dh,dk)`.
pub fn four_bracket<T: Scalar>(
    spec: &FourBracketSpec<T>,
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    h: &Polynomial<T>,
    k: &Polynomial<T>,
) -> Result<Polynomial<T>, FieldError> {
    spec.validate()?;
    let chart = spec.chart();
    let grads = [f, g, h, k].into_iter().map(|p| gradient_checked(chart, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(spec.on_covectors(&grads[0], &grads[1], &grads[2], &grads[3]))
}

/// How the symmetric bracket's 4-tensor is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Dissipation<T> {
    /// `T = a ⊗ a` with the epsilon-scaled cocycle.
    Cocycle,
    KulkarniNomizu {
        sigma: SymmetricTensorField<T>,
        mu: SymmetricTensorField<T>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetriplecticSystem<T> {
    structure: DeformedPoissonStructure<T>,
    hamiltonian: Polynomial<T>,
    entropy: Polynomial<T>,
    tau: T,
    casimirs: Vec<NamedPolynomial<T>>,
    extended_casimirs: Vec<NamedPolynomial<T>>,
    dissipation: Dissipation<T>,
    isentropic: bool,
}

impl<T: Scalar> MetriplecticSystem<T> {
    /// Rejects an entropy that is not a Casimir of the base structure. An
    /// entropy that is also a Casimir of the deformed structure is accepted
    /// but flagged [`is_isentropic`](Self::is_isentropic).
    pub fn new(
        structure: DeformedPoissonStructure<T>,
        hamiltonian: Polynomial<T>,
        entropy: Polynomial<T>,
    ) -> Result<Self, SystemError> {
        let chart = structure.chart().clone();
        gradient_checked(&chart, &hamiltonian)?;
        let residual = sharp(structure.base(), &entropy)?;
        if !residual.is_zero() {
            return Err(SystemError::EntropyNotCasimir { residual: residual.render() });
        }
        let isentropic = sharp(&structure.deformed(), &entropy)?.is_zero();
        Ok(MetriplecticSystem {
            structure,
            hamiltonian,
            entropy,
            tau: T::one(),
            casimirs: Vec::new(),
            extended_casimirs: Vec::new(),
            dissipation: Dissipation::Cocycle,
            isentropic,
        })
    }

    pub fn with_tau(mut self, tau: T) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_casimirs(mut self, casimirs: Vec<NamedPolynomial<T>>) -> Result<Self, SystemError> {
        for c in &casimirs {
            gradient_checked(self.chart(), &c.poly)?;
        }
        self.casimirs = casimirs;
        Ok(self)
    }

    pub fn with_extended_casimirs(mut self, casimirs: Vec<NamedPolynomial<T>>) -> Result<Self, SystemError> {
        for c in &casimirs {
            gradient_checked(self.chart(), &c.poly)?;
        }
        self.extended_casimirs = casimirs;
        Ok(self)
    }

    /// Switches the symmetric bracket to the Kulkarni–Nomizu construction,
    /// which never produces entropy.
    pub fn with_kulkarni_nomizu(
        mut self,
        sigma: SymmetricTensorField<T>,
        mu: SymmetricTensorField<T>,
    ) -> Result<Self, SystemError> {
        self.chart().same_as(sigma.chart())?;
        self.chart().same_as(mu.chart())?;
        self.dissipation = Dissipation::KulkarniNomizu { sigma, mu };
        self.isentropic = true;
        Ok(self)
    }

    pub fn chart(&self) -> &CoordinateChart {
        self.structure.chart()
    }

    pub fn structure(&self) -> &DeformedPoissonStructure<T> {
        &self.structure
    }

    pub fn hamiltonian(&self) -> &Polynomial<T> {
        &self.hamiltonian
    }

    pub fn entropy(&self) -> &Polynomial<T> {
        &self.entropy
    }

    pub fn tau(&self) -> &T {
        &self.tau
    }

    pub fn casimirs(&self) -> &[NamedPolynomial<T>] {
        &self.casimirs
    }

    pub fn extended_casimirs(&self) -> &[NamedPolynomial<T>] {
        &self.extended_casimirs
    }

    pub fn dissipation(&self) -> &Dissipation<T> {
        &self.dissipation
    }

    /// `true` when the entropy is also a Casimir of the deformed structure
    /// (or the dissipation is Kulkarni–Nomizu): no entropy is ever produced.
    pub fn is_isentropic(&self) -> bool {
        self.isentropic
    }

    pub fn four_bracket_spec(&self) -> FourBracketSpec<T> {
        match &self.dissipation {
            Dissipation::Cocycle => FourBracketSpec::TensorProduct(self.structure.scaled_cocycle()),
            Dissipation::KulkarniNomizu { sigma, mu } => {
                FourBracketSpec::KulkarniNomizu { sigma: sigma.clone(), mu: mu.clone() }
            }
        }
    }

    /// Replaces the cocycle by zero, leaving only the conservative dynamics.
    pub fn conservative(&self) -> Self {
        let mut out = self.clone();
        out.structure.cocycle = BivectorField::zero(self.chart());
        out.dissipation = Dissipation::Cocycle;
        out.isentropic = true;
        out
    }

    /// `a(dS, dH)` for the tensor-product dissipation; the entropy production
    /// rate is `tau * a(dS,dH)^2`. `None` for Kulkarni–Nomizu.
    pub fn production_factor(&self) -> Option<Polynomial<T>> {
        match self.dissipation {
            Dissipation::Cocycle => {
                Some(self.structure.scaled_cocycle().pair(&self.entropy.gradient(), &self.hamiltonian.gradient()))
            }
            Dissipation::KulkarniNomizu { .. } => None,
        }
    }

    /// `tau * ((S,S))` as a polynomial.
    pub fn entropy_production(&self) -> Polynomial<T> {
        let ds = self.entropy.gradient();
        let dh = self.hamiltonian.gradient();
        self.four_bracket_spec().on_covectors(&ds, &dh, &ds, &dh).scale(&self.tau)
    }
}

/// `((f, g)) = T(df, dH, dg, dH)`.
pub fn symmetric_bracket<T: Scalar>(
    system: &MetriplecticSystem<T>,
    f: &Polynomial<T>,
    g: &Polynomial<T>,
) -> Result<Polynomial<T>, FieldError> {
    let h = system.hamiltonian();
    four_bracket(&system.four_bracket_spec(), f, h, g, h)
}

/// Conservative flow on the base structure, component `i = {x_i, H}`.
pub fn reversible_field<T: Scalar>(system: &MetriplecticSystem<T>) -> VectorField<T> {
    sharp(system.structure().base(), system.hamiltonian()).expect("hamiltonian validated at construction")
}

/// `tau ((S, x_i))` for each coordinate.
pub fn dissipative_field<T: Scalar>(system: &MetriplecticSystem<T>) -> VectorField<T> {
    let chart = system.chart();
    let n = chart.dim();
    let spec = system.four_bracket_spec();
    let ds = system.entropy().gradient();
    let dh = system.hamiltonian().gradient();
    let components = (0..n)
        .map(|i| {
            let mut dx = vec![Polynomial::zero(n); n];
            dx[i] = Polynomial::one(n);
            spec.on_covectors(&ds, &dh, &dx, &dh).scale(system.tau())
        })
        .collect();
    VectorField::new(chart.clone(), components).expect("components live on the system chart")
}

/// `x^i' = {x^i, H} + tau ((S, x^i))`.
pub fn metriplectic_field<T: Scalar>(system: &MetriplecticSystem<T>) -> VectorField<T> {
    reversible_field(system).try_add(&dissipative_field(system)).expect("same chart")
}

/// Poisson bracket on the base structure of a system.
pub fn base_bracket<T: Scalar>(
    system: &MetriplecticSystem<T>,
    f: &Polynomial<T>,
    g: &Polynomial<T>,
) -> Result<Polynomial<T>, FieldError> {
    poisson_bracket(system.structure().base(), f, g)
}
