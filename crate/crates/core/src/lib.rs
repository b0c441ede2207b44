//! Exact Poisson and metriplectic structures on polynomial charts, with
//! numerical integration of the resulting flows.
//!
//! The symbolic layer is generic over [`Scalar`]; use the aliases below for
//! the exact rational instantiation.

pub mod brackets;
pub mod integrate;
pub mod models;
pub mod multivector;
pub mod parser;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use brackets::{
    dissipative_field, four_bracket, metriplectic_field, reversible_field, symmetric_bracket, DeformedPoissonStructure,
    Dissipation, FourBracketSpec, MetriplecticSystem, NamedPolynomial, SystemError,
};
pub use integrate::{
    estimate_order, simulate, simulate_batch, DiagnosticRecord, OrderEstimate, Scheme, SimulationError, StepError,
    Trajectory,
};
pub use models::{
    build_bargmann, build_canonical, build_galilei, build_lie_poisson, build_lotka_volterra, build_se2,
    build_se2_extended, galilei_coadjoint_algebra, galilei_coadjoint_field, model_by_name, se2_coadjoint, se2_exp,
    GalileiVector, GroupElementSE2, ModelDescriptor, ModelError, StructureConstants,
};
pub use multivector::{
    lie_derivative_bivector, poisson_bracket, schouten_bb, sharp, BivectorField, CoordinateChart, FieldError,
    SymmetricTensorField, TrivectorField, VectorField,
};
pub use parser::{load_model, parse_expression, LoadedModel, ModelFileError, ParseError};
pub use poly::{Monomial, PolyError, Polynomial};
pub use scalar::{Real, Scalar};
pub use verify::{
    check_casimir, check_cocycle, check_jacobi, check_metriplectic_axioms, gradient_fd_check, CheckStatus,
    VerificationReport,
};

pub type Rational = num_rational::BigRational;
pub type Poly = Polynomial<Rational>;
pub type Vector = VectorField<Rational>;
pub type Bivector = BivectorField<Rational>;
pub type Trivector = TrivectorField<Rational>;
pub type SymmetricTensor = SymmetricTensorField<Rational>;
pub type Structure = DeformedPoissonStructure<Rational>;
pub type System = MetriplecticSystem<Rational>;
pub type Model = ModelDescriptor<Rational>;

pub type Trajectory64 = Trajectory<f64>;
pub type Trajectory32 = Trajectory<f32>;
pub type Record64 = DiagnosticRecord<f64>;
