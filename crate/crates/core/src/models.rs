//! Built-in Poisson structures and the float-valued group maps used to
//! cross-check them.

use std::fmt;

use thiserror::Error;

use crate::brackets::{DeformedPoissonStructure, MetriplecticSystem, NamedPolynomial, SystemError};
use crate::multivector::{schouten_bb, BivectorField, CoordinateChart, FieldError};
use crate::poly::Polynomial;
use crate::scalar::{parse_rational, Real, Scalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("coefficient table is not skew at ({i}, {j})")]
    NotSkew { i: usize, j: usize },
    #[error("coefficient table must be {expected}x{expected}, got a row of length {got}")]
    NotSquare { expected: usize, got: usize },
    #[error("Jacobi identity fails at ({}, {}, {}): residual {residual}", .triple.0, .triple.1, .triple.2)]
    JacobiFailure { triple: (String, String, String), residual: String },
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("malformed model name '{0}'")]
    MalformedName(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A named Poisson structure with its known invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelDescriptor<T> {
    pub name: String,
    pub chart: CoordinateChart,
    pub base: BivectorField<T>,
    pub cocycle: Option<BivectorField<T>>,
    pub casimirs: Vec<NamedPolynomial<T>>,
    pub extended_casimirs: Vec<NamedPolynomial<T>>,
    pub default_entropy: Polynomial<T>,
    pub default_hamiltonian: Polynomial<T>,
    pub notes: String,
}

impl<T: Scalar> ModelDescriptor<T> {
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn structure(&self) -> DeformedPoissonStructure<T> {
        match &self.cocycle {
            Some(a) => DeformedPoissonStructure::new(self.base.clone(), a.clone()).expect("cocycle on model chart"),
            None => DeformedPoissonStructure::undeformed(self.base.clone()),
        }
    }

    /// `base + cocycle`, or just `base` when there is no cocycle.
    pub fn deformed(&self) -> BivectorField<T> {
        self.structure().deformed()
    }

    pub fn system(
        &self,
        hamiltonian: Polynomial<T>,
        entropy: Polynomial<T>,
    ) -> Result<MetriplecticSystem<T>, SystemError> {
        MetriplecticSystem::new(self.structure(), hamiltonian, entropy)?
            .with_casimirs(self.casimirs.clone())?
            .with_extended_casimirs(self.extended_casimirs.clone())
    }

    pub fn default_system(&self) -> Result<MetriplecticSystem<T>, SystemError> {
        self.system(self.default_hamiltonian.clone(), self.default_entropy.clone())
    }
}

impl<T: Scalar> fmt::Display for ModelDescriptor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model {}", self.name)?;
        writeln!(f, "chart {} dim {}", self.chart, self.dim())?;
        writeln!(f, "bivector:")?;
        writeln!(f, "{}", self.base.render_matrix())?;
        match &self.cocycle {
            Some(a) => {
                writeln!(f, "cocycle:")?;
                writeln!(f, "{}", a.render_matrix())?;
            }
            None => writeln!(f, "cocycle: none")?,
        }
        let names = self.chart.names();
        for c in &self.casimirs {
            writeln!(f, "casimir {} = {}", c.name, c.poly.render(names))?;
        }
        for c in &self.extended_casimirs {
            writeln!(f, "extended casimir {} = {}", c.name, c.poly.render(names))?;
        }
        writeln!(f, "default hamiltonian = {}", self.default_hamiltonian.render(names))?;
        writeln!(f, "default entropy = {}", self.default_entropy.render(names))?;
        if !self.notes.is_empty() {
            writeln!(f, "notes: {}", self.notes)?;
        }
        Ok(())
    }
}

fn small<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("small integers are representable")
}

fn half<T: Scalar>() -> T {
    T::one() / small(2)
}

fn coords<T: Scalar>(chart: &CoordinateChart) -> Vec<Polynomial<T>> {
    (0..chart.dim()).map(|i| chart.coordinate(i)).collect()
}

fn norm_sq<T: Scalar>(v: &[Polynomial<T>]) -> Polynomial<T> {
    v.iter().fold(Polynomial::zero(v[0].nvars()), |acc, x| &acc + &(x * x))
}

fn cross<T: Scalar>(a: &[Polynomial<T>], b: &[Polynomial<T>]) -> Vec<Polynomial<T>> {
    vec![&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

/// Levi-Civita symbol on `{0,1,2}`: returns `(c, sign)` for `a != b`.
fn levi_civita(a: usize, b: usize) -> (usize, i64) {
    let c = 3 - a - b;
    let sign = if b == (a + 1) % 3 { 1 } else { -1 };
    (c, sign)
}

fn ensure_jacobi<T: Scalar>(base: &BivectorField<T>) -> Result<(), ModelError> {
    let sn = schouten_bb(base, base)?;
    if let Some(&(i, j, k, residual)) = sn.nonzero().first() {
        let chart = base.chart();
        return Err(ModelError::JacobiFailure {
            triple: (chart.name(i).into(), chart.name(j).into(), chart.name(k).into()),
            residual: residual.render(chart.names()),
        });
    }
    Ok(())
}

/// Darboux structure on `(q1..qn, p1..pn)`.
pub fn build_canonical<T: Scalar>(n: usize) -> Result<ModelDescriptor<T>, ModelError> {
    if n == 0 {
        return Err(ModelError::EmptyDimension);
    }
    let names = (1..=n).map(|i| format!("q{i}")).chain((1..=n).map(|i| format!("p{i}")));
    let chart = CoordinateChart::new(names)?;
    let dim = chart.dim();
    let base = BivectorField::from_entries(&chart, (0..n).map(|i| (i, n + i, Polynomial::one(dim))))?;
    let x = coords::<T>(&chart);
    Ok(ModelDescriptor {
        name: format!("canonical:{n}"),
        base,
        cocycle: None,
        casimirs: Vec::new(),
        extended_casimirs: Vec::new(),
        default_entropy: Polynomial::zero(dim),
        default_hamiltonian: norm_sq(&x).scale(&half()),
        notes: "nondegenerate; no Casimirs".into(),
        chart,
    })
}

/// `c^k_{ij}`, stored densely and kept antisymmetric in `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<T> {
    n: usize,
    c: Vec<T>,
}

impl<T: Scalar> StructureConstants<T> {
    pub fn new(n: usize) -> Self {
        StructureConstants { n, c: vec![T::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// Sets `c^k_{ij} = value` and `c^k_{ji} = -value`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: T) -> Result<(), ModelError> {
        let n = self.n;
        if i.max(j).max(k) >= n {
            return Err(FieldError::IndexOutOfRange { index: i.max(j).max(k), dim: n }.into());
        }
        if i == j {
            if value.is_zero() {
                return Ok(());
            }
            return Err(ModelError::NotSkew { i, j });
        }
        let (a, b) = (self.idx(i, j, k), self.idx(j, i, k));
        self.c[b] = -value.clone();
        self.c[a] = value;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[self.idx(i, j, k)]
    }

    /// Builds from a raw `c[i][j][k]` table, checking antisymmetry.
    pub fn from_table(table: Vec<Vec<Vec<T>>>) -> Result<Self, ModelError> {
        let n = table.len();
        let mut out = StructureConstants::new(n);
        for (i, rows) in table.iter().enumerate() {
            if rows.len() != n {
                return Err(ModelError::NotSquare { expected: n, got: rows.len() });
            }
            for (j, ks) in rows.iter().enumerate() {
                if ks.len() != n {
                    return Err(ModelError::NotSquare { expected: n, got: ks.len() });
                }
                for (k, v) in ks.iter().enumerate() {
                    if table[j][i][k] != -v.clone() {
                        return Err(ModelError::NotSkew { i, j });
                    }
                    let idx = out.idx(i, j, k);
                    out.c[idx] = v.clone();
                }
            }
        }
        Ok(out)
    }
}

/// `pi^{ij} = sum_k c^k_{ij} x_k`; rejects constants that break Jacobi.
pub fn build_lie_poisson<T: Scalar, S: AsRef<str>>(
    names: &[S],
    constants: &StructureConstants<T>,
) -> Result<ModelDescriptor<T>, ModelError> {
    let chart = CoordinateChart::new(names.iter().map(|s| s.as_ref()))?;
    let n = chart.dim();
    if constants.dim() != n {
        return Err(ModelError::NotSquare { expected: n, got: constants.dim() });
    }
    let x = coords::<T>(&chart);
    let mut base = BivectorField::zero(&chart);
    for i in 0..n {
        for j in i + 1..n {
            let entry = (0..n).fold(Polynomial::zero(n), |acc, k| &acc + &x[k].scale(constants.get(i, j, k)));
            base.set(i, j, entry)?;
        }
    }
    ensure_jacobi(&base)?;
    Ok(ModelDescriptor {
        name: "lie-poisson".into(),
        default_entropy: Polynomial::zero(n),
        default_hamiltonian: norm_sq(&x).scale(&half()),
        base,
        cocycle: None,
        casimirs: Vec::new(),
        extended_casimirs: Vec::new(),
        notes: String::new(),
        chart,
    })
}

/// `pi^{ij} = a_{ij} x_i x_j` on `(x1..xn)`.
pub fn build_lotka_volterra<T: Scalar>(a: &[Vec<T>]) -> Result<ModelDescriptor<T>, ModelError> {
    let n = a.len();
    if n == 0 {
        return Err(ModelError::EmptyDimension);
    }
    for row in a {
        if row.len() != n {
            return Err(ModelError::NotSquare { expected: n, got: row.len() });
        }
    }
    for i in 0..n {
        for j in i..n {
            if a[i][j] != -a[j][i].clone() {
                return Err(ModelError::NotSkew { i, j });
            }
        }
    }
    let chart = CoordinateChart::new((1..=n).map(|i| format!("x{i}")))?;
    let x = coords::<T>(&chart);
    let mut base = BivectorField::zero(&chart);
    for i in 0..n {
        for j in i + 1..n {
            base.set(i, j, (&x[i] * &x[j]).scale(&a[i][j]))?;
        }
    }
    ensure_jacobi(&base)?;
    let rows: Vec<String> = a.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
    Ok(ModelDescriptor {
        name: format!("lv:{}", rows.join(";")),
        default_entropy: Polynomial::zero(n),
        default_hamiltonian: x.iter().fold(Polynomial::zero(n), |acc, xi| &acc + xi),
        base,
        cocycle: None,
        casimirs: Vec::new(),
        extended_casimirs: Vec::new(),
        notes: String::new(),
        chart,
    })
}

/// Lie–Poisson structure on the dual of se(2), chart `(zeta, p1, p2)`.
pub fn build_se2<T: Scalar>() -> ModelDescriptor<T> {
    let chart = CoordinateChart::new(["zeta", "p1", "p2"]).expect("fixed chart");
    let x = coords::<T>(&chart);
    let base = BivectorField::from_entries(&chart, [(0, 1, -&x[2]), (0, 2, x[1].clone())]).expect("fixed entries");
    let p_sq = norm_sq(&x[1..]);
    ModelDescriptor {
        name: "se2".into(),
        base,
        cocycle: None,
        casimirs: vec![NamedPolynomial::new("C", p_sq.clone())],
        extended_casimirs: Vec::new(),
        default_entropy: p_sq.scale(&half()),
        default_hamiltonian: (&x[0] * &x[0]).scale(&half()),
        notes: "semidirect product so(2) x R^2".into(),
        chart,
    }
}

/// Central extension of se(2), chart `(zeta, p1, p2, c)` with cocycle
/// `a^{p1,p2} = c`.
pub fn build_se2_extended<T: Scalar>() -> ModelDescriptor<T> {
    let se2 = build_se2::<T>();
    let chart = CoordinateChart::new(["zeta", "p1", "p2", "c"]).expect("fixed chart");
    let mapping = [0, 1, 2];
    let base = se2.base.embed(&chart, &mapping).expect("embedding into a larger chart");
    let c = chart.coordinate::<T>(3);
    let cocycle = BivectorField::from_entries(&chart, [(1, 2, c.clone())]).expect("fixed entries");
    let lift = |p: &Polynomial<T>| p.embed(4, &mapping).expect("embedding into a larger chart");
    ModelDescriptor {
        name: "se2ext".into(),
        base,
        cocycle: Some(cocycle),
        casimirs: se2.casimirs.iter().map(|nc| NamedPolynomial::new(nc.name.clone(), lift(&nc.poly))).collect(),
        extended_casimirs: vec![NamedPolynomial::new("central", c)],
        default_entropy: lift(&se2.default_entropy),
        default_hamiltonian: chart.coordinate(1),
        notes: "c = 0 recovers the embedded se(2) dynamics".into(),
        chart,
    }
}

pub const GALILEI_NAMES: [&str; 10] = ["zeta1", "zeta2", "zeta3", "g1", "g2", "g3", "p1", "p2", "p3", "E"];

/// Lie–Poisson structure on the dual of the Galilei algebra in the hat-map
/// chart `(zeta, g, p, E)`.
pub fn build_galilei<T: Scalar>() -> ModelDescriptor<T> {
    let chart = CoordinateChart::new(GALILEI_NAMES).expect("fixed chart");
    galilei_on(chart, "galilei")
}

fn galilei_on<T: Scalar>(chart: CoordinateChart, name: &str) -> ModelDescriptor<T> {
    let x = coords::<T>(&chart);
    let (zeta, g, p, e) = (&x[0..3], &x[3..6], &x[6..9], 9);
    let mut base = BivectorField::zero(&chart);
    for a in 0..3 {
        for b in 0..3 {
            if a == b {
                continue;
            }
            let (c, sign) = levi_civita(a, b);
            let s = small::<T>(sign);
            if a < b {
                base.set(a, b, zeta[c].scale(&s)).expect("valid pair");
            }
            base.set(a, 3 + b, g[c].scale(&s)).expect("valid pair");
            base.set(a, 6 + b, p[c].scale(&s)).expect("valid pair");
        }
        base.set(3 + a, e, p[a].clone()).expect("valid pair");
    }
    let c1 = norm_sq(p);
    let c2 = norm_sq(&cross(p, g));
    let entropy = (&c1 + &c2).scale(&half());
    let hamiltonian = &c1.scale(&half()) + &x[e];
    ModelDescriptor {
        name: name.into(),
        base,
        cocycle: None,
        casimirs: vec![NamedPolynomial::new("C1", c1), NamedPolynomial::new("C2", c2)],
        extended_casimirs: Vec::new(),
        default_entropy: entropy,
        default_hamiltonian: hamiltonian,
        notes: String::new(),
        chart,
    }
}

/// Bargmann central extension of the Galilei structure by the mass `M`,
/// cocycle `a^{gi,pi} = M`.
pub fn build_bargmann<T: Scalar>() -> ModelDescriptor<T> {
    let chart = CoordinateChart::new(GALILEI_NAMES.iter().copied().chain(["M"])).expect("fixed chart");
    let mut model = galilei_on::<T>(chart.clone(), "bargmann");
    let x = coords::<T>(&chart);
    let m = &x[10];
    let cocycle =
        BivectorField::from_entries(&chart, (0..3).map(|i| (3 + i, 6 + i, m.clone()))).expect("fixed entries");
    let (zeta, g, p, e) = (&x[0..3], &x[3..6], &x[6..9], &x[9]);
    let mass_shell = &(m * e).scale(&small(2)) - &norm_sq(p);
    let gp = cross(g, p);
    let spin: Vec<_> = (0..3).map(|i| &(m * &zeta[i]) - &gp[i]).collect();
    model.cocycle = Some(cocycle);
    model.extended_casimirs = vec![
        NamedPolynomial::new("mass", m.clone()),
        NamedPolynomial::new("mass_shell", mass_shell),
        NamedPolynomial::new("spin", norm_sq(&spin)),
    ];
    model.notes = "M = 0 recovers the embedded Galilei dynamics".into();
    model
}

pub const BUILTIN_NAMES: [&str; 6] = ["canonical:N", "se2", "se2ext", "galilei", "bargmann", "lv:<matrix>"];

/// Looks up a builtin by registry name: `canonical:N`, `se2`, `se2ext`,
/// `galilei`, `bargmann`, or `lv:<rows>` with rows separated by `;` and
/// entries by `,` (integers or `p/q`).
pub fn model_by_name(name: &str) -> Result<ModelDescriptor<Rational>, ModelError> {
    match name {
        "se2" => return Ok(build_se2()),
        "se2ext" => return Ok(build_se2_extended()),
        "galilei" => return Ok(build_galilei()),
        "bargmann" => return Ok(build_bargmann()),
        _ => {}
    }
    if let Some(n) = name.strip_prefix("canonical:") {
        let n: usize = n.trim().parse().map_err(|_| ModelError::MalformedName(name.into()))?;
        return build_canonical(n);
    }
    if let Some(body) = name.strip_prefix("lv:") {
        let matrix = body
            .split(';')
            .map(|row| row.split(',').map(parse_rational).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| ModelError::MalformedName(name.into()))?;
        return build_lotka_volterra(&matrix);
    }
    Err(ModelError::UnknownModel(name.into()))
}

/// Registry entries used for listings (`canonical:2` and a 3-species LV
/// stand in for the parametrised families).
pub fn registry_examples() -> Vec<ModelDescriptor<Rational>> {
    ["canonical:2", "se2", "se2ext", "galilei", "bargmann", "lv:0,1,1;-1,0,1;-1,-1,0"]
        .iter()
        .map(|n| model_by_name(n).expect("registry examples are valid"))
        .collect()
}

/// Element of SE(2): rotation angle and translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElementSE2<F> {
    pub angle: F,
    pub translation: [F; 2],
}

impl<F: Real> GroupElementSE2<F> {
    pub fn identity() -> Self {
        GroupElementSE2 { angle: F::zero(), translation: [F::zero(); 2] }
    }

    pub fn rotation(&self) -> [[F; 2]; 2] {
        let (s, c) = self.angle.sin_cos();
        [[c, -s], [s, c]]
    }

    pub fn matrix(&self) -> [[F; 3]; 3] {
        let r = self.rotation();
        let [vx, vy] = self.translation;
        [[r[0][0], r[0][1], vx], [r[1][0], r[1][1], vy], [F::zero(), F::zero(), F::one()]]
    }

    /// Reads angle and translation back from a homogeneous matrix.
    pub fn from_matrix(m: &[[F; 3]; 3]) -> Self {
        GroupElementSE2 { angle: m[1][0].atan2(m[0][0]), translation: [m[0][2], m[1][2]] }
    }
}

fn j_times<F: Real>(v: [F; 2]) -> [F; 2] {
    [-v[1], v[0]]
}

/// Closed-form exponential of `(omega J, u)` as a homogeneous 3x3 matrix.
pub fn se2_exp<F: Real>(omega: F, u: [F; 2]) -> [[F; 3]; 3] {
    let (s, c) = omega.sin_cos();
    let (a, b) = if omega.abs() < F::from_f64(1e-6).unwrap() {
        let w2 = omega * omega;
        let six = F::from_f64(6.0).unwrap();
        let two = F::from_f64(2.0).unwrap();
        let twenty_four = F::from_f64(24.0).unwrap();
        (F::one() - w2 / six, omega / two - omega * w2 / twenty_four)
    } else {
        (s / omega, (F::one() - c) / omega)
    };
    // V u = a u + b J u
    let ju = j_times(u);
    let v = [a * u[0] + b * ju[0], a * u[1] + b * ju[1]];
    GroupElementSE2 { angle: omega, translation: v }.matrix()
}

fn rotate<F: Real>(g: &GroupElementSE2<F>, p: [F; 2]) -> [F; 2] {
    let r = g.rotation();
    [r[0][0] * p[0] + r[0][1] * p[1], r[1][0] * p[0] + r[1][1] * p[1]]
}

/// `Ad*_{g^-1}(zeta, p) = (zeta + <R p, J v>, R p)`, dual to
/// `Ad_g(omega, u) = (omega, R u - omega J v)` under `zeta omega + p . u`.
/// Leaves `p1^2 + p2^2` invariant.
pub fn se2_coadjoint<F: Real>(g: &GroupElementSE2<F>, zeta: F, p: [F; 2]) -> (F, [F; 2]) {
    let rp = rotate(g, p);
    let jv = j_times(g.translation);
    (zeta + rp[0] * jv[0] + rp[1] * jv[1], rp)
}

/// `(zeta, R p + zeta J v)`: the transpose of [`se2_coadjoint`]. It keeps
/// `zeta` fixed and does not preserve `|p|` unless `zeta = 0`.
pub fn se2_coadjoint_transposed<F: Real>(g: &GroupElementSE2<F>, zeta: F, p: [F; 2]) -> (F, [F; 2]) {
    let rp = rotate(g, p);
    let jv = j_times(g.translation);
    (zeta, [rp[0] + zeta * jv[0], rp[1] + zeta * jv[1]])
}

pub fn cross3<F: Real>(a: [F; 3], b: [F; 3]) -> [F; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3<F: Real>(a: [F; 3], b: [F; 3]) -> F {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Galilei algebra element or dual element in the hat-map chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GalileiVector<F> {
    pub rot: [F; 3],
    pub boost: [F; 3],
    pub trans: [F; 3],
    pub time: F,
}

impl<F: Real> GalileiVector<F> {
    pub fn from_slice(x: &[F]) -> Self {
        GalileiVector { rot: [x[0], x[1], x[2]], boost: [x[3], x[4], x[5]], trans: [x[6], x[7], x[8]], time: x[9] }
    }

    pub fn to_vec(&self) -> Vec<F> {
        let mut out = Vec::with_capacity(10);
        out.extend_from_slice(&self.rot);
        out.extend_from_slice(&self.boost);
        out.extend_from_slice(&self.trans);
        out.push(self.time);
        out
    }
}

/// `ad*_{(xi,beta,gamma,eps)}(zeta,g,p,E) =
/// (-xi x zeta - beta x g - gamma x p, -xi x g + p eps, -xi x p, -beta . p)`.
pub fn galilei_coadjoint_algebra<F: Real>(xi: &GalileiVector<F>, mu: &GalileiVector<F>) -> GalileiVector<F> {
    let neg = |v: [F; 3]| [-v[0], -v[1], -v[2]];
    let add = |a: [F; 3], b: [F; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let rot = add(add(neg(cross3(xi.rot, mu.rot)), neg(cross3(xi.boost, mu.boost))), neg(cross3(xi.trans, mu.trans)));
    let scaled_p = [mu.trans[0] * xi.time, mu.trans[1] * xi.time, mu.trans[2] * xi.time];
    GalileiVector {
        rot,
        boost: add(neg(cross3(xi.rot, mu.boost)), scaled_p),
        trans: neg(cross3(xi.rot, mu.trans)),
        time: -dot3(xi.boost, mu.trans),
    }
}

/// Orientation of the rotation block relative to the Galilei bivector.
pub const GALILEI_ROTATION_ORIENTATION: f64 = -1.0;
/// Global sign applied after the orientation flip.
pub const GALILEI_GLOBAL_SIGN: f64 = 1.0;

/// The reversible Galilei field at `mu`, computed from the algebra coadjoint
/// map with the frozen orientation and sign. `grad` is `dH` at `mu`.
pub fn galilei_coadjoint_field<F: Real>(grad: &GalileiVector<F>, mu: &GalileiVector<F>) -> GalileiVector<F> {
    let o = F::from_f64(GALILEI_ROTATION_ORIENTATION).unwrap();
    let s = F::from_f64(GALILEI_GLOBAL_SIGN).unwrap();
    let flip = |v: [F; 3]| [o * v[0], o * v[1], o * v[2]];
    let xi = GalileiVector { rot: flip(grad.rot), ..*grad };
    let mu = GalileiVector { rot: flip(mu.rot), ..*mu };
    let out = galilei_coadjoint_algebra(&xi, &mu);
    let sc = |v: [F; 3]| [s * v[0], s * v[1], s * v[2]];
    GalileiVector { rot: sc(flip(out.rot)), boost: sc(out.boost), trans: sc(out.trans), time: s * out.time }
}
