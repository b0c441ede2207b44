//! Coordinate charts and polynomial multivector fields up to degree three,
//! together with the Schouten–Nijenhuis bracket of two bivectors, the sharp
//! map and the induced Poisson bracket.
//!
//! Skew and symmetric tensors are stored by triangle; the accessors supply
//! the implied entries, so the symmetry invariants cannot be broken.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{PolyError, Polynomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("chart mismatch: [{left}] vs [{right}]")]
    ChartMismatch { left: String, right: String },
    #[error("dimension mismatch: chart has {chart} coordinates, operand has {operand}")]
    DimensionMismatch { chart: usize, operand: usize },
    #[error("diagonal entry ({0},{0}) of a skew tensor must be zero")]
    DiagonalEntry(usize),
    #[error("index {index} out of range for chart of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("coordinate chart must have at least one coordinate")]
    EmptyChart,
    #[error("duplicate coordinate name `{0}`")]
    DuplicateName(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Ordered list of distinct coordinate names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordinateChart {
    names: Arc<[String]>,
}

impl CoordinateChart {
    pub fn new<I, S>(names: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(FieldError::EmptyChart);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(FieldError::DuplicateName(n.clone()));
            }
        }
        Ok(CoordinateChart { names: names.into() })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coordinate function `x_index` as a polynomial on this chart.
    pub fn coordinate<T: Scalar>(&self, index: usize) -> Polynomial<T> {
        Polynomial::var(self.dim(), index).expect("coordinate index in range")
    }

    /// Looks a coordinate up by name.
    pub fn coordinate_named<T: Scalar>(&self, name: &str) -> Option<Polynomial<T>> {
        self.index_of(name).map(|i| self.coordinate(i))
    }

    pub fn same_as(&self, other: &Self) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::ChartMismatch { left: self.names.join(","), right: other.names.join(",") })
        }
    }

    fn check_poly<T: Scalar>(&self, p: &Polynomial<T>) -> Result<(), FieldError> {
        if p.nvars() != self.dim() {
            return Err(FieldError::DimensionMismatch { chart: self.dim(), operand: p.nvars() });
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<(), FieldError> {
        if index >= self.dim() {
            return Err(FieldError::IndexOutOfRange { index, dim: self.dim() });
        }
        Ok(())
    }
}

impl fmt::Display for CoordinateChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(", "))
    }
}

fn gradient_on<T: Scalar>(chart: &CoordinateChart, f: &Polynomial<T>) -> Result<Vec<Polynomial<T>>, FieldError> {
    chart.check_poly(f)?;
    Ok(f.gradient())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<T> {
    chart: CoordinateChart,
    components: Vec<Polynomial<T>>,
}

impl<T: Scalar> VectorField<T> {
    pub fn new(chart: CoordinateChart, components: Vec<Polynomial<T>>) -> Result<Self, FieldError> {
        if components.len() != chart.dim() {
            return Err(FieldError::DimensionMismatch { chart: chart.dim(), operand: components.len() });
        }
        for c in &components {
            chart.check_poly(c)?;
        }
        Ok(VectorField { chart, components })
    }

    pub fn zero(chart: &CoordinateChart) -> Self {
        VectorField { chart: chart.clone(), components: vec![Polynomial::zero(chart.dim()); chart.dim()] }
    }

    pub fn chart(&self) -> &CoordinateChart {
        &self.chart
    }

    pub fn components(&self) -> &[Polynomial<T>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<T> {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial<T>> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Directional derivative `<df, X> = sum_i X^i d_i f`.
    pub fn apply(&self, f: &Polynomial<T>) -> Result<Polynomial<T>, FieldError> {
        let grad = gradient_on(&self.chart, f)?;
        Ok(dot(&self.components, &grad, self.chart.dim()))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.chart.same_as(&other.chart)?;
        Ok(VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        VectorField { chart: self.chart.clone(), components: self.components.iter().map(|c| c.scale(factor)).collect() }
    }

    /// One line per nonzero component, `name: <poly>`; `0` for the zero field.
    pub fn render(&self) -> String {
        let names = self.chart.names();
        let lines: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}: {}", names[i], c.render(names)))
            .collect();
        if lines.is_empty() {
            "0".into()
        } else {
            lines.join("\n")
        }
    }
}

fn dot<T: Scalar>(a: &[Polynomial<T>], b: &[Polynomial<T>], n: usize) -> Polynomial<T> {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Polynomial::zero(n), |acc, (x, y)| &acc + &(x * y))
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Skew-symmetric contravariant 2-tensor with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BivectorField<T> {
    chart: CoordinateChart,
    upper: Vec<Polynomial<T>>,
}

impl<T: Scalar> BivectorField<T> {
    pub fn zero(chart: &CoordinateChart) -> Self {
        let n = chart.dim();
        BivectorField { chart: chart.clone(), upper: vec![Polynomial::zero(n); n * n.saturating_sub(1) / 2] }
    }

    /// Builds from `(i, j, coefficient)` entries; an entry with `i > j` sets
    /// `pi^{ji} = -coefficient`. Later entries overwrite earlier ones.
    pub fn from_entries<I>(chart: &CoordinateChart, entries: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = (usize, usize, Polynomial<T>)>,
    {
        let mut b = Self::zero(chart);
        for (i, j, p) in entries {
            b.set(i, j, p)?;
        }
        Ok(b)
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial<T>) -> Result<(), FieldError> {
        self.chart.check_index(i)?;
        self.chart.check_index(j)?;
        self.chart.check_poly(&value)?;
        let n = self.chart.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(n, i, j)] = value,
            std::cmp::Ordering::Greater => self.upper[pair_index(n, j, i)] = -value,
            std::cmp::Ordering::Equal => return Err(FieldError::DiagonalEntry(i)),
        }
        Ok(())
    }

    pub fn chart(&self) -> &CoordinateChart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// `pi^{ij}` with `pi^{ji} = -pi^{ij}` and zero diagonal.
    pub fn get(&self, i: usize, j: usize) -> Polynomial<T> {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[pair_index(n, j, i)],
            std::cmp::Ordering::Equal => Polynomial::zero(n),
        }
    }

    /// Full coefficient matrix.
    pub fn dense(&self) -> Vec<Vec<Polynomial<T>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Nonzero upper-triangle entries `(i, j, pi^{ij})`, `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial<T>)> {
        let n = self.dim();
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, &self.upper[pair_index(n, i, j)]))
            .filter(|(_, _, p)| !p.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Polynomial::is_zero)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.chart.same_as(&other.chart)?;
        Ok(BivectorField {
            chart: self.chart.clone(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, factor: &T) -> Self {
        BivectorField { chart: self.chart.clone(), upper: self.upper.iter().map(|p| p.scale(factor)).collect() }
    }

    /// Moves the field to a larger chart; old coordinate `i` becomes
    /// `mapping[i]` in `chart`.
    pub fn embed(&self, chart: &CoordinateChart, mapping: &[usize]) -> Result<Self, FieldError> {
        let mut out = Self::zero(chart);
        for (i, j, p) in self.entries() {
            out.set(mapping[i], mapping[j], p.embed(chart.dim(), mapping)?)?;
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient (e.g. substitution of a coordinate).
    pub fn map_entries(&self, f: impl Fn(&Polynomial<T>) -> Polynomial<T>) -> Self {
        BivectorField { chart: self.chart.clone(), upper: self.upper.iter().map(f).collect() }
    }

    /// `pi(df, dg) = sum_ij pi^{ij} a_i b_j` for covector components `a`, `b`.
    pub fn pair(&self, a: &[Polynomial<T>], b: &[Polynomial<T>]) -> Polynomial<T> {
        let n = self.dim();
        let mut acc = Polynomial::zero(n);
        for (i, j, p) in self.entries() {
            // pi^{ij}(a_i b_j - a_j b_i)
            let cross = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
            if !cross.is_zero() {
                acc = &acc + &(p * &cross);
            }
        }
        acc
    }

    pub fn render(&self) -> String {
        let names = self.chart.names();
        let lines: Vec<String> =
            self.entries().map(|(i, j, p)| format!("{},{}: {}", names[i], names[j], p.render(names))).collect();
        if lines.is_empty() {
            "0".into()
        } else {
            lines.join("\n")
        }
    }

    /// Coefficient matrix as aligned text rows.
    pub fn render_matrix(&self) -> String {
        let names = self.chart.names();
        let cells: Vec<Vec<String>> =
            self.dense().iter().map(|row| row.iter().map(|p| p.render(names)).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                format!("[ {} ]", padded.join("  "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Fully antisymmetric contravariant 3-tensor. On charts of dimension < 3
/// it has no components and is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivectorField<T> {
    chart: CoordinateChart,
    components: Vec<Polynomial<T>>,
}

fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    // Position of (i, j, k), i < j < k, in lexicographic enumeration.
    let mut idx = 0;
    for a in 0..i {
        let m = n - a - 1;
        idx += m * (m - 1) / 2;
    }
    idx + pair_index(n - i - 1, j - i - 1, k - i - 1)
}

impl<T: Scalar> TrivectorField<T> {
    pub fn zero(chart: &CoordinateChart) -> Self {
        let n = chart.dim();
        let count = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
        TrivectorField { chart: chart.clone(), components: vec![Polynomial::zero(n); count] }
    }

    pub fn chart(&self) -> &CoordinateChart {
        &self.chart
    }

    /// `T^{ijk}` for any index order, with the sign of the sorting permutation.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Polynomial<T> {
        let n = self.chart.dim();
        if i == j || j == k || i == k {
            return Polynomial::zero(n);
        }
        let mut idx = [i, j, k];
        let mut sign_negative = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign_negative = !sign_negative;
                }
            }
        }
        let p = &self.components[triple_index(n, idx[0], idx[1], idx[2])];
        if sign_negative {
            -p
        } else {
            p.clone()
        }
    }

    fn set_sorted(&mut self, i: usize, j: usize, k: usize, value: Polynomial<T>) {
        let n = self.chart.dim();
        self.components[triple_index(n, i, j, k)] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `true` when the chart is too small to carry any component.
    pub fn is_trivially_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Nonzero components `(i, j, k, T^{ijk})` with `i < j < k`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, &Polynomial<T>)> {
        let n = self.chart.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let p = &self.components[triple_index(n, i, j, k)];
                    if !p.is_zero() {
                        out.push((i, j, k, p));
                    }
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let names = self.chart.names();
        let lines: Vec<String> = self
            .nonzero()
            .into_iter()
            .map(|(i, j, k, p)| format!("{},{},{}: {}", names[i], names[j], names[k], p.render(names)))
            .collect();
        if lines.is_empty() {
            "0".into()
        } else {
            lines.join("\n")
        }
    }
}

/// Symmetric contravariant 2-tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensorField<T> {
    chart: CoordinateChart,
    upper: Vec<Polynomial<T>>,
}

impl<T: Scalar> SymmetricTensorField<T> {
    pub fn zero(chart: &CoordinateChart) -> Self {
        let n = chart.dim();
        SymmetricTensorField { chart: chart.clone(), upper: vec![Polynomial::zero(n); n * (n + 1) / 2] }
    }

    fn index(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows before i hold n, n-1, ..., n-i+1 entries
        i * n - i * i.saturating_sub(1) / 2 + (j - i)
    }

    pub fn from_entries<I>(chart: &CoordinateChart, entries: I) -> Result<Self, FieldError>
    where
        I: IntoIterator<Item = (usize, usize, Polynomial<T>)>,
    {
        let mut s = Self::zero(chart);
        for (i, j, p) in entries {
            s.set(i, j, p)?;
        }
        Ok(s)
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial<T>) -> Result<(), FieldError> {
        self.chart.check_index(i)?;
        self.chart.check_index(j)?;
        self.chart.check_poly(&value)?;
        let n = self.chart.dim();
        self.upper[Self::index(n, i, j)] = value;
        Ok(())
    }

    pub fn chart(&self) -> &CoordinateChart {
        &self.chart
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<T> {
        &self.upper[Self::index(self.chart.dim(), i, j)]
    }

    /// `sigma(df, dg) = sum_ij sigma^{ij} a_i b_j`.
    pub fn pair(&self, a: &[Polynomial<T>], b: &[Polynomial<T>]) -> Polynomial<T> {
        let n = self.chart.dim();
        let mut acc = Polynomial::zero(n);
        for i in 0..n {
            for j in i..n {
                let s = self.get(i, j);
                if s.is_zero() {
                    continue;
                }
                let mut cross = &a[i] * &b[j];
                if i != j {
                    cross = &cross + &(&a[j] * &b[i]);
                }
                if !cross.is_zero() {
                    acc = &acc + &(s * &cross);
                }
            }
        }
        acc
    }
}

/// Schouten–Nijenhuis bracket of two bivectors:
///
/// `[P,Q]^{ijk} = sum_l P^{li} d_l Q^{jk} + Q^{li} d_l P^{jk} + (cyclic in ijk)`.
///
/// No `1/2` normalisation; only the vanishing locus is convention-free.
pub fn schouten_bb<T: Scalar>(p: &BivectorField<T>, q: &BivectorField<T>) -> Result<TrivectorField<T>, FieldError> {
    p.chart.same_as(&q.chart)?;
    let chart = &p.chart;
    let n = chart.dim();
    let mut out = TrivectorField::zero(chart);
    if n < 3 {
        return Ok(out);
    }
    let pd = p.dense();
    let qd = q.dense();
    // derivatives d_l X^{jk}, indexed [l][j][k]
    let derivs = |d: &Vec<Vec<Polynomial<T>>>| -> Vec<Vec<Vec<Polynomial<T>>>> {
        (0..n)
            .map(|l| (0..n).map(|j| (0..n).map(|k| d[j][k].diff(l).expect("index in range")).collect()).collect())
            .collect()
    };
    let dp = derivs(&pd);
    let dq = derivs(&qd);
    let term = |a: &Vec<Vec<Polynomial<T>>>, db: &Vec<Vec<Vec<Polynomial<T>>>>, i: usize, j: usize, k: usize| {
        let mut acc = Polynomial::zero(n);
        for l in 0..n {
            let coeff = &a[l][i];
            let deriv = &db[l][j][k];
            if !coeff.is_zero() && !deriv.is_zero() {
                acc = &acc + &(coeff * deriv);
            }
        }
        acc
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut c = Polynomial::zero(n);
                for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
                    c = &c + &term(&pd, &dq, a, b, d);
                    c = &c + &term(&qd, &dp, a, b, d);
                }
                out.set_sorted(i, j, k, c);
            }
        }
    }
    Ok(out)
}

/// Lie derivative of a bivector along a vector field:
/// `(L_X P)^{ij} = sum_l X^l d_l P^{ij} - P^{lj} d_l X^i - P^{il} d_l X^j`.
pub fn lie_derivative_bivector<T: Scalar>(
    x: &VectorField<T>,
    p: &BivectorField<T>,
) -> Result<BivectorField<T>, FieldError> {
    x.chart.same_as(&p.chart)?;
    let n = p.dim();
    let pd = p.dense();
    let dx: Vec<Vec<Polynomial<T>>> = x.components.iter().map(|c| c.gradient()).collect();
    let mut out = BivectorField::zero(&p.chart);
    for i in 0..n {
        for j in i + 1..n {
            let mut acc = Polynomial::zero(n);
            for l in 0..n {
                if !x.components[l].is_zero() {
                    acc = &acc + &(&x.components[l] * &pd[i][j].diff(l)?);
                }
                acc = &acc - &(&pd[l][j] * &dx[i][l]);
                acc = &acc - &(&pd[i][l] * &dx[j][l]);
            }
            out.set(i, j, acc)?;
        }
    }
    Ok(out)
}

/// `P#(df)`: component `i` is `sum_j P^{ij} d_j f`.
pub fn sharp<T: Scalar>(p: &BivectorField<T>, f: &Polynomial<T>) -> Result<VectorField<T>, FieldError> {
    let grad = gradient_on(&p.chart, f)?;
    let n = p.dim();
    let mut comps = vec![Polynomial::zero(n); n];
    for (i, j, pij) in p.entries() {
        if !grad[j].is_zero() {
            comps[i] = &comps[i] + &(pij * &grad[j]);
        }
        if !grad[i].is_zero() {
            comps[j] = &comps[j] - &(pij * &grad[i]);
        }
    }
    VectorField::new(p.chart.clone(), comps)
}

/// `{f, g} = sum_ij P^{ij} d_i f d_j g`.
pub fn poisson_bracket<T: Scalar>(
    p: &BivectorField<T>,
    f: &Polynomial<T>,
    g: &Polynomial<T>,
) -> Result<Polynomial<T>, FieldError> {
    let df = gradient_on(&p.chart, f)?;
    let dg = gradient_on(&p.chart, g)?;
    Ok(p.pair(&df, &dg))
}
