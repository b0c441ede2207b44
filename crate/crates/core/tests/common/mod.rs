//! Shared strategies and independent oracles for the integration tests.
#![allow(dead_code)]

use metriplectic::scalar::ratio;
use metriplectic::{Bivector, CoordinateChart, Poly, Rational, SymmetricTensor};
use proptest::prelude::*;

pub fn chart(names: &[&str]) -> CoordinateChart {
    CoordinateChart::new(names.iter().copied()).unwrap()
}

pub fn var(chart: &CoordinateChart, name: &str) -> Poly {
    chart.coordinate_named(name).unwrap()
}

pub fn konst(n: usize, num: i64, den: i64) -> Poly {
    Poly::constant(n, ratio(num, den))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

/// Random polynomial in `nvars` variables with total degree at most `max_degree`.
pub fn arb_poly(nvars: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    // each of `max_degree` slots picks a variable or nothing
    let mono = prop::collection::vec(0..=nvars, max_degree as usize).prop_map(move |slots| {
        let mut e = vec![0u32; nvars];
        for s in slots {
            if s < nvars {
                e[s] += 1;
            }
        }
        e
    });
    prop::collection::vec((mono, small_rational()), 0..=max_terms).prop_map(move |terms| Poly::from_terms(nvars, terms))
}

pub fn arb_bivector(chart: CoordinateChart, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Bivector> {
    let n = chart.dim();
    prop::collection::vec(arb_poly(n, max_degree, max_terms), n * (n - 1) / 2).prop_map(move |entries| {
        let mut b = Bivector::zero(&chart);
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                b.set(i, j, it.next().unwrap()).unwrap();
            }
        }
        b
    })
}

pub fn arb_symmetric(
    chart: CoordinateChart,
    max_degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = SymmetricTensor> {
    let n = chart.dim();
    prop::collection::vec(arb_poly(n, max_degree, max_terms), n * (n + 1) / 2).prop_map(move |entries| {
        let mut s = SymmetricTensor::zero(&chart);
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i..n {
                s.set(i, j, it.next().unwrap()).unwrap();
            }
        }
        s
    })
}

/// `sum_{a,b} P^{ab} d_a f d_b g`, written directly from the accessor.
pub fn oracle_bracket(p: &Bivector, f: &Poly, g: &Poly) -> Poly {
    let n = p.dim();
    let mut acc = Poly::zero(n);
    for a in 0..n {
        let fa = f.diff(a).unwrap();
        if fa.is_zero() {
            continue;
        }
        for b in 0..n {
            let gb = g.diff(b).unwrap();
            acc = &acc + &(&(&p.get(a, b) * &fa) * &gb);
        }
    }
    acc
}

pub fn jacobiator(p: &Bivector, f: &Poly, g: &Poly, h: &Poly) -> Poly {
    let t1 = oracle_bracket(p, f, &oracle_bracket(p, g, h));
    let t2 = oracle_bracket(p, g, &oracle_bracket(p, h, f));
    let t3 = oracle_bracket(p, h, &oracle_bracket(p, f, g));
    &(&t1 + &t2) + &t3
}

/// Component `i` of the sharp map, `sum_j P^{ij} d_j f`.
pub fn oracle_sharp(p: &Bivector, f: &Poly) -> Vec<Poly> {
    let n = p.dim();
    (0..n)
        .map(|i| {
            let mut acc = Poly::zero(n);
            for j in 0..n {
                acc = &acc + &(&p.get(i, j) * &f.diff(j).unwrap());
            }
            acc
        })
        .collect()
}

pub fn directional(f: &Poly, field: &[Poly]) -> Poly {
    let mut acc = Poly::zero(f.nvars());
    for (i, x) in field.iter().enumerate() {
        acc = &acc + &(&f.diff(i).unwrap() * x);
    }
    acc
}

pub fn to_f64(p: &Poly, x: &[f64]) -> f64 {
    p.eval_real(x).unwrap()
}
