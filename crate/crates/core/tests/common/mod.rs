#![allow(dead_code)]

use maxsub::exact::{Rational, Scalar};
use maxsub::polyfield::{Monomial, PolyVectorField, Space};
use maxsub::symtensor::SymTensor;
use proptest::prelude::*;

/// Small rationals with a few distinct denominators.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, prop_oneof![Just(1i64), Just(2), Just(3)]).prop_map(|(a, b)| Scalar::real(Rational::new(a, b)))
}

fn monomial(n: usize, deg: u32) -> impl Strategy<Value = Monomial> {
    let all = Monomial::all_of_degree(n, deg);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// A homogeneous field of degree `p` with up to four terms.
pub fn homogeneous(n: usize, p: i32) -> impl Strategy<Value = PolyVectorField> {
    let s = Space::real(n);
    proptest::collection::vec((monomial(n, (p + 1) as u32), 0..n, scalar()), 1..=4)
        .prop_map(move |ts| PolyVectorField::from_terms(s, ts))
}

/// A field with components in degrees −1..=max_p.
pub fn field(n: usize, max_p: i32) -> impl Strategy<Value = PolyVectorField> {
    let s = Space::real(n);
    proptest::collection::vec((-1..=max_p, 0..n, scalar(), any::<u32>()), 1..=5).prop_map(move |ts| {
        PolyVectorField::from_terms(
            s,
            ts.into_iter().map(|(p, j, c, pick)| {
                let all = Monomial::all_of_degree(n, (p + 1) as u32);
                (all[pick as usize % all.len()].clone(), j, c)
            }),
        )
    })
}

pub fn tensor(n: usize, p: i32) -> impl Strategy<Value = SymTensor> {
    homogeneous(n, p).prop_map(move |x| SymTensor::from_field_of_degree(&x, p).unwrap())
}

pub fn gaussian_scalar() -> impl Strategy<Value = Scalar> {
    (scalar(), scalar()).prop_map(|(a, b)| Scalar::new(a.re().clone(), b.re().clone()))
}

/// A field over ℚ(i) with components in degrees −1..=max_p.
pub fn gaussian_field(n: usize, max_p: i32) -> impl Strategy<Value = PolyVectorField> {
    let s = Space::gaussian(n);
    proptest::collection::vec((-1..=max_p, 0..n, gaussian_scalar(), any::<u32>()), 1..=4).prop_map(move |ts| {
        PolyVectorField::from_terms(
            s,
            ts.into_iter().map(|(p, j, c, pick)| {
                let all = Monomial::all_of_degree(n, (p + 1) as u32);
                (all[pick as usize % all.len()].clone(), j, c)
            }),
        )
    })
}
