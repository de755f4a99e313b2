//! Shared fixtures for the benchmarks.

use maxsub::catalog::{self, CatalogKey};
use maxsub::exact::{Scalar, ScalarMode};
use maxsub::polyfield::{parse_field, Monomial, PolyVectorField, Polynomial, Space};
use maxsub::subalgebra::Subalgebra;

pub fn preset(key: &str) -> Subalgebra {
    let k: CatalogKey = key.parse().expect("known preset");
    catalog::build(&k, k.space(ScalarMode::Rational)).expect("preset builds")
}

pub fn fields(n: usize, xs: &[&str]) -> Vec<PolyVectorField> {
    let s = Space::real(n);
    xs.iter().map(|x| parse_field(x, s).expect("valid field")).collect()
}

/// Generators of the projective algebra in `n` variables: constants, the
/// rank-one linear field and the inversions.
pub fn projective_generators(n: usize) -> Vec<PolyVectorField> {
    let s = Space::real(n);
    let mut gens: Vec<PolyVectorField> = (0..n).map(|i| PolyVectorField::partial(s, i)).collect();
    let euler = PolyVectorField::euler(s);
    gens.push(parse_field("x1*d1", s).expect("valid field"));
    for i in 0..n {
        gens.push(euler.mul_polynomial(&Polynomial::from_terms(n, [(Monomial::var(n, i), Scalar::ONE)])));
    }
    gens
}
