//! Polynomial vector fields on K^n, graded by the Euler field.
//!
//! A field X = Σ Xʲ ∂_j is stored as a sorted map (x^α, j) ↦ coefficient,
//! so equal fields have equal representations. The homogeneous piece of
//! degree p has coefficients of degree p + 1 and is the p-eigenspace of
//! ad(𝓔).

mod monomial;
mod polynomial;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use text::{format_field, parse_field, parse_scalar};

use crate::exact::{Matrix, Scalar, ScalarMode, Subspace};

/// Degree beyond which closure computations stop and report a cap.
pub const DEFAULT_MAX_DEGREE: i32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyFieldError {
    #[error("fields live in different spaces ({0} vs {1})")]
    SpaceMismatch(Space, Space),
    #[error("index {index} out of range for dimension {dim} at position {pos}")]
    IndexOutOfRange { index: usize, dim: usize, pos: usize },
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("field is not homogeneous")]
    NotHomogeneous,
    #[error("dimension {0} is odd; a symplectic form needs even dimension")]
    OddDimension(usize),
    #[error("matrix is not a symplectic form: {0}")]
    NotSymplectic(&'static str),
    #[error("operation requires {} scalars", .0.name())]
    WrongMode(ScalarMode),
    #[error("space dimension must be at least 1")]
    ZeroDimension,
}

/// The ambient space E ≅ K^n together with the choice of scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    dim: usize,
    mode: ScalarMode,
}

impl Space {
    pub fn new(dim: usize, mode: ScalarMode) -> Result<Self, PolyFieldError> {
        if dim == 0 {
            return Err(PolyFieldError::ZeroDimension);
        }
        Ok(Space { dim, mode })
    }

    /// Real (ℚ) space of dimension n; panics if n = 0.
    pub fn real(dim: usize) -> Self {
        Space::new(dim, ScalarMode::Rational).expect("dimension must be positive")
    }

    /// Complex (ℚ(i)) space of dimension n; panics if n = 0.
    pub fn gaussian(dim: usize) -> Self {
        Space::new(dim, ScalarMode::Gaussian).expect("dimension must be positive")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} ({})", self.dim, self.mode.name())
    }
}

/// Coefficient key: monomial x^α in direction ∂_j (j is 0-based).
pub type FieldKey = (Monomial, usize);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVectorField {
    space: Space,
    terms: BTreeMap<FieldKey, Scalar>,
}

impl PolyVectorField {
    pub fn zero(space: Space) -> Self {
        PolyVectorField { space, terms: BTreeMap::new() }
    }

    /// ∂_j with 0-based j.
    pub fn partial(space: Space, j: usize) -> Self {
        Self::monomial(space, Monomial::one(space.dim), j, Scalar::ONE)
    }

    /// x_i ∂_j with 0-based indices.
    pub fn linear(space: Space, i: usize, j: usize) -> Self {
        Self::monomial(space, Monomial::var(space.dim, i), j, Scalar::ONE)
    }

    pub fn monomial(space: Space, m: Monomial, j: usize, c: Scalar) -> Self {
        assert_eq!(m.nvars(), space.dim, "monomial arity must match the space");
        assert!(j < space.dim, "direction out of range");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, j), c);
        }
        PolyVectorField { space, terms }
    }

    /// Builds a field from (exponents, direction, coefficient) triples,
    /// combining repeated keys and dropping zeros.
    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Monomial, usize, Scalar)>) -> Self {
        let mut out = PolyVectorField::zero(space);
        for (m, j, c) in terms {
            out.add_term(m, j, &c);
        }
        out
    }

    /// Σ xʲ ∂_j
    pub fn euler(space: Space) -> Self {
        Self::from_terms(space, (0..space.dim).map(|j| (Monomial::var(space.dim, j), j, Scalar::ONE)))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, usize, &Scalar)> {
        self.terms.iter().map(|((m, j), c)| (m, *j, c))
    }

    pub fn term_map(&self) -> &BTreeMap<FieldKey, Scalar> {
        &self.terms
    }

    pub fn into_term_map(self) -> BTreeMap<FieldKey, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, m: &Monomial, j: usize) -> Scalar {
        self.terms.get(&(m.clone(), j)).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, j: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, j)) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_space(&self, other: &Self) -> Result<(), PolyFieldError> {
        if self.space != other.space {
            return Err(PolyFieldError::SpaceMismatch(self.space, other.space));
        }
        Ok(())
    }

    /// self + c·other
    pub fn add_scaled(&self, other: &Self, c: &Scalar) -> Result<Self, PolyFieldError> {
        self.check_space(other)?;
        let mut out = self.clone();
        if !c.is_zero() {
            for ((m, j), v) in &other.terms {
                out.add_term(m.clone(), *j, &(v * c));
            }
        }
        Ok(out)
    }

    /// self += c·other; panics if the spaces differ.
    pub fn add_scaled_in_place(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.space, other.space, "fields must share a space");
        if c.is_zero() {
            return;
        }
        for ((m, j), v) in &other.terms {
            self.add_term(m.clone(), *j, &(v * c));
        }
    }

    /// Largest coefficient key, used as the pivot in echelon spans.
    pub fn leading_key(&self) -> Option<(&FieldKey, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyFieldError> {
        self.add_scaled(other, &Scalar::ONE)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyFieldError> {
        self.add_scaled(other, &Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return PolyVectorField::zero(self.space);
        }
        PolyVectorField { space: self.space, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    /// Multiplies every coefficient polynomial by the scalar polynomial `p`.
    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        let mut out = PolyVectorField::zero(self.space);
        for ((m, j), c) in &self.terms {
            for (pm, pc) in p.terms() {
                out.add_term(m.mul(pm), *j, &(c * pc));
            }
        }
        out
    }

    /// [X, Y] = Σ_{j,k} (Xʲ ∂_j Yᵏ − Yʲ ∂_j Xᵏ) e_k
    pub fn bracket(&self, other: &Self) -> Result<Self, PolyFieldError> {
        self.check_space(other)?;
        let mut out = PolyVectorField::zero(self.space);
        Self::accumulate_derivative(&mut out, self, other, &Scalar::ONE);
        Self::accumulate_derivative(&mut out, other, self, &Scalar::int(-1));
        Ok(out)
    }

    /// out += sign · Σ_{j,k} Xʲ ∂_j Yᵏ e_k
    fn accumulate_derivative(out: &mut Self, x: &Self, y: &Self, sign: &Scalar) {
        for ((mx, j), cx) in &x.terms {
            for ((my, k), cy) in &y.terms {
                let e = my.exponent(*j);
                if e == 0 {
                    continue;
                }
                let m = mx.mul(&my.div_var(*j).expect("exponent is positive"));
                let c = &(&(cx * cy) * &Scalar::int(e as i64)) * sign;
                out.add_term(m, *k, &c);
            }
        }
    }

    /// Degrees p (coefficient degree minus one) of the homogeneous pieces present.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|(m, _)| m.degree() as i32 - 1).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(|(m, _)| m.degree() as i32 - 1).max()
    }

    /// `Some(p)` when the field is nonzero and homogeneous of degree p.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        match self.degrees().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// The component in Vect_p.
    pub fn component(&self, p: i32) -> Self {
        PolyVectorField {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| m.degree() as i32 - 1 == p)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Decomposition into eigenvectors of ad(𝓔), keyed by eigenvalue.
    pub fn graded_components(&self) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for ((m, j), c) in &self.terms {
            let p = m.degree() as i32 - 1;
            out.entry(p)
                .or_insert_with(|| PolyVectorField::zero(self.space))
                .terms
                .insert((m.clone(), *j), c.clone());
        }
        out
    }

    /// Drops every component above degree `max`; reports whether anything was dropped.
    pub fn truncate(&self, max: i32) -> (Self, bool) {
        let mut dropped = false;
        let terms = self
            .terms
            .iter()
            .filter(|((m, _), _)| {
                let keep = m.degree() as i32 - 1 <= max;
                dropped |= !keep;
                keep
            })
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        (PolyVectorField { space: self.space, terms }, dropped)
    }

    /// Xʲ as a scalar polynomial (0-based j).
    pub fn component_polynomial(&self, j: usize) -> Polynomial {
        Polynomial::from_terms(
            self.space.dim,
            self.terms.iter().filter(|((_, k), _)| *k == j).map(|((m, _), c)| (m.clone(), c.clone())),
        )
    }

    /// div X = Σ_j ∂_j Xʲ
    pub fn divergence(&self) -> Polynomial {
        let n = self.space.dim;
        let mut out = Polynomial::zero(n);
        for ((m, j), c) in &self.terms {
            if let Some(q) = m.div_var(*j) {
                out.add_term(q, &(c * &Scalar::int(m.exponent(*j) as i64)));
            }
        }
        out
    }

    /// The derivation X(f) = Σ Xʲ ∂_j f.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let n = self.space.dim;
        let mut out = Polynomial::zero(n);
        for j in 0..n {
            let d = f.partial(j);
            if d.is_zero() {
                continue;
            }
            out = out.add(&self.component_polynomial(j).mul(&d));
        }
        out
    }

    /// Whether the 1-form ι_X ω is closed, i.e. ω·DX is symmetric at every
    /// point. The Hamiltonian function itself is never constructed, so the
    /// answer does not depend on a sign convention for X_H.
    pub fn is_hamiltonian(&self, omega: &Matrix) -> Result<bool, PolyFieldError> {
        let n = self.space.dim;
        if n % 2 == 1 {
            return Err(PolyFieldError::OddDimension(n));
        }
        check_symplectic(omega, n)?;
        // (ω·DX)_{ij} = Σ_k ω_{ik} ∂_j Xᵏ
        let jac: Vec<Vec<Polynomial>> =
            (0..n).map(|k| (0..n).map(|j| self.component_polynomial(k).partial(j)).collect()).collect();
        let entry = |i: usize, j: usize| {
            let mut acc = Polynomial::zero(n);
            for (k, row) in jac.iter().enumerate() {
                let w = &omega[(i, k)];
                if !w.is_zero() {
                    acc = acc.add(&row[j].scale(w));
                }
            }
            acc
        };
        for i in 0..n {
            for j in i + 1..n {
                if entry(i, j) != entry(j, i) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Views a holomorphic field on ℂⁿ as a real field on ℝ²ⁿ with
    /// coordinates (x_1..x_n, y_1..y_n), z_k = x_k + i·y_k: f ∂_z ↦ Re f ∂_x + Im f ∂_y.
    pub fn realify(&self) -> Result<Self, PolyFieldError> {
        if self.space.mode != ScalarMode::Gaussian {
            return Err(PolyFieldError::WrongMode(ScalarMode::Gaussian));
        }
        let n = self.space.dim;
        let real = Space::real(2 * n);
        let mut z_powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut out = PolyVectorField::zero(real);
        for ((m, j), c) in &self.terms {
            let mut p = Polynomial::constant(2 * n, c.clone());
            for k in 0..n {
                let e = m.exponent(k);
                if e == 0 {
                    continue;
                }
                let zk = z_powers.entry((k, e)).or_insert_with(|| {
                    let z = Polynomial::from_terms(
                        2 * n,
                        [(Monomial::var(2 * n, k), Scalar::ONE), (Monomial::var(2 * n, n + k), Scalar::i())],
                    );
                    (0..e).fold(Polynomial::constant(2 * n, Scalar::ONE), |acc, _| acc.mul(&z))
                });
                p = p.mul(zk);
            }
            for (pm, pc) in p.terms() {
                out.add_term(pm.clone(), *j, &Scalar::real(pc.re().clone()));
                out.add_term(pm.clone(), n + j, &Scalar::real(pc.im().clone()));
            }
        }
        Ok(out)
    }
}

fn check_symplectic(omega: &Matrix, n: usize) -> Result<(), PolyFieldError> {
    if omega.rows() != n || omega.cols() != n {
        return Err(PolyFieldError::NotSymplectic("wrong shape"));
    }
    if omega.transpose() != omega.neg() {
        return Err(PolyFieldError::NotSymplectic("not antisymmetric"));
    }
    if !omega.is_invertible() {
        return Err(PolyFieldError::NotSymplectic("degenerate"));
    }
    Ok(())
}

/// The standard form ω = [[0, I], [−I, 0]] on K^(2m).
pub fn standard_symplectic(n: usize) -> Matrix {
    let m = n / 2;
    Matrix::from_fn(n, n, |i, j| {
        if j == i + m && i < m {
            Scalar::ONE
        } else if i == j + m && j < m {
            Scalar::int(-1)
        } else {
            Scalar::ZERO
        }
    })
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_field(self))
    }
}

impl fmt::Debug for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_field(self))
    }
}

/// Coordinates on Vect_p: the monomial fields of degree p, in canonical order.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    space: Space,
    degree: i32,
    keys: Vec<FieldKey>,
    index: HashMap<FieldKey, usize>,
}

impl DegreeBasis {
    /// Panics if `degree < -1`.
    pub fn new(space: Space, degree: i32) -> Self {
        assert!(degree >= -1, "degrees start at -1");
        let n = space.dim;
        let mut keys = Vec::new();
        for m in Monomial::all_of_degree(n, (degree + 1) as u32) {
            for j in 0..n {
                keys.push((m.clone(), j));
            }
        }
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        DegreeBasis { space, degree, keys, index }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[FieldKey] {
        &self.keys
    }

    pub fn basis_field(&self, i: usize) -> PolyVectorField {
        let (m, j) = &self.keys[i];
        PolyVectorField::monomial(self.space, m.clone(), *j, Scalar::ONE)
    }

    /// Coordinates of a field in Vect_p.
    pub fn coordinates(&self, x: &PolyVectorField) -> Result<Vec<Scalar>, PolyFieldError> {
        if x.space != self.space {
            return Err(PolyFieldError::SpaceMismatch(x.space, self.space));
        }
        let mut v = vec![Scalar::ZERO; self.keys.len()];
        for (k, c) in &x.terms {
            let i = *self.index.get(k).ok_or(PolyFieldError::NotHomogeneous)?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn field(&self, coords: &[Scalar]) -> PolyVectorField {
        assert_eq!(coords.len(), self.keys.len(), "coordinate length must match basis");
        let terms = self
            .keys
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        PolyVectorField { space: self.space, terms }
    }

    pub fn fields(&self, s: &Subspace) -> Vec<PolyVectorField> {
        s.basis().iter().map(|v| self.field(v)).collect()
    }

    /// Span of the given homogeneous fields as a subspace of Vect_p.
    pub fn subspace(&self, fields: &[PolyVectorField]) -> Result<Subspace, PolyFieldError> {
        let vs = fields.iter().map(|f| self.coordinates(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_vectors(self.dim(), vs).expect("coordinate vectors have basis length"))
    }
}

/// dim Vect_p(Kⁿ) = n · C(n + p, p + 1).
pub fn homogeneous_dimension(n: usize, p: i32) -> usize {
    let d = (p + 1) as u32;
    let binom = crate::exact::binomial(n as u32 + d - 1, d);
    let b: usize = binom.to_string().parse().expect("binomial is a small integer");
    n * b
}


#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str, n: usize) -> PolyVectorField {
        parse_field(s, Space::real(n)).unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(f("d1", 1).bracket(&f("x1*d1", 1)).unwrap(), f("d1", 1));
        let e = PolyVectorField::euler(Space::real(2));
        assert_eq!(e.bracket(&f("x1^2*d2", 2)).unwrap(), f("x1^2*d2", 2));
        assert_eq!(f("x1^2*d1", 1).bracket(&f("x1*d1", 1)).unwrap(), f("-x1^2*d1", 1));
        assert!(f("d1", 1).bracket(&f("d1", 2)).is_err());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(PolyVectorField::euler(Space::real(1)), f("x1*d1", 1));
        assert_eq!(PolyVectorField::euler(Space::real(2)), f("x1*d1 + x2*d2", 2));
        let e = PolyVectorField::euler(Space::real(2));
        assert_eq!(e.bracket(&f("d1", 2)).unwrap(), f("-d1", 2));
    }

    #[test]
    fn graded_component_examples() {
        let c = f("d1 + x1*d1 + x1^2*d1", 1).graded_components();
        assert_eq!(c.len(), 3);
        assert_eq!(c[&-1], f("d1", 1));
        assert_eq!(c[&0], f("x1*d1", 1));
        assert_eq!(c[&1], f("x1^2*d1", 1));
        assert!(PolyVectorField::zero(Space::real(1)).graded_components().is_empty());
        let c = f("x1*x2*d2", 2).graded_components();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn divergence_examples() {
        assert!(f("x2*d1", 2).divergence().is_zero());
        assert_eq!(f("x1*d1", 2).divergence(), Polynomial::constant(2, Scalar::ONE));
        let d = f("x1^2*d1 + x2*d2", 2).divergence();
        let expected = Polynomial::from_terms(
            2,
            [(Monomial::var(2, 0), Scalar::int(2)), (Monomial::one(2), Scalar::ONE)],
        );
        assert_eq!(d, expected);
    }

    #[test]
    fn hamiltonian_examples() {
        let w = standard_symplectic(2);
        assert!(f("x1*d1 - x2*d2", 2).is_hamiltonian(&w).unwrap());
        assert!(!f("x1*d1", 2).is_hamiltonian(&w).unwrap());
        assert!(f("d1", 2).is_hamiltonian(&w).unwrap());
        assert!(matches!(f("d1", 3).is_hamiltonian(&Matrix::identity(3)), Err(PolyFieldError::OddDimension(3))));
        assert!(f("d1", 2).is_hamiltonian(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn degree_basis_dimensions() {
        assert_eq!(DegreeBasis::new(Space::real(2), -1).dim(), 2);
        assert_eq!(DegreeBasis::new(Space::real(2), 1).dim(), 6);
        assert_eq!(homogeneous_dimension(2, 1), 6);
        assert_eq!(homogeneous_dimension(3, 2), 30);
        let b = DegreeBasis::new(Space::real(2), 0);
        let x = f("x1*d2 - 3*x2*d1", 2);
        assert_eq!(b.field(&b.coordinates(&x).unwrap()), x);
        assert!(b.coordinates(&f("d1", 2)).is_err());
    }

    #[test]
    fn realification_of_simple_fields() {
        let c = Space::gaussian(1);
        let iz = parse_field("(i)*x1*d1", c).unwrap();
        assert_eq!(iz.realify().unwrap(), f("-x2*d1 + x1*d2", 2));
        let z2 = parse_field("x1^2*d1", c).unwrap();
        assert_eq!(z2.realify().unwrap(), f("x1^2*d1 - x2^2*d1 + 2*x1*x2*d2", 2));
    }
}
