//! Symmetric multilinear model T(E) = ⊕ S^{p+1}E* ⊗ E.
//!
//! A tensor M of degree p is stored by its values on basis vectors:
//! the coefficient at (α, j) is the j-th component of M(e_{i_0}, …, e_{i_p})
//! where the multiset {i_0, …, i_p} has multiplicities α. The map T to
//! vector fields is x ↦ −M(x, …, x)/(p+1)!, which on coefficients reads
//! X_{α,j} = −M_{α,j}/α!.
//!
//! The bracket is evaluated over multisets: splitting the p+q+1 arguments
//! into the q+1 fed to the inner tensor and the p left over happens in
//! C(α, β) = Π binom(α_i, β_i) ways per sub-multiset β, and each split is
//! counted p!(q+1)! times by the permutation sum, which cancels the
//! normalising factor. For p = −1 the first permutation sum is empty
//! (a constant takes no arguments), so [e, u] = −u(e, ·, …, ·).

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{Matrix, Scalar, Subspace};
use crate::polyfield::{DegreeBasis, FieldKey, Monomial, PolyFieldError, PolyVectorField, Space};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymTensorError {
    #[error("tensors live in different spaces ({0} vs {1})")]
    SpaceMismatch(Space, Space),
    #[error("field is not homogeneous")]
    NotHomogeneous,
    #[error("coefficient index has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("matrix is not a complex structure: {0}")]
    NotComplexStructure(&'static str),
    #[error("degree {0} is below -1")]
    DegreeOutOfRange(i32),
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

impl From<PolyFieldError> for SymTensorError {
    fn from(e: PolyFieldError) -> Self {
        match e {
            PolyFieldError::SpaceMismatch(a, b) => SymTensorError::SpaceMismatch(a, b),
            PolyFieldError::Syntax { pos, message } => SymTensorError::Syntax { pos, message },
            PolyFieldError::IndexOutOfRange { index, dim, pos } => SymTensorError::Syntax {
                pos,
                message: format!("index {index} out of range for dimension {dim}"),
            },
            _ => SymTensorError::NotHomogeneous,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymTensor {
    space: Space,
    degree: i32,
    coeffs: BTreeMap<FieldKey, Scalar>,
}

impl SymTensor {
    pub fn zero(space: Space, degree: i32) -> Self {
        assert!(degree >= -1, "tensor degrees start at -1");
        SymTensor { space, degree, coeffs: BTreeMap::new() }
    }

    /// Builds a tensor from (multiset, direction, value) triples; repeated keys add up.
    pub fn from_coefficients(
        space: Space,
        degree: i32,
        terms: impl IntoIterator<Item = (Monomial, usize, Scalar)>,
    ) -> Result<Self, SymTensorError> {
        if degree < -1 {
            return Err(SymTensorError::DegreeOutOfRange(degree));
        }
        let mut t = SymTensor::zero(space, degree);
        let want = (degree + 1) as u32;
        for (m, j, c) in terms {
            if m.degree() != want {
                return Err(SymTensorError::DegreeMismatch { expected: want, found: m.degree() });
            }
            assert!(m.nvars() == space.dim() && j < space.dim(), "index out of range");
            t.add_coefficient(m, j, &c);
        }
        Ok(t)
    }

    fn add_coefficient(&mut self, m: Monomial, j: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (m, j);
        let s = match self.coeffs.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, s);
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial, j: usize) -> Scalar {
        self.coeffs.get(&(m.clone(), j)).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, usize, &Scalar)> {
        self.coeffs.iter().map(|((m, j), c)| (m, *j, c))
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor, SymTensorError> {
        self.check_space(other)?;
        // A zero tensor is neutral in any degree.
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(SymTensorError::DegreeMismatch {
                expected: (self.degree + 1) as u32,
                found: (other.degree + 1) as u32,
            });
        }
        let mut out = self.clone();
        for ((m, j), c) in &other.coeffs {
            out.add_coefficient(m.clone(), *j, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SymTensor {
        let mut out = SymTensor::zero(self.space, self.degree);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    fn check_space(&self, other: &SymTensor) -> Result<(), SymTensorError> {
        if self.space != other.space {
            return Err(SymTensorError::SpaceMismatch(self.space, other.space));
        }
        Ok(())
    }

    /// [t, u] ∈ T_{p+q}. Two constants bracket to the zero constant.
    pub fn t_bracket(&self, other: &SymTensor) -> Result<SymTensor, SymTensorError> {
        self.check_space(other)?;
        let degree = self.degree + other.degree;
        if degree < -1 {
            return Ok(SymTensor::zero(self.space, -1));
        }
        let mut out = SymTensor::zero(self.space, degree);
        Self::accumulate_insertion(&mut out, self, other, &Scalar::ONE);
        Self::accumulate_insertion(&mut out, other, self, &Scalar::int(-1));
        Ok(out)
    }

    /// out += sign · Σ_β C(α,β) outer(inner(e_β), e_{α−β})
    fn accumulate_insertion(out: &mut SymTensor, outer: &SymTensor, inner: &SymTensor, sign: &Scalar) {
        for ((beta, m), ci) in &inner.coeffs {
            for ((delta, l), co) in &outer.coeffs {
                let Some(rest) = delta.div_var(*m) else {
                    continue;
                };
                let alpha = beta.mul(&rest);
                let weight = Scalar::real(alpha.binomial(beta));
                let c = &(&(ci * co) * &weight) * sign;
                out.add_coefficient(alpha, *l, &c);
            }
        }
    }

    /// The isomorphism T onto homogeneous vector fields.
    pub fn to_field(&self) -> PolyVectorField {
        PolyVectorField::from_terms(
            self.space,
            self.coeffs.iter().map(|((m, j), c)| (m.clone(), *j, -(c * &Scalar::real(m.factorial().recip())))),
        )
    }

    /// Polarization T⁻¹; the degree is read off the field, so zero is rejected.
    pub fn from_field(x: &PolyVectorField) -> Result<SymTensor, SymTensorError> {
        let p = x.homogeneous_degree().ok_or(SymTensorError::NotHomogeneous)?;
        Self::from_field_of_degree(x, p)
    }

    /// Polarization of a field known to lie in Vect_p (zero allowed).
    pub fn from_field_of_degree(x: &PolyVectorField, p: i32) -> Result<SymTensor, SymTensorError> {
        if p < -1 {
            return Err(SymTensorError::DegreeOutOfRange(p));
        }
        if x.terms().any(|(m, _, _)| m.degree() as i32 != p + 1) {
            return Err(SymTensorError::NotHomogeneous);
        }
        let mut t = SymTensor::zero(x.space(), p);
        for (m, j, c) in x.terms() {
            t.add_coefficient(m.clone(), j, &-(c * &Scalar::real(m.factorial())));
        }
        Ok(t)
    }

    /// Coordinates on the basis returned by [`tensor_basis`].
    pub fn coordinates(&self) -> Vec<Scalar> {
        tensor_basis(self.space, self.degree).iter().map(|k| self.coeffs.get(k).cloned().unwrap_or(Scalar::ZERO)).collect()
    }

    pub fn from_coordinates(space: Space, degree: i32, coords: &[Scalar]) -> SymTensor {
        let keys = tensor_basis(space, degree);
        assert_eq!(keys.len(), coords.len(), "coordinate length must match basis");
        let mut t = SymTensor::zero(space, degree);
        t.coeffs =
            keys.into_iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
        t
    }

    /// Whether J·M(x₀, …) = M(Jx₀, …) holds.
    pub fn is_j_compatible(&self, j: &Matrix) -> Result<bool, SymTensorError> {
        let s = tj_subspace(self.space, j, self.degree)?;
        Ok(s.contains(&self.coordinates()).expect("coordinate length matches"))
    }
}

/// Coefficient keys of T_p(E): sorted multisets of size p+1 times output directions.
pub fn tensor_basis(space: Space, p: i32) -> Vec<FieldKey> {
    DegreeBasis::new(space, p).keys().to_vec()
}

fn check_complex_structure(j: &Matrix, n: usize) -> Result<(), SymTensorError> {
    if j.rows() != n || j.cols() != n {
        return Err(SymTensorError::NotComplexStructure("wrong shape"));
    }
    if j.dot(j) != Matrix::identity(n).neg() {
        return Err(SymTensorError::NotComplexStructure("J² ≠ −I"));
    }
    Ok(())
}

/// T_p^J: tensors with J(M(x₀, x₁, …, x_p)) = M(Jx₀, x₁, …, x_p), as a
/// subspace in [`tensor_basis`] coordinates. Constants impose no condition.
pub fn tj_subspace(space: Space, j: &Matrix, p: i32) -> Result<Subspace, SymTensorError> {
    let n = space.dim();
    check_complex_structure(j, n)?;
    if p < -1 {
        return Err(SymTensorError::DegreeOutOfRange(p));
    }
    let keys = tensor_basis(space, p);
    if p == -1 {
        return Ok(Subspace::full(keys.len()));
    }
    let index: BTreeMap<&FieldKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let col = |m: Monomial, l: usize| index[&(m, l)];
    let mut rows = Vec::new();
    // Σ_m J_{lm} M_{ρ+e_{i0}, m} − Σ_m J_{m,i0} M_{ρ+e_m, l} = 0
    for rho in Monomial::all_of_degree(n, p as u32) {
        for i0 in 0..n {
            for l in 0..n {
                let mut row = vec![Scalar::ZERO; keys.len()];
                for m in 0..n {
                    let a = &j[(l, m)];
                    if !a.is_zero() {
                        row[col(rho.mul_var(i0), m)] += a;
                    }
                    let b = &j[(m, i0)];
                    if !b.is_zero() {
                        row[col(rho.mul_var(m), l)] -= b;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(keys.len()));
    }
    Ok(Matrix::from_rows(rows).kernel())
}

/// Terms as `c*[i,j,…]>k` with 1-based indices, `[]>k` for constants.
impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, ((m, j), c)) in self.coeffs.iter().enumerate() {
            let neg = c.as_real().is_some_and(|r| r.is_negative());
            let mag = if neg { -c } else { c.clone() };
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                if mag.is_real() {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            let idx: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n((i + 1).to_string(), e as usize))
                .collect();
            write!(f, "[{}]>{}", idx.join(","), j + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}({})", self.degree, self)
    }
}

/// Parses the format written by `Display`. The zero tensor has no degree
/// and cannot be parsed.
pub fn parse_tensor(text: &str, space: Space) -> Result<SymTensor, SymTensorError> {
    let n = space.dim();
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let syntax = |pos: usize, m: &str| SymTensorError::Syntax { pos, message: m.to_string() };
    let mut terms = Vec::new();
    let mut degree: Option<i32> = None;
    loop {
        skip(&mut pos);
        if pos >= bytes.len() {
            if terms.is_empty() {
                return Err(syntax(pos, "empty tensor"));
            }
            break;
        }
        let mut neg = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            neg = bytes[pos] == b'-';
            pos += 1;
            skip(&mut pos);
        } else if !terms.is_empty() {
            return Err(syntax(pos, "expected '+' or '-'"));
        }
        let mut coeff = Scalar::ONE;
        if pos < bytes.len() && bytes[pos] != b'[' {
            let star = text[pos..].find('*').ok_or_else(|| syntax(pos, "expected '*' after coefficient"))?;
            coeff = crate::polyfield::parse_scalar(&text[pos..pos + star], space.mode()).map_err(|e| match e {
                PolyFieldError::Syntax { pos: p, message } => SymTensorError::Syntax { pos: pos + p, message },
                _ => syntax(pos, "invalid coefficient"),
            })?;
            pos += star + 1;
            skip(&mut pos);
        }
        if neg {
            coeff = -coeff;
        }
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(syntax(pos, "expected '['"));
        }
        let close = text[pos..].find(']').ok_or_else(|| syntax(pos, "unclosed '['"))? + pos;
        let mut exps = vec![0u16; n];
        let inner = &text[pos + 1..close];
        if !inner.trim().is_empty() {
            let mut at = pos + 1;
            for part in inner.split(',') {
                let i: usize = part.trim().parse().map_err(|_| syntax(at, "expected an index"))?;
                if i == 0 || i > n {
                    return Err(syntax(at, &format!("index {i} out of range for dimension {n}")));
                }
                exps[i - 1] += 1;
                at += part.len() + 1;
            }
        }
        pos = close + 1;
        skip(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'>' {
            return Err(syntax(pos, "expected '>'"));
        }
        pos += 1;
        skip(&mut pos);
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let j: usize = text[start..pos].parse().map_err(|_| syntax(start, "expected a direction"))?;
        if j == 0 || j > n {
            return Err(syntax(start, &format!("index {j} out of range for dimension {n}")));
        }
        let m = Monomial::from_exponents(&exps);
        let d = m.degree() as i32 - 1;
        match degree {
            None => degree = Some(d),
            Some(p) if p != d => return Err(syntax(start, "terms of different degrees")),
            _ => {}
        }
        terms.push((m, j - 1, coeff));
    }
    SymTensor::from_coefficients(space, degree.expect("at least one term"), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::parse_field;

    fn rot() -> Matrix {
        Matrix::from_int_rows(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn linear_bracket_is_commutator() {
        let s = Space::real(2);
        let a = Matrix::from_int_rows(&[&[1, 2], &[0, 3]]);
        let b = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let t = |m: &Matrix| {
            // M(e_i) = Σ_j m_{ji} e_j
            SymTensor::from_coefficients(
                s,
                0,
                (0..2).flat_map(|i| (0..2).map(move |j| (Monomial::var(2, i), j, m[(j, i)].clone()))),
            )
            .unwrap()
        };
        let c = a.commutator(&b);
        assert_eq!(t(&a).t_bracket(&t(&b)).unwrap(), t(&c));
    }

    #[test]
    fn to_field_example() {
        let s = Space::real(1);
        let m = SymTensor::from_coefficients(s, 1, [(Monomial::from_exponents(&[2]), 0, Scalar::int(6))]).unwrap();
        assert_eq!(m.to_field(), parse_field("-3*x1^2*d1", s).unwrap());
        let e = SymTensor::from_coefficients(s, -1, [(Monomial::one(1), 0, Scalar::ONE)]).unwrap();
        assert_eq!(e.to_field(), parse_field("-d1", s).unwrap());
        assert!(SymTensor::zero(s, 2).to_field().is_zero());
    }

    #[test]
    fn from_field_examples() {
        let s = Space::real(1);
        let t = SymTensor::from_field(&parse_field("x1^2*d1", s).unwrap()).unwrap();
        assert_eq!(t.coefficient(&Monomial::from_exponents(&[2]), 0), Scalar::int(-2));
        let c = SymTensor::from_field(&parse_field("d1", s).unwrap()).unwrap();
        assert_eq!(c.coefficient(&Monomial::one(1), 0), Scalar::int(-1));
        assert!(SymTensor::from_field(&parse_field("d1 + x1*d1", s).unwrap()).is_err());
    }

    #[test]
    fn constant_against_linear() {
        let s = Space::real(2);
        let e = SymTensor::from_field(&parse_field("d1", s).unwrap()).unwrap();
        let a = SymTensor::from_field(&parse_field("x1*d2 + 3*x2*d1", s).unwrap()).unwrap();
        let lhs = e.t_bracket(&a).unwrap().to_field();
        let rhs = e.to_field().bracket(&a.to_field()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(e.t_bracket(&e).unwrap().is_zero());
    }

    #[test]
    fn tj_dimensions() {
        let s = Space::real(2);
        assert_eq!(tj_subspace(s, &rot(), -1).unwrap().dim(), 2);
        assert_eq!(tj_subspace(s, &rot(), 0).unwrap().dim(), 2);
        assert_eq!(tj_subspace(s, &rot(), 1).unwrap().dim(), 2);
        assert_eq!(tj_subspace(s, &rot(), 2).unwrap().dim(), 2);
        assert!(tj_subspace(s, &Matrix::identity(2), 0).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = Space::real(2);
        let t = SymTensor::from_field(&parse_field("x1^2*d1 - 1/2*x1*x2*d2", s).unwrap()).unwrap();
        let text = t.to_string();
        assert_eq!(text, "1/2*[1,2]>2 - 2*[1,1]>1");
        assert_eq!(parse_tensor(&text, s).unwrap(), t);
        let c = parse_tensor("[]>2", s).unwrap();
        assert_eq!(c.degree(), -1);
        assert!(parse_tensor("[1]>1 + [1,1]>1", s).is_err());
        assert!(parse_tensor("[3]>1", s).is_err());
    }
}
