//! Named algebras used as fixtures and presets.

use std::fmt;
use std::str::FromStr;

use crate::exact::{Matrix, Scalar, ScalarMode};
use crate::polyfield::{standard_symplectic, DegreeBasis, Monomial, PolyVectorField, Polynomial, Space};
use crate::subalgebra::{Subalgebra, SubalgebraError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("invalid parameters for {family}: {message}")]
    InvalidParameters { family: &'static str, message: String },
    #[error("key needs n = {expected}, space has n = {found}")]
    SpaceMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogKey {
    Projective(usize),
    /// Signature (p, q) of the flat metric on ℝ^{p+q}.
    Conformal(usize, usize),
    Affine(usize),
    Sl2Chain,
    DiagReducible,
    /// Divergence-free fields with coefficients of degree ≤ `degree`.
    DivFree { n: usize, degree: u32 },
    /// Hamiltonian fields on ℝ^n (n even) with coefficients of degree ≤ `degree`.
    Hamiltonian { n: usize, degree: u32 },
}

impl CatalogKey {
    pub fn n(&self) -> usize {
        match *self {
            CatalogKey::Projective(n) | CatalogKey::Affine(n) => n,
            CatalogKey::Conformal(p, q) => p + q,
            CatalogKey::Sl2Chain => 1,
            CatalogKey::DiagReducible => 2,
            CatalogKey::DivFree { n, .. } | CatalogKey::Hamiltonian { n, .. } => n,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CatalogKey::Projective(_) => "projective",
            CatalogKey::Conformal(..) => "conformal",
            CatalogKey::Affine(_) => "affine",
            CatalogKey::Sl2Chain => "sl2-chain",
            CatalogKey::DiagReducible => "diag-reducible",
            CatalogKey::DivFree { .. } => "divfree",
            CatalogKey::Hamiltonian { .. } => "hamiltonian",
        }
    }

    pub fn space(&self, mode: ScalarMode) -> Space {
        Space::new(self.n(), mode).expect("validated keys have n ≥ 1")
    }

    fn validate(self) -> Result<Self, CatalogError> {
        let bad = |message: &str| {
            Err(CatalogError::InvalidParameters { family: self.family(), message: message.to_string() })
        };
        match self {
            CatalogKey::Projective(0) | CatalogKey::Affine(0) => bad("n must be at least 1"),
            CatalogKey::Conformal(p, q) if p + q < 2 => bad("p + q must be at least 2"),
            CatalogKey::DivFree { n: 0, .. } => bad("n must be at least 1"),
            CatalogKey::DivFree { degree: 0, .. } | CatalogKey::Hamiltonian { degree: 0, .. } => {
                bad("degree must be at least 1")
            }
            CatalogKey::Hamiltonian { n, .. } if n == 0 || n % 2 == 1 => bad("n must be even and positive"),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CatalogKey::Projective(n) => write!(f, "catalog:projective:{n}"),
            CatalogKey::Conformal(p, q) => write!(f, "catalog:conformal:{p},{q}"),
            CatalogKey::Affine(n) => write!(f, "catalog:affine:{n}"),
            CatalogKey::Sl2Chain => write!(f, "catalog:sl2-chain"),
            CatalogKey::DiagReducible => write!(f, "catalog:diag-reducible"),
            CatalogKey::DivFree { n, degree } => write!(f, "catalog:divfree:{n}:deg{degree}"),
            CatalogKey::Hamiltonian { n, degree } => write!(f, "catalog:hamiltonian:{n}:deg{degree}"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = CatalogError;

    /// `catalog:` prefix optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownKey(s.to_string());
        let body = s.strip_prefix("catalog:").unwrap_or(s);
        let parts: Vec<&str> = body.split(':').collect();
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| unknown());
        let deg = |t: &str| t.strip_prefix("deg").unwrap_or(t).parse::<u32>().map_err(|_| unknown());
        let key = match parts.as_slice() {
            ["projective", n] => CatalogKey::Projective(num(n)?),
            ["affine", n] => CatalogKey::Affine(num(n)?),
            ["conformal", sig] => {
                let (p, q) = sig.split_once(',').ok_or_else(unknown)?;
                CatalogKey::Conformal(num(p)?, num(q)?)
            }
            ["sl2-chain"] => CatalogKey::Sl2Chain,
            ["diag-reducible"] => CatalogKey::DiagReducible,
            ["divfree" | "divfree-trunc", n, d] => CatalogKey::DivFree { n: num(n)?, degree: deg(d)? },
            ["hamiltonian" | "hamiltonian-trunc", n, d] => CatalogKey::Hamiltonian { n: num(n)?, degree: deg(d)? },
            _ => return Err(unknown()),
        };
        key.validate()
    }
}

/// Syntax and one-line description of every family.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("catalog:projective:<n>", "projective sl(n+1): constants, gl(n), x^j E"),
        ("catalog:conformal:<p>,<q>", "conformal so(p+1,q+1) of the flat metric of signature (p,q)"),
        ("catalog:affine:<n>", "affine algebra: constants and gl(n)"),
        ("catalog:sl2-chain", "sl(2) on the line: d1, x1*d1, x1^2*d1"),
        ("catalog:diag-reducible", "d1, d2, x1*d1, x2*d2 on the plane"),
        ("catalog:divfree:<n>:deg<k>", "divergence-free fields with coefficient degree <= k (truncated)"),
        ("catalog:hamiltonian:<n>:deg<k>", "Hamiltonian fields with coefficient degree <= k (truncated)"),
    ]
}

fn field(space: Space, terms: &[(Monomial, usize, i64)]) -> PolyVectorField {
    PolyVectorField::from_terms(space, terms.iter().map(|(m, j, c)| (m.clone(), *j, Scalar::int(*c))))
}

fn constants_and_linear(space: Space) -> Vec<PolyVectorField> {
    let n = space.dim();
    let mut out: Vec<PolyVectorField> = (0..n).map(|j| PolyVectorField::partial(space, j)).collect();
    for j in 0..n {
        for k in 0..n {
            out.push(PolyVectorField::linear(space, j, k));
        }
    }
    out
}

/// Kernel of the divergence on Vect_p.
fn divergence_free(space: Space, p: i32) -> Vec<PolyVectorField> {
    let b = DegreeBasis::new(space, p);
    if p < 0 {
        return (0..b.dim()).map(|i| b.basis_field(i)).collect();
    }
    let monos = Monomial::all_of_degree(space.dim(), p as u32);
    let cols: Vec<Vec<Scalar>> = (0..b.dim())
        .map(|i| {
            let d = b.basis_field(i).divergence();
            monos.iter().map(|m| d.coefficient(m)).collect()
        })
        .collect();
    b.fields(&Matrix::from_columns(monos.len(), &cols).kernel())
}

/// X_H = ω⁻¹ dH for the standard symplectic form.
fn hamiltonian_field(space: Space, h: &Polynomial, omega_inv: &Matrix) -> PolyVectorField {
    let n = space.dim();
    let grads: Vec<Polynomial> = (0..n).map(|i| h.partial(i)).collect();
    let mut out = PolyVectorField::zero(space);
    for k in 0..n {
        for (i, g) in grads.iter().enumerate() {
            let c = &omega_inv[(k, i)];
            if c.is_zero() {
                continue;
            }
            for (m, a) in g.terms() {
                out = out.add(&PolyVectorField::monomial(space, m.clone(), k, a * c)).expect("same space");
            }
        }
    }
    out
}

/// Builds the algebra for `key` in `space`.
pub fn build(key: &CatalogKey, space: Space) -> Result<Subalgebra, CatalogError> {
    let key = key.validate()?;
    if space.dim() != key.n() {
        return Err(CatalogError::SpaceMismatch { expected: key.n(), found: space.dim() });
    }
    let n = space.dim();
    let var = |i: usize| Monomial::var(n, i);
    let algebra = match key {
        CatalogKey::Projective(_) => {
            let mut b = constants_and_linear(space);
            let e = PolyVectorField::euler(space);
            for j in 0..n {
                b.push(e.mul_polynomial(&Polynomial::from_terms(n, [(var(j), Scalar::ONE)])));
            }
            Subalgebra::new(space, b)?
        }
        CatalogKey::Affine(_) => Subalgebra::new(space, constants_and_linear(space))?,
        CatalogKey::Conformal(p, _) => {
            let g = |i: usize| if i < p { 1 } else { -1 };
            let mut b: Vec<PolyVectorField> = (0..n).map(|j| PolyVectorField::partial(space, j)).collect();
            b.push(PolyVectorField::euler(space));
            for i in 0..n {
                for j in i + 1..n {
                    b.push(field(space, &[(var(i), j, g(i)), (var(j), i, -g(j))]));
                }
            }
            for k in 0..n {
                let mut terms = Vec::new();
                for l in 0..n {
                    terms.push((var(k).mul(&var(l)), l, 2 * g(k)));
                    terms.push((var(l).mul(&var(l)), k, -g(l)));
                }
                b.push(field(space, &terms));
            }
            Subalgebra::new(space, b)?
        }
        CatalogKey::Sl2Chain => Subalgebra::new(
            space,
            vec![field(space, &[(Monomial::one(1), 0, 1)]), field(space, &[(var(0), 0, 1)]), field(space, &[(Monomial::from_exponents(&[2]), 0, 1)])],
        )?,
        CatalogKey::DiagReducible => Subalgebra::new(
            space,
            vec![
                PolyVectorField::partial(space, 0),
                PolyVectorField::partial(space, 1),
                PolyVectorField::linear(space, 0, 0),
                PolyVectorField::linear(space, 1, 1),
            ],
        )?,
        CatalogKey::DivFree { degree, .. } => {
            let top = degree as i32 - 1;
            let b: Vec<PolyVectorField> = (-1..=top).flat_map(|p| divergence_free(space, p)).collect();
            Subalgebra::truncated(space, b, top)?
        }
        CatalogKey::Hamiltonian { degree, .. } => {
            let top = degree as i32 - 1;
            let omega_inv = standard_symplectic(n).inverse().expect("symplectic form is invertible");
            let b: Vec<PolyVectorField> = (1..=degree + 1)
                .flat_map(|d| Monomial::all_of_degree(n, d))
                .map(|m| hamiltonian_field(space, &Polynomial::from_terms(n, [(m, Scalar::ONE)]), &omega_inv))
                .collect();
            Subalgebra::truncated(space, b, top)?
        }
    };
    Ok(algebra)
}
