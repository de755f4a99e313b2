//! The representation of L₀ on L₋₁: action matrices, commutant,
//! irreducibility and complex structures.

mod transport;

pub use transport::transport_complex_structure;

use crate::exact::{find_factor, EchelonBuilder, FactorSearch, Matrix, Scalar, ScalarMode, Subspace, UniPoly};
use crate::subalgebra::Subalgebra;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("algebra is not graded")]
    NotGraded,
    #[error("L₋₁ is zero")]
    NoConstants,
    #[error("algebra is not of order two")]
    NotOrderTwo,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("Killing pairing between L₋₁ and L₁ is degenerate")]
    DegenerateKilling,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// ad(b)|_{L₋₁} for each basis vector b of L₀.
#[derive(Clone, Debug)]
pub struct ActionMatrices {
    /// Basis indices (in L) of L₋₁ and L₀.
    pub l_minus1: Vec<usize>,
    pub l0: Vec<usize>,
    pub mats: Vec<Matrix>,
}

impl ActionMatrices {
    pub fn dim(&self) -> usize {
        self.l_minus1.len()
    }
}

pub fn action_matrices(l: &Subalgebra) -> Result<ActionMatrices, RepError> {
    if !l.is_graded() {
        return Err(RepError::NotGraded);
    }
    let l_minus1 = l.component_indices(-1);
    if l_minus1.is_empty() {
        return Err(RepError::NoConstants);
    }
    let l0 = l.component_indices(0);
    let m = l_minus1.len();
    let mats = l0
        .iter()
        .map(|&b| {
            Matrix::from_fn(m, m, |r, t| {
                l.structure_constants(b, l_minus1[t])
                    .iter()
                    .find(|(k, _)| *k == l_minus1[r])
                    .map(|(_, c)| c.clone())
                    .unwrap_or(Scalar::ZERO)
            })
        })
        .collect();
    Ok(ActionMatrices { l_minus1, l0, mats })
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

fn unflatten(dim: usize, v: Vec<Scalar>) -> Matrix {
    Matrix::new(dim, dim, v).expect("dim² entries")
}

/// Basis of {C : C·m = m·C for every m}, refined one matrix at a time.
pub fn commutant(dim: usize, mats: &[Matrix]) -> Vec<Matrix> {
    let mut basis: Vec<Matrix> = (0..dim * dim)
        .map(|k| {
            let mut v = vec![Scalar::ZERO; dim * dim];
            v[k] = Scalar::ONE;
            unflatten(dim, v)
        })
        .collect();
    for m in mats {
        if basis.is_empty() {
            break;
        }
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|c| flatten(&c.commutator(m))).collect();
        let kernel = Matrix::from_columns(dim * dim, &cols).kernel();
        basis = kernel
            .basis()
            .iter()
            .map(|w| {
                let mut acc = Matrix::zeros(dim, dim);
                for (c, b) in w.iter().zip(&basis) {
                    if !c.is_zero() {
                        acc = acc.add(&b.scale(c)).expect("same shape");
                    }
                }
                acc
            })
            .collect();
    }
    basis
}

/// Basis of the unital associative algebra generated by `mats`.
pub fn envelope(dim: usize, mats: &[Matrix]) -> Vec<Matrix> {
    let mut b = EchelonBuilder::new(dim * dim);
    let mut out = Vec::new();
    let mut queue = vec![Matrix::identity(dim)];
    while let Some(x) = queue.pop() {
        if !b.insert(&flatten(&x)) {
            continue;
        }
        for m in mats {
            queue.push(m.dot(&x));
        }
        out.push(x);
    }
    out
}

/// Nonzero, proper and invariant under every matrix.
pub fn is_invariant_witness(w: &Subspace, dim: usize, mats: &[Matrix]) -> bool {
    w.ambient() == dim && !w.is_zero() && !w.is_full() && mats.iter().all(|m| w.is_invariant_under(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// No invariant subspace over the working field. `robust` means the
    /// verdict also holds over ℝ (real mode) or ℂ (Gaussian mode).
    Irreducible { robust: bool },
    Reducible(Subspace),
    Undecided { reason: String },
}

fn is_scalar(m: &Matrix) -> bool {
    *m == Matrix::scalar_multiple(m.rows(), &m[(0, 0)])
}

fn combos(basis: &[Matrix]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = basis.to_vec();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i < j {
                let a = &basis[i];
                let b = &basis[j];
                out.push(a.add(b).expect("same shape"));
                out.push(a.sub(b).expect("same shape"));
                out.push(a.add(&b.scale(&Scalar::int(2))).expect("same shape"));
            }
            out.push(basis[i].dot(&basis[j]));
        }
    }
    out.retain(|m| !is_scalar(m));
    out
}

/// s = c − (t/2)·I for μ_c = x² − t·x + d, with s² = (t²/4 − d)·I.
fn centered(c: &Matrix, mu: &UniPoly) -> (Matrix, Scalar) {
    let half = Scalar::ratio(1, 2);
    let b = &mu.coeffs()[1];
    let d = &mu.coeffs()[0];
    let shift = &half * b;
    let s = c.add(&Matrix::scalar_multiple(c.rows(), &shift)).expect("square");
    let sq = &(&shift * &shift) - d;
    (s, sq)
}

fn is_negative_real(x: &Scalar) -> bool {
    x.as_real().is_some_and(|r| r.is_negative())
}

/// Element i and j of a definite quaternion algebra spanned by {1, i, j, ij}.
fn quaternion_pair(c: &[Matrix], mode: ScalarMode) -> Option<(Matrix, Matrix)> {
    let dim = c[0].rows();
    for x in combos(c) {
        let mu = x.minimal_polynomial().ok()?;
        if mu.degree() != Some(2) || find_factor(&mu, mode) != FactorSearch::Irreducible {
            continue;
        }
        let (i, sq) = centered(&x, &mu);
        if !is_negative_real(&sq) {
            continue;
        }
        let cols: Vec<Vec<Scalar>> =
            c.iter().map(|y| flatten(&i.dot(y).add(&y.dot(&i)).expect("same shape"))).collect();
        let ker = Matrix::from_columns(dim * dim, &cols).kernel();
        for w in ker.basis() {
            let mut j = Matrix::zeros(dim, dim);
            for (a, y) in w.iter().zip(c) {
                j = j.add(&y.scale(a)).expect("same shape");
            }
            let j2 = j.dot(&j);
            if is_scalar(&j2) && is_negative_real(&j2[(0, 0)]) {
                let ij = i.dot(&j);
                let mut e = EchelonBuilder::new(dim * dim);
                let independent = [Matrix::identity(dim), i.clone(), j.clone(), ij]
                    .iter()
                    .all(|m| e.insert(&flatten(m)));
                if independent {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Decides whether `mats` (acting on 𝕂^dim) leave a proper nonzero subspace
/// invariant. Reducible verdicts carry a re-verified witness.
pub fn irreducibility(dim: usize, mats: &[Matrix], mode: ScalarMode) -> Irreducibility {
    assert!(dim > 0, "ambient dimension must be positive");
    let verified = |w: Subspace| -> Irreducibility {
        assert!(is_invariant_witness(&w, dim, mats), "witness failed re-verification");
        Irreducibility::Reducible(w)
    };
    if dim == 1 {
        return Irreducibility::Irreducible { robust: true };
    }
    let env = envelope(dim, mats);
    if env.len() == dim * dim {
        return Irreducibility::Irreducible { robust: true };
    }

    let gram = Matrix::from_fn(env.len(), env.len(), |i, j| env[i].trace_of_product(&env[j]));
    let rad = gram.kernel();
    if !rad.is_zero() {
        let mut cols = Vec::new();
        for w in rad.basis() {
            let mut r = Matrix::zeros(dim, dim);
            for (a, e) in w.iter().zip(&env) {
                r = r.add(&e.scale(a)).expect("same shape");
            }
            for k in 0..dim {
                cols.push(r.column(k));
            }
        }
        return verified(Matrix::from_columns(dim, &cols).column_space());
    }

    let c = commutant(dim, mats);
    let mut unknown = false;
    for x in combos(&c) {
        let mu = x.minimal_polynomial().expect("square");
        match find_factor(&mu, mode) {
            FactorSearch::Factor(f) => return verified(x.eval_poly(&f).kernel()),
            FactorSearch::Unknown => unknown = true,
            FactorSearch::Irreducible => {}
        }
    }

    match (c.len(), mode) {
        (1, _) => Irreducibility::Irreducible { robust: true },
        (2, _) if !unknown => {
            let x = c.iter().find(|m| !is_scalar(m)).expect("non-scalar element");
            let mu = x.minimal_polynomial().expect("square");
            let (_, sq) = centered(x, &mu);
            Irreducibility::Irreducible { robust: mode == ScalarMode::Rational && is_negative_real(&sq) }
        }
        (4, ScalarMode::Rational) if quaternion_pair(&c, mode).is_some() => Irreducibility::Irreducible { robust: true },
        (k, _) => Irreducibility::Undecided {
            reason: format!("commutant of dimension {k} could not be certified as a division algebra"),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexStructure {
    None,
    /// A rational J with J² = −I commuting with every action matrix.
    Witness(Matrix),
    /// J exists over ℝ in the real span of the commutant but is irrational:
    /// `element` has a minimal polynomial without real roots that
    /// generates the relevant part of the commutant.
    Certificate { element: Matrix, minimal_polynomial: UniPoly },
    Undetermined { reason: String },
}

fn verify_j(j: &Matrix, mats: &[Matrix]) -> bool {
    j.dot(j) == Matrix::identity(j.rows()).neg() && mats.iter().all(|m| j.commutes_with(m))
}

/// Searches the commutant (real mode) for J with J² = −I.
pub fn complex_structure(dim: usize, mats: &[Matrix]) -> ComplexStructure {
    if dim % 2 == 1 {
        return ComplexStructure::None;
    }
    let c = commutant(dim, mats);
    if c.len() == 1 {
        return ComplexStructure::None;
    }
    let mut certificate = None;
    for x in combos(&c) {
        let mu = x.minimal_polynomial().expect("square");
        if mu.degree() != Some(2) {
            continue;
        }
        let (s, sq) = centered(&x, &mu);
        if !is_negative_real(&sq) {
            continue;
        }
        match (-&sq).sqrt_exact() {
            Some(r) => {
                let j = s.scale(&r.recip());
                assert!(verify_j(&j, mats), "complex structure failed re-verification");
                return ComplexStructure::Witness(j);
            }
            None => {
                certificate.get_or_insert(ComplexStructure::Certificate { element: x.clone(), minimal_polynomial: mu });
            }
        }
    }
    if let Some(cert) = certificate {
        return cert;
    }
    let commutative = c.iter().all(|a| c.iter().all(|b| a.commutes_with(b)));
    if commutative {
        for x in combos(&c) {
            let mu = x.minimal_polynomial().expect("square");
            if mu.degree() != Some(c.len()) || !mu.gcd(&mu.derivative()).degree().is_some_and(|d| d == 0) {
                continue;
            }
            return match mu.count_real_roots() {
                Some(0) => ComplexStructure::Certificate { element: x, minimal_polynomial: mu },
                Some(_) => ComplexStructure::None,
                None => continue,
            };
        }
    }
    ComplexStructure::Undetermined { reason: format!("commutant of dimension {} has no decisive element", c.len()) }
}

#[derive(Clone, Debug)]
pub struct RepReport {
    pub action: ActionMatrices,
    pub commutant: Vec<Matrix>,
    pub irreducibility: Irreducibility,
    /// `None` in Gaussian mode.
    pub complex_structure: Option<ComplexStructure>,
}

pub fn analyze(l: &Subalgebra) -> Result<RepReport, RepError> {
    let action = action_matrices(l)?;
    let mode = l.space().mode();
    let dim = action.dim();
    let commutant = commutant(dim, &action.mats);
    let irreducibility = irreducibility(dim, &action.mats, mode);
    let complex_structure = (mode == ScalarMode::Rational).then(|| complex_structure(dim, &action.mats));
    Ok(RepReport { action, commutant, irreducibility, complex_structure })
}
