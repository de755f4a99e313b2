use crate::exact::{Scalar, ScalarMode};
use crate::polyfield::{Monomial, PolyVectorField, Space};
use crate::symtensor::SymTensor;

use super::{Subalgebra, SubalgebraError};

/// A graded Lie algebra given by dense structure constants
/// `c[i][j][k]` ([b_i, b_j] = Σ_k c[i][j][k] b_k) and a degree per basis
/// vector in {−1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGradedAlgebra {
    mode: ScalarMode,
    degrees: Vec<i32>,
    structure: Vec<Vec<Vec<Scalar>>>,
}

impl AbstractGradedAlgebra {
    /// Validates antisymmetry, the Jacobi identity and additivity of the grading.
    pub fn new(mode: ScalarMode, degrees: Vec<i32>, structure: Vec<Vec<Vec<Scalar>>>) -> Result<Self, SubalgebraError> {
        let n = degrees.len();
        let bad = |m: &str| Err(SubalgebraError::InvalidInput(m.to_string()));
        if degrees.iter().any(|p| !(-1..=1).contains(p)) {
            return bad("degrees must lie in {-1, 0, 1}");
        }
        if structure.len() != n || structure.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("structure constants must form an n×n×n array");
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if structure[i][j][k] != -&structure[j][i][k] {
                        return bad("structure constants are not antisymmetric");
                    }
                    if !structure[i][j][k].is_zero() && degrees[k] != degrees[i] + degrees[j] {
                        return bad("structure constants do not respect the grading");
                    }
                }
            }
        }
        let alg = AbstractGradedAlgebra { mode, degrees, structure };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (alg.unit(i), alg.unit(j), alg.unit(k));
                    let a = alg.bracket(&ei, &alg.bracket(&ej, &ek));
                    let b = alg.bracket(&ej, &alg.bracket(&ek, &ei));
                    let c = alg.bracket(&ek, &alg.bracket(&ei, &ej));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        return bad("structure constants violate the Jacobi identity");
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The abstract algebra behind a graded subalgebra of order two.
    pub fn from_subalgebra(l: &Subalgebra) -> Result<Self, SubalgebraError> {
        if !l.is_order_two() {
            return Err(SubalgebraError::NotOrderTwo(
                l.graded_dims().map(|d| d.into_keys().collect()).unwrap_or_default(),
            ));
        }
        let n = l.dim();
        let structure = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![Scalar::ZERO; n];
                        for (k, c) in l.structure_constants(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(l.space().mode(), l.degrees().expect("graded").to_vec(), structure)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[i][j][k]
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut e = vec![Scalar::ZERO; self.dim()];
        e[i] = Scalar::ONE;
        e
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::ZERO; n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let ab = &x[i] * &y[j];
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn indices_of_degree(&self, p: i32) -> Vec<usize> {
        self.degrees.iter().enumerate().filter(|(_, &q)| q == p).map(|(i, _)| i).collect()
    }
}

/// φ(A) in T(L₋₁) for each basis vector, with its image under T.
#[derive(Clone, Debug)]
pub struct PhiEmbedding {
    pub tensors: Vec<SymTensor>,
    pub fields: Vec<PolyVectorField>,
    pub image: Subalgebra,
}

/// The embedding into T(L₋₁): identity on L₋₁, the adjoint action on L₀,
/// and M ↦ ((x, y) ↦ [[M, x], y]) on L₁. The basis of L₋₁ identifies it
/// with 𝕂^m. Injectivity and the homomorphism property are checked.
pub fn phi_embed(a: &AbstractGradedAlgebra) -> Result<PhiEmbedding, SubalgebraError> {
    let minus = a.indices_of_degree(-1);
    let m = minus.len();
    if m == 0 {
        return Err(SubalgebraError::InvalidInput("L₋₁ is zero".into()));
    }
    let space = Space::new(m, a.mode()).expect("m ≥ 1");
    let pos = |k: usize| minus.iter().position(|&t| t == k);
    // [b_i, x] restricted to L₋₁ coordinates
    let act = |i: usize, x: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; m];
        for (k, c) in a.structure[i][x].iter().enumerate() {
            if !c.is_zero() {
                v[pos(k).expect("bracket lands in L₋₁")] = c.clone();
            }
        }
        v
    };
    let mut tensors = Vec::with_capacity(a.dim());
    for (i, &p) in a.degrees().iter().enumerate() {
        let terms: Vec<(Monomial, usize, Scalar)> = match p {
            -1 => vec![(Monomial::one(m), pos(i).expect("degree −1"), Scalar::ONE)],
            0 => (0..m)
                .flat_map(|u| act(i, minus[u]).into_iter().enumerate().map(move |(t, c)| (Monomial::var(m, u), t, c)))
                .collect(),
            _ => {
                let mut out = Vec::new();
                for u in 0..m {
                    for w in u..m {
                        // [[M, x_u], x_w] = Σ_s c_{M,x_u}^s [b_s, x_w]
                        let mut v = vec![Scalar::ZERO; m];
                        for (s, c) in a.structure[i][minus[u]].iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (t, d) in act(s, minus[w]).into_iter().enumerate() {
                                v[t] += &(c * &d);
                            }
                        }
                        let mono = Monomial::var(m, u).mul(&Monomial::var(m, w));
                        out.extend(v.into_iter().enumerate().map(|(t, c)| (mono.clone(), t, c)));
                    }
                }
                out
            }
        };
        tensors.push(SymTensor::from_coefficients(space, p, terms).expect("degrees match"));
    }

    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let lhs = tensors[i].t_bracket(&tensors[j]).expect("same space");
            let mut rhs = SymTensor::zero(space, (a.degrees[i] + a.degrees[j]).max(-1));
            for (k, c) in a.structure[i][j].iter().enumerate() {
                rhs = rhs.add(&tensors[k].scale(c)).expect("same degree");
            }
            if lhs != rhs {
                return Err(SubalgebraError::NotMonomorphism(format!(
                    "[φ(b{i}), φ(b{j})] = {lhs} but φ([b{i}, b{j}]) = {rhs}"
                )));
            }
        }
    }
    let fields: Vec<PolyVectorField> = tensors.iter().map(SymTensor::to_field).collect();
    let image = Subalgebra::new(space, fields.clone()).map_err(|e| match e {
        SubalgebraError::Dependent { index } => SubalgebraError::NotMonomorphism(format!("φ(b{index}) is in the span of earlier images")),
        other => other,
    })?;
    Ok(PhiEmbedding { tensors, fields, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    /// {f₋, h, f₊} with [h, f₋] = −f₋, [h, f₊] = f₊, [f₋, f₊] = h.
    fn sl2() -> AbstractGradedAlgebra {
        let z = || vec![Scalar::ZERO; 3];
        let mut c = vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), z(), z()]];
        c[1][0][0] = Scalar::int(-1);
        c[0][1][0] = Scalar::ONE;
        c[1][2][2] = Scalar::ONE;
        c[2][1][2] = Scalar::int(-1);
        c[0][2][1] = Scalar::ONE;
        c[2][0][1] = Scalar::int(-1);
        AbstractGradedAlgebra::new(ScalarMode::Rational, vec![-1, 0, 1], c).unwrap()
    }

    #[test]
    fn phi_of_sl2() {
        let e = phi_embed(&sl2()).unwrap();
        // φ(f₊)(f₋, f₋) = [[f₊, f₋], f₋] = f₋
        assert_eq!(e.tensors[2].coefficient(&Monomial::from_exponents(&[2]), 0), Scalar::ONE);
        assert_eq!(e.image.dim(), 3);
    }

    #[test]
    fn rejects_bad_structure_constants() {
        let mut c = vec![vec![vec![Scalar::ZERO; 2]; 2]; 2];
        c[0][1][0] = Scalar::ONE;
        assert!(AbstractGradedAlgebra::new(ScalarMode::Rational, vec![-1, 0], c).is_err());
    }
}
