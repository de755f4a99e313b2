use crate::exact::{EchelonBuilder, Matrix, Scalar, ScalarMode, Subspace};
use crate::polyfield::PolyVectorField;
use crate::repanalysis::commutant;

use super::{Subalgebra, SubalgebraError};

impl Subalgebra {
    /// Gram matrix of B(x, y) = tr(ad x ∘ ad y) on the basis.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        // ad_i[k][l] = c_{il}^k, so tr(ad_i ad_j) = Σ_{l,k} c_{il}^k c_{jk}^l.
        let coeff = |i: usize, l: usize, k: usize| -> Option<&Scalar> {
            self.structure[i][l].iter().find(|(t, _)| *t == k).map(|(_, c)| c)
        };
        Matrix::from_fn(n, n, |i, j| {
            let mut acc = Scalar::ZERO;
            for l in 0..n {
                for (k, a) in &self.structure[i][l] {
                    if let Some(b) = coeff(j, *k, l) {
                        acc += &(a * b);
                    }
                }
            }
            acc
        })
    }

    /// B(x, y) for elements given in coordinates.
    pub fn killing(&self, gram: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = gram.apply(y);
        x.iter().zip(&gy).fold(Scalar::ZERO, |acc, (a, b)| &acc + &(a * b))
    }

    /// Smallest ad(L)-stable subspace containing `x`, in basis coordinates.
    pub fn ideal_generated_by(&self, x: &PolyVectorField) -> Result<Subspace, SubalgebraError> {
        let v = self.coordinates(x).ok_or(SubalgebraError::NotInAlgebra)?;
        Ok(self.ideal_of_coords(&[v]))
    }

    pub(crate) fn ideal_of_coords(&self, seeds: &[Vec<Scalar>]) -> Subspace {
        let n = self.dim();
        let mut b = EchelonBuilder::new(n);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for s in seeds {
            if b.insert(s) {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..n {
                let mut e = vec![Scalar::ZERO; n];
                e[i] = Scalar::ONE;
                let w = self.bracket_coords(&e, &v);
                if b.insert(&w) {
                    queue.push(w);
                }
            }
        }
        b.to_subspace()
    }

    /// Commutant of ad(L) on L, the centroid when L is perfect.
    pub fn centroid(&self) -> Vec<Matrix> {
        let ads: Vec<Matrix> = (0..self.dim()).map(|i| self.ad_matrix(i)).collect();
        commutant(self.dim(), &ads)
    }

    /// Simplicity over the base field the space stands for (ℝ in real
    /// mode, ℂ in Gaussian mode). A nondegenerate Killing form makes L
    /// semisimple; L is then simple exactly when its centroid, extended to
    /// ℝ or ℂ, is a field. Over ℚ that is a centroid of dimension one, or
    /// (real mode) an imaginary quadratic field.
    pub fn is_simple(&self) -> bool {
        if self.dim() == 0 || self.is_abelian() {
            return false;
        }
        if !self.killing_form().is_invertible() {
            return false;
        }
        let c = self.centroid();
        match (c.len(), self.space().mode()) {
            (1, _) => true,
            (2, ScalarMode::Rational) => {
                let z = c
                    .iter()
                    .find(|m| !is_scalar_matrix(m))
                    .expect("a 2-dimensional centroid has a non-scalar element");
                let mu = z.minimal_polynomial().expect("square");
                mu.degree() == Some(2) && mu.count_real_roots() == Some(0)
            }
            _ => false,
        }
    }

    /// Per-basis-element test: every nonzero basis element generates L.
    /// Necessary for simplicity; sufficient only for suitable bases.
    pub fn every_basis_element_generates(&self) -> bool {
        !self.is_abelian()
            && (0..self.dim()).all(|i| {
                let mut e = vec![Scalar::ZERO; self.dim()];
                e[i] = Scalar::ONE;
                self.ideal_of_coords(&[e]).dim() == self.dim()
            })
    }

    /// The unique e ∈ L with [e, b] = deg(b)·b on the homogeneous basis.
    pub fn euler_element(&self) -> Result<Option<PolyVectorField>, SubalgebraError> {
        let degrees = self.degrees().ok_or(SubalgebraError::NotGraded)?.to_vec();
        let n = self.dim();
        // Unknown e = Σ e_k b_k; equation per (b, m): Σ_k e_k c_{k,b}^m = deg(b) δ_{bm}.
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n * n);
        for b in 0..n {
            for m in 0..n {
                let row: Vec<Scalar> = (0..n)
                    .map(|k| {
                        self.structure[k][b].iter().find(|(t, _)| *t == m).map(|(_, c)| c.clone()).unwrap_or(Scalar::ZERO)
                    })
                    .collect();
                rows.push(row);
                rhs.push(if b == m { Scalar::int(degrees[b] as i64) } else { Scalar::ZERO });
            }
        }
        let a = Matrix::from_rows(rows);
        let Some(sol) = a.solve(&rhs).expect("right-hand side matches") else {
            return Ok(None);
        };
        let freedom = a.kernel().dim();
        if freedom > 0 {
            return Err(SubalgebraError::NonUniqueEuler(freedom));
        }
        Ok(Some(self.combine(&sol)))
    }

    /// Whether span{[x, y] : x ∈ L₋₁, y ∈ L₁} ⊇ [L₀, L₀].
    pub fn derived_part_check(&self) -> Result<bool, SubalgebraError> {
        if !self.is_order_two() {
            return Err(SubalgebraError::NotOrderTwo(
                self.graded_dims().map(|d| d.into_keys().collect()).unwrap_or_default(),
            ));
        }
        let n = self.dim();
        let unit = |i: usize| {
            let mut e = vec![Scalar::ZERO; n];
            e[i] = Scalar::ONE;
            e
        };
        let mut pairing = EchelonBuilder::new(n);
        for x in self.component_indices(-1) {
            for y in self.component_indices(1) {
                pairing.insert(&self.bracket_coords(&unit(x), &unit(y)));
            }
        }
        let l0 = self.component_indices(0);
        for (k, &a) in l0.iter().enumerate() {
            for &b in &l0[k + 1..] {
                if !pairing.contains(&self.bracket_coords(&unit(a), &unit(b))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub(crate) fn is_scalar_matrix(m: &Matrix) -> bool {
    let c = m[(0, 0)].clone();
    *m == Matrix::scalar_multiple(m.rows(), &c)
}

#[cfg(test)]
mod tests {
    use crate::exact::Scalar;
    use crate::polyfield::{parse_field, PolyVectorField, Space};
    use crate::subalgebra::{close_under_bracket, Caps, Subalgebra};

    fn algebra(n: usize, xs: &[&str]) -> Subalgebra {
        let s = Space::real(n);
        let gens: Vec<PolyVectorField> = xs.iter().map(|x| parse_field(x, s).unwrap()).collect();
        close_under_bracket(s, &gens, Caps::default()).unwrap()
    }

    fn sl2() -> Subalgebra {
        algebra(1, &["d1", "x1*d1", "x1^2*d1"])
    }

    #[test]
    fn killing_form_of_sl2() {
        let b = sl2().killing_form();
        assert_eq!(b[(1, 1)], Scalar::int(2));
        assert_eq!(b[(0, 2)], Scalar::int(-4));
        assert_eq!(b[(2, 0)], Scalar::int(-4));
        assert!(algebra(2, &["d1", "d2"]).killing_form().is_zero());
    }

    #[test]
    fn euler_elements() {
        assert_eq!(sl2().euler_element().unwrap(), Some(parse_field("x1*d1", Space::real(1)).unwrap()));
        assert_eq!(algebra(2, &["d1", "d2"]).euler_element().unwrap(), None);
    }

    #[test]
    fn ideals_and_simplicity() {
        let l = sl2();
        assert!(l.is_simple());
        assert_eq!(l.ideal_generated_by(&l.basis()[0]).unwrap().dim(), 3);
        let affine = algebra(2, &["d1", "d2", "x1*d1", "x1*d2", "x2*d1", "x2*d2"]);
        assert!(!affine.is_simple());
        let consts = affine.ideal_generated_by(&parse_field("d1", Space::real(2)).unwrap()).unwrap();
        assert_eq!(consts.dim(), 2);
        let ab = algebra(2, &["d1", "d2"]);
        assert_eq!(ab.ideal_generated_by(&ab.basis()[0]).unwrap().dim(), 1);
        let e = algebra(2, &["d1", "d2", "x1*d1 + x2*d2"]);
        let i = e.ideal_generated_by(&parse_field("x1*d1 + x2*d2", Space::real(2)).unwrap()).unwrap();
        assert_eq!(i.dim(), 3);
        assert!(ab.ideal_generated_by(&parse_field("x1*d1", Space::real(2)).unwrap()).is_err());
    }

    #[test]
    fn derived_part() {
        assert!(sl2().derived_part_check().unwrap());
        let affine = algebra(2, &["d1", "d2", "x1*d1", "x1*d2", "x2*d1", "x2*d2"]);
        assert!(!affine.derived_part_check().unwrap());
    }
}
