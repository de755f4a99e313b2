use crate::exact::{Matrix, Scalar};
use crate::subalgebra::Subalgebra;

use super::{action_matrices, RepError};

/// Extends a complex structure J₋₁ on L₋₁ to all of L (order two):
/// J₀(A) is the element of L₀ acting as ad(A) ∘ J₋₁ on L₋₁, and J₁ is the
/// Killing adjoint of J₋₁. The result is a matrix on L's basis, returned
/// only after every identity has been checked on all basis pairs.
pub fn transport_complex_structure(l: &Subalgebra, j_minus1: &Matrix) -> Result<Matrix, RepError> {
    if !l.is_graded() {
        return Err(RepError::NotGraded);
    }
    if !l.is_order_two() {
        return Err(RepError::NotOrderTwo);
    }
    let action = action_matrices(l)?;
    let m = action.dim();
    if j_minus1.rows() != m || j_minus1.cols() != m {
        return Err(RepError::Precondition(format!("J₋₁ must be {m}×{m}")));
    }
    if j_minus1.dot(j_minus1) != Matrix::identity(m).neg() {
        return Err(RepError::Precondition("J₋₁² ≠ −id".into()));
    }
    if let Some(k) = action.mats.iter().position(|a| !a.commutes_with(j_minus1)) {
        return Err(RepError::Precondition(format!(
            "J₋₁ does not commute with the action of {}",
            l.basis()[action.l0[k]]
        )));
    }

    let minus = &action.l_minus1;
    let zero = &action.l0;
    let plus = l.component_indices(1);
    let gram = l.killing_form();
    if plus.len() != m {
        return Err(RepError::DegenerateKilling);
    }
    let p = Matrix::from_fn(m, m, |a, b| gram[(plus[a], minus[b])].clone());
    let p_inv = p.inverse().ok_or(RepError::DegenerateKilling)?;
    let j1 = p.dot(j_minus1).dot(&p_inv).transpose();

    // J₀ through the action on L₋₁, which must be faithful.
    let flat: Vec<Vec<Scalar>> = action.mats.iter().map(|a| a.entries().to_vec()).collect();
    let sys = Matrix::from_columns(m * m, &flat);
    if sys.rank() != zero.len() {
        return Err(RepError::Precondition("L₀ does not act faithfully on L₋₁".into()));
    }
    let mut j0_cols = Vec::with_capacity(zero.len());
    for a in &action.mats {
        let target = a.dot(j_minus1);
        let sol = sys
            .solve(target.entries())
            .expect("sizes match")
            .ok_or_else(|| RepError::VerificationFailed("ad(A)∘J₋₁ is not the action of an element of L₀".into()))?;
        j0_cols.push(sol);
    }

    let n = l.dim();
    let mut j = Matrix::zeros(n, n);
    for (t, &col) in minus.iter().enumerate() {
        for (r, &row) in minus.iter().enumerate() {
            j[(row, col)] = j_minus1[(r, t)].clone();
        }
    }
    for (t, &col) in zero.iter().enumerate() {
        for (r, &row) in zero.iter().enumerate() {
            j[(row, col)] = j0_cols[t][r].clone();
        }
    }
    for (t, &col) in plus.iter().enumerate() {
        for (r, &row) in plus.iter().enumerate() {
            j[(row, col)] = j1[(r, t)].clone();
        }
    }
    verify(l, &j, &gram, minus, &plus)?;
    Ok(j)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::ZERO; n];
    e[i] = Scalar::ONE;
    e
}

fn verify(l: &Subalgebra, j: &Matrix, gram: &Matrix, minus: &[usize], plus: &[usize]) -> Result<(), RepError> {
    let n = l.dim();
    let fail = |s: String| Err(RepError::VerificationFailed(s));
    if j.dot(j) != Matrix::identity(n).neg() {
        return fail("J² ≠ −id".into());
    }
    let jb: Vec<Vec<Scalar>> = (0..n).map(|i| j.column(i)).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = j.apply(&l.bracket_coords(&unit(n, x), &unit(n, y)));
            let rhs = l.bracket_coords(&jb[x], &unit(n, y));
            if lhs != rhs {
                return fail(format!("J[{0}, {1}] ≠ [J{0}, {1}]", l.basis()[x], l.basis()[y]));
            }
        }
    }
    for &a in plus {
        for &b in minus {
            if l.bracket_coords(&jb[a], &unit(n, b)) != l.bracket_coords(&unit(n, a), &jb[b]) {
                return fail(format!("[J₁{0}, {1}] ≠ [{0}, J₋₁{1}]", l.basis()[a], l.basis()[b]));
            }
            if l.killing(gram, &jb[a], &unit(n, b)) != l.killing(gram, &unit(n, a), &jb[b]) {
                return fail(format!("β(J₁{0}, {1}) ≠ β({0}, J₋₁{1})", l.basis()[a], l.basis()[b]));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::{parse_field, PolyVectorField, Space};
    use crate::subalgebra::{close_under_bracket, Caps};

    fn algebra(n: usize, xs: &[&str]) -> Subalgebra {
        let s = Space::real(n);
        let gens: Vec<PolyVectorField> = xs.iter().map(|x| parse_field(x, s).unwrap()).collect();
        close_under_bracket(s, &gens, Caps::default()).unwrap()
    }

    fn rotation() -> Matrix {
        Matrix::from_int_rows(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn conformal_plane() {
        let l = algebra(
            2,
            &["d1", "d2", "x1*d1 + x2*d2", "x1*d2 - x2*d1", "x1^2*d1 - x2^2*d1 + 2*x1*x2*d2", "2*x1*x2*d1 + x2^2*d2 - x1^2*d2"],
        );
        assert_eq!(l.dim(), 6);
        let j = transport_complex_structure(&l, &rotation()).unwrap();
        assert_eq!(j.rows(), 6);
    }

    #[test]
    fn projective_has_no_intertwiner() {
        let l = algebra(2, &["d1", "d2", "x1*d1", "x1*d2", "x2*d1", "x2*d2", "x1^2*d1 + x1*x2*d2", "x1*x2*d1 + x2^2*d2"]);
        assert!(matches!(transport_complex_structure(&l, &rotation()), Err(RepError::Precondition(_))));
    }

    #[test]
    fn abelian_is_degenerate() {
        let l = algebra(2, &["d1", "d2"]);
        assert_eq!(transport_complex_structure(&l, &rotation()), Err(RepError::DegenerateKilling));
    }
}
