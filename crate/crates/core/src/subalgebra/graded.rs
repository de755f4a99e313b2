use crate::exact::{Matrix, Scalar, Subspace};
use crate::polyfield::{DegreeBasis, Monomial, PolyVectorField, Space};

use super::{Caps, FieldSpan, Subalgebra, SubalgebraError};

/// Result of [`graded_closure`]: the algebra and dim 𝒟^k(L₊) for k = 0, 1, …
/// up to the first vanishing (or redundant) term.
#[derive(Clone, Debug)]
pub struct GradedClosure {
    pub algebra: Subalgebra,
    pub derived_dims: Vec<usize>,
}

fn violation(inclusion: &'static str, x: &PolyVectorField, y: &PolyVectorField, b: &PolyVectorField) -> SubalgebraError {
    SubalgebraError::HypothesisViolation {
        inclusion,
        left: x.to_string(),
        right: y.to_string(),
        bracket: b.to_string(),
    }
}

fn span_of(space: Space, parts: &[&[PolyVectorField]]) -> FieldSpan {
    let mut s = FieldSpan::new(space);
    for part in parts {
        for x in *part {
            s.insert(x);
        }
    }
    s
}

/// L₋₁ ⊕ L₀ ⊕ Σ_k 𝒟^k(L₊) with 𝒟⁰ = L₊ and 𝒟^{k+1} = [L₊, 𝒟^k], after
/// checking that L₋₁ ⊕ L₀ is a subalgebra, [L₋₁, L₊] ⊂ L₀ ⊕ L₊ and
/// [L₀, L₊] ⊂ L₊. `l_minus1` and `l0` are given in Vect₋₁ and Vect₀
/// coordinates.
pub fn graded_closure(
    space: Space,
    l_minus1: &Subspace,
    l0: &Subspace,
    l_plus: &[PolyVectorField],
    caps: Caps,
) -> Result<GradedClosure, SubalgebraError> {
    let bm = DegreeBasis::new(space, -1);
    let b0 = DegreeBasis::new(space, 0);
    if l_minus1.ambient() != bm.dim() || l0.ambient() != b0.dim() {
        return Err(SubalgebraError::InvalidInput("L₋₁ or L₀ has the wrong ambient dimension".into()));
    }
    let lm = bm.fields(l_minus1);
    let lz = b0.fields(l0);
    for x in l_plus {
        if x.space() != space || x.degrees().first().is_some_and(|&p| p < 1) {
            return Err(SubalgebraError::InvalidInput(format!("{x} is not in positive degrees of this space")));
        }
    }
    let lp = span_of(space, &[l_plus]).into_basis();

    let low = span_of(space, &[&lm, &lz]);
    for a in &lz {
        for x in lm.iter().chain(&lz) {
            let b = a.bracket(x)?;
            if !low.contains(&b) {
                return Err(violation("L₋₁ ⊕ L₀ is a subalgebra", a, x, &b));
            }
        }
    }
    let zero_plus = span_of(space, &[&lz, &lp]);
    let plus = span_of(space, &[&lp]);
    for y in &lp {
        for x in &lm {
            let b = x.bracket(y)?;
            if !zero_plus.contains(&b) {
                return Err(violation("[L₋₁, L₊] ⊂ L₀ ⊕ L₊", x, y, &b));
            }
        }
        for a in &lz {
            let b = a.bracket(y)?;
            if !plus.contains(&b) {
                return Err(violation("[L₀, L₊] ⊂ L₊", a, y, &b));
            }
        }
    }

    let mut total = span_of(space, &[&lm, &lz, &lp]);
    let mut derived_dims = vec![lp.len()];
    let mut current = lp.clone();
    let mut top = lp.iter().filter_map(PolyVectorField::max_degree).max().unwrap_or(0);
    loop {
        let mut next = FieldSpan::new(space);
        let mut grew = false;
        for y in &lp {
            for z in &current {
                let b = y.bracket(z)?;
                if next.insert(&b).is_some() && total.insert(&b).is_some() {
                    grew = true;
                    top = top.max(b.max_degree().unwrap_or(0));
                    if top > caps.max_degree || total.dim() > caps.max_dim {
                        return Err(SubalgebraError::CapExceeded {
                            dimension: total.dim(),
                            degree: top,
                            max_dim: caps.max_dim,
                            max_degree: caps.max_degree,
                        });
                    }
                }
            }
        }
        derived_dims.push(next.dim());
        if !grew {
            break;
        }
        current = next.into_basis();
    }

    let algebra = Subalgebra::new(space, total.into_basis())?;
    if l_plus.iter().all(|x| x.homogeneous_degree() == Some(1) || x.is_zero()) && !algebra.is_graded() {
        return Err(SubalgebraError::VerificationFailed("closure of degree-one L₊ is not graded".into()));
    }
    Ok(GradedClosure { algebra, derived_dims })
}

/// {X ∈ Vect_i : ad(g_1)⋯ad(g_k) X ∈ target for all g_1, …, g_k in `gens`},
/// where `gens` are constant fields and `target` sits in Vect_{i−k}
/// coordinates. Constant fields commute, so multisets of generators suffice.
pub fn iterated_preimage(space: Space, gens: &[PolyVectorField], k: usize, target: &Subspace, i: i32) -> Subspace {
    let src = DegreeBasis::new(space, i);
    let dst = DegreeBasis::new(space, i - k as i32);
    assert_eq!(target.ambient(), dst.dim(), "target must live in Vect_(i-k)");
    if k == 0 {
        return target.clone();
    }
    let ann = target.annihilator();
    if ann.is_zero() || gens.is_empty() {
        return Subspace::full(src.dim());
    }
    let mut rows = Vec::new();
    for word in Monomial::all_of_degree(gens.len(), k as u32) {
        let images: Vec<Vec<Scalar>> = (0..src.dim())
            .map(|t| {
                let mut x = src.basis_field(t);
                for (g, &e) in gens.iter().zip(word.exponents()) {
                    for _ in 0..e {
                        x = g.bracket(&x).expect("same space");
                    }
                }
                dst.coordinates(&x).expect("degree drops by one per bracket")
            })
            .collect();
        for a in ann.basis() {
            let row: Vec<Scalar> = images
                .iter()
                .map(|img| a.iter().zip(img).fold(Scalar::ZERO, |acc, (u, v)| &acc + &(u * v)))
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(src.dim());
    }
    Matrix::from_rows(rows).kernel()
}

/// n_i(F) for i = −1, …, d, each in Vect_i coordinates.
#[derive(Clone, Debug)]
pub struct NormalizerTower {
    space: Space,
    levels: Vec<Subspace>,
}

impl NormalizerTower {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn top(&self) -> i32 {
        self.levels.len() as i32 - 2
    }

    /// n_i(F); panics outside −1..=top.
    pub fn level(&self, i: i32) -> &Subspace {
        &self.levels[(i + 1) as usize]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Subspace::dim).collect()
    }

    pub fn fields(&self, i: i32) -> Vec<PolyVectorField> {
        DegreeBasis::new(self.space, i).fields(self.level(i))
    }

    /// Whether a field with components in degrees −1..=top lies in the tower.
    pub fn contains(&self, x: &PolyVectorField) -> bool {
        x.graded_components().iter().all(|(&p, c)| {
            p <= self.top() && self.level(p).contains(&DegreeBasis::new(self.space, p).coordinates(c).expect("homogeneous")).expect("same ambient")
        })
    }

    pub fn all_fields(&self) -> Vec<PolyVectorField> {
        (-1..=self.top()).flat_map(|i| self.fields(i)).collect()
    }
}

/// Pairs checked per degree pair when verifying [n_i, n_j] ⊂ n_{i+j}.
const SPOT_CHECK: usize = 6;

/// The normalizer tower of F ⊂ Vect₋₁ (given in Vect₋₁ coordinates) up to degree `d`.
pub fn normalizer_tower(space: Space, f: &Subspace, d: i32) -> Result<NormalizerTower, SubalgebraError> {
    if d < 0 {
        return Err(SubalgebraError::InvalidInput("tower degree must be at least 0".into()));
    }
    if f.ambient() != space.dim() {
        return Err(SubalgebraError::InvalidInput("F must be a subspace of Vect₋₁".into()));
    }
    let gens = DegreeBasis::new(space, -1).fields(f);
    let mut levels = vec![f.clone()];
    for i in 0..=d {
        levels.push(iterated_preimage(space, &gens, (i + 1) as usize, f, i));
    }
    let tower = NormalizerTower { space, levels };
    for i in -1..=d {
        for j in i..=d {
            if i + j > d || i + j < -1 {
                continue;
            }
            let a = tower.fields(i);
            let b = tower.fields(j);
            for x in a.iter().take(SPOT_CHECK) {
                for y in b.iter().take(SPOT_CHECK) {
                    let br = x.bracket(y)?;
                    if !tower.contains(&br) {
                        return Err(SubalgebraError::VerificationFailed(format!(
                            "[{x}, {y}] = {br} leaves the normalizer tower"
                        )));
                    }
                }
            }
        }
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::parse_field;

    fn e1(n: usize) -> Subspace {
        let mut v = vec![Scalar::ZERO; n];
        v[0] = Scalar::ONE;
        Subspace::from_vectors(n, vec![v]).unwrap()
    }

    #[test]
    fn tower_of_a_line() {
        let s = Space::real(2);
        let t = normalizer_tower(s, &e1(2), 1).unwrap();
        assert_eq!(t.dims(), vec![1, 3, 5]);
        let n0 = t.fields(0);
        for x in ["x1*d1", "x2*d1", "x2*d2"] {
            assert!(t.contains(&parse_field(x, s).unwrap()), "{x}");
        }
        assert!(!t.contains(&parse_field("x1*d2", s).unwrap()));
        assert_eq!(n0.len(), 3);
        assert!(!t.contains(&parse_field("x1^2*d2", s).unwrap()));
    }

    #[test]
    fn tower_of_everything() {
        let s = Space::real(2);
        let t = normalizer_tower(s, &Subspace::full(2), 2).unwrap();
        assert_eq!(t.dims(), vec![2, 4, 6, 8]);
    }

    #[test]
    fn projective_by_graded_closure() {
        let s = Space::real(2);
        let lp = vec![parse_field("x1^2*d1 + x1*x2*d2", s).unwrap(), parse_field("x1*x2*d1 + x2^2*d2", s).unwrap()];
        let g = graded_closure(s, &Subspace::full(2), &Subspace::full(4), &lp, Caps::default()).unwrap();
        assert_eq!(g.algebra.dim(), 8);
        assert_eq!(g.derived_dims, vec![2, 0]);
    }

    #[test]
    fn sl2_by_graded_closure() {
        let s = Space::real(1);
        let lp = vec![parse_field("x1^2*d1", s).unwrap()];
        let g = graded_closure(s, &Subspace::full(1), &Subspace::full(1), &lp, Caps::default()).unwrap();
        assert_eq!(g.algebra.dim(), 3);
    }

    #[test]
    fn hypothesis_violation_is_reported() {
        let s = Space::real(2);
        let lp = vec![parse_field("x1^2*d1", s).unwrap()];
        let err = graded_closure(s, &Subspace::full(2), &Subspace::zero(4), &lp, Caps::default()).unwrap_err();
        match err {
            SubalgebraError::HypothesisViolation { inclusion, bracket, .. } => {
                assert_eq!(inclusion, "[L₋₁, L₊] ⊂ L₀ ⊕ L₊");
                assert_eq!(bracket, "2*x1*d1");
            }
            e => panic!("unexpected {e}"),
        }
    }
}
