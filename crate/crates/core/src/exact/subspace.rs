use super::matrix::Matrix;
use super::scalar::Scalar;
use super::LinalgError;

/// A linear subspace of K^ambient held as a reduced row echelon basis, so
/// two subspaces are equal exactly when their representations are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::ZERO; ambient];
                v[i] = Scalar::ONE;
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::DimensionMismatch { expected: ambient, found: v.len() });
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        Ok(self.reduce(v).iter().all(Scalar::is_zero))
    }

    /// Remainder of `v` after eliminating every pivot of the basis.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &(&f * b);
                }
            }
        }
        r
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, all)
    }

    /// {w : ⟨v, w⟩ = 0 for all v in self}, for the bilinear dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        self.annihilator().sum(&other.annihilator()).map(|s| s.annihilator())
    }

    /// m·W ⊆ W, treating basis vectors as columns.
    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.apply(v)).unwrap_or(false))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        // Rows are reduced: the coordinate on row i is v at row i's pivot.
        let coords: Vec<Scalar> = self
            .basis
            .iter()
            .map(|row| {
                let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
                v[p].clone()
            })
            .collect();
        let mut recon = vec![Scalar::ZERO; self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, b) in recon.iter_mut().zip(row) {
                *x += &(c * b);
            }
        }
        (recon == v).then_some(coords)
    }
}

/// Incrementally grown echelon basis over dense vectors; used for span
/// closures where vectors arrive one at a time.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
    inserted: Vec<Vec<Scalar>>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder { ambient, rows: Vec::new(), inserted: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, b) in r.iter_mut().zip(row).skip(*p) {
                if !b.is_zero() {
                    *x -= &(&f * b);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient dimension");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, r));
        self.inserted.push(v.to_vec());
        true
    }

    /// The vectors that were accepted, in insertion order.
    pub fn accepted(&self) -> &[Vec<Scalar>] {
        &self.inserted
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::from_vectors(self.ambient, self.inserted.clone()).expect("lengths checked on insert")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn lattice_operations() {
        let e1 = Subspace::from_vectors(2, vec![v(&[1, 0])]).unwrap();
        let e2 = Subspace::from_vectors(2, vec![v(&[0, 1])]).unwrap();
        assert!(e1.sum(&e2).unwrap().is_full());
        assert!(e1.intersection(&e2).unwrap().is_zero());
        let diag = Subspace::from_vectors(2, vec![v(&[1, 1])]).unwrap();
        assert!(diag.contains(&v(&[2, 2])).unwrap());
        assert!(!diag.contains(&v(&[2, 1])).unwrap());
        let e3 = Subspace::zero(3);
        assert!(e1.sum(&e3).is_err());
    }

    #[test]
    fn coordinates_in_echelon_basis() {
        let s = Subspace::from_vectors(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let w = v(&[2, 5, 3]);
        let c = s.coordinates(&w).unwrap();
        let mut recon = vec![Scalar::ZERO; 3];
        for (ci, row) in c.iter().zip(s.basis()) {
            for (x, b) in recon.iter_mut().zip(row) {
                *x += &(ci * b);
            }
        }
        assert_eq!(recon, w);
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn builder_tracks_independence() {
        let mut b = EchelonBuilder::new(3);
        assert!(b.insert(&v(&[1, 2, 3])));
        assert!(!b.insert(&v(&[2, 4, 6])));
        assert!(b.insert(&v(&[0, 1, 0])));
        assert!(b.contains(&v(&[1, 0, 3])));
        assert_eq!(b.to_subspace().dim(), 2);
    }
}
