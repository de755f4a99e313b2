use std::collections::HashMap;

use crate::exact::Scalar;
use crate::polyfield::{FieldKey, PolyVectorField, Space};

/// Echelon span of vector fields keyed on each row's leading term, with
/// every row remembered as a combination of the accepted basis.
#[derive(Clone, Debug)]
pub struct FieldSpan {
    space: Space,
    basis: Vec<PolyVectorField>,
    rows: Vec<(PolyVectorField, Vec<Scalar>)>,
    pivots: HashMap<FieldKey, usize>,
}

impl FieldSpan {
    pub fn new(space: Space) -> Self {
        FieldSpan { space, basis: Vec::new(), rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PolyVectorField] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<PolyVectorField> {
        self.basis
    }

    /// x = Σ combo_i·basis_i + remainder, where the remainder's leading key
    /// is not a pivot (or the remainder is zero).
    fn reduce(&self, x: &PolyVectorField) -> (PolyVectorField, Vec<Scalar>) {
        let mut rem = x.clone();
        let mut combo = vec![Scalar::ZERO; self.basis.len()];
        loop {
            let Some((key, c)) = rem.leading_key() else { break };
            let Some(&r) = self.pivots.get(key) else { break };
            let c = c.clone();
            let (row, row_combo) = &self.rows[r];
            rem.add_scaled_in_place(row, &-&c);
            for (acc, v) in combo.iter_mut().zip(row_combo) {
                if !v.is_zero() {
                    *acc += &(&c * v);
                }
            }
        }
        (rem, combo)
    }

    pub fn contains(&self, x: &PolyVectorField) -> bool {
        self.reduce(x).0.is_zero()
    }

    /// Coordinates in the accepted basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &PolyVectorField) -> Option<Vec<Scalar>> {
        let (rem, combo) = self.reduce(x);
        rem.is_zero().then_some(combo)
    }

    /// Adds `x` to the basis if it is independent; returns its index.
    pub fn insert(&mut self, x: &PolyVectorField) -> Option<usize> {
        assert_eq!(x.space(), self.space, "field must live in the span's space");
        let (rem, combo) = self.reduce(x);
        let (key, lead) = rem.leading_key()?;
        let key = key.clone();
        let inv = lead.recip();
        let k = self.basis.len();
        let mut row_combo: Vec<Scalar> = combo.iter().map(|c| -(c * &inv)).collect();
        row_combo.push(inv.clone());
        let row = rem.scale(&inv);
        self.pivots.insert(key, self.rows.len());
        self.rows.push((row, row_combo));
        self.basis.push(x.clone());
        Some(k)
    }

    /// Σ coords_i·basis_i
    pub fn combine(&self, coords: &[Scalar]) -> PolyVectorField {
        let mut out = PolyVectorField::zero(self.space);
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled_in_place(b, c);
        }
        out
    }
}
