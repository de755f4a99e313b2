//! Finite-dimensional subalgebras of polynomial vector fields.

mod abstract_algebra;
mod graded;
mod span;
mod structure;

use std::collections::BTreeMap;

pub use abstract_algebra::{phi_embed, AbstractGradedAlgebra, PhiEmbedding};
pub use graded::{graded_closure, iterated_preimage, normalizer_tower, GradedClosure, NormalizerTower};
pub use span::FieldSpan;

use crate::exact::{Matrix, Scalar, Subspace};
use crate::polyfield::{DegreeBasis, PolyFieldError, PolyVectorField, Space, DEFAULT_MAX_DEGREE};

/// Default dimension cap for bracket closures.
pub const DEFAULT_MAX_DIM: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_dim: usize,
    pub max_degree: i32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_dim: DEFAULT_MAX_DIM, max_degree: DEFAULT_MAX_DEGREE }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubalgebraError {
    #[error(transparent)]
    Field(#[from] PolyFieldError),
    #[error("generator {index} lies in the span of the previous ones")]
    Dependent { index: usize },
    #[error("span is not closed: [{left}, {right}] = {bracket} is outside it")]
    NotClosed { left: String, right: String, bracket: String },
    #[error("closure cap exceeded: reached dimension {dimension} and degree {degree} (caps {max_dim}, {max_degree})")]
    CapExceeded { dimension: usize, degree: i32, max_dim: usize, max_degree: i32 },
    #[error("hypothesis {inclusion} fails: [{left}, {right}] = {bracket}")]
    HypothesisViolation { inclusion: &'static str, left: String, right: String, bracket: String },
    #[error("{0}")]
    InvalidInput(String),
    #[error("element is not in the algebra")]
    NotInAlgebra,
    #[error("algebra is not graded")]
    NotGraded,
    #[error("algebra is not of order two (degrees {0:?})")]
    NotOrderTwo(Vec<i32>),
    #[error("Euler element is not unique: solution set has dimension {0}")]
    NonUniqueEuler(usize),
    #[error("not a monomorphism: {0}")]
    NotMonomorphism(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// A bracket-closed span of polynomial vector fields with cached
/// structure constants. When the span is graded the stored basis is
/// homogeneous and sorted by degree.
///
/// A truncated subalgebra uses the bracket followed by dropping every
/// component above the truncation degree; brackets that lose terms this
/// way are counted in [`Subalgebra::exempt_brackets`].
#[derive(Clone, Debug)]
pub struct Subalgebra {
    span: FieldSpan,
    structure: Vec<Vec<Vec<(usize, Scalar)>>>,
    degrees: Option<Vec<i32>>,
    truncation: Option<i32>,
    exempt: usize,
}

impl Subalgebra {
    /// Builds the subalgebra with the given basis; fails if the fields are
    /// dependent or their span is not bracket-closed.
    pub fn new(space: Space, basis: Vec<PolyVectorField>) -> Result<Self, SubalgebraError> {
        Self::build(space, basis, None)
    }

    /// Same as [`Subalgebra::new`] with the bracket truncated above `degree`.
    pub fn truncated(space: Space, basis: Vec<PolyVectorField>, degree: i32) -> Result<Self, SubalgebraError> {
        if let Some(x) = basis.iter().find(|x| x.max_degree().is_some_and(|p| p > degree)) {
            return Err(SubalgebraError::InvalidInput(format!("{x} exceeds the truncation degree {degree}")));
        }
        Self::build(space, basis, Some(degree))
    }

    fn build(space: Space, basis: Vec<PolyVectorField>, truncation: Option<i32>) -> Result<Self, SubalgebraError> {
        let mut span = FieldSpan::new(space);
        for (i, x) in basis.iter().enumerate() {
            if x.space() != space {
                return Err(PolyFieldError::SpaceMismatch(space, x.space()).into());
            }
            if span.insert(x).is_none() {
                return Err(SubalgebraError::Dependent { index: i });
            }
        }

        let graded = span.basis().iter().all(|x| x.graded_components().values().all(|c| span.contains(c)));
        let mut degrees = None;
        if graded {
            let mut by_degree: BTreeMap<i32, Vec<PolyVectorField>> = BTreeMap::new();
            for x in span.basis() {
                for (p, c) in x.graded_components() {
                    by_degree.entry(p).or_default().push(c);
                }
            }
            let mut hom = FieldSpan::new(space);
            let mut degs = Vec::new();
            for (p, comps) in by_degree {
                for c in comps {
                    if hom.insert(&c).is_some() {
                        degs.push(p);
                    }
                }
            }
            debug_assert_eq!(hom.dim(), span.dim());
            span = hom;
            degrees = Some(degs);
        }

        let dim = span.dim();
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        let mut exempt = 0;
        for i in 0..dim {
            for j in i + 1..dim {
                let mut br = span.basis()[i].bracket(&span.basis()[j])?;
                if let Some(d) = truncation {
                    let (t, dropped) = br.truncate(d);
                    exempt += dropped as usize;
                    br = t;
                }
                let coords = span.coordinates(&br).ok_or_else(|| SubalgebraError::NotClosed {
                    left: span.basis()[i].to_string(),
                    right: span.basis()[j].to_string(),
                    bracket: br.to_string(),
                })?;
                let sparse: Vec<(usize, Scalar)> =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                structure[j][i] = sparse.iter().map(|(k, c)| (*k, -c)).collect();
                structure[i][j] = sparse;
            }
        }
        Ok(Subalgebra { span, structure, degrees, truncation, exempt })
    }

    pub fn space(&self) -> Space {
        self.span.space()
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> &[PolyVectorField] {
        self.span.basis()
    }

    pub fn truncation(&self) -> Option<i32> {
        self.truncation
    }

    pub fn exempt_brackets(&self) -> usize {
        self.exempt
    }

    /// Sparse coordinates of [b_i, b_j].
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.structure[i][j]
    }

    pub fn coordinates(&self, x: &PolyVectorField) -> Option<Vec<Scalar>> {
        if x.space() != self.space() {
            return None;
        }
        self.span.coordinates(x)
    }

    pub fn contains(&self, x: &PolyVectorField) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn combine(&self, coords: &[Scalar]) -> PolyVectorField {
        self.span.combine(coords)
    }

    /// Bracket in coordinates, using the structure constants.
    pub fn bracket_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.structure[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of ad(b_i) on the basis (column j holds [b_i, b_j]).
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = vec![Scalar::ZERO; n * n];
        for j in 0..n {
            for (k, c) in &self.structure[i][j] {
                m[k * n + j] = c.clone();
            }
        }
        Matrix::new(n, n, m).expect("square")
    }

    /// Matrix of ad(x) for x given in coordinates.
    pub fn ad_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut e = vec![Scalar::ZERO; n];
                e[j] = Scalar::ONE;
                self.bracket_coords(x, &e)
            })
            .collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    /// Degrees of the homogeneous basis, when graded.
    pub fn degrees(&self) -> Option<&[i32]> {
        self.degrees.as_deref()
    }

    /// Basis indices of L_p (empty when not graded).
    pub fn component_indices(&self, p: i32) -> Vec<usize> {
        match &self.degrees {
            Some(d) => d.iter().enumerate().filter(|(_, &q)| q == p).map(|(i, _)| i).collect(),
            None => Vec::new(),
        }
    }

    pub fn component(&self, p: i32) -> Vec<PolyVectorField> {
        self.component_indices(p).into_iter().map(|i| self.basis()[i].clone()).collect()
    }

    /// L_p as a subspace of Vect_p.
    pub fn component_subspace(&self, p: i32) -> Subspace {
        DegreeBasis::new(self.space(), p).subspace(&self.component(p)).expect("components are homogeneous")
    }

    /// Graded pieces L_p, or `None` if the algebra is not graded.
    pub fn graded_components(&self) -> Option<BTreeMap<i32, Vec<PolyVectorField>>> {
        let degrees = self.degrees.as_ref()?;
        let mut out: BTreeMap<i32, Vec<PolyVectorField>> = BTreeMap::new();
        for (x, p) in self.basis().iter().zip(degrees) {
            out.entry(*p).or_default().push(x.clone());
        }
        Some(out)
    }

    /// dim L_p for each occupied degree.
    pub fn graded_dims(&self) -> Option<BTreeMap<i32, usize>> {
        self.graded_components().map(|c| c.into_iter().map(|(p, v)| (p, v.len())).collect())
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.basis().iter().filter_map(PolyVectorField::max_degree).max()
    }

    /// Graded with components only in degrees −1, 0 and 1.
    pub fn is_order_two(&self) -> bool {
        self.degrees.as_ref().is_some_and(|d| d.iter().all(|p| (-1..=1).contains(p)))
    }

    /// Whether a subspace given in basis coordinates contains the
    /// homogeneous components of each of its elements.
    pub fn subspace_is_graded(&self, s: &Subspace) -> bool {
        let Some(degrees) = &self.degrees else {
            return false;
        };
        s.basis().iter().all(|v| {
            let mut occupied: Vec<i32> = v
                .iter()
                .zip(degrees)
                .filter(|(c, _)| !c.is_zero())
                .map(|(_, p)| *p)
                .collect();
            occupied.dedup();
            occupied.into_iter().all(|p| {
                let comp: Vec<Scalar> = v
                    .iter()
                    .zip(degrees)
                    .map(|(c, q)| if *q == p { c.clone() } else { Scalar::ZERO })
                    .collect();
                s.contains(&comp).expect("same ambient")
            })
        })
    }
}

/// Smallest bracket-closed span containing the generators, explored
/// breadth-first. Fails once the span outgrows either cap.
pub fn close_under_bracket(
    space: Space,
    generators: &[PolyVectorField],
    caps: Caps,
) -> Result<Subalgebra, SubalgebraError> {
    let mut span = FieldSpan::new(space);
    let mut top = -1;
    let admit = |span: &mut FieldSpan, x: &PolyVectorField, top: &mut i32| -> Result<(), SubalgebraError> {
        if x.space() != space {
            return Err(PolyFieldError::SpaceMismatch(space, x.space()).into());
        }
        if span.contains(x) {
            return Ok(());
        }
        let deg = x.max_degree().unwrap_or(-1);
        *top = (*top).max(deg);
        if deg > caps.max_degree || span.dim() + 1 > caps.max_dim {
            return Err(SubalgebraError::CapExceeded {
                dimension: span.dim() + 1,
                degree: *top,
                max_dim: caps.max_dim,
                max_degree: caps.max_degree,
            });
        }
        span.insert(x);
        Ok(())
    };
    for g in generators {
        admit(&mut span, g, &mut top)?;
    }
    let mut next = 0;
    while next < span.dim() {
        for j in 0..next {
            let br = span.basis()[next].bracket(&span.basis()[j])?;
            admit(&mut span, &br, &mut top)?;
        }
        next += 1;
    }
    Subalgebra::new(space, span.into_basis())
}
