//! Deciding maximality of a graded finite-dimensional subalgebra, with a
//! concrete intermediate subalgebra whenever the answer is negative.

use std::fmt;

use crate::catalog::{self, CatalogKey};
use crate::exact::{Matrix, Scalar, ScalarMode, Subspace};
use crate::polyfield::{homogeneous_dimension, DegreeBasis, PolyVectorField, Space};
use crate::repanalysis::{analyze, ComplexStructure, Irreducibility, RepReport};
use crate::subalgebra::{iterated_preimage, normalizer_tower, Subalgebra, SubalgebraError};
use crate::symtensor::{tj_subspace, SymTensor};

pub const DEFAULT_WITNESS_DEGREE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MaximalityError {
    #[error("input is a truncated algebra; maximality needs a genuine subalgebra")]
    Truncated,
    #[error("witness degree must be nonnegative")]
    NegativeDegree,
    #[error("witness construction failed: {0}")]
    Witness(#[from] SubalgebraError),
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionOutcome {
    Holds,
    Fails,
    Undecided(String),
    NotApplicable,
}

impl ConditionOutcome {
    fn from_bool(b: bool) -> Self {
        if b {
            ConditionOutcome::Holds
        } else {
            ConditionOutcome::Fails
        }
    }

    pub fn fails(&self) -> bool {
        *self == ConditionOutcome::Fails
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Maximal,
    NotMaximal,
    NotGraded,
    Undecided,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Maximal => "maximal",
            Verdict::NotMaximal => "not-maximal",
            Verdict::NotGraded => "not-graded",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    TruncatedNormalizerTower,
    InvariantSubspaceEnvelope,
    ProjectiveEnvelope,
    TjEnvelope,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::TruncatedNormalizerTower => "truncated-normalizer-tower",
            WitnessKind::InvariantSubspaceEnvelope => "invariant-subspace-envelope",
            WitnessKind::ProjectiveEnvelope => "projective-envelope",
            WitnessKind::TjEnvelope => "tj-envelope",
        }
    }
}

/// dim L < dim W < dim Vect_{≤d}, with L ⊂ W checked element by element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub inner: usize,
    pub witness: usize,
    pub ambient: usize,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: WitnessKind,
    pub degree: i32,
    pub algebra: Subalgebra,
    pub sandwich: Sandwich,
}

/// Existence of J over ℝ without a rational witness.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub element: Matrix,
    pub minimal_polynomial: crate::exact::UniPoly,
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub graded: bool,
    pub constants_full: ConditionOutcome,
    pub irreducible: ConditionOutcome,
    pub l1_nonzero: ConditionOutcome,
    pub no_complex_structure: ConditionOutcome,
    pub verdict: Verdict,
    /// Truncation degree actually used for witnesses.
    pub witness_degree: i32,
    pub witness: Option<Witness>,
    pub certificate: Option<Certificate>,
    pub representation: Option<RepReport>,
}

impl MaximalityReport {
    pub fn conditions(&self) -> [(&'static str, &ConditionOutcome); 4] {
        [
            ("constants_full", &self.constants_full),
            ("irreducible", &self.irreducible),
            ("l1_nonzero", &self.l1_nonzero),
            ("no_complex_structure", &self.no_complex_structure),
        ]
    }
}

fn vect_dim_up_to(n: usize, d: i32) -> usize {
    (-1..=d).map(|p| homogeneous_dimension(n, p)).sum()
}

/// Columns: the L₋₁ basis in Vect₋₁ coordinates.
fn constants_matrix(l: &Subalgebra) -> Matrix {
    let b = DegreeBasis::new(l.space(), -1);
    let cols: Vec<Vec<Scalar>> =
        l.component(-1).iter().map(|x| b.coordinates(x).expect("degree −1")).collect();
    Matrix::from_columns(l.space().dim(), &cols)
}

fn build_witness(l: &Subalgebra, kind: WitnessKind, d: i32, fields: Vec<PolyVectorField>) -> Result<Witness, MaximalityError> {
    let space = l.space();
    let algebra = Subalgebra::truncated(space, fields, d)?;
    let sandwich = Sandwich { inner: l.dim(), witness: algebra.dim(), ambient: vect_dim_up_to(space.dim(), d) };
    if let Some(x) = l.basis().iter().find(|x| !algebra.contains(x)) {
        return Err(MaximalityError::VerificationFailed(format!("{} witness misses {x}", kind.name())));
    }
    if !(sandwich.inner < sandwich.witness && sandwich.witness < sandwich.ambient) {
        return Err(MaximalityError::VerificationFailed(format!(
            "{} witness is not strictly intermediate: {} < {} < {}",
            kind.name(),
            sandwich.inner,
            sandwich.witness,
            sandwich.ambient
        )));
    }
    Ok(Witness { kind, degree: d, algebra, sandwich })
}

/// n(F) truncated at degree d, for F = L₋₁.
fn tower_witness(l: &Subalgebra, d: i32) -> Result<Witness, MaximalityError> {
    let tower = normalizer_tower(l.space(), &l.component_subspace(-1), d)?;
    build_witness(l, WitnessKind::TruncatedNormalizerTower, d, tower.all_fields())
}

/// Vect₋₁ ⊕ n₀(F) ⊕ {X ∈ Vect_i : ad(Vect₋₁)^i X ⊂ n₀(F)} for an invariant F.
fn invariant_subspace_witness(l: &Subalgebra, f: &Subspace, d: i32) -> Result<Witness, MaximalityError> {
    let space = l.space();
    let constants = DegreeBasis::new(space, -1);
    let gens_f = constants.fields(f);
    let n0 = iterated_preimage(space, &gens_f, 1, f, 0);
    let all: Vec<PolyVectorField> = (0..space.dim()).map(|j| PolyVectorField::partial(space, j)).collect();
    let mut fields = all.clone();
    for i in 0..=d {
        let level = iterated_preimage(space, &all, i as usize, &n0, i);
        fields.extend(DegreeBasis::new(space, i).fields(&level));
    }
    build_witness(l, WitnessKind::InvariantSubspaceEnvelope, d, fields)
}

fn projective_witness(l: &Subalgebra, d: i32) -> Result<Witness, MaximalityError> {
    let space = l.space();
    let p = catalog::build(&CatalogKey::Projective(space.dim()), space).expect("projective family is valid for n ≥ 1");
    build_witness(l, WitnessKind::ProjectiveEnvelope, d, p.basis().to_vec())
}

/// ⊕_{p ≤ d} T^J_p transported to fields, with J moved to Vect₋₁ coordinates.
fn tj_witness(l: &Subalgebra, j: &Matrix, d: i32) -> Result<Witness, MaximalityError> {
    let space = l.space();
    let b = constants_matrix(l);
    let je = b.dot(j).dot(&b.inverse().expect("L₋₁ = Vect₋₁"));
    let mut fields = Vec::new();
    for p in -1..=d {
        let s = tj_subspace(space, &je, p).map_err(|e| MaximalityError::VerificationFailed(e.to_string()))?;
        for v in s.basis() {
            fields.push(SymTensor::from_coordinates(space, p, v).to_field());
        }
    }
    build_witness(l, WitnessKind::TjEnvelope, d, fields)
}

/// Evaluates the four conditions. Witnesses are built in degree
/// max(d, top + 1, 2) so they can strictly contain L.
pub fn check_maximal(l: &Subalgebra, d: i32) -> Result<MaximalityReport, MaximalityError> {
    if l.truncation().is_some() {
        return Err(MaximalityError::Truncated);
    }
    if d < 0 {
        return Err(MaximalityError::NegativeDegree);
    }
    let space: Space = l.space();
    let n = space.dim();
    let top = l.top_degree().unwrap_or(-1);
    let deg = d.max(top + 1).max(2);
    let na = ConditionOutcome::NotApplicable;
    let mut report = MaximalityReport {
        graded: l.is_graded(),
        constants_full: na.clone(),
        irreducible: na.clone(),
        l1_nonzero: na.clone(),
        no_complex_structure: na,
        verdict: Verdict::NotGraded,
        witness_degree: deg,
        witness: None,
        certificate: None,
        representation: None,
    };
    if !report.graded {
        return Ok(report);
    }

    let dims = l.graded_dims().expect("graded");
    let m = dims.get(&-1).copied().unwrap_or(0);
    report.constants_full = ConditionOutcome::from_bool(m == n);
    report.l1_nonzero = ConditionOutcome::from_bool(dims.get(&1).copied().unwrap_or(0) > 0);

    let mut invariant = None;
    let mut j_witness = None;
    if m > 0 {
        let rep = analyze(l).expect("graded with L₋₁ ≠ 0");
        report.irreducible = match &rep.irreducibility {
            Irreducibility::Irreducible { robust: true } => ConditionOutcome::Holds,
            Irreducibility::Irreducible { robust: false } => ConditionOutcome::Undecided(format!(
                "irreducible over {} but not certified over {}",
                space.mode().name(),
                if space.mode() == ScalarMode::Rational { "ℝ" } else { "ℂ" }
            )),
            Irreducibility::Reducible(w) => {
                invariant = Some(w.clone());
                ConditionOutcome::Fails
            }
            Irreducibility::Undecided { reason } => ConditionOutcome::Undecided(reason.clone()),
        };
        if let Some(cs) = &rep.complex_structure {
            report.no_complex_structure = match cs {
                ComplexStructure::None => ConditionOutcome::Holds,
                ComplexStructure::Witness(j) => {
                    j_witness = Some(j.clone());
                    ConditionOutcome::Fails
                }
                ComplexStructure::Certificate { element, minimal_polynomial } => {
                    report.certificate =
                        Some(Certificate { element: element.clone(), minimal_polynomial: minimal_polynomial.clone() });
                    ConditionOutcome::Fails
                }
                ComplexStructure::Undetermined { reason } => ConditionOutcome::Undecided(reason.clone()),
            };
        }
        report.representation = Some(rep);
    } else {
        report.irreducible = ConditionOutcome::Undecided("L₋₁ is zero".into());
        if space.mode() == ScalarMode::Rational {
            report.no_complex_structure = ConditionOutcome::Undecided("L₋₁ is zero".into());
        }
    }

    let outcomes = [&report.constants_full, &report.irreducible, &report.l1_nonzero, &report.no_complex_structure];
    report.verdict = if outcomes.iter().any(|c| c.fails()) {
        Verdict::NotMaximal
    } else if outcomes.iter().any(|c| matches!(c, ConditionOutcome::Undecided(_))) {
        Verdict::Undecided
    } else {
        Verdict::Maximal
    };

    report.witness = if report.constants_full.fails() {
        Some(tower_witness(l, deg)?)
    } else if report.irreducible.fails() {
        let w = invariant.expect("reducible verdict carries a subspace");
        let b = constants_matrix(l);
        let cols: Vec<Vec<Scalar>> = w.basis().iter().map(|v| b.apply(v)).collect();
        let f = Subspace::from_vectors(n, cols).expect("ambient n");
        Some(invariant_subspace_witness(l, &f, deg)?)
    } else if report.l1_nonzero.fails() {
        Some(projective_witness(l, deg)?)
    } else if let Some(j) = &j_witness {
        Some(tj_witness(l, j, deg)?)
    } else {
        None
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::parse_field;

    fn check(key: &str) -> MaximalityReport {
        let k: CatalogKey = key.parse().unwrap();
        let l = catalog::build(&k, k.space(ScalarMode::Rational)).unwrap();
        check_maximal(&l, DEFAULT_WITNESS_DEGREE).unwrap()
    }

    #[test]
    fn projective_is_maximal() {
        for n in 1..=2 {
            let r = check(&format!("projective:{n}"));
            assert_eq!(r.verdict, Verdict::Maximal, "n = {n}");
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn affine_lacks_degree_one() {
        let r = check("affine:2");
        assert_eq!(r.verdict, Verdict::NotMaximal);
        assert_eq!(r.l1_nonzero, ConditionOutcome::Fails);
        let w = r.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::ProjectiveEnvelope);
        assert_eq!(w.sandwich.witness, 8);
    }

    #[test]
    fn conformal_plane_has_a_complex_structure() {
        let r = check("conformal:2,0");
        assert_eq!(r.verdict, Verdict::NotMaximal);
        assert_eq!(r.no_complex_structure, ConditionOutcome::Fails);
        let w = r.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::TjEnvelope);
        assert_eq!(w.degree, 3);
        assert_eq!(w.sandwich, Sandwich { inner: 6, witness: 10, ambient: 2 + 4 + 6 + 8 + 10 });
    }

    #[test]
    fn reducible_action() {
        let r = check("diag-reducible");
        assert_eq!(r.verdict, Verdict::NotMaximal);
        assert_eq!(r.irreducible, ConditionOutcome::Fails);
        assert_eq!(r.witness.unwrap().kind, WitnessKind::InvariantSubspaceEnvelope);
    }

    #[test]
    fn missing_constants() {
        let s = Space::real(2);
        let l = Subalgebra::new(s, vec![parse_field("d1", s).unwrap(), parse_field("x1*d1", s).unwrap()]).unwrap();
        let r = check_maximal(&l, 3).unwrap();
        assert_eq!(r.constants_full, ConditionOutcome::Fails);
        let w = r.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::TruncatedNormalizerTower);
        assert!(!w.algebra.contains(&parse_field("x1*d2", s).unwrap()));
    }

    #[test]
    fn gaussian_mode_skips_condition_four() {
        let k = CatalogKey::Projective(2);
        let l = catalog::build(&k, k.space(ScalarMode::Gaussian)).unwrap();
        let r = check_maximal(&l, 3).unwrap();
        assert_eq!(r.no_complex_structure, ConditionOutcome::NotApplicable);
        assert_eq!(r.verdict, Verdict::Maximal);
    }

    #[test]
    fn ungraded_input_is_reported() {
        let s = Space::real(1);
        let l = Subalgebra::new(s, vec![parse_field("d1 + x1^2*d1", s).unwrap()]).unwrap();
        assert_eq!(check_maximal(&l, 3).unwrap().verdict, Verdict::NotGraded);
    }
}
