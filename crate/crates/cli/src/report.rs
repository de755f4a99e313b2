use std::fmt::Write as _;

use maxsub::exact::{Matrix, Scalar, Subspace};
use maxsub::maximality::{ConditionOutcome, MaximalityReport};
use maxsub::polyfield::{PolyVectorField, Space};
use maxsub::repanalysis::{ComplexStructure, Irreducibility, RepReport};
use maxsub::subalgebra::Subalgebra;
use serde_json::{json, Map, Value};

pub fn scalar(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(scalar).collect())).collect())
}

pub fn fields(xs: &[PolyVectorField]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn space(s: Space) -> Value {
    json!({ "n": s.dim(), "mode": s.mode().name() })
}

pub fn tool() -> Value {
    json!({ "name": "maxsub", "version": env!("CARGO_PKG_VERSION") })
}

pub fn graded_dims(l: &Subalgebra) -> Value {
    match l.graded_dims() {
        Some(d) => Value::Object(d.into_iter().map(|(p, k)| (p.to_string(), json!(k))).collect()),
        None => Value::Null,
    }
}

fn outcome(c: &ConditionOutcome) -> Value {
    match c {
        ConditionOutcome::Holds => Value::Bool(true),
        ConditionOutcome::Fails => Value::Bool(false),
        ConditionOutcome::Undecided(_) => Value::String("undecided".into()),
        ConditionOutcome::NotApplicable => Value::String("n/a".into()),
    }
}

fn outcome_text(c: &ConditionOutcome) -> String {
    match c {
        ConditionOutcome::Holds => "holds".into(),
        ConditionOutcome::Fails => "fails".into(),
        ConditionOutcome::Undecided(r) => format!("undecided ({r})"),
        ConditionOutcome::NotApplicable => "n/a".into(),
    }
}

/// Elements of L₋₁ spanned by a subspace in L₋₁-basis coordinates.
fn constants_of(l: &Subalgebra, w: &Subspace) -> Vec<PolyVectorField> {
    let minus = l.component(-1);
    w.basis()
        .iter()
        .map(|v| {
            let mut x = PolyVectorField::zero(l.space());
            for (c, b) in v.iter().zip(&minus) {
                x.add_scaled_in_place(b, c);
            }
            x
        })
        .collect()
}

pub fn check_json(input: &str, l: &Subalgebra, r: &MaximalityReport) -> Value {
    let mut conditions = Map::new();
    conditions.insert("graded".into(), Value::Bool(r.graded));
    let mut notes = Map::new();
    for (name, c) in r.conditions() {
        conditions.insert(name.into(), outcome(c));
        if let ConditionOutcome::Undecided(reason) = c {
            notes.insert(name.into(), Value::String(reason.clone()));
        }
    }
    let witness = match &r.witness {
        Some(w) => json!({
            "kind": w.kind.name(),
            "truncation_degree": w.degree,
            "dimension": w.algebra.dim(),
            "ambient_dimension": w.sandwich.ambient,
            "exempt_brackets": w.algebra.exempt_brackets(),
            "basis": fields(w.algebra.basis()),
        }),
        None => Value::Null,
    };
    let mut out = json!({
        "tool": tool(),
        "space": space(l.space()),
        "input": { "source": input, "dimension": l.dim(), "basis": fields(l.basis()), "graded_dims": graded_dims(l) },
        "conditions": conditions,
        "verdict": r.verdict.name(),
        "witness": witness,
    });
    if let Some(c) = &r.certificate {
        out["certificate"] = json!({
            "element": matrix(&c.element),
            "minimal_polynomial": c.minimal_polynomial.to_string(),
        });
    }
    if !notes.is_empty() {
        out["notes"] = Value::Object(notes);
    }
    out
}

pub fn check_text(input: &str, l: &Subalgebra, r: &MaximalityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input: {input} (dimension {})", l.dim());
    let _ = writeln!(s, "space: {}", l.space());
    let _ = writeln!(s, "graded: {}", if r.graded { "yes" } else { "no" });
    for (name, c) in r.conditions() {
        let _ = writeln!(s, "{name}: {}", outcome_text(c));
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    if let Some(w) = &r.witness {
        let _ = writeln!(
            s,
            "witness: {} truncated at degree {}, dimension {} ({} < {} < {})",
            w.kind.name(),
            w.degree,
            w.algebra.dim(),
            w.sandwich.inner,
            w.sandwich.witness,
            w.sandwich.ambient
        );
        for x in w.algebra.basis() {
            let _ = writeln!(s, "  {x}");
        }
    }
    if let Some(c) = &r.certificate {
        let _ = writeln!(s, "certificate: commutant element with minimal polynomial {}", c.minimal_polynomial);
    }
    s
}

pub fn rep_json(l: &Subalgebra, r: &RepReport) -> Value {
    let irreducibility = match &r.irreducibility {
        Irreducibility::Irreducible { robust } => json!({ "verdict": "irreducible", "robust": robust }),
        Irreducibility::Reducible(w) => json!({ "verdict": "reducible", "invariant_subspace": fields(&constants_of(l, w)) }),
        Irreducibility::Undecided { reason } => json!({ "verdict": "undecided", "reason": reason }),
    };
    let complex = match &r.complex_structure {
        None => Value::String("n/a".into()),
        Some(ComplexStructure::None) => json!({ "verdict": "none" }),
        Some(ComplexStructure::Witness(j)) => json!({ "verdict": "witness", "j": matrix(j) }),
        Some(ComplexStructure::Certificate { element, minimal_polynomial }) => json!({
            "verdict": "certificate",
            "element": matrix(element),
            "minimal_polynomial": minimal_polynomial.to_string(),
        }),
        Some(ComplexStructure::Undetermined { reason }) => json!({ "verdict": "undetermined", "reason": reason }),
    };
    json!({
        "tool": tool(),
        "space": space(l.space()),
        "l_minus1": fields(&l.component(-1)),
        "l0": fields(&l.component(0)),
        "action_matrices": Value::Array(r.action.mats.iter().map(matrix).collect()),
        "commutant": Value::Array(r.commutant.iter().map(matrix).collect()),
        "irreducibility": irreducibility,
        "complex_structure": complex,
    })
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| format!("[{}]", m.row(r).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn rep_text(l: &Subalgebra, r: &RepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "L_-1 dimension {}, L_0 dimension {}", r.action.dim(), r.action.l0.len());
    for (b, m) in r.action.l0.iter().zip(&r.action.mats) {
        let _ = writeln!(s, "ad({})|L_-1 = {}", l.basis()[*b], matrix_text(m));
    }
    let _ = writeln!(s, "commutant dimension {}", r.commutant.len());
    match &r.irreducibility {
        Irreducibility::Irreducible { robust } => {
            let _ = writeln!(s, "irreducible{}", if *robust { "" } else { " over the working field only" });
        }
        Irreducibility::Reducible(w) => {
            let names: Vec<String> = constants_of(l, w).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "reducible: invariant subspace span{{{}}}", names.join(", "));
        }
        Irreducibility::Undecided { reason } => {
            let _ = writeln!(s, "irreducibility undecided: {reason}");
        }
    }
    match &r.complex_structure {
        None => {}
        Some(ComplexStructure::None) => s.push_str("complex structure: none\n"),
        Some(ComplexStructure::Witness(j)) => {
            let _ = writeln!(s, "complex structure: J = {}", matrix_text(j));
        }
        Some(ComplexStructure::Certificate { minimal_polynomial, .. }) => {
            let _ = writeln!(s, "complex structure: exists over the reals (minimal polynomial {minimal_polynomial})");
        }
        Some(ComplexStructure::Undetermined { reason }) => {
            let _ = writeln!(s, "complex structure: undetermined ({reason})");
        }
    }
    s
}
