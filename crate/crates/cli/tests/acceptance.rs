//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use maxsub::catalog::{self, CatalogKey};
use maxsub::exact::{Matrix, Rational, Scalar, ScalarMode, Subspace};
use maxsub::maximality::{check_maximal, ConditionOutcome, Verdict, WitnessKind};
use maxsub::polyfield::{parse_field, DegreeBasis, Monomial, PolyVectorField, Space};
use maxsub::repanalysis::{action_matrices, irreducibility, transport_complex_structure, Irreducibility};
use maxsub::subalgebra::{close_under_bracket, graded_closure, normalizer_tower, Caps, Subalgebra, SubalgebraError};
use maxsub::symtensor::SymTensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    let a = r.gen_range(-5i64..=5);
    let b = [1i64, 2, 3][r.gen_range(0..3)];
    Scalar::real(Rational::new(a, b))
}

fn random_homogeneous(r: &mut ChaCha8Rng, n: usize, p: i32) -> PolyVectorField {
    let s = Space::real(n);
    let monos = Monomial::all_of_degree(n, (p + 1) as u32);
    loop {
        let terms: Vec<_> = (0..r.gen_range(1..=4))
            .map(|_| (monos[r.gen_range(0..monos.len())].clone(), r.gen_range(0..n), random_scalar(r)))
            .collect();
        let x = PolyVectorField::from_terms(s, terms);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_field(r: &mut ChaCha8Rng, n: usize, max_p: i32) -> PolyVectorField {
    let mut x = PolyVectorField::zero(Space::real(n));
    for _ in 0..r.gen_range(1..=3) {
        let p = r.gen_range(-1..=max_p);
        x = x.add(&random_homogeneous(r, n, p)).unwrap();
    }
    x
}

fn build(key: &str) -> Subalgebra {
    let k: CatalogKey = key.parse().unwrap();
    catalog::build(&k, k.space(ScalarMode::Rational)).unwrap()
}

fn algebra(n: usize, xs: &[&str]) -> Subalgebra {
    let s = Space::real(n);
    let gens: Vec<PolyVectorField> = xs.iter().map(|x| parse_field(x, s).unwrap()).collect();
    close_under_bracket(s, &gens, Caps::default()).unwrap()
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::ZERO; n];
    e[i] = Scalar::ONE;
    e
}

fn check_cli(key: &str) -> (i32, Vec<u8>, Duration) {
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_maxsub")).args(["check", key, "--json", "-"]).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), o.stdout, t.elapsed())
}

fn isomorphism() -> Outcome {
    let mut r = rng(1);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let (p, q) = (r.gen_range(-1..=3), r.gen_range(-1..=3));
        let t = SymTensor::from_field_of_degree(&random_homogeneous(&mut r, n, p), p).unwrap();
        let u = SymTensor::from_field_of_degree(&random_homogeneous(&mut r, n, q), q).unwrap();
        let lhs = t.t_bracket(&u).unwrap().to_field();
        let rhs = t.to_field().bracket(&u.to_field()).unwrap();
        ensure!(lhs == rhs, "T[t,u] = {lhs} but [Tt,Tu] = {rhs}");
    }
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let p = r.gen_range(-1..=3);
        let x = random_homogeneous(&mut r, n, p);
        ensure!(SymTensor::from_field(&x).unwrap().to_field() == x, "round trip changed {x}");
    }
    Ok("200 bracket pairs, 100 round trips".into())
}

fn jacobi() -> Outcome {
    let mut r = rng(2);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let (x, y, z) = (random_field(&mut r, n, 2), random_field(&mut r, n, 2), random_field(&mut r, n, 2));
        let s = x
            .bracket(&y.bracket(&z).unwrap())
            .unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
            .unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap())
            .unwrap();
        ensure!(s.is_zero(), "Jacobi fails for {x}, {y}, {z}");
    }
    for _ in 0..50 {
        let n = r.gen_range(1..=3);
        let t: Vec<SymTensor> = (0..3)
            .map(|_| {
                let p = r.gen_range(-1..=2);
                SymTensor::from_field_of_degree(&random_homogeneous(&mut r, n, p), p).unwrap()
            })
            .collect();
        let b = |a: &SymTensor, c: &SymTensor| a.t_bracket(c).unwrap();
        let s = b(&t[0], &b(&t[1], &t[2])).add(&b(&t[1], &b(&t[2], &t[0]))).unwrap().add(&b(&t[2], &b(&t[0], &t[1]))).unwrap();
        ensure!(s.is_zero(), "tensor Jacobi fails");
    }
    Ok("200 field triples, 50 tensor triples".into())
}

fn known_verdicts() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=3 {
        let key = format!("catalog:projective:{n}");
        let (code, out, t) = check_cli(&key);
        let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
        ensure!(code == 0 && v["verdict"] == "maximal", "{key}: exit {code}, verdict {}", v["verdict"]);
        ensure!(t < Duration::from_secs(10), "{key} took {t:?}");
        notes.push(format!("projective:{n} {:.2}s", t.as_secs_f64()));
    }
    for n in 1..=3 {
        let key = format!("affine:{n}");
        let l = build(&key);
        let r = check_maximal(&l, 3).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::NotMaximal && r.l1_nonzero == ConditionOutcome::Fails, "{key}: {:?}", r.verdict);
        let w = r.witness.ok_or("affine witness missing")?;
        ensure!(w.kind == WitnessKind::ProjectiveEnvelope, "{key}: witness {}", w.kind.name());
        verify_sandwich(&l, w.algebra.basis(), w.degree)?;
    }
    let (code, out, _) = check_cli("catalog:conformal:2,0");
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure!(code == 3 && v["conditions"]["no_complex_structure"] == false, "conformal:2,0 exit {code}");
    ensure!(v["witness"]["kind"] == "tj-envelope" && v["witness"]["truncation_degree"] == 3, "conformal:2,0 witness {}", v["witness"]);
    let s = Space::real(2);
    let basis: Vec<PolyVectorField> = v["witness"]["basis"]
        .as_array()
        .ok_or("witness basis missing")?
        .iter()
        .map(|x| parse_field(x.as_str().unwrap(), s).unwrap())
        .collect();
    let (inner, wd, amb) = verify_sandwich(&build("conformal:2,0"), &basis, 3)?;
    let (code, out, _) = check_cli("catalog:conformal:3,0");
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure!(code == 0 && v["verdict"] == "maximal", "conformal:3,0 verdict {}", v["verdict"]);
    Ok(format!("{}; affine 1..3 projective envelopes; conformal:2,0 sandwich {inner} < {wd} < {amb}; conformal:3,0 maximal", notes.join(", ")))
}

/// Re-verifies L ⊊ W ⊊ Vect_{≤d} from scratch.
fn verify_sandwich(l: &Subalgebra, w: &[PolyVectorField], d: i32) -> Result<(usize, usize, usize), String> {
    let wa = Subalgebra::truncated(l.space(), w.to_vec(), d).map_err(|e| format!("witness not closed: {e}"))?;
    for x in l.basis() {
        ensure!(wa.contains(x), "witness misses {x}");
    }
    let amb: usize = (-1..=d).map(|p| DegreeBasis::new(l.space(), p).dim()).sum();
    ensure!(l.dim() < wa.dim() && wa.dim() < amb, "not strict: {} {} {amb}", l.dim(), wa.dim());
    Ok((l.dim(), wa.dim(), amb))
}

fn structure_suite() -> Outcome {
    let mut checked = Vec::new();
    for key in ["projective:1", "projective:2", "projective:3", "conformal:3,0", "sl2-chain", "conformal:2,0", "affine:2", "diag-reducible"] {
        let l = build(key);
        let r = check_maximal(&l, 3).map_err(|e| e.to_string())?;
        if r.verdict != Verdict::Maximal {
            continue;
        }
        ensure!(l.is_simple(), "{key} is not simple");
        ensure!(l.is_order_two(), "{key} is not of order two");
        let e = l.euler_element().map_err(|e| format!("{key}: {e}"))?.ok_or(format!("{key} has no Euler element"))?;
        if key.starts_with("projective") {
            ensure!(e == PolyVectorField::euler(l.space()), "{key}: Euler element {e}");
        }
        let b = l.killing_form();
        let (minus, plus) = (l.component_indices(-1), l.component_indices(1));
        let pairing = Matrix::from_fn(plus.len(), minus.len(), |a, c| b[(plus[a], minus[c])].clone());
        ensure!(pairing.is_square() && pairing.is_invertible(), "{key}: degenerate Killing pairing");
        ensure!(l.derived_part_check().unwrap(), "{key}: derived part check fails");
        checked.push(key);
    }
    ensure!(checked.len() == 5, "expected five maximal fixtures, got {checked:?}");
    Ok(format!("{} maximal algebras", checked.len()))
}

fn transport() -> Outcome {
    let l = build("conformal:2,0");
    let rot = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
    let j = transport_complex_structure(&l, &rot).map_err(|e| e.to_string())?;
    let n = l.dim();
    ensure!(j.dot(&j) == Matrix::identity(n).neg(), "J² ≠ −id");
    for x in 0..n {
        for y in 0..n {
            let lhs = j.apply(&l.bracket_coords(&unit(n, x), &unit(n, y)));
            let rhs = l.bracket_coords(&j.column(x), &unit(n, y));
            ensure!(lhs == rhs, "J[x,y] ≠ [Jx,y] at ({x}, {y})");
        }
    }
    let g = l.killing_form();
    for a in l.component_indices(1) {
        for b in l.component_indices(-1) {
            ensure!(
                l.killing(&g, &j.column(a), &unit(n, b)) == l.killing(&g, &unit(n, a), &j.column(b)),
                "Killing display fails at ({a}, {b})"
            );
        }
    }
    Ok(format!("J on {n} basis vectors, {} bracket pairs", n * n))
}

fn normalizer() -> Outcome {
    let s = Space::real(2);
    let f = Subspace::from_vectors(2, vec![unit(2, 0)]).unwrap();
    let t = normalizer_tower(s, &f, 2).map_err(|e| e.to_string())?;
    ensure!(t.dims()[..3] == [1, 3, 5], "tower dims {:?}", t.dims());
    // ad(∂₁)^{i+1} X must have no ∂₂ component
    let d1 = PolyVectorField::partial(s, 0);
    for i in 0..=2 {
        let b = DegreeBasis::new(s, i);
        let cols: Vec<Vec<Scalar>> = (0..b.dim())
            .map(|k| {
                let mut x = b.basis_field(k);
                for _ in 0..=i {
                    x = d1.bracket(&x).unwrap();
                }
                vec![x.coefficient(&Monomial::one(2), 1)]
            })
            .collect();
        let brute = Matrix::from_columns(1, &cols).kernel();
        ensure!(&brute == t.level(i), "degree {i}: enumeration gives dim {}", brute.dim());
    }
    let mut count = 0;
    for d in 0..=3 {
        for m in Monomial::all_of_degree(2, d) {
            let x = PolyVectorField::monomial(s, m, 0, Scalar::ONE);
            ensure!(t.contains(&x), "{x} is not in the tower");
            count += 1;
        }
    }
    Ok(format!("dims (1, 3, 5), {count} monomial multiples of d1"))
}

fn closure() -> Outcome {
    let s = Space::real(2);
    let lp = vec![parse_field("x1^2*d1 + x1*x2*d2", s).unwrap(), parse_field("x1*x2*d1 + x2^2*d2", s).unwrap()];
    let g = graded_closure(s, &Subspace::full(2), &Subspace::full(4), &lp, Caps::default()).map_err(|e| e.to_string())?;
    ensure!(g.algebra.dim() == 8, "closure has dimension {}", g.algebra.dim());
    ensure!(g.derived_dims.get(1) == Some(&0), "derived dims {:?}", g.derived_dims);
    let caps = Caps::default();
    let witt = [parse_field("d1", Space::real(1)).unwrap(), parse_field("x1^3*d1", Space::real(1)).unwrap()];
    match close_under_bracket(Space::real(1), &witt, caps) {
        Err(SubalgebraError::CapExceeded { degree, dimension, .. }) => {
            ensure!(degree == caps.max_degree + 1 && dimension <= caps.max_dim, "cap hit at degree {degree}, dimension {dimension}");
            Ok(format!("dim 8 with D¹ = 0; Witt generators stopped at degree {degree}"))
        }
        other => Err(format!("Witt generators did not hit the cap: {:?}", other.map(|l| l.dim()))),
    }
}

fn ideals() -> Outcome {
    let mut r = rng(8);
    let mut count = 0;
    for key in ["projective:1", "projective:2", "conformal:2,0", "conformal:3,0", "affine:2", "sl2-chain", "diag-reducible"] {
        let l = build(key);
        ensure!(l.contains(&PolyVectorField::euler(l.space())), "{key} lacks E");
        let n = l.dim();
        for k in 0..n + 10 {
            let v: Vec<Scalar> = if k < n { unit(n, k) } else { (0..n).map(|_| random_scalar(&mut r)).collect() };
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            let i = l.ideal_generated_by(&l.combine(&v)).unwrap();
            ensure!(l.subspace_is_graded(&i), "{key}: ideal of {} is not graded", l.combine(&v));
            count += 1;
        }
    }
    let l = build("projective:2");
    let consts: Vec<Vec<Scalar>> = (0..2).map(|j| l.coordinates(&PolyVectorField::partial(l.space(), j)).unwrap()).collect();
    for _ in 0..40 {
        let v: Vec<Scalar> = (0..l.dim()).map(|_| if r.gen_bool(0.3) { random_scalar(&mut r) } else { Scalar::ZERO }).collect();
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        let i = l.ideal_generated_by(&l.combine(&v)).unwrap();
        for c in &consts {
            ensure!(i.contains(c).unwrap(), "ideal of {} misses a constant", l.combine(&v));
        }
    }
    Ok(format!("{count} graded ideals; sparse random ideals of sl(3) contain all constants"))
}

/// Reducibility over ℚ of a set of 2×2 matrices: if some matrix is not
/// scalar, an invariant line is an eigenline of it, cut out by a linear
/// factor of its characteristic polynomial.
fn brute_force_reducible(mats: &[Matrix]) -> bool {
    let scalar = |m: &Matrix| *m == Matrix::scalar_multiple(2, &m[(0, 0)]);
    let Some(a) = mats.iter().find(|m| !scalar(m)) else {
        return true;
    };
    let tr = a.trace();
    let det = &(&a[(0, 0)] * &a[(1, 1)]) - &(&a[(0, 1)] * &a[(1, 0)]);
    let disc = &(&tr * &tr) - &(&det * &Scalar::int(4));
    let Some(root) = disc.as_real().and_then(Rational::sqrt_exact) else {
        return false;
    };
    let half = Scalar::ratio(1, 2);
    [&tr + &Scalar::real(root.clone()), &tr - &Scalar::real(root)].iter().any(|s| {
        let lambda = s * &half;
        let line = a.sub(&Matrix::scalar_multiple(2, &lambda)).unwrap().kernel();
        mats.iter().all(|m| line.is_invariant_under(m))
    })
}

fn irreducibility_oracle() -> Outcome {
    let mut fixtures: Vec<(String, Subalgebra)> = ["projective:2", "conformal:2,0", "conformal:1,1", "affine:2", "diag-reducible"]
        .iter()
        .map(|k| (k.to_string(), build(k)))
        .collect();
    for gens in [
        &["d1", "d2"][..],
        &["d1", "d2", "x1*d1 + x2*d2"],
        &["d1", "d2", "x2*d1"],
        &["d1", "d2", "x1*d2 - x2*d1"],
        &["d1", "d2", "x1*d2 + x2*d1"],
        &["d1", "d2", "x1*d2 + 2*x2*d1"],
        &["d1", "d2", "x1*d1", "x2*d1", "x2*d2"],
        &["d1", "d2", "x1*d2", "x2*d1", "x1*d1 - x2*d2"],
    ] {
        fixtures.push((gens.join(", "), algebra(2, gens)));
    }
    let mut r = rng(9);
    let s = Space::real(2);
    for _ in 0..20 {
        let mut terms = Vec::new();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            terms.push((Monomial::var(2, i), j, Scalar::int(r.gen_range(-2..=2))));
        }
        let a = PolyVectorField::from_terms(s, terms);
        let mut gens = vec![PolyVectorField::partial(s, 0), PolyVectorField::partial(s, 1)];
        if !a.is_zero() {
            gens.push(a.clone());
        }
        fixtures.push((a.to_string(), close_under_bracket(s, &gens, Caps::default()).unwrap()));
    }
    let mut reducible = 0;
    for (name, l) in &fixtures {
        let act = action_matrices(l).unwrap();
        let oracle = brute_force_reducible(&act.mats);
        match irreducibility(2, &act.mats, ScalarMode::Rational) {
            Irreducibility::Reducible(w) => {
                ensure!(oracle, "{name}: engine reducible, oracle irreducible");
                ensure!(w.dim() == 1 && act.mats.iter().all(|m| w.is_invariant_under(m)), "{name}: witness fails");
                reducible += 1;
            }
            Irreducibility::Irreducible { .. } => ensure!(!oracle, "{name}: engine irreducible, oracle reducible"),
            Irreducibility::Undecided { reason } => return Err(format!("{name}: undecided ({reason})")),
        }
    }
    Ok(format!("{} fixtures agree ({reducible} reducible)", fixtures.len()))
}

fn determinism() -> Outcome {
    for key in ["catalog:projective:2", "catalog:conformal:2,0", "catalog:affine:3", "catalog:diag-reducible"] {
        let (_, a, _) = check_cli(key);
        let (_, b, _) = check_cli(key);
        ensure!(!a.is_empty() && a == b, "{key}: reports differ");
    }
    Ok("4 presets byte-identical across runs".into())
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("isomorphism suite", isomorphism),
        ("Jacobi suite", jacobi),
        ("known verdicts", known_verdicts),
        ("structure of maximal algebras", structure_suite),
        ("complex-structure transport", transport),
        ("normalizer suite", normalizer),
        ("closure suite", closure),
        ("ideal and grading suite", ideals),
        ("irreducibility oracle", irreducibility_oracle),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
