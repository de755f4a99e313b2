//! Searching for nontrivial factors of univariate polynomials over ℚ and ℚ(i).
//!
//! Only what the representation analysis needs: square-free splitting,
//! root finding, and (over ℚ) quadratic factors of quartics and quintics.
//! Anything beyond those bounds is reported as [`FactorSearch::Unknown`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::UniPoly;
use super::rational::{common_denominator, Rational};
use super::scalar::{Scalar, ScalarMode};

/// Trial division is only attempted below this bound.
const MAX_DIVISOR_TARGET: u64 = 1_000_000_000_000;
/// Upper bound on candidate combinations tried by any single search.
const MAX_CANDIDATES: usize = 2_000_000;
/// Gaussian-integer root enumeration works on norms up to this size.
const MAX_GAUSSIAN_NORM: i128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSearch {
    /// No nontrivial factor over the working field.
    Irreducible,
    /// A monic factor of degree strictly between 0 and the input degree.
    Factor(UniPoly),
    /// The search bounds were exceeded.
    Unknown,
}

/// Looks for a nontrivial monic factor of `p` over ℚ (`Rational`) or ℚ(i).
pub fn find_factor(p: &UniPoly, mode: ScalarMode) -> FactorSearch {
    let p = p.monic();
    let Some(deg) = p.degree() else {
        return FactorSearch::Unknown;
    };
    if deg <= 1 {
        return FactorSearch::Irreducible;
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) >= 1 {
        return FactorSearch::Factor(g);
    }
    if mode == ScalarMode::Rational && !p.is_real() {
        return FactorSearch::Unknown;
    }
    if deg == 2 {
        // x² + bx + c
        let b = &p.coeffs()[1];
        let c = &p.coeffs()[0];
        let disc = &(b * b) - &(c * &Scalar::int(4));
        let root = match mode {
            ScalarMode::Rational => disc.as_real().and_then(Rational::sqrt_exact).map(Scalar::real),
            ScalarMode::Gaussian => disc.sqrt_exact(),
        };
        return match root {
            Some(s) => {
                let r = (&(-b) + &s).scale(&Rational::new(1, 2));
                FactorSearch::Factor(UniPoly::linear(&r))
            }
            None => FactorSearch::Irreducible,
        };
    }
    let root = match mode {
        ScalarMode::Rational => rational_root(&p),
        ScalarMode::Gaussian => gaussian_root(&p),
    };
    match root {
        None => return FactorSearch::Unknown,
        Some(Some(r)) => return FactorSearch::Factor(UniPoly::linear(&r)),
        Some(None) => {}
    }
    if deg == 3 {
        return FactorSearch::Irreducible;
    }
    if mode == ScalarMode::Rational && (deg == 4 || deg == 5) {
        return match rational_quadratic_factor(&p) {
            None => FactorSearch::Unknown,
            Some(Some(q)) => FactorSearch::Factor(q),
            Some(None) => FactorSearch::Irreducible,
        };
    }
    FactorSearch::Unknown
}

/// Primitive integer polynomial proportional to a real polynomial.
fn integer_coefficients(p: &UniPoly) -> Vec<BigInt> {
    let re: Vec<&Rational> = p.coeffs().iter().map(|c| c.re()).collect();
    let den = common_denominator(re.iter().copied());
    let ints: Vec<BigInt> = re.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Positive divisors of |n|, or `None` when |n| is too large to factor.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > MAX_DIVISOR_TARGET {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Outer `None`: bounds exceeded. Inner `None`: no rational root.
fn rational_root(p: &UniPoly) -> Option<Option<Scalar>> {
    let c = integer_coefficients(p);
    if c[0].is_zero() {
        return Some(Some(Scalar::ZERO));
    }
    let nums = divisors(&c[0])?;
    let dens = divisors(c.last().expect("nonzero polynomial"))?;
    if nums.len() * dens.len() * 2 > MAX_CANDIDATES {
        return None;
    }
    for &q in &dens {
        for &n in &nums {
            if BigInt::from(n).gcd(&BigInt::from(q)) != BigInt::from(1) {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Scalar::real(Rational::from_bigints(BigInt::from(n) * sign, BigInt::from(q)));
                if p.eval(&r).is_zero() {
                    return Some(Some(r));
                }
            }
        }
    }
    Some(None)
}

/// Gaussian-rational root search by enumerating Gaussian-integer divisors
/// of the constant term of the associated monic integral polynomial.
fn gaussian_root(p: &UniPoly) -> Option<Option<Scalar>> {
    let deg = p.degree()?;
    let parts = p.coeffs().iter().flat_map(|c| [c.re(), c.im()]);
    let den = common_denominator(parts);
    // q(x) = den·p(x) has Gaussian-integer coefficients and leading coefficient den.
    let q: Vec<(BigInt, BigInt)> = p
        .coeffs()
        .iter()
        .map(|c| {
            let re = c.re().numer() * (&den / c.re().denom());
            let im = c.im().numer() * (&den / c.im().denom());
            (re, im)
        })
        .collect();
    // Roots of p are y/den where y is a root of the monic Σ q_k den^(d-1-k) y^k.
    let mut scale = BigInt::from(1);
    for _ in 0..deg.saturating_sub(1) {
        scale *= &den;
    }
    let (a_re, a_im) = (&q[0].0 * &scale, &q[0].1 * &scale);
    if a_re.is_zero() && a_im.is_zero() {
        return Some(Some(Scalar::ZERO));
    }
    let norm = (&a_re * &a_re + &a_im * &a_im).to_i128()?;
    if norm > MAX_GAUSSIAN_NORM {
        return None;
    }
    let (ar, ai) = (a_re.to_i128()?, a_im.to_i128()?);
    let bound = (norm as f64).sqrt() as i128 + 1;
    let den_r = Rational::from(den.clone());
    for u in -bound..=bound {
        for v in -bound..=bound {
            let n = u * u + v * v;
            if n == 0 || n > norm || norm % n != 0 {
                continue;
            }
            // y | a  ⇔  a·conj(y) ≡ 0 mod N(y)
            let (pr, pi) = (ar * u + ai * v, ai * u - ar * v);
            if pr % n != 0 || pi % n != 0 {
                continue;
            }
            let y = Scalar::new(
                &Rational::from_int(u as i64) / &den_r,
                &Rational::from_int(v as i64) / &den_r,
            );
            if p.eval(&y).is_zero() {
                return Some(Some(y));
            }
        }
    }
    Some(None)
}

/// Kronecker's method restricted to quadratic factors, evaluating at 0, 1, −1.
fn rational_quadratic_factor(p: &UniPoly) -> Option<Option<UniPoly>> {
    let c = integer_coefficients(p);
    let eval = |x: i64| -> BigInt {
        let mut acc = BigInt::zero();
        for k in c.iter().rev() {
            acc = acc * BigInt::from(x) + k;
        }
        acc
    };
    let (v0, v1, vm) = (eval(0), eval(1), eval(-1));
    let (d0, d1, dm) = (divisors(&v0)?, divisors(&v1)?, divisors(&vm)?);
    if d0.len() * d1.len() * dm.len() * 4 > MAX_CANDIDATES {
        return None;
    }
    let half = Rational::new(1, 2);
    for &a in &d0 {
        let a = Rational::from_int(a as i64);
        for &b in &d1 {
            for sb in [1i64, -1] {
                let b = Rational::from_int(b as i64 * sb);
                for &m in &dm {
                    for sm in [1i64, -1] {
                        let m = Rational::from_int(m as i64 * sm);
                        // g(x) = A x² + B x + C through (0,a), (1,b), (−1,m)
                        let lead = &(&(&b + &m) * &half) - &a;
                        if lead.is_zero() {
                            continue;
                        }
                        let lin = &(&b - &m) * &half;
                        let g = UniPoly::new(vec![Scalar::real(a.clone()), Scalar::real(lin), Scalar::real(lead)]);
                        if g.divides(p) {
                            return Some(Some(g.monic()));
                        }
                    }
                }
            }
        }
    }
    Some(None)
}
