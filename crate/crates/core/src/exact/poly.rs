use std::fmt;

use super::scalar::Scalar;

/// Univariate polynomial with exact coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Scalar::ONE] }
    }

    /// x − r
    pub fn linear(root: &Scalar) -> Self {
        UniPoly::new(vec![-root, Scalar::ONE])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&Scalar::ZERO);
                    let b = o.coeffs.get(i).unwrap_or(&Scalar::ZERO);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(o);
        self.mul(o).div_rem(&g).0.monic()
    }

    /// Number of distinct real roots, by a Sturm sequence. `None` when a
    /// coefficient is not real.
    pub fn count_real_roots(&self) -> Option<usize> {
        if !self.is_real() {
            return None;
        }
        if self.degree().unwrap_or(0) == 0 {
            return Some(0);
        }
        let p = self.div_rem(&self.gcd(&self.derivative())).0;
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&Scalar::int(-1)));
        }
        // Signs at ±∞ come from leading coefficients and degree parity.
        let sign_changes = |at_plus: bool| {
            let signs: Vec<i32> = seq
                .iter()
                .map(|q| {
                    let s = q.leading().expect("nonzero").re().signum();
                    let odd = q.degree().expect("nonzero") % 2 == 1;
                    if !at_plus && odd {
                        -s
                    } else {
                        s
                    }
                })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Some(sign_changes(false) - sign_changes(true))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::int(i as i64)).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.as_real().is_some_and(|r| r.is_negative());
            let mag = if neg { -c } else { c.clone() };
            let body = match (i, mag.is_one()) {
                (0, _) => paren(&mag),
                (_, true) => monomial(i),
                (_, false) => format!("{}*{}", paren(&mag), monomial(i)),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn paren(c: &Scalar) -> String {
    if c.is_real() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn monomial(i: usize) -> String {
    if i == 1 {
        "x".to_string()
    } else {
        format!("x^{i}")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_lcm() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // x² − 1
        let b = UniPoly::from_ints(&[1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.lcm(&b), a);
        let c = UniPoly::from_ints(&[-2, 1]);
        assert_eq!(b.lcm(&c), UniPoly::from_ints(&[-2, -1, 1]));
    }

    #[test]
    fn division() {
        let a = UniPoly::from_ints(&[1, 0, 0, 1]); // x³ + 1
        let b = UniPoly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[1, -1, 1]));
        assert_eq!(format!("{}", q), "x^2 - x + 1");
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).count_real_roots(), Some(0));
        assert_eq!(UniPoly::from_ints(&[-2, 0, 1]).count_real_roots(), Some(2));
        // (x − 1)²(x + 3)
        let p = UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[-1, 1])).mul(&UniPoly::from_ints(&[3, 1]));
        assert_eq!(p.count_real_roots(), Some(2));
        assert_eq!(UniPoly::from_ints(&[1, 0, 0, 0, 1]).count_real_roots(), Some(0));
        assert_eq!(UniPoly::from_ints(&[5]).count_real_roots(), Some(0));
    }
}
