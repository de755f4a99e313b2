use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use super::rational::Rational;

/// Which computable base field a space works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarMode {
    /// ℚ, standing in for ℝ.
    Rational,
    /// ℚ(i), standing in for ℂ.
    Gaussian,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Gaussian => "gaussian",
        }
    }
}

impl std::str::FromStr for ScalarMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" | "real" => Ok(ScalarMode::Rational),
            "gaussian" | "complex" => Ok(ScalarMode::Gaussian),
            other => Err(format!("unknown scalar mode `{other}`")),
        }
    }
}

/// A Gaussian rational `re + im·i`. In rational mode `im` is always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: Rational::ZERO, im: Rational::ZERO };
    pub const ONE: Scalar = Scalar { re: Rational::ONE, im: Rational::ZERO };

    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::ZERO }
    }

    pub fn int(n: i64) -> Self {
        Scalar::real(Rational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::real(Rational::new(num, den))
    }

    pub fn i() -> Self {
        Scalar { re: Rational::ZERO, im: Rational::ONE }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_real(&self) -> Option<&Rational> {
        self.is_real().then_some(&self.re)
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    /// |z|² = re² + im².
    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> Scalar {
        if self.is_real() {
            return Scalar::real(self.re.recip());
        }
        let n = self.norm().recip();
        Scalar { re: &self.re * &n, im: -(&self.im * &n) }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root in ℚ(i), when one exists.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        if self.is_real() {
            if let Some(r) = self.re.sqrt_exact() {
                return Some(Scalar::real(r));
            }
            return (-&self.re).sqrt_exact().map(|r| Scalar::new(Rational::ZERO, r));
        }
        // (x + iy)² = a + ib  ⇒  x² = (a + |z|)/2, y = b / 2x.
        let modulus = self.norm().sqrt_exact()?;
        let half = Rational::new(1, 2);
        let x = (&(&self.re + &modulus) * &half).sqrt_exact()?;
        if x.is_zero() {
            let y = (&(&modulus - &self.re) * &half).sqrt_exact()?;
            return Some(Scalar::new(Rational::ZERO, y));
        }
        let y = &self.im / &(&x * &Rational::from_int(2));
        Some(Scalar::new(x, y))
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re + &o.re);
        }
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re - &o.re);
        }
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re * &o.re);
        }
        Scalar {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl fmt::Display for Scalar {
    /// Real values print as `p` or `p/q`; others as `a+bi`, `a-bi` or `bi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            String::new()
        } else if self.im == -Rational::ONE {
            "-".to_string()
        } else {
            self.im.to_string()
        };
        if self.re.is_zero() {
            return write!(f, "{im}i");
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, im)
        } else {
            write!(f, "{}+{}i", self.re, im)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let a = Scalar::new(Rational::from_int(1), Rational::from_int(2));
        let b = Scalar::new(Rational::from_int(3), Rational::from_int(-1));
        assert_eq!((&a * &b).to_string(), "5+5i");
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!((&Scalar::i() * &Scalar::i()), Scalar::int(-1));
    }

    #[test]
    fn gaussian_sqrt() {
        let z = Scalar::new(Rational::from_int(3), Rational::from_int(4));
        let w = z.sqrt_exact().unwrap();
        assert_eq!(&w * &w, z);
        let m = Scalar::int(-4).sqrt_exact().unwrap();
        assert_eq!(&m * &m, Scalar::int(-4));
        assert!(Scalar::int(2).sqrt_exact().is_none());
    }
}
