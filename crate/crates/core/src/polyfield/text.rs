//! Text codec for vector fields: `2*x1^2*x2*d1 - 1/3*d2`.
//!
//! Variables and directions are 1-based in text. In Gaussian mode a
//! non-real coefficient is written in parentheses, e.g. `(1/2-3i)*x1*d2`.

use super::{Monomial, PolyFieldError, PolyVectorField, Space};
use crate::exact::{Rational, Scalar, ScalarMode};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { src: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyFieldError> {
        Err(PolyFieldError::Syntax { pos: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), PolyFieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    /// Digits, with no whitespace allowed inside.
    fn nat(&mut self) -> Result<(usize, String), PolyFieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits").to_string();
        Ok((start, s))
    }

    fn rational(&mut self) -> Result<Rational, PolyFieldError> {
        let (start, num) = self.nat()?;
        let mut text = num;
        if self.eat(b'/') {
            let (dpos, den) = self.nat()?;
            if den.bytes().all(|b| b == b'0') {
                return Err(PolyFieldError::Syntax { pos: dpos, message: "zero denominator".into() });
            }
            text = format!("{text}/{den}");
        }
        text.parse::<Rational>()
            .map_err(|_| PolyFieldError::Syntax { pos: start, message: "invalid number".into() })
    }

    /// A Gaussian literal such as `3`, `-2/3+1/2i`, `i`, `-5i`, between parentheses.
    fn gaussian(&mut self) -> Result<Scalar, PolyFieldError> {
        let mut re = Rational::ZERO;
        let mut im = Rational::ZERO;
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let mag = if self.peek() == Some(b'i') {
                Rational::ONE
            } else {
                self.rational()?
            };
            let v = if neg { -mag } else { mag };
            if self.eat(b'i') {
                im += &v;
            } else {
                re += &v;
            }
            if self.peek() == Some(b')') {
                break;
            }
        }
        Ok(Scalar::new(re, im))
    }
}

/// Parses a standalone scalar: a rational, or a Gaussian literal with or without parentheses.
pub fn parse_scalar(text: &str, mode: ScalarMode) -> Result<Scalar, PolyFieldError> {
    let mut lx = Lexer::new(text);
    let paren = lx.eat(b'(');
    let s = lx.gaussian()?;
    if paren {
        lx.expect(b')')?;
    }
    if lx.peek().is_some() {
        return lx.err("unexpected trailing input");
    }
    if mode == ScalarMode::Rational && !s.is_real() {
        return Err(PolyFieldError::WrongMode(ScalarMode::Gaussian));
    }
    Ok(s)
}

pub fn parse_field(text: &str, space: Space) -> Result<PolyVectorField, PolyFieldError> {
    let n = space.dim();
    let mut lx = Lexer::new(text);
    if lx.peek().is_none() {
        return lx.err("empty input");
    }
    if lx.peek() == Some(b'0') {
        let save = lx.pos;
        lx.pos += 1;
        if lx.peek().is_none() {
            return Ok(PolyVectorField::zero(space));
        }
        lx.pos = save;
    }
    let mut out = PolyVectorField::zero(space);
    let mut first = true;
    loop {
        let neg = match lx.peek() {
            Some(b'+') if !first => {
                lx.pos += 1;
                false
            }
            Some(b'-') => {
                lx.pos += 1;
                true
            }
            None if !first => break,
            _ if first => false,
            _ => return lx.err("expected '+' or '-'"),
        };
        first = false;

        let mut coeff = Scalar::ONE;
        match lx.peek() {
            Some(b'(') => {
                let at = lx.pos;
                lx.pos += 1;
                coeff = lx.gaussian()?;
                lx.expect(b')')?;
                if space.mode() == ScalarMode::Rational && !coeff.is_real() {
                    return Err(PolyFieldError::Syntax {
                        pos: at,
                        message: "complex coefficient in rational mode".into(),
                    });
                }
                lx.expect(b'*')?;
            }
            Some(c) if c.is_ascii_digit() => {
                coeff = Scalar::real(lx.rational()?);
                lx.expect(b'*')?;
            }
            _ => {}
        }
        if neg {
            coeff = -coeff;
        }

        let mut exps = vec![0u16; n];
        loop {
            match lx.peek() {
                Some(b'x') => {
                    lx.pos += 1;
                    let (at, idx) = lx.nat()?;
                    let i = index(&idx, n, at)?;
                    let mut e: u16 = 1;
                    if lx.eat(b'^') {
                        let (ep, es) = lx.nat()?;
                        e = es
                            .parse()
                            .map_err(|_| PolyFieldError::Syntax { pos: ep, message: "exponent too large".into() })?;
                    }
                    exps[i] = exps[i]
                        .checked_add(e)
                        .ok_or(PolyFieldError::Syntax { pos: at, message: "exponent too large".into() })?;
                    lx.expect(b'*')?;
                }
                Some(b'd') => {
                    lx.pos += 1;
                    let (at, idx) = lx.nat()?;
                    let j = index(&idx, n, at)?;
                    out = out
                        .add(&PolyVectorField::monomial(space, Monomial::from_exponents(&exps), j, coeff))
                        .expect("same space");
                    break;
                }
                _ => return lx.err("expected 'x' or 'd'"),
            }
        }
    }
    Ok(out)
}

fn index(s: &str, n: usize, pos: usize) -> Result<usize, PolyFieldError> {
    let i: usize = s.parse().unwrap_or(usize::MAX);
    if i == 0 || i > n {
        return Err(PolyFieldError::IndexOutOfRange { index: i, dim: n, pos });
    }
    Ok(i - 1)
}

/// Canonical text: degree ascending, then direction, then monomials in
/// descending lexicographic order of exponents.
pub fn format_field(x: &PolyVectorField) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, usize, &Scalar)> = x.terms().collect();
    terms.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then(a.1.cmp(&b.1)).then(b.0.cmp(a.0))
    });
    let mut out = String::new();
    for (k, (m, j, c)) in terms.into_iter().enumerate() {
        let neg = c.as_real().is_some_and(|r| r.is_negative());
        let mag = if neg { -c } else { c.clone() };
        let mut body = String::new();
        if !mag.is_one() {
            if mag.is_real() {
                body.push_str(&mag.to_string());
            } else {
                body.push_str(&format!("({mag})"));
            }
            body.push('*');
        }
        let r = m.render();
        if !r.is_empty() {
            body.push_str(&r);
            body.push('*');
        }
        body.push_str(&format!("d{}", j + 1));
        match (k == 0, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_examples() {
        let s = Space::real(2);
        let d1 = parse_field("d1", s).unwrap();
        assert_eq!(d1, PolyVectorField::partial(s, 0));
        let x = parse_field("2*x1^2*x2*d1 - x2*d2", s).unwrap();
        assert_eq!(x.coefficient(&Monomial::from_exponents(&[2, 1]), 0), Scalar::int(2));
        assert_eq!(x.coefficient(&Monomial::from_exponents(&[0, 1]), 1), Scalar::int(-1));
        assert_eq!(x.len(), 2);
        let y = parse_field(" 2 * x1^2 * x2 * d1-1/3*d2", s).unwrap();
        assert_eq!(format_field(&y), "-1/3*d2 + 2*x1^2*x2*d1");
    }

    #[test]
    fn reports_errors() {
        let s = Space::real(2);
        assert!(matches!(parse_field("x3*d1", s), Err(PolyFieldError::IndexOutOfRange { index: 3, .. })));
        assert!(matches!(parse_field("d0", s), Err(PolyFieldError::IndexOutOfRange { .. })));
        assert!(matches!(parse_field("x1*", s), Err(PolyFieldError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_field("d1 d2", s), Err(PolyFieldError::Syntax { pos: 3, .. })));
        assert!(parse_field("1/0*d1", s).is_err());
        assert!(parse_field("(i)*d1", s).is_err());
        assert!(parse_field("", s).is_err());
    }

    #[test]
    fn gaussian_coefficients() {
        let s = Space::gaussian(1);
        let x = parse_field("(1-2i)*x1*d1 + (i)*d1", s).unwrap();
        assert_eq!(x.coefficient(&Monomial::one(1), 0), Scalar::i());
        assert_eq!(format_field(&x), "(i)*d1 + (1-2i)*x1*d1");
        assert_eq!(parse_field(&format_field(&x), s).unwrap(), x);
        assert_eq!(parse_scalar("-3/2+i", ScalarMode::Gaussian).unwrap(), Scalar::new(Rational::new(-3, 2), Rational::ONE));
    }

    #[test]
    fn zero_and_cancellation() {
        let s = Space::real(1);
        assert!(parse_field("0", s).unwrap().is_zero());
        assert!(parse_field("d1 - d1", s).unwrap().is_zero());
        assert_eq!(format_field(&PolyVectorField::zero(s)), "0");
        assert_eq!(format_field(&parse_field("-x1*d1", s).unwrap()), "-x1*d1");
    }
}
