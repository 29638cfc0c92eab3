//! Recursive-descent parser for polynomial text such as `3*x^-2*y + 1 - t^2`
//! or `(1-x)*(1-y)`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)?
//! atom   := int | var | '(' expr ')'
//! ```
//!
//! Negative powers are accepted only for `±monomials`.

use num_bigint::BigInt;

use super::{var_names, LaurentPoly, RingError, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: usize,
}

pub(super) fn parse_poly(text: &str, k: usize) -> Result<LaurentPoly> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, k };
    parser.skip_ws();
    if parser.pos == parser.src.len() {
        return Err(parser.error("empty polynomial"));
    }
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> RingError {
        RingError::Parse { offset: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        self.skip_ws();
        let n = self.digits()?;
        let n: u32 = n.try_into().map_err(|_| self.error("exponent too large"))?;
        if !negative {
            return Ok(base.pow(n));
        }
        match base.as_unit_monomial() {
            Some(u) => Ok(u.inverse().to_poly().pow(n)),
            None => Err(self.error("negative exponent on a non-unit")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(LaurentPoly::constant(self.k, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let names = var_names(self.k);
                let name = (c as char).to_string();
                match names.iter().position(|v| *v == name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(LaurentPoly::var(self.k, i))
                    }
                    None => Err(self.error(&format!("unknown variable '{name}' for k={}", self.k))),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ExpVec;

    #[test]
    fn grammar_examples() {
        let p = parse_poly("3*x^-2*y + 1 - t^2", 2).unwrap();
        assert_eq!(p.coeff(&ExpVec::from_x(&[-2, 1])), BigInt::from(3));
        assert_eq!(p.coeff(&ExpVec::from_x_t(&[0, 0], 2)), BigInt::from(-1));
        assert_eq!(p.to_string(), "1 - t^2 + 3*x^-2*y");
        let q = parse_poly(" ( 1-x ) * (1 - y) ", 2).unwrap();
        assert_eq!(q.to_string(), "1 - x - y + x*y");
        assert_eq!(parse_poly("(x*y^-1)^-2", 2).unwrap().to_string(), "x^-2*y^2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("", 2).is_err());
        assert!(parse_poly("z", 2).is_err());
        assert!(parse_poly("z + w", 4).is_ok());
        assert!(parse_poly("(1 + x)^-1", 2).is_err());
        assert!(parse_poly("1 +", 2).is_err());
        assert!(parse_poly("(1 + x", 2).is_err());
        assert!(parse_poly("x y", 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-1", "2 + 2*x", "x^-3*y^2*t - 7", "-x*y^-1 + 4*t^-2"] {
            let p = parse_poly(s, 2).unwrap();
            assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
        }
    }
}
