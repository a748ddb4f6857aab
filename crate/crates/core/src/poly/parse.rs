//! A small expression parser for polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := rational | ident | '(' expr ')'
//! rational := digits ('/' digits)?
//! ```
//!
//! Rational literals are exact; `/` appears only inside literals, there is
//! no general division. Exponents are nonnegative integers.

use crate::field::{FieldElement, FieldSpec};
use crate::poly::Polynomial;

/// A syntax error with the byte offset into the source string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ExprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (at offset {})", self.message, self.offset)
    }
}

impl std::error::Error for ExprError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    spec: FieldSpec,
}

/// Parse an expression in the given variables over the given field.
pub fn parse_polynomial(
    src: &str,
    vars: &[&str],
    spec: FieldSpec,
) -> Result<Polynomial, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
        spec,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ExprError {
        ExprError {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ExprError> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(self.spec, n);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'-') {
                negate = true;
            } else if self.eat(b'+') {
                negate = false;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ExprError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.natural()?;
            let mut acc = Polynomial::one(self.spec, self.vars.len());
            for _ in 0..exp {
                acc = &acc * &base;
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                // unary minus inside a factor position, e.g. `3*-x` is
                // rejected, but `(-x)` goes through the paren branch; still
                // allow a leading minus on an atom for robustness.
                self.pos += 1;
                let inner = self.atom()?;
                Ok(-&inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.rational()?;
                Ok(Polynomial::constant(self.spec, self.vars.len(), value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::variable(self.spec, self.vars.len(), i)),
                    None => Err(ExprError {
                        offset: start,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn natural(&mut self) -> Result<u32, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ExprError {
                offset: start,
                message: "integer out of range".to_string(),
            })
    }

    fn rational(&mut self) -> Result<FieldElement, ExprError> {
        let num = self.natural_i64()?;
        if self.pos < self.src.len() && self.src[self.pos] == b'/' {
            self.pos += 1;
            let den_start = self.pos;
            let den = self.natural_i64()?;
            if den == 0 {
                return Err(ExprError {
                    offset: den_start,
                    message: "zero denominator".to_string(),
                });
            }
            self.spec.fraction(num, den).map_err(|_| ExprError {
                offset: den_start,
                message: "denominator is zero in this field".to_string(),
            })
        } else {
            Ok(self.spec.integer(num))
        }
    }

    fn natural_i64(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ExprError {
                offset: start,
                message: "integer out of range".to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn parses_basic_forms() {
        let p = parse_polynomial("x*y - 2*x^2 + 3/2", &["x", "y"], q()).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 1])), q().integer(1));
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0])), q().integer(-2));
        assert_eq!(
            p.coefficient(&Monomial::new(vec![0, 0])),
            q().fraction(3, 2).unwrap()
        );
    }

    #[test]
    fn parses_parens_and_powers() {
        let p = parse_polynomial("(x + y)^2", &["x", "y"], q()).unwrap();
        let expected = parse_polynomial("x^2 + 2*x*y + y^2", &["x", "y"], q()).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn reports_unknown_variable_with_offset() {
        let err = parse_polynomial("x + z", &["x", "y"], q()).unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.message.contains('z'));
    }

    #[test]
    fn rejects_trailing_garbage() {
        assert!(parse_polynomial("x + ", &["x"], q()).is_err());
        assert!(parse_polynomial("x y", &["x", "y"], q()).is_err());
        assert!(parse_polynomial("x^-1", &["x"], q()).is_err());
    }

    #[test]
    fn finite_field_literals_reduce() {
        let f7 = FieldSpec::prime_field(7).unwrap();
        let p = parse_polynomial("10*x", &["x"], f7).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![1])), f7.integer(3));
        // 1/2 = 4 over F_7
        let p = parse_polynomial("1/2", &["x"], f7).unwrap();
        assert_eq!(p.constant_term(), f7.integer(4));
    }
}
