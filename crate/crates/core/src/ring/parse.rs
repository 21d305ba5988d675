//! Text grammar for polynomials:
//!
//! ```text
//! poly   := ['-'|'+'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := <digits> | 'z' <digits> ['^' <digits>]
//! ```
//!
//! Whitespace is allowed between tokens. Positions in errors are byte
//! offsets into the input.

use num_bigint::BigInt;

use super::{Monomial, Polynomial, RingError};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, RingError> {
        Err(RingError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn factor(&mut self, nvars: usize, coeff: &mut BigInt, exps: &mut [u32]) -> Result<(), RingError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                *coeff *= d.parse::<BigInt>().expect("digit run");
                Ok(())
            }
            Some(b'z') => {
                let var_pos = self.pos;
                self.pos += 1;
                let Some(d) = self.digits() else {
                    return self.error("expected variable index after 'z'");
                };
                let index: usize = match d.parse() {
                    Ok(i) if (1..=nvars).contains(&i) => i,
                    _ => {
                        return Err(RingError::Parse {
                            position: var_pos,
                            message: format!("variable z{d} outside z1..z{nvars}"),
                        })
                    }
                };
                self.skip_ws();
                let mut power = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let Some(d) = self.digits() else {
                        return self.error("expected exponent after '^'");
                    };
                    power = match d.parse() {
                        Ok(e) => e,
                        Err(_) => return self.error("exponent too large"),
                    };
                }
                exps[index - 1] += power;
                Ok(())
            }
            Some(_) => self.error("expected integer or variable"),
            None => self.error("unexpected end of input"),
        }
    }

    fn term(&mut self, nvars: usize) -> Result<(Vec<u32>, BigInt), RingError> {
        let mut coeff = BigInt::from(1);
        let mut exps = vec![0u32; nvars];
        self.factor(nvars, &mut coeff, &mut exps)?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(nvars, &mut coeff, &mut exps)?;
            } else {
                return Ok((exps, coeff));
            }
        }
    }
}

pub(super) fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, RingError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut result = Polynomial::zero(nvars);
    cur.skip_ws();
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (exps, coeff) = cur.term(nvars)?;
        let coeff = if negative { -coeff } else { coeff };
        result = &result + &Polynomial::monomial(nvars, Monomial::new(exps), coeff);
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(result),
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return cur.error("expected '+' or '-'"),
        }
        cur.pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_documented_forms() {
        let p = parse_polynomial("z1^2 - 1", 1).unwrap();
        assert_eq!(p.to_string(), "z1^2 - 1");
        assert!(parse_polynomial("0", 3).unwrap().is_zero());
        assert!(parse_polynomial(" z1 - z1 ", 1).unwrap().is_zero());
        assert_eq!(parse_polynomial("-2*z1*z2^2", 2).unwrap().to_string(), "-2*z1*z2^2");
        assert_eq!(parse_polynomial("3*4", 0).unwrap().to_string(), "12");
    }

    #[test]
    fn reports_positions() {
        let err = parse_polynomial("z1 + * z2", 2).unwrap_err();
        assert!(matches!(err, RingError::Parse { position: 5, .. }), "{err:?}");
        let err = parse_polynomial("z1 z2", 2).unwrap_err();
        assert!(matches!(err, RingError::Parse { position: 3, .. }), "{err:?}");
        let err = parse_polynomial("z1 + z3", 2).unwrap_err();
        assert!(matches!(err, RingError::Parse { position: 5, .. }), "{err:?}");
        assert!(parse_polynomial("", 2).is_err());
        assert!(parse_polynomial("z1 +", 2).is_err());
        assert!(parse_polynomial("z^2", 2).is_err());
        assert!(parse_polynomial("z1^", 2).is_err());
    }
}
