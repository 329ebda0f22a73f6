//! Parser for scalar expressions. Accepts the same surface syntax that
//! `Display` produces, plus ordinary arithmetic: `q^-1*(kappa+1)/(q^2-1)`,
//! `-3/2*s^3+eta`, and so on. `q` is sugar for `s^2`.

use num_rational::BigRational;

use super::poly::{VAR_NAMES, VETA, VKAPPA, VP, VS, VT, VU};
use super::ratfun::ExactScalar;
use super::ScalarError;

pub fn parse_scalar(input: &str) -> Result<ExactScalar, ScalarError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        input,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            message: format!("{} at byte {} in {:?}", msg, self.pos, self.input),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = acc + t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    let t = self.term()?;
                    acc = acc - t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let f = self.factor()?;
                    acc = acc * f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let f = self.factor()?;
                    if f.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc / f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExactScalar, ScalarError> {
        self.skip_ws();
        let mut negate = false;
        while let Some(b) = self.peek() {
            match b {
                b'-' => {
                    negate = !negate;
                    self.pos += 1;
                    self.skip_ws();
                }
                b'+' => {
                    self.pos += 1;
                    self.skip_ws();
                }
                _ => break,
            }
        }
        let mut base = self.atom()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.exponent()?;
            if base.is_zero() && e < 0 {
                return Err(self.err("zero to a negative power"));
            }
            base = base.pow(e);
        }
        Ok(if negate { -base } else { base })
    }

    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let paren = self.eat(b'(');
        self.skip_ws();
        let neg = self.eat(b'-');
        self.skip_ws();
        let n = self.integer()?;
        self.skip_ws();
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')' after exponent"));
        }
        let n = i64::try_from(n).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<ExactScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ExactScalar::from_qrat(BigRational::from_integer(n)))
            }
            Some(b) if b.is_ascii_alphabetic() => self.variable(),
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt, ScalarError> {
        let start = self.pos;
        while self
            .peek()
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn variable(&mut self) -> Result<ExactScalar, ScalarError> {
        let start = self.pos;
        while self
            .peek()
            .map(|b| b.is_ascii_alphanumeric() || b == b'_')
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        let name = &self.input[start..self.pos];
        match name {
            "q" => Ok(ExactScalar::q()),
            "s" => Ok(ExactScalar::var(VS)),
            "kappa" => Ok(ExactScalar::var(VKAPPA)),
            "eta" => Ok(ExactScalar::var(VETA)),
            "p" => Ok(ExactScalar::var(VP)),
            "t" => Ok(ExactScalar::var(VT)),
            "u" => Ok(ExactScalar::var(VU)),
            _ => {
                self.pos = start;
                Err(self.err(&format!(
                    "unknown variable {:?} (expected one of q, {})",
                    name,
                    VAR_NAMES.join(", ")
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse_scalar("0").unwrap(), <ExactScalar as Zero>::zero());
        assert_eq!(parse_scalar("q").unwrap(), ExactScalar::q());
        assert_eq!(parse_scalar("s^2").unwrap(), ExactScalar::q());
        assert_eq!(
            parse_scalar("q^-1").unwrap(),
            ExactScalar::q_pow(-1)
        );
        assert_eq!(
            parse_scalar("q^(-2)").unwrap(),
            ExactScalar::q_pow(-2)
        );
        assert_eq!(parse_scalar("-3/2").unwrap(), ExactScalar::ratio(-3, 2));
    }

    #[test]
    fn respects_precedence() {
        // 1 + 2*q = 1 + (2q), not (1+2)q
        let got = parse_scalar("1+2*q").unwrap();
        let expect = ExactScalar::from_int(1)
            + ExactScalar::from_int(2) * ExactScalar::q();
        assert_eq!(got, expect);
        // division is left associative: 8/2/2 = 2
        assert_eq!(parse_scalar("8/2/2").unwrap(), ExactScalar::from_int(2));
        // unary minus binds to the factor: -q^2 is -(q^2)
        assert_eq!(parse_scalar("-q^2+q^2").unwrap(), <ExactScalar as Zero>::zero());
    }

    #[test]
    fn round_trips_display_output() {
        let samples = [
            ExactScalar::q_pow(1) + ExactScalar::q_pow(-1),
            ExactScalar::q_pow(2) - ExactScalar::q_pow(-2),
            ExactScalar::s_pow(3) - ExactScalar::var(VKAPPA),
            (ExactScalar::var(VETA) + ExactScalar::from_int(1)).inv(),
            ExactScalar::ratio(-7, 3) * ExactScalar::var(VT),
            ExactScalar::q() * ExactScalar::var(VP) - ExactScalar::var(VU),
        ];
        for x in samples {
            let rendered = x.to_string();
            let back = parse_scalar(&rendered).unwrap();
            assert_eq!(back, x, "round trip failed for {}", rendered);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("q+").is_err());
        assert!(parse_scalar("foo").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("(q").is_err());
        assert!(parse_scalar("q)").is_err());
        assert!(parse_scalar("q^^2").is_err());
    }

    #[test]
    fn one_parses() {
        assert!(parse_scalar("1").unwrap().is_one());
    }
}
