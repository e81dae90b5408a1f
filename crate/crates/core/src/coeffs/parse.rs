//! Parser for the text form of [`QRat`]: sums, products, quotients and integer
//! powers of rationals, `v = q^{1/2}` and `q`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::qrat::QRat;
use super::CoeffError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    V,
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, CoeffError> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().unwrap())));
                continue;
            }
            'v' => Tok::V,
            'q' => Tok::Q,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(CoeffError::Parse { pos: i, msg: format!("unexpected character {other:?}") }),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Parse { pos: self.offset(), msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<QRat, CoeffError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QRat, CoeffError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| CoeffError::Parse { pos: at, msg: "division by zero".into() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QRat, CoeffError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64, CoeffError> {
        let paren = matches!(self.peek(), Some(Tok::LParen));
        if paren {
            self.pos += 1;
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.pos += 1;
        }
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(self.err("expected integer exponent"));
        };
        self.pos += 1;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent out of range"))?;
        if paren {
            if self.peek() != Some(&Tok::RParen) {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<QRat, CoeffError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let at = self.offset();
            let e = self.exponent()?;
            return base.pow(e).map_err(|_| CoeffError::Parse { pos: at, msg: "negative power of zero".into() });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QRat, CoeffError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(QRat::from_rational(BigRational::from_integer(n))),
            Tok::V => Ok(QRat::v_pow(1)),
            Tok::Q => Ok(QRat::v_pow(2)),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number, 'v', 'q' or '('"))
            }
        }
    }
}

impl FromStr for QRat {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(CoeffError::Parse { pos: 0, msg: "empty expression".into() });
        }
        let mut p = Parser { toks, pos: 0, len: s.len() };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::qrat::q_pow_minus_one;

    #[test]
    fn parses_q_and_v_forms() {
        let a: QRat = "v^3/(q-1)^2".parse().unwrap();
        let b = QRat::v_pow(3).checked_div(&(&q_pow_minus_one(1) * &q_pow_minus_one(1))).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "v^3/(v^4-2*v^2+1)");
        assert_eq!("v^-1".parse::<QRat>().unwrap(), QRat::v_pow(-1));
        assert_eq!("-3/2*v".parse::<QRat>().unwrap().to_string(), "-3/2*v");
    }

    #[test]
    fn rejects_garbage() {
        assert!("v^".parse::<QRat>().is_err());
        assert!("1/0".parse::<QRat>().is_err());
        assert!("x".parse::<QRat>().is_err());
        assert!("(v".parse::<QRat>().is_err());
    }

    #[test]
    fn render_round_trips() {
        for s in ["0", "1", "-1", "v", "v^-3", "(v^2+1)/(v^2-1)", "-v/(v^2-v+1)", "7/3*v^2-1/2"] {
            let x: QRat = s.parse().unwrap();
            let back: QRat = x.to_string().parse().unwrap();
            assert_eq!(x, back, "{s}");
        }
    }
}
