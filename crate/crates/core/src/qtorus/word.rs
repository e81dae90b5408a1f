use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dilog::dilog;
use super::series::QSeries;
use super::skew::{ExpVec, SkewForm};
use super::SeriesError;
use crate::coeffs::QRat;

/// One factor `E(c y^alpha)^power` of an ordered product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub coeff: QRat,
    pub exp: ExpVec,
    pub power: i32,
}

impl Factor {
    pub fn new(exp: ExpVec, power: i32) -> Self {
        Self { coeff: QRat::one(), exp, power }
    }

    pub fn with_coeff(coeff: QRat, exp: ExpVec, power: i32) -> Self {
        Self { coeff, exp, power }
    }
}

/// An ordered product of dilogarithm powers, read left to right.
///
/// Text form: `E(1,0) E(0,1)^-1 E[v^2](1,1)`, where the optional bracket
/// holds the scalar `c` of `E(c y^alpha)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(pub Vec<Factor>);

impl Word {
    pub fn from_exps<I: IntoIterator<Item = (ExpVec, i32)>>(it: I) -> Self {
        Word(it.into_iter().map(|(e, p)| Factor::new(e, p)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E")?;
        if !self.coeff.is_one() {
            write!(f, "[{}]", self.coeff)?;
        }
        write!(f, "{}", self.exp)?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = SeriesError;
    fn try_from(s: String) -> Result<Self, SeriesError> {
        s.parse()
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SeriesError> {
        Err(SeriesError::WordSyntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace() || c == '*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, SeriesError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.s[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, SeriesError> {
        if !self.eat('E') {
            return self.err("expected 'E'");
        }
        let mut coeff = QRat::one();
        if self.eat('[') {
            let start = self.pos;
            let Some(len) = self.s[start..].find(']') else {
                return self.err("unclosed '['");
            };
            coeff = self.s[start..start + len].parse().map_err(|e| SeriesError::WordSyntax {
                pos: start,
                msg: format!("bad coefficient: {e}"),
            })?;
            self.pos = start + len + 1;
        }
        if !self.eat('(') {
            return self.err("expected '('");
        }
        let mut exp = vec![self.int()?];
        loop {
            self.skip_ws();
            if self.eat(')') {
                break;
            }
            if !self.eat(',') {
                return self.err("expected ',' or ')'");
            }
            exp.push(self.int()?);
        }
        let mut power = 1;
        if self.eat('^') {
            let braced = self.eat('{');
            let p = self.int()?;
            if braced && !self.eat('}') {
                return self.err("expected '}'");
            }
            power = i32::try_from(p).or_else(|_| self.err("power out of range"))?;
        }
        Ok(Factor { coeff, exp: ExpVec(exp), power })
    }
}

impl FromStr for Word {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, SeriesError> {
        let mut cur = Cursor { s, pos: 0 };
        let mut out = Vec::new();
        cur.skip_ws();
        while cur.peek().is_some() {
            out.push(cur.factor()?);
            cur.skip_ws();
        }
        Ok(Word(out))
    }
}

/// Ordered product `prod_s E(c_s y^{alpha_s})^{power_s}`, evaluated left to right.
pub fn eval_word(form: &SkewForm, word: &Word, depth: u32) -> Result<QSeries, SeriesError> {
    let mut acc = QSeries::one(form.clone(), depth);
    for f in &word.0 {
        let e = dilog(form, &f.coeff, &f.exp, depth)?;
        acc = acc.mul(&e.powi(f.power as i64)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::q_pow_minus_one;
    use crate::quiver::Quiver;

    #[test]
    fn parse_and_render_round_trip() {
        let w: Word = "E(1,0) E(0,1)^-1 E[v^2](1,1)".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.0[1].power, -1);
        assert_eq!(w.0[2].coeff, QRat::v_pow(2));
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        assert_eq!("E(1,1)^{4}".parse::<Word>().unwrap().0[0].power, 4);
        assert!("E(1,".parse::<Word>().is_err());
        assert!("F(1)".parse::<Word>().is_err());
        assert!("".parse::<Word>().unwrap().is_empty());
    }

    #[test]
    fn two_factor_coefficient() {
        let f = SkewForm::from_quiver(&Quiver::linear_a(2)).unwrap();
        let s = eval_word(&f, &"E(1,0) E(0,1)".parse().unwrap(), 2).unwrap();
        let expected = QRat::v_pow(3).checked_div(&(&q_pow_minus_one(1) * &q_pow_minus_one(1))).unwrap();
        assert_eq!(s.coeff(&ExpVec(vec![1, 1])), expected);
    }

    #[test]
    fn power_and_inverse_cancel() {
        let f = SkewForm::from_quiver(&Quiver::linear_a(2)).unwrap();
        let s = eval_word(&f, &"E(1,0)^2 E(0,1) E(0,1)^-1 E(1,0)^-2".parse().unwrap(), 5).unwrap();
        assert!(s.is_one());
    }
}
