use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::HalfLaurent;
use super::qrat::QRat;

fn push_term(out: &mut String, exp: i64, c: &BigRational, first: bool) {
    let neg = c.is_negative();
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let abs = c.abs();
    let var = match exp {
        0 => None,
        1 => Some("v".to_string()),
        k => Some(format!("v^{k}")),
    };
    match var {
        None => out.push_str(&abs.to_string()),
        Some(v) if abs.is_one() => out.push_str(&v),
        Some(v) => {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&v);
        }
    }
}

/// Renders a Laurent polynomial in `v`, highest exponent first.
pub fn render_laurent(p: &HalfLaurent) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().iter().rev().enumerate() {
        push_term(&mut out, *e, c, i == 0);
    }
    out
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = render_laurent(self.numer());
        if self.denom().is_one() {
            return f.write_str(&num);
        }
        let den = render_laurent(self.denom());
        if self.numer().terms().len() > 1 {
            write!(f, "({num})/({den})")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}
