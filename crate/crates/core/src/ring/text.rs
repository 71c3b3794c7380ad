//! Text syntax for ring elements.
//!
//! A sum of terms; each term is an optional signed integer coefficient, an
//! optional power `s^k`, `q^k` or `t^k` (`k` may be negative), and an optional
//! `rad` factor. Factors may be separated by `*`. Examples: `-q - q^-1`,
//! `t + 1`, `3s^-2*rad`, `q^2 - 1 + q*rad`.

use serde::{Deserialize, Serialize};

use super::{Int, LaurentPoly, RingElem};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    S,
    Q,
    T,
}

impl Variable {
    /// Power of `s` represented by one power of this variable.
    pub fn s_degree(self) -> i64 {
        match self {
            Variable::S => 1,
            Variable::Q => 2,
            Variable::T => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Variable::S => "s",
            Variable::Q => "q",
            Variable::T => "t",
        }
    }
}

/// Rendered text together with the variable actually used; `fell_back` is set
/// when the requested variable could not express every exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rendering {
    pub text: String,
    pub variable: Variable,
    pub fell_back: bool,
}

fn push_term(out: &mut String, coeff: &Int, var: Variable, exp: i64, rad: bool) {
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mut body = String::new();
    let has_var = exp != 0;
    if !mag.is_one() || (!has_var && !rad) {
        body.push_str(&mag.to_string());
    }
    if has_var {
        body.push_str(var.symbol());
        if exp != 1 {
            body.push('^');
            body.push_str(&exp.to_string());
        }
    }
    if rad {
        if !body.is_empty() {
            body.push('*');
        }
        body.push_str("rad");
    }
    out.push_str(&body);
}

impl RingElem {
    pub fn render(&self, requested: Variable) -> Rendering {
        let m = requested.s_degree();
        let ok = self.rational_part().exponents_divisible_by(m)
            && self.radical_part().exponents_divisible_by(m);
        let (var, m) = if ok { (requested, m) } else { (Variable::S, 1) };
        let mut out = String::new();
        for (part, rad) in [(self.rational_part(), false), (self.radical_part(), true)] {
            for (e, c) in part.terms().rev() {
                push_term(&mut out, c, var, e / m, rad);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        Rendering { text: out, variable: var, fell_back: !ok }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn integer(&mut self) -> Option<Int> {
        self.skip_ws();
        let start = self.chars.peek()?.0;
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            end = i + c.len_utf8();
            self.chars.next();
        }
        if end == start {
            return None;
        }
        let digits = &self.src[start..end];
        Some(match digits.parse::<i64>() {
            Ok(v) => Int::Small(v),
            Err(_) => Int::from_big(digits.parse().ok()?),
        })
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let mut w = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !c.is_ascii_alphabetic() {
                break;
            }
            w.push(c);
            self.chars.next();
        }
        w
    }
}

/// Parse the text syntax into a ring element.
pub fn parse(text: &str) -> Result<RingElem> {
    let err = |m: &str| Error::Parse(format!("{m} in {text:?}"));
    let mut lx = Lexer { chars: text.char_indices().peekable(), src: text };
    let mut rational = Vec::new();
    let mut radical = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match lx.peek() {
            None if !first => break,
            None => return Err(err("empty expression")),
            Some('+') if !first => {
                lx.chars.next();
            }
            Some('-') => {
                lx.chars.next();
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return Err(err(&format!("expected + or -, found {c:?}"))),
        }
        first = false;
        let mut coeff = Int::ONE;
        let mut exp = 0i64;
        let mut rad = false;
        let mut factors = 0;
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = lx.integer().ok_or_else(|| err("bad integer"))?;
                    coeff = &coeff * &v;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let w = lx.word();
                    let var = match w.as_str() {
                        "s" => Variable::S,
                        "q" => Variable::Q,
                        "t" => Variable::T,
                        "rad" => {
                            if rad {
                                return Err(err("rad appears twice in one term"));
                            }
                            rad = true;
                            factors += 1;
                            if lx.peek() == Some('*') {
                                lx.chars.next();
                            }
                            continue;
                        }
                        other => return Err(err(&format!("unknown symbol {other:?}"))),
                    };
                    let mut k = 1i64;
                    if lx.peek() == Some('^') {
                        lx.chars.next();
                        let neg = if lx.peek() == Some('-') {
                            lx.chars.next();
                            true
                        } else {
                            false
                        };
                        let v = lx.integer().ok_or_else(|| err("missing exponent"))?;
                        let v = v.as_i64().ok_or_else(|| err("exponent too large"))?;
                        k = if neg { -v } else { v };
                    }
                    exp += k * var.s_degree();
                }
                _ => break,
            }
            factors += 1;
            if lx.peek() == Some('*') {
                lx.chars.next();
            }
        }
        if factors == 0 {
            return Err(err("empty term"));
        }
        if negative {
            coeff = -&coeff;
        }
        if rad {
            radical.push((exp, coeff));
        } else {
            rational.push((exp, coeff));
        }
    }
    Ok(RingElem::new(LaurentPoly::from_terms(rational), LaurentPoly::from_terms(radical)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_requested_variable() {
        let x = RingElem::mono(1, 4) + RingElem::one();
        assert_eq!(x.render(Variable::T).text, "t + 1");
        let cube = RingElem::s_pow(3).render(Variable::Q);
        assert_eq!(cube.text, "s^3");
        assert!(cube.fell_back);
        let k = -RingElem::from_q_terms(&[(1, 1), (1, -1)]);
        assert_eq!(k.render(Variable::Q).text, "-q - q^-1");
        assert_eq!(RingElem::zero().render(Variable::Q).text, "0");
    }

    #[test]
    fn parses_mixed_variables_and_radical() {
        let x = parse("q^2 - 1 + q*rad - 3s^-2 * rad + t").unwrap();
        let expect_rat = RingElem::from_q_terms(&[(1, 2), (-1, 0), (1, 2)]);
        assert_eq!(x.rational_part(), expect_rat.rational_part());
        let expect_rad = LaurentPoly::from_terms([(2, Int::Small(1)), (-2, Int::Small(-3))]);
        assert_eq!(x.radical_part(), &expect_rad);
        assert_eq!(parse("-rad").unwrap(), -RingElem::rad());
        assert_eq!(parse("2*3").unwrap(), RingElem::int(6));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "q +", "x^2", "q^", "rad rad", "q q ^"] {
            assert!(parse(bad).is_err(), "{bad:?} should fail");
        }
    }
}
