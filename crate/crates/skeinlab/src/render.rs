//! Pretty and JSON forms of scalars, coproduct elements and words, with
//! parsers for the scalar forms.

use num_bigint::BigInt;
use serde_json::{json, Value};
use skeinlab_core::coproduct::CoproductElement;
use skeinlab_core::laurent::{Exponents, LaurentPoly};
use skeinlab_core::{MorseWord, Scalar};

use crate::text::{write_morse, write_morse_inline, EMPTY_TOKEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("scalar syntax: {message} at offset {offset}")]
    Syntax { message: String, offset: usize },
    #[error("scalar JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Scalar(#[from] skeinlab_core::ScalarError),
}

pub fn scalar_json(s: &Scalar) -> Value {
    let terms: Vec<Value> = s
        .numerator()
        .terms()
        .map(|(e, c)| json!({"c": c.to_string(), "q": e[0], "a": e[1..].to_vec()}))
        .collect();
    json!({"arity": s.arity(), "den_pow": s.den_pow(), "terms": terms})
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar, RenderError> {
    let bad = |m: &str| RenderError::Json(m.to_string());
    let arity = v["arity"].as_u64().ok_or_else(|| bad("missing arity"))? as usize;
    let den = v["den_pow"].as_u64().ok_or_else(|| bad("missing den_pow"))? as u32;
    let mut terms = Vec::new();
    for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
        let c: BigInt = t["c"]
            .as_str()
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| bad("term coefficient must be a decimal string"))?;
        let mut e = Exponents::new();
        e.push(t["q"].as_i64().ok_or_else(|| bad("term needs q"))? as i32);
        let a = t["a"].as_array().ok_or_else(|| bad("term needs a"))?;
        if a.len() != arity {
            return Err(bad("exponent vector length differs from arity"));
        }
        for x in a {
            e.push(x.as_i64().ok_or_else(|| bad("exponents must be integers"))? as i32);
        }
        terms.push((e, c));
    }
    Ok(Scalar::from_parts(LaurentPoly::from_terms(arity, terms), den))
}

pub fn render_scalar(s: &Scalar, format: Format) -> String {
    match format {
        Format::Pretty => s.to_string(),
        Format::Json => scalar_json(s).to_string(),
    }
}

fn word_text(w: &MorseWord) -> String {
    if w.is_empty() {
        EMPTY_TOKEN.to_string()
    } else {
        write_morse(w)
    }
}

pub fn element_json(x: &CoproductElement) -> Value {
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(words, c)| json!({"coeff": scalar_json(c), "diagrams": words.iter().map(word_text).collect::<Vec<_>>()}))
        .collect();
    json!({"slots": x.slots, "terms": terms})
}

/// One term per line: `coefficient · (slot 1 | slot 2 | ...)`.
pub fn render_element(x: &CoproductElement, format: Format) -> String {
    match format {
        Format::Json => element_json(x).to_string(),
        Format::Pretty => {
            if x.is_empty() {
                return "0".to_string();
            }
            let mut out = String::new();
            for (words, c) in &x.terms {
                let slots: Vec<String> = words.iter().map(write_morse_inline).collect();
                out.push_str(&format!("{} · ({})\n", c, slots.join(" | ")));
            }
            out.pop();
            out
        }
    }
}

pub fn render_word(w: &MorseWord, format: Format) -> String {
    match format {
        Format::Pretty => word_text(w),
        Format::Json => Value::String(word_text(w)).to_string(),
    }
}

// ---------------------------------------------------------------------------
// Pretty scalar parser

struct ScalarParser<'a> {
    s: &'a [u8],
    at: usize,
    arity: usize,
}

impl<'a> ScalarParser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, RenderError> {
        Err(RenderError::Syntax {
            message: message.into(),
            offset: self.at,
        })
    }

    fn skip_ws(&mut self) {
        while self.at < self.s.len() && self.s[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.at).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<u64> {
        let start = self.at;
        while self.at < self.s.len() && self.s[self.at].is_ascii_digit() {
            self.at += 1;
        }
        std::str::from_utf8(&self.s[start..self.at]).ok()?.parse().ok()
    }

    fn index(&mut self) -> Result<usize, RenderError> {
        match self.uint() {
            Some(i) => Ok(i as usize),
            None if self.arity == 1 => Ok(1),
            None => self.err("parameter index required when arity is not 1"),
        }
    }

    fn expr(&mut self) -> Result<Scalar, RenderError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, RenderError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, RenderError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            match self.uint() {
                Some(e) => Ok(base.pow(e as i64)?),
                None => self.err("expected exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar, RenderError> {
        let n = self.arity;
        match self.peek() {
            Some(b'(') => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.at;
                while self.at < self.s.len() && self.s[self.at].is_ascii_digit() {
                    self.at += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.s[start..self.at])
                    .expect("ascii")
                    .parse()
                    .expect("digits");
                Ok(Scalar::integer(n, v))
            }
            Some(b'd') => {
                self.at += 1;
                let i = self.index()?;
                Ok(Scalar::delta(i, n)?)
            }
            Some(b'q') => {
                self.at += 1;
                if self.s.get(self.at) != Some(&b'^') {
                    return Ok(Scalar::q_pow(n, 1));
                }
                self.at += 1;
                let neg = if self.s.get(self.at) == Some(&b'-') {
                    self.at += 1;
                    true
                } else {
                    false
                };
                let k = self.uint();
                let sign = if neg { -1 } else { 1 };
                if self.s.get(self.at) == Some(&b't') {
                    self.at += 1;
                    let i = self.index()?;
                    let e = sign * k.unwrap_or(1) as i32;
                    Ok(Scalar::a_pow(n, i, e)?)
                } else {
                    match k {
                        Some(k) => Ok(Scalar::q_pow(n, sign * k as i32)),
                        None => self.err("expected exponent after `q^`"),
                    }
                }
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the pretty form (and any expression in the same vocabulary:
/// integers, `q`, `q^e`, `q^t_i`-style powers written `q^kti`, `d`/`di`,
/// `+ - * /`, parentheses and `^n`) as a scalar of the given arity.
pub fn parse_scalar(text: &str, arity: usize) -> Result<Scalar, RenderError> {
    let mut p = ScalarParser {
        s: text.as_bytes(),
        at: 0,
        arity,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_forms() {
        let d = Scalar::delta(1, 1).unwrap();
        assert_eq!(render_scalar(&d, Format::Pretty), "d");
        let j = scalar_json(&d);
        assert_eq!(j["den_pow"], 1);
        assert_eq!(scalar_from_json(&j).unwrap(), d);
        let dd = d.coproduct().unwrap();
        assert_eq!(render_scalar(&dd, Format::Pretty), "d1*q^t2 + q^-t1*d2");
    }

    #[test]
    fn pretty_round_trip_examples() {
        for (s, n) in [
            ("d1*q^t2 + q^-t1*d2", 2),
            ("q^t*d + (q - q^-1)", 1),
            ("-3*q^2*q^-2t1*d1^2 + 7", 2),
            ("(q^2 + 1)/(q - q^-1)^2", 1),
            ("0", 3),
        ] {
            let v = parse_scalar(s, n).unwrap();
            assert_eq!(parse_scalar(&v.to_string(), n).unwrap(), v, "{}", s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_scalar("d1 +", 2).is_err());
        assert!(parse_scalar("d", 2).is_err());
        assert!(parse_scalar("d3", 2).is_err());
        assert!(parse_scalar("(q", 1).is_err());
    }

    #[test]
    fn empty_diagram_token() {
        assert_eq!(render_word(&MorseWord::empty(), Format::Pretty), "1_∅");
    }
}
