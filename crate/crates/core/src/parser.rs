//! Expression language for algebra elements and morphisms.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary ("*" unary)*
//! unary := "-" unary | power
//! power := atom ("^" integer)?
//! atom  := integer ("/" integer)? | identifier | "(" expr ")"
//! ```
//!
//! Identifiers are generators (`x1`, `nu2`, ...), named constants (`theta`,
//! `alpha_s_v`, ...) and basis diagrams (`u`, `hd`, `hbeta`, ...). An algebra
//! element times a morphism is a left box, a morphism times an algebra
//! element is a right box, and a product of morphisms is composition.

use std::fmt;

use crate::algebra::{consts, AlgebraElement, Generator};
use crate::error::{FmkError, Result};
use crate::hom::{Diagram, HomElement};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Alg(AlgebraElement),
    Hom(HomElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Alg(a) => write!(f, "{a}"),
            Value::Hom(h) => write!(f, "{h}"),
        }
    }
}

impl Value {
    pub fn in_field(self, field: crate::scalar::Field) -> Value {
        match self {
            Value::Alg(a) => Value::Alg(a.in_field(field)),
            Value::Hom(h) => Value::Hom(h.in_field(field)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Alg(a) => serde_json::json!({ "algebra": a.to_json() }),
            Value::Hom(h) => serde_json::json!({ "morphism": h.to_json() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((pos, Tok::Int(chars[start..i].iter().map(|c| c.1).collect())));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
        } else if "+-*^/()".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(FmkError::Parse { offset: pos, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(FmkError::Parse { offset: self.offset(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = add(acc, rhs, false, at)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = add(acc, rhs, true, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let at = self.offset();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            acc = mul(acc, rhs, at)?;
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        let at = self.offset();
        if !self.eat('^') {
            return Ok(base);
        }
        let n: u32 = match self.peek() {
            Some(Tok::Int(s)) => s.parse().map_err(|_| FmkError::Parse { offset: self.offset(), message: "exponent too large".into() })?,
            _ => return self.err("expected an integer exponent"),
        };
        self.pos += 1;
        match base {
            Value::Alg(a) => Ok(Value::Alg(a.pow(n))),
            Value::Hom(h) if h.source() == h.target() => {
                let mut acc = HomElement::identity(h.source());
                for _ in 0..n {
                    acc = acc.compose(&h)?;
                }
                Ok(Value::Hom(acc))
            }
            Value::Hom(_) => Err(FmkError::Parse { offset: at, message: "power of a non-endomorphism".into() }),
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut text = n;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            text = format!("{text}/{d}");
                        }
                        _ => return self.err("expected a denominator"),
                    }
                }
                let s: Scalar = text.parse().map_err(|_| FmkError::Parse { offset: at, message: format!("bad number `{text}`") })?;
                Ok(Value::Alg(AlgebraElement::scalar(s)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(g) = Generator::from_name(&name) {
                    Ok(Value::Alg(AlgebraElement::gen(g)))
                } else if let Some(c) = consts::by_name(&name) {
                    Ok(Value::Alg(c))
                } else if let Some(d) = Diagram::from_name(&name) {
                    Ok(Value::Hom(HomElement::diagram(d)))
                } else {
                    Err(FmkError::UnknownIdentifier { name, offset: at })
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Alg(a) => Value::Alg(a.neg()),
        Value::Hom(h) => Value::Hom(h.neg()),
    }
}

fn add(a: Value, b: Value, subtract: bool, at: usize) -> Result<Value> {
    let b = if subtract { negate(b) } else { b };
    match (a, b) {
        (Value::Alg(x), Value::Alg(y)) => Ok(Value::Alg(x.add(&y))),
        (Value::Hom(x), Value::Hom(y)) if x.source() == y.source() && x.target() == y.target() => Ok(Value::Hom(x.add(&y))),
        (Value::Hom(_), Value::Hom(_)) => Err(FmkError::Parse { offset: at, message: "adding morphisms of different types".into() }),
        _ => Err(FmkError::Parse { offset: at, message: "adding an algebra element to a morphism".into() }),
    }
}

fn mul(a: Value, b: Value, at: usize) -> Result<Value> {
    let wrap = |e: FmkError| FmkError::Parse { offset: at, message: e.to_string() };
    Ok(match (a, b) {
        (Value::Alg(x), Value::Alg(y)) => Value::Alg(x.mul(&y)),
        (Value::Alg(x), Value::Hom(h)) => Value::Hom(h.left_box(&x)),
        (Value::Hom(h), Value::Alg(y)) => Value::Hom(h.right_box(&y).map_err(wrap)?),
        (Value::Hom(g), Value::Hom(f)) => Value::Hom(g.compose(&f).map_err(wrap)?),
    })
}

pub fn parse_expression(src: &str) -> Result<Value> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, src };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses an expression that must denote an algebra element.
pub fn parse_algebra(src: &str) -> Result<AlgebraElement> {
    match parse_expression(src)? {
        Value::Alg(a) => Ok(a),
        Value::Hom(_) => Err(FmkError::Parse { offset: 0, message: "expected an algebra element, got a morphism".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::consts::*;

    #[test]
    fn expands_constants() {
        assert_eq!(parse_algebra("nu_s * theta_s").unwrap(), nu_s().mul(&theta_s()));
        assert!(parse_algebra("xi_s * xi_s").unwrap().is_zero());
        assert_eq!(parse_algebra("(x1 - x2)^2 - alpha_s^2").unwrap(), AlgebraElement::zero());
        assert_eq!(parse_algebra("1/2 * x1 + 1/2*x1").unwrap(), AlgebraElement::gen(Generator::X1));
    }

    #[test]
    fn syntax_error_offset() {
        match parse_expression("x1 +") {
            Err(FmkError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("x3"), Err(FmkError::UnknownIdentifier { offset: 0, .. })));
        assert!(matches!(parse_expression("x1 $"), Err(FmkError::Parse { offset: 3, .. })));
    }

    #[test]
    fn morphisms() {
        let v = parse_expression("nu_s * hd + xi_s * d").unwrap();
        let expected = HomElement::diagram(Diagram::Hd).left_box(&nu_s()).add(&HomElement::diagram(Diagram::D).left_box(&xi_s()));
        assert_eq!(v, Value::Hom(expected));
        assert_eq!(
            parse_expression("hd * u").unwrap(),
            Value::Hom(HomElement::with_coeff(&xi_s(), Diagram::One))
        );
        assert_eq!(
            parse_expression("l * xi1").unwrap(),
            parse_expression("xi2 * l + hbeta").unwrap()
        );
        assert!(parse_expression("u + d").is_err());
        assert!(parse_expression("l * y1").is_err());
    }

    #[test]
    fn display_round_trips() {
        for src in ["theta - 3/4*x1^2*xi2", "(nu1 + y2)*uh + x1*u", "nu_s*hbeta - x2*beta + l"] {
            let v = parse_expression(src).unwrap();
            let again = parse_expression(&v.to_string()).unwrap();
            assert_eq!(v, again, "{src}");
        }
    }
}
