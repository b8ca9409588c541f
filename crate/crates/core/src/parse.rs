//! Readers for polynomials, field elements and valuation literals.
//!
//! Polynomial grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'x' | 't' | 'u' | '(' expr ')'
//! ```
//!
//! `t` and `u` are constants of the base field (the uniformizer of F_q(t) and
//! the generator of F_q). Division is only by constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::parse_q;
use crate::valued_field::ValuedField;

type P<F> = Poly<<F as ValuedField>::Elem>;

struct Parser<'a, F: ValuedField> {
    k: &'a F,
    src: &'a [u8],
    pos: usize,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl<'a, F: ValuedField> Parser<'a, F> {
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected an integer at offset {start}")));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<P<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(self.k, &self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(self.k, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(self.k, &self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                match d.degree() {
                    None => return Err(err("division by zero")),
                    Some(0) => {
                        let inv = self.k.inv(&d.coeffs()[0]);
                        acc = acc.scale(self.k, &inv);
                    }
                    Some(_) => return Err(err("division by a non-constant")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<P<F>> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg(self.k));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: usize = e.try_into().map_err(|_| err("exponent too large"))?;
            if e > 10_000 {
                return Err(err("exponent too large"));
            }
            return Ok(base.pow(self.k, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err("unbalanced parenthesis"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(self.k, self.k.from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                match c {
                    b'x' => Ok(Poly::x(self.k)),
                    _ => {
                        let name = (c as char).to_string();
                        let v = self.k.variable(&name).ok_or_else(|| {
                            Error::BaseMismatch(format!("`{name}` is not defined over {}", self.k.spec()))
                        })?;
                        Ok(Poly::constant(self.k, v))
                    }
                }
            }
            Some(c) => Err(err(format!("unexpected character {:?}", c as char))),
            None => Err(err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial in `x` over `k`.
pub fn parse_poly<F: ValuedField>(k: &F, s: &str) -> Result<P<F>> {
    let mut p = Parser { k, src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    Ok(out)
}

/// Parses a base-field element (an expression without `x`).
pub fn parse_elem<F: ValuedField>(k: &F, s: &str) -> Result<F::Elem> {
    let p = parse_poly(k, s)?;
    match p.degree() {
        None => Ok(k.zero()),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => Err(err(format!("{s:?} is not a constant"))),
    }
}

/// Raw valuation steps `(phi, lambda)`, not yet validated.
pub type RawSteps<F> = Vec<(P<F>, BigRational)>;

/// Reads `[v0]` or `[v0, (x)=1/2, (x^2-3)=5/4]`. A step may carry a name
/// before its parenthesis, as in `v1(x)=1/2`.
pub fn parse_valuation_literal<F: ValuedField>(k: &F, s: &str) -> Result<RawSteps<F>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("valuation literal must be enclosed in [ ]"))?;
    let items = split_top_level(inner)?;
    let mut it = items.into_iter();
    match it.next().map(str::trim) {
        Some("v0") => {}
        _ => return Err(err("valuation literal must start with v0")),
    }
    let mut steps = Vec::new();
    for item in it {
        let item = item.trim();
        let eq = item.rfind('=').ok_or_else(|| err(format!("missing `=` in {item:?}")))?;
        let (lhs, rhs) = (item[..eq].trim(), item[eq + 1..].trim());
        let open = lhs.find('(').ok_or_else(|| err(format!("missing `(` in {item:?}")))?;
        let name = &lhs[..open];
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err(format!("bad step name {name:?}")));
        }
        let body = lhs[open..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err(format!("bad key polynomial in {item:?}")))?;
        steps.push((parse_poly(k, body)?, parse_q(rhs)?));
    }
    Ok(steps)
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err("unbalanced parenthesis"));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err("unbalanced parenthesis"));
    }
    out.push(&s[start..]);
    Ok(out)
}

/// Reads `{"steps":[{"phi":["c0","c1",...],"lambda":"b/c"}, ...]}`.
pub fn parse_valuation_json<F: ValuedField>(k: &F, v: &Value) -> Result<RawSteps<F>> {
    let steps = v
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| err("valuation JSON needs a `steps` array"))?;
    steps
        .iter()
        .map(|step| {
            let phi = step
                .get("phi")
                .and_then(Value::as_array)
                .ok_or_else(|| err("step needs a `phi` array"))?;
            let coeffs = phi
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_elem(k, s),
                    Value::Number(n) => parse_elem(k, &n.to_string()),
                    _ => Err(err("coefficients must be strings or integers")),
                })
                .collect::<Result<Vec<_>>>()?;
            let lambda = match step.get("lambda") {
                Some(Value::String(s)) => parse_q(s)?,
                Some(Value::Number(n)) => parse_q(&n.to_string())?,
                _ => return Err(err("step needs a `lambda`")),
            };
            Ok((Poly::new(k, coeffs), lambda))
        })
        .collect()
}

/// Accepts either a bracketed literal or the JSON object form.
pub fn parse_valuation<F: ValuedField>(k: &F, s: &str) -> Result<RawSteps<F>> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| err(e.to_string()))?;
        parse_valuation_json(k, &v)
    } else {
        parse_valuation_literal(k, t)
    }
}
