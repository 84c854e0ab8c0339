//! Small recursive-descent parser for ring elements and polynomial
//! expressions: `+ - * / ^`, parentheses, integers, named indeterminates and
//! bracketed matrix literals.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Ring, Value};

/// Target of the expression parser.
pub(crate) trait Algebra {
    type V: Clone;
    fn integer(&self, n: &BigInt) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn pow(&self, a: &Self::V, e: u64) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V, pos: usize) -> Result<Self::V>;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn literal(&self, text: &str, pos: usize) -> Result<Self::V>;
}

struct RingAlgebra<'a>(&'a Ring);

impl Algebra for RingAlgebra<'_> {
    type V = Value;
    fn integer(&self, n: &BigInt) -> Value {
        self.0.from_bigint(n)
    }
    fn add(&self, a: &Value, b: &Value) -> Value {
        self.0.add(a, b)
    }
    fn sub(&self, a: &Value, b: &Value) -> Value {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &Value, b: &Value) -> Value {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &Value) -> Value {
        self.0.neg(a)
    }
    fn pow(&self, a: &Value, e: u64) -> Value {
        self.0.pow(a, e)
    }
    fn div(&self, a: &Value, b: &Value, pos: usize) -> Result<Value> {
        if let Some(q) = self.0.exact_div(a, b) {
            return Ok(q);
        }
        let inv = self.0.inverse(b).map_err(|e| Error::parse(pos, format!("cannot divide: {e}")))?;
        Ok(self.0.mul(a, &inv))
    }
    fn ident(&self, name: &str, pos: usize) -> Result<Value> {
        self.0.named(name).ok_or_else(|| Error::parse(pos, format!("unknown name `{name}` in {}", self.0.spec())))
    }
    fn literal(&self, text: &str, pos: usize) -> Result<Value> {
        self.0.parse_literal(text, pos)
    }
}

pub(crate) fn parse_value(ring: &Ring, text: &str) -> Result<Value> {
    parse_with(&RingAlgebra(ring), text)
}

pub(crate) fn parse_with<A: Algebra>(alg: &A, text: &str) -> Result<A::V> {
    let mut p = Parser { alg, src: text.as_bytes(), text, pos: 0 };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(Error::parse(0, "empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a, A: Algebra> {
    alg: &'a A,
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<A: Algebra> Parser<'_, A> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<A::V> {
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::V> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = self.alg.mul(&acc, &t);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = self.alg.div(&acc, &t, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<A::V> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.alg.neg(&v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<A::V> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u64 = self.text[start..self.pos]
                .parse()
                .map_err(|_| Error::parse(start, "expected a nonnegative integer exponent"))?;
            return Ok(self.alg.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::V> {
        let start = self.pos;
        match self.peek() {
            None => Err(Error::parse(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'[') => {
                let begin = self.pos;
                let mut depth = 0usize;
                while self.pos < self.src.len() {
                    match self.src[self.pos] {
                        b'[' => depth += 1,
                        b']' => {
                            depth -= 1;
                            if depth == 0 {
                                self.pos += 1;
                                return self.alg.literal(&self.text[begin..self.pos], begin);
                            }
                        }
                        _ => {}
                    }
                    self.pos += 1;
                }
                Err(Error::parse(begin, "unbalanced `[`"))
            }
            Some(c) if c.is_ascii_digit() => {
                let begin = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.text[begin..self.pos].parse().expect("digits");
                Ok(self.alg.integer(&n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let begin = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                self.alg.ident(&self.text[begin..self.pos], begin)
            }
            Some(c) => Err(Error::parse(start.max(self.pos), format!("unexpected `{}`", c as char))),
        }
    }
}

/// Splits on commas outside brackets and parentheses; returns trimmed parts
/// with their byte offsets (shifted by `offset`).
pub(crate) fn split_top_level(text: &str, offset: usize) -> Result<Vec<(String, usize)>> {
    let mut parts = Vec::new();
    let mut depth: i64 = 0;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(offset + i, format!("unbalanced `{c}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(trimmed(text, start, i, offset)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(offset + text.len(), "unbalanced brackets"));
    }
    parts.push(trimmed(text, start, text.len(), offset)?);
    Ok(parts)
}

fn trimmed(text: &str, start: usize, end: usize, offset: usize) -> Result<(String, usize)> {
    let raw = &text[start..end];
    let lead = raw.len() - raw.trim_start().len();
    let s = raw.trim();
    if s.is_empty() {
        return Err(Error::parse(offset + start, "empty list entry"));
    }
    Ok((s.to_string(), offset + start + lead))
}

/// `[x, y, ...]` into its top-level entries.
pub(crate) fn split_bracket_list(text: &str, offset: usize) -> Result<Vec<(String, usize)>> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    if !(t.starts_with('[') && t.ends_with(']')) || t.len() < 2 {
        return Err(Error::parse(offset + lead, "expected a bracketed list"));
    }
    split_top_level(&t[1..t.len() - 1], offset + lead + 1)
}
