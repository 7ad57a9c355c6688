//! Recursive-descent readers for field, scalar and series literals.
//!
//! ```text
//! field  := "GF(" int ["," int [";" "modulus" "=" sint {"," sint}]] ")"
//!         | "Laurent(" field ")"
//! series := expr ["mod" "z" "^" int]
//! expr   := ["+"|"-"] term {("+"|"-") term}
//! term   := power {"*" power}
//! power  := atom ["^" sint]
//! atom   := int | "t" | "w" | "z" | "O(t^" sint ")" | "(" expr ")"
//! ```

use parabolic_core::rings::{FiniteField, LaurentField, Ring};
use parabolic_core::series::TruncatedSeries;
use std::fmt;

/// Largest `z`-degree a literal may produce.
const MAX_LITERAL_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the literal.
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }

    /// The literal with a caret under the offending position.
    pub fn render(&self, input: &str) -> String {
        format!("{}\n  {}\n  {}^", self, input, " ".repeat(self.pos))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.pos + 1, self.message)
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(input: &str) -> PResult<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = input[start..i]
                .parse::<u64>()
                .ok()
                .filter(|&n| n <= i64::MAX as u64)
                .ok_or_else(|| ParseError::new(start, "integer literal too large"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(input[start..i].to_string())));
        } else if "+-*^(),;=".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::new(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((input.len(), Tok::End));
    Ok(out)
}

struct Cursor {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Cursor {
    fn new(input: &str) -> PResult<Self> {
        Ok(Cursor {
            toks: tokenize(input)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(ParseError::new(
                self.pos(),
                format!("expected '{c}', found {}", self.peek()),
            ))
        }
    }

    fn expect_ident(&mut self, name: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            other => Err(ParseError::new(
                self.pos(),
                format!("expected '{name}', found {other}"),
            )),
        }
    }

    fn expect_int(&mut self) -> PResult<u64> {
        match self.bump() {
            Tok::Int(n) => Ok(n),
            other => {
                self.at -= usize::from(other != Tok::End);
                Err(ParseError::new(
                    self.pos(),
                    format!("expected an integer, found {other}"),
                ))
            }
        }
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = self.eat_sym('-');
        let n = self.expect_int()? as i64;
        Ok(if neg { -n } else { n })
    }

    fn expect_end(&self) -> PResult<()> {
        match self.peek() {
            Tok::End => Ok(()),
            other => Err(ParseError::new(self.pos(), format!("unexpected {other}"))),
        }
    }
}

/// A scalar ring named by a field literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Finite(FiniteField),
    Laurent(LaurentField),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Finite(f) => f.p(),
            Field::Laurent(k) => k.base().p(),
        }
    }

    pub fn base(&self) -> FiniteField {
        match self {
            Field::Finite(f) => *f,
            Field::Laurent(k) => *k.base(),
        }
    }

    /// Canonical literal, re-readable by [`parse_field`].
    pub fn literal(&self) -> String {
        match self {
            Field::Finite(f) => finite_literal(f),
            Field::Laurent(k) => format!("Laurent({})", finite_literal(k.base())),
        }
    }
}

fn finite_literal(f: &FiniteField) -> String {
    match f.modulus() {
        None => format!("GF({})", f.p()),
        Some(m) => {
            let m: Vec<String> = m.iter().map(u64::to_string).collect();
            format!("GF({},{};modulus={})", f.p(), f.degree(), m.join(","))
        }
    }
}

/// Reads a field literal; `tprec` sets the working precision of Laurent fields.
pub fn parse_field(input: &str, tprec: Option<i64>) -> PResult<Field> {
    let mut cur = Cursor::new(input)?;
    let field = field_rule(&mut cur, tprec)?;
    cur.expect_end()?;
    Ok(field)
}

fn field_rule(cur: &mut Cursor, tprec: Option<i64>) -> PResult<Field> {
    let pos = cur.pos();
    match cur.peek().clone() {
        Tok::Ident(s) if s == "GF" => {
            cur.bump();
            cur.expect_sym('(')?;
            let p_pos = cur.pos();
            let p = cur.expect_int()?;
            let mut d = 1usize;
            let mut modulus = None;
            if cur.eat_sym(',') {
                d = cur.expect_int()? as usize;
                if cur.eat_sym(';') {
                    cur.expect_ident("modulus")?;
                    cur.expect_sym('=')?;
                    let mut m = vec![cur.signed_int()?];
                    while cur.eat_sym(',') {
                        m.push(cur.signed_int()?);
                    }
                    modulus = Some(m);
                }
            }
            cur.expect_sym(')')?;
            let f = FiniteField::new(p, d, modulus.as_deref())
                .map_err(|e| ParseError::new(p_pos, e.to_string()))?;
            Ok(Field::Finite(f))
        }
        Tok::Ident(s) if s == "Laurent" => {
            cur.bump();
            cur.expect_sym('(')?;
            let inner_pos = cur.pos();
            let inner = field_rule(cur, None)?;
            cur.expect_sym(')')?;
            match inner {
                Field::Finite(f) => Ok(Field::Laurent(match tprec {
                    Some(p) => LaurentField::with_precision(f, p),
                    None => LaurentField::new(f),
                })),
                Field::Laurent(_) => Err(ParseError::new(
                    inner_pos,
                    "nested Laurent fields are not supported",
                )),
            }
        }
        other => Err(ParseError::new(
            pos,
            format!("expected 'GF' or 'Laurent', found {other}"),
        )),
    }
}

/// Polynomial in `z` over `R`, densely stored.
type ZPoly<E> = Vec<E>;

struct ExprParser<'a, R: Ring> {
    ring: &'a R,
    cur: Cursor,
}

impl<R: Ring> ExprParser<'_, R> {
    fn add(&self, a: &[R::Elem], b: &[R::Elem], negate: bool) -> ZPoly<R::Elem> {
        let ring = self.ring;
        let mut out = vec![ring.zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] = x.clone();
        }
        for (i, y) in b.iter().enumerate() {
            out[i] = if negate {
                ring.sub(&out[i], y)
            } else {
                ring.add(&out[i], y)
            };
        }
        out
    }

    fn mul(&self, a: &ZPoly<R::Elem>, b: &ZPoly<R::Elem>, pos: usize) -> PResult<ZPoly<R::Elem>> {
        let ring = self.ring;
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let len = a.len() + b.len() - 1;
        if len > MAX_LITERAL_DEGREE {
            return Err(ParseError::new(pos, "literal degree too large"));
        }
        let mut out = vec![ring.zero(); len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> PResult<ZPoly<R::Elem>> {
        let neg = if self.cur.eat_sym('-') {
            true
        } else {
            self.cur.eat_sym('+');
            false
        };
        let first = self.term()?;
        let mut acc = if neg {
            self.add(&[], &first, true)
        } else {
            first
        };
        loop {
            let neg = match self.cur.peek() {
                Tok::Sym('+') => false,
                Tok::Sym('-') => true,
                _ => return Ok(acc),
            };
            self.cur.bump();
            let t = self.term()?;
            acc = self.add(&acc, &t, neg);
        }
    }

    fn term(&mut self) -> PResult<ZPoly<R::Elem>> {
        let mut acc = self.power()?;
        while *self.cur.peek() == Tok::Sym('*') {
            self.cur.bump();
            let pos = self.cur.pos();
            let rhs = self.power()?;
            acc = self.mul(&acc, &rhs, pos)?;
        }
        match self.cur.peek() {
            Tok::Ident(s) if s == "mod" => Ok(acc),
            Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => Err(ParseError::new(
                self.cur.pos(),
                format!("expected an operator, found {}", self.cur.peek()),
            )),
            _ => Ok(acc),
        }
    }

    fn power(&mut self) -> PResult<ZPoly<R::Elem>> {
        let base_pos = self.cur.pos();
        let base = self.atom()?;
        if !self.cur.eat_sym('^') {
            return Ok(base);
        }
        let exp_pos = self.cur.pos();
        let e = self.cur.signed_int()?;
        let ring = self.ring;
        if e < 0 {
            if base.len() > 1 && base[1..].iter().any(|c| !ring.is_zero(c)) {
                return Err(ParseError::new(
                    exp_pos,
                    "negative powers of z are not allowed",
                ));
            }
            let c = base.first().cloned().unwrap_or_else(|| ring.zero());
            let inv = ring
                .inv(&c)
                .map_err(|err| ParseError::new(base_pos, format!("cannot invert: {err}")))?;
            return Ok(vec![ring.pow(&inv, e.unsigned_abs())]);
        }
        let degree = base.iter().rposition(|c| !ring.is_zero(c)).unwrap_or(0);
        if degree == 0 {
            let c = base.first().cloned().unwrap_or_else(|| ring.zero());
            return Ok(vec![ring.pow(&c, e as u64)]);
        }
        if (e as usize).saturating_mul(degree) > MAX_LITERAL_DEGREE {
            return Err(ParseError::new(exp_pos, "literal degree too large"));
        }
        let mut acc = vec![ring.one()];
        for _ in 0..e {
            acc = self.mul(&acc, &base, exp_pos)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<ZPoly<R::Elem>> {
        let pos = self.cur.pos();
        let ring = self.ring;
        match self.cur.bump() {
            Tok::Int(n) => Ok(vec![ring.from_int(n as i64)]),
            Tok::Ident(s) if s == "z" => Ok(vec![ring.zero(), ring.one()]),
            Tok::Ident(s) if s == "t" || s == "w" => {
                ring.generator(&s).map(|g| vec![g]).ok_or_else(|| {
                    ParseError::new(pos, format!("'{s}' is not available in this field"))
                })
            }
            Tok::Ident(s) if s == "O" => {
                self.cur.expect_sym('(')?;
                self.cur.expect_ident("t")?;
                self.cur.expect_sym('^')?;
                let k = self.cur.signed_int()?;
                self.cur.expect_sym(')')?;
                ring.big_o(k)
                    .map(|g| vec![g])
                    .ok_or_else(|| ParseError::new(pos, "O(t^k) needs a Laurent field"))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.cur.expect_sym(')')?;
                Ok(inner)
            }
            other => Err(ParseError::new(
                pos,
                format!("expected a term, found {other}"),
            )),
        }
    }
}

/// Reads `expr ["mod" "z^N"]` into an exact polynomial or a truncated series.
pub fn parse_series<R: Ring>(ring: &R, input: &str) -> PResult<TruncatedSeries<R>> {
    let mut p = ExprParser {
        ring,
        cur: Cursor::new(input)?,
    };
    let coeffs = p.expr()?;
    let trunc = match p.cur.peek() {
        Tok::Ident(s) if s == "mod" => {
            p.cur.bump();
            p.cur.expect_ident("z")?;
            p.cur.expect_sym('^')?;
            let pos = p.cur.pos();
            let n = p.cur.expect_int()? as usize;
            if n == 0 {
                return Err(ParseError::new(pos, "truncation must be at least 1"));
            }
            Some(n)
        }
        _ => None,
    };
    p.cur.expect_end()?;
    Ok(match trunc {
        Some(n) => TruncatedSeries::new(ring.clone(), coeffs, n),
        None => TruncatedSeries::polynomial(ring.clone(), coeffs),
    })
}

/// Reads a single scalar (an expression free of `z`).
pub fn parse_scalar<R: Ring>(ring: &R, input: &str) -> PResult<R::Elem> {
    let mut p = ExprParser {
        ring,
        cur: Cursor::new(input)?,
    };
    let coeffs = p.expr()?;
    p.cur.expect_end()?;
    if coeffs.iter().skip(1).any(|c| !ring.is_zero(c)) {
        let z = input.find('z').unwrap_or(0);
        return Err(ParseError::new(z, "a scalar cannot involve z"));
    }
    Ok(coeffs.into_iter().next().unwrap_or_else(|| ring.zero()))
}

/// Reads a comma-separated list of scalars.
pub fn parse_scalar_list<R: Ring>(ring: &R, input: &str) -> PResult<Vec<R::Elem>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in input.split(',') {
        let v =
            parse_scalar(ring, piece).map_err(|e| ParseError::new(offset + e.pos, e.message))?;
        out.push(v);
        offset += piece.len() + 1;
    }
    Ok(out)
}
