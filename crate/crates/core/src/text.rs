//! Shared expression parser for polynomial and form literals.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | 'x'N ['^' INT] | 'dx'N ('^' 'dx'N)* | TAG ['(' INT (',' INT)* ')'] | '(' expr ')'
//! ```
//!
//! Variables are 1-based. `^` after a variable is a power, after a
//! differential it is a wedge.

use crate::poly::{Mono, Poly};
use crate::rat::Rat;
use std::fmt;

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset, message: message.into(), expected: Vec::new() }
    }

    fn expected(offset: usize, message: impl Into<String>, exp: &[&str]) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
            expected: exp.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Shift the offset, for errors inside a larger document.
    pub fn shifted(mut self, by: usize) -> ParseError {
        self.offset += by;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.offset + 1, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Sign of `dx^a ∧ dx^b` relative to `dx^(a|b)`, or `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inv = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inv += (a >> (j + 1)).count_ones();
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

/// One summand: polynomial times `dx^blade` times an optional value tag.
#[derive(Debug, Clone)]
pub struct Piece {
    pub blade: u32,
    pub tag: Option<usize>,
    pub poly: Poly,
}

/// Resolves a tag identifier (with optional integer arguments) to a value
/// basis index. `None` means the identifier is not known at all.
pub type TagResolver<'a> = dyn Fn(&str, &[usize]) -> Option<Result<usize, String>> + 'a;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'s> {
    src: &'s str,
    pos: usize,
}

impl<'s> Lexer<'s> {
    fn peek(&self) -> (Tok, usize, usize) {
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && (bytes[i] as char).is_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            return (Tok::End, i, i);
        }
        let c = bytes[i] as char;
        if c.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                j += 1;
            }
            return (Tok::Int(self.src[i..j].to_string()), i, j);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < bytes.len() && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            return (Tok::Ident(self.src[i..j].to_string()), i, j);
        }
        let ch = self.src[i..].chars().next().unwrap();
        (Tok::Sym(ch), i, i + ch.len_utf8())
    }

    fn next(&mut self) -> (Tok, usize) {
        let (t, start, end) = self.peek();
        self.pos = end;
        (t, start)
    }
}

enum Ident {
    Var(usize),
    Diff(usize),
    Other,
}

fn classify(name: &str) -> Ident {
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if let Some(r) = name.strip_prefix("dx") {
        if digits(r) {
            return Ident::Diff(r.parse().unwrap_or(usize::MAX));
        }
    }
    if let Some(r) = name.strip_prefix('x') {
        if digits(r) {
            return Ident::Var(r.parse().unwrap_or(usize::MAX));
        }
    }
    Ident::Other
}

struct Parser<'s, 'r> {
    lex: Lexer<'s>,
    nvars: usize,
    tags: Option<&'r TagResolver<'r>>,
}

type Sum = Vec<Piece>;

impl<'s, 'r> Parser<'s, 'r> {
    fn expr(&mut self) -> Result<Sum, ParseError> {
        let mut out: Sum = Vec::new();
        let mut sign = 1i64;
        let (t, _, _) = self.lex.peek();
        if let Tok::Sym(c @ ('+' | '-')) = t {
            self.lex.next();
            if c == '-' {
                sign = -1;
            }
        }
        loop {
            let term = self.term()?;
            let s = Rat::int(sign);
            out.extend(term.into_iter().map(|p| Piece { poly: p.poly.scale(&s), ..p }));
            match self.lex.peek().0 {
                Tok::Sym('+') => {
                    self.lex.next();
                    sign = 1;
                }
                Tok::Sym('-') => {
                    self.lex.next();
                    sign = -1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Sum, ParseError> {
        let mut acc = self.factor()?;
        while self.lex.peek().0 == Tok::Sym('*') {
            let (_, at) = self.lex.next();
            let f = self.factor()?;
            acc = multiply(&acc, &f).map_err(|m| ParseError::new(at, m))?;
        }
        Ok(acc)
    }

    fn var_index(&self, k: usize, at: usize, name: &str) -> Result<usize, ParseError> {
        if k == 0 || k > self.nvars {
            return Err(ParseError::new(
                at,
                format!("{name} out of range for a chart with {} variables", self.nvars),
            ));
        }
        Ok(k - 1)
    }

    fn factor(&mut self) -> Result<Sum, ParseError> {
        let n = self.nvars;
        let (t, at) = self.lex.next();
        match t {
            Tok::Int(a) => {
                let mut text = a;
                if self.lex.peek().0 == Tok::Sym('/') {
                    self.lex.next();
                    match self.lex.next() {
                        (Tok::Int(b), bat) => {
                            if b.bytes().all(|c| c == b'0') {
                                return Err(ParseError::new(bat, "zero denominator"));
                            }
                            text = format!("{text}/{b}");
                        }
                        (_, bat) => {
                            return Err(ParseError::expected(bat, "malformed rational", &["integer"]))
                        }
                    }
                }
                let c: Rat = text.parse().map_err(|e| ParseError::new(at, format!("{e}")))?;
                Ok(vec![Piece { blade: 0, tag: None, poly: Poly::constant(n, c) }])
            }
            Tok::Ident(name) => match classify(&name) {
                Ident::Var(k) => {
                    let i = self.var_index(k, at, &name)?;
                    let mut e = 1u32;
                    if self.lex.peek().0 == Tok::Sym('^') {
                        self.lex.next();
                        match self.lex.next() {
                            (Tok::Int(s), eat) => {
                                e = s
                                    .parse()
                                    .ok()
                                    .filter(|&e| e <= crate::poly::MAX_DEGREE)
                                    .ok_or_else(|| ParseError::new(eat, "exponent too large"))?;
                            }
                            (_, eat) => {
                                return Err(ParseError::expected(eat, "missing exponent", &["integer"]))
                            }
                        }
                    }
                    let mut exps = vec![0u32; n];
                    exps[i] = e;
                    let poly = Poly::monomial(n, Mono::from_exponents(&exps), Rat::one());
                    Ok(vec![Piece { blade: 0, tag: None, poly }])
                }
                Ident::Diff(k) => {
                    if self.tags.is_none() {
                        return Err(ParseError::new(at, "differentials are not allowed in a polynomial"));
                    }
                    let i = self.var_index(k, at, &name)?;
                    let mut blade = 1u32 << i;
                    let mut sign = 1i64;
                    while self.lex.peek().0 == Tok::Sym('^') {
                        self.lex.next();
                        let (t2, at2) = self.lex.next();
                        let j = match t2 {
                            Tok::Ident(ref nm) => match classify(nm) {
                                Ident::Diff(k2) => self.var_index(k2, at2, nm)?,
                                _ => return Err(ParseError::expected(at2, "expected a differential after `^`", &["dxN"])),
                            },
                            _ => return Err(ParseError::expected(at2, "expected a differential after `^`", &["dxN"])),
                        };
                        let s = wedge_sign(blade, 1 << j)
                            .ok_or_else(|| ParseError::new(at2, format!("repeated differential dx{}", j + 1)))?;
                        sign *= s as i64;
                        blade |= 1 << j;
                    }
                    Ok(vec![Piece { blade, tag: None, poly: Poly::constant(n, Rat::int(sign)) }])
                }
                Ident::Other => {
                    let Some(resolve) = self.tags else {
                        return Err(ParseError::expected(at, format!("unknown identifier `{name}`"), &["xN", "number"]));
                    };
                    let mut args = Vec::new();
                    if self.lex.peek().0 == Tok::Sym('(') {
                        self.lex.next();
                        loop {
                            match self.lex.next() {
                                (Tok::Int(s), aat) => {
                                    args.push(s.parse().map_err(|_| ParseError::new(aat, "index too large"))?)
                                }
                                (_, aat) => return Err(ParseError::expected(aat, "expected an index", &["integer"])),
                            }
                            match self.lex.next() {
                                (Tok::Sym(','), _) => {}
                                (Tok::Sym(')'), _) => break,
                                (_, aat) => return Err(ParseError::expected(aat, "unterminated index list", &[",", ")"])),
                            }
                        }
                    }
                    match resolve(&name, &args) {
                        None => Err(ParseError::new(at, format!("unknown identifier `{name}`"))),
                        Some(Err(m)) => Err(ParseError::new(at, m)),
                        Some(Ok(idx)) => Ok(vec![Piece { blade: 0, tag: Some(idx), poly: Poly::one(n) }]),
                    }
                }
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                match self.lex.next() {
                    (Tok::Sym(')'), _) => Ok(inner),
                    (_, cat) => Err(ParseError::expected(cat, "unbalanced parenthesis", &[")"])),
                }
            }
            Tok::End => Err(ParseError::expected(at, "unexpected end of input", &["term"])),
            Tok::Sym(c) => Err(ParseError::expected(at, format!("unexpected `{c}`"), &["term"])),
        }
    }
}

fn multiply(a: &Sum, b: &Sum) -> Result<Sum, String> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            let tag = match (p.tag, q.tag) {
                (Some(_), Some(_)) => return Err("a term may carry at most one value tag".into()),
                (t, None) | (None, t) => t,
            };
            match wedge_sign(p.blade, q.blade) {
                None => continue,
                Some(s) => {
                    let poly = (&p.poly * &q.poly).scale(&Rat::int(s as i64));
                    out.push(Piece { blade: p.blade | q.blade, tag, poly });
                }
            }
        }
    }
    Ok(out)
}

fn run<'r>(src: &str, nvars: usize, tags: Option<&'r TagResolver<'r>>) -> Result<Sum, ParseError> {
    let mut p = Parser { lex: Lexer { src, pos: 0 }, nvars, tags };
    let sum = p.expr()?;
    match p.lex.next() {
        (Tok::End, _) => Ok(sum),
        (Tok::Sym(c), at) => Err(ParseError::expected(at, format!("unexpected `{c}`"), &["+", "-", "*"])),
        (_, at) => Err(ParseError::expected(at, "unexpected token", &["+", "-", "*"])),
    }
}

pub(crate) fn parse_poly(src: &str, nvars: usize) -> Result<Poly, ParseError> {
    let sum = run(src, nvars, None)?;
    let mut out = Poly::zero(nvars);
    for p in sum {
        out += &p.poly;
    }
    Ok(out)
}

/// Parse a form literal into pieces; every piece has the same degree.
pub(crate) fn parse_pieces(
    src: &str,
    nvars: usize,
    tags: &TagResolver<'_>,
) -> Result<(Option<usize>, Sum), ParseError> {
    let sum = run(src, nvars, Some(tags))?;
    let mut deg: Option<usize> = None;
    for p in &sum {
        if p.poly.is_zero() {
            continue;
        }
        let k = p.blade.count_ones() as usize;
        match deg {
            None => deg = Some(k),
            Some(d) if d != k => {
                return Err(ParseError::new(0, format!("mixed form degrees {d} and {k}")))
            }
            _ => {}
        }
    }
    Ok((deg, sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        // (dx2^dx3)^(dx4^dx5^dx1): moving dx1 past two gives +.
        assert_eq!(wedge_sign(0b00110, 0b11001), Some(1));
        assert_eq!(wedge_sign(1, 1), None);
    }

    #[test]
    fn poly_errors_point_at_fault() {
        let e = parse_poly("x1^", 2).unwrap_err();
        assert_eq!(e.offset, 3);
        let e = parse_poly("x1 + x3", 2).unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse_poly("(x1 + 1", 2).unwrap_err();
        assert_eq!(e.offset, 7);
        assert!(parse_poly("1/0", 1).is_err());
        assert!(parse_poly("dx1", 1).is_err());
    }

    #[test]
    fn parenthesized_products() {
        let p = parse_poly("(x1 + 1)*(x1 - 1) - x1^2", 1).unwrap();
        assert_eq!(p, Poly::constant(1, Rat::int(-1)));
    }
}
