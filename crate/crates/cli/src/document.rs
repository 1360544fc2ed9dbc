//! Spec files: lexer, parser and normalizing printer.
//!
//! ```text
//! file  := 'kind' IDENT item*
//! item  := IDENT '=' value | IDENT '{' item* '}'
//! value := rat | STRING | IDENT | '[' [value (',' value)*] ']' | '(' value (',' value)* ')'
//! rat   := ['-'] INT ['/' INT]
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Form and
//! polynomial literals are strings, e.g. `A = "x3*dx1*e2"`.

use lie2alg::rat::Rat;
use std::fmt;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for SpecError {}

impl SpecError {
    pub fn at(pos: Pos, message: impl Into<String>) -> SpecError {
        SpecError { pos, message: message.into(), expected: Vec::new() }
    }

    fn expecting(pos: Pos, message: impl Into<String>, expected: &[&str]) -> SpecError {
        SpecError { pos, message: message.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Str(_) => "string".into(),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SpecError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Int(s), pos));
        } else if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match chars.peek() {
                    None | Some('\n') => return Err(SpecError::expecting(pos, "unterminated string", &["`\"`"])),
                    Some('"') => {
                        bump(&mut chars);
                        break;
                    }
                    Some(_) => s.push(bump(&mut chars)),
                }
            }
            out.push((Tok::Str(s), pos));
        } else if "={}[](),-/".contains(c) {
            bump(&mut chars);
            out.push((Tok::Sym(c), pos));
        } else {
            return Err(SpecError::at(pos, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// A parsed value with its position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Num(Rat, Pos),
    /// A string literal; `Pos` points at the opening quote.
    Str(String, Pos),
    Ident(String, Pos),
    List(Vec<Value>, Pos),
    Tuple(Vec<Value>, Pos),
}

impl Value {
    pub fn pos(&self) -> Pos {
        match self {
            Value::Num(_, p) | Value::Str(_, p) | Value::Ident(_, p) | Value::List(_, p) | Value::Tuple(_, p) => *p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Value(Value),
    Block(Vec<Item>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub key: String,
    pub pos: Pos,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub kind: String,
    pub kind_pos: Pos,
    pub items: Vec<Item>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.i]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> SpecError {
        let (t, p) = self.peek();
        SpecError::expecting(*p, format!("unexpected {}", t.describe()), expected)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, also: &[&str]) -> Result<(), SpecError> {
        if self.eat(c) {
            return Ok(());
        }
        let sym = format!("`{c}`");
        let mut exp = vec![sym.as_str()];
        exp.extend_from_slice(also);
        Err(self.unexpected(&exp))
    }

    fn document(&mut self) -> Result<Document, SpecError> {
        match self.next() {
            (Tok::Ident(k), _) if k == "kind" => {}
            (t, p) => return Err(SpecError::expecting(p, format!("unexpected {}", t.describe()), &["`kind`"])),
        }
        let (kind, kind_pos) = match self.next() {
            (Tok::Ident(k), p) => (k, p),
            (t, p) => return Err(SpecError::expecting(p, format!("unexpected {}", t.describe()), &["identifier"])),
        };
        let items = self.items(false)?;
        Ok(Document { kind, kind_pos, items })
    }

    fn items(&mut self, nested: bool) -> Result<Vec<Item>, SpecError> {
        let mut items = Vec::new();
        loop {
            match self.peek().0.clone() {
                Tok::Ident(key) => {
                    let (_, pos) = self.next();
                    let body = if self.eat('=') {
                        Body::Value(self.value()?)
                    } else if self.eat('{') {
                        let inner = self.items(true)?;
                        Body::Block(inner)
                    } else {
                        return Err(self.unexpected(&["`=`", "`{`"]));
                    };
                    items.push(Item { key, pos, body });
                }
                Tok::Sym('}') if nested => {
                    self.next();
                    return Ok(items);
                }
                Tok::Eof if !nested => return Ok(items),
                _ => return Err(self.unexpected(if nested { &["identifier", "`}`"] } else { &["identifier", "end of input"] })),
            }
        }
    }

    fn rat(&mut self, neg: bool, pos: Pos) -> Result<Value, SpecError> {
        let num = match self.next() {
            (Tok::Int(s), _) => s,
            (t, p) => return Err(SpecError::expecting(p, format!("unexpected {}", t.describe()), &["number"])),
        };
        let den = if self.eat('/') {
            match self.next() {
                (Tok::Int(s), _) => s,
                (t, p) => return Err(SpecError::expecting(p, format!("unexpected {}", t.describe()), &["number"])),
            }
        } else {
            "1".into()
        };
        let text = format!("{}{num}/{den}", if neg { "-" } else { "" });
        let r: Rat = text.parse().map_err(|_| SpecError::at(pos, format!("invalid number `{text}`")))?;
        Ok(Value::Num(r, pos))
    }

    fn value(&mut self) -> Result<Value, SpecError> {
        let (t, pos) = self.peek().clone();
        match t {
            Tok::Int(_) => self.rat(false, pos),
            Tok::Sym('-') => {
                self.next();
                self.rat(true, pos)
            }
            Tok::Str(s) => {
                self.next();
                Ok(Value::Str(s, pos))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(Value::Ident(s, pos))
            }
            Tok::Sym(open @ ('[' | '(')) => {
                self.next();
                let close = if open == '[' { ']' } else { ')' };
                let mut vals = Vec::new();
                if !(open == '[' && self.eat(']')) {
                    loop {
                        vals.push(self.value()?);
                        if self.eat(close) {
                            break;
                        }
                        self.expect(',', &[if close == ']' { "`]`" } else { "`)`" }])?;
                    }
                }
                Ok(if open == '[' { Value::List(vals, pos) } else { Value::Tuple(vals, pos) })
            }
            _ => Err(self.unexpected(&["number", "string", "identifier", "`[`", "`(`"])),
        }
    }
}

pub fn parse(src: &str) -> Result<Document, SpecError> {
    let toks = lex(src)?;
    Parser { toks, i: 0 }.document()
}

fn print_value(v: &Value, out: &mut String) {
    match v {
        Value::Num(r, _) => out.push_str(&r.to_string()),
        Value::Str(s, _) => {
            out.push('"');
            out.push_str(s);
            out.push('"');
        }
        Value::Ident(s, _) => out.push_str(s),
        Value::List(vs, _) | Value::Tuple(vs, _) => {
            let (open, close) = if matches!(v, Value::List(..)) { ('[', ']') } else { ('(', ')') };
            out.push(open);
            for (i, x) in vs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                print_value(x, out);
            }
            out.push(close);
        }
    }
}

fn print_items(items: &[Item], depth: usize, out: &mut String) {
    for it in items {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&it.key);
        match &it.body {
            Body::Value(v) => {
                out.push_str(" = ");
                print_value(v, out);
                out.push('\n');
            }
            Body::Block(inner) => {
                out.push_str(" {\n");
                print_items(inner, depth + 1, out);
                out.push_str(&"  ".repeat(depth));
                out.push_str("}\n");
            }
        }
    }
}

/// Canonical text: one item per line, two-space indentation, no comments.
pub fn print(doc: &Document) -> String {
    let mut out = format!("kind {}\n", doc.kind);
    print_items(&doc.items, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_blocks() {
        let d = parse("kind lie2 # c\nfiber { g = 3 l1 = [[1, 0], [-1/2, 3]] }\nA = \"x1*dx2*e1\"").unwrap();
        assert_eq!(d.kind, "lie2");
        assert_eq!(d.items.len(), 2);
        assert_eq!(d.items[1].pos, Pos { line: 3, col: 1 });
    }

    #[test]
    fn reports_expected_tokens() {
        let e = parse("kind x\na 3").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        assert_eq!(e.expected, ["`=`", "`{`"]);
        let e = parse("kind x\na = [1, 2").unwrap_err();
        assert!(e.expected.contains(&"`]`".to_string()));
        let e = parse("kind x\na = \"open").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 5 });
    }

    #[test]
    fn print_normalizes() {
        let src = "kind  lie2\n  g=3 # dims\nb{c=(1,2,-3/6)  d=[]}";
        let once = print(&parse(src).unwrap());
        assert_eq!(once, "kind lie2\ng = 3\nb {\n  c = (1, 2, -1/2)\n  d = []\n}\n");
        assert_eq!(print(&parse(&once).unwrap()), once);
    }
}
