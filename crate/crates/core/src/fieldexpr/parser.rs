//! Recursive-descent parser for the scalar-field DSL.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?
//! atom   := number | x1 | x2 | x3 | pi | e | ident '(' expr ')' | '(' expr ')'
//! ```

use thiserror::Error;

use super::ast::{BinOp, Expr, Func};

/// Deepest tree (and deepest parser recursion) accepted.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{name}` at offset {offset} takes 1 argument, found {found}")]
    Arity {
        name: String,
        offset: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::Arity { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' | b'.' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'.' {
                    j += 1;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let lexeme = &text[i..j];
                let value: f64 = lexeme
                    .parse()
                    .map_err(|_| syntax(start, format!("malformed number `{lexeme}`")))?;
                if !value.is_finite() {
                    return Err(syntax(start, format!("number `{lexeme}` out of range")));
                }
                i = j;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((Tok::Ident(text[i..j].to_string()), start));
                i = j;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    nesting: usize,
}

type Parsed = (Expr, usize);

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn deepen(&self, depth: usize, at: usize) -> Result<usize, ParseError> {
        if depth > MAX_DEPTH {
            Err(syntax(at, "expression nested too deeply"))
        } else {
            Ok(depth)
        }
    }

    fn expr(&mut self) -> Result<Parsed, ParseError> {
        let (mut lhs, mut depth) = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok((lhs, depth)),
            };
            let at = self.bump().1;
            let (rhs, rd) = self.term()?;
            depth = self.deepen(depth.max(rd) + 1, at)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Parsed, ParseError> {
        let (mut lhs, mut depth) = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok((lhs, depth)),
            };
            let at = self.bump().1;
            let (rhs, rd) = self.factor()?;
            depth = self.deepen(depth.max(rd) + 1, at)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> Result<Parsed, ParseError> {
        let at = self.offset();
        self.nesting += 1;
        if self.nesting > MAX_DEPTH {
            return Err(syntax(at, "expression nested too deeply"));
        }
        let result = if *self.peek() == Tok::Minus {
            self.bump();
            let (inner, d) = self.factor()?;
            let depth = self.deepen(d + 1, at)?;
            Ok((Expr::Neg(Box::new(inner)), depth))
        } else {
            self.power()
        };
        self.nesting -= 1;
        result
    }

    fn power(&mut self) -> Result<Parsed, ParseError> {
        let (base, bd) = self.atom()?;
        if *self.peek() == Tok::Caret {
            let at = self.bump().1;
            let (exponent, ed) = self.factor()?;
            let depth = self.deepen(bd.max(ed) + 1, at)?;
            Ok((Expr::binary(BinOp::Pow, base, exponent), depth))
        } else {
            Ok((base, bd))
        }
    }

    fn atom(&mut self) -> Result<Parsed, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(v) => Ok((Expr::Num(v), 1)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x1" => Ok((Expr::Var(0), 1)),
                "x2" => Ok((Expr::Var(1), 1)),
                "x3" => Ok((Expr::Var(2), 1)),
                "pi" => Ok((Expr::Pi, 1)),
                "e" => Ok((Expr::E, 1)),
                _ => match Func::from_name(&name) {
                    Some(func) => self.call(func, name, at),
                    None => Err(ParseError::UnknownIdentifier { name, offset: at }),
                },
            },
            other => Err(syntax(at, format!("unexpected {}", other.describe()))),
        }
    }

    fn call(&mut self, func: Func, name: String, at: usize) -> Result<Parsed, ParseError> {
        if *self.peek() != Tok::LParen {
            return Err(ParseError::Arity {
                name,
                offset: at,
                found: 0,
            });
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            return Err(ParseError::Arity {
                name,
                offset: at,
                found: 0,
            });
        }
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect_close()?;
        if args.len() != 1 {
            return Err(ParseError::Arity {
                name,
                offset: at,
                found: args.len(),
            });
        }
        let (arg, d) = args.pop().expect("one argument");
        let depth = self.deepen(d + 1, at)?;
        Ok((Expr::Call(func, Box::new(arg)), depth))
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        let at = self.offset();
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(())
            }
            other => Err(syntax(at, format!("expected `)`, found {}", other.describe()))),
        }
    }
}

pub(crate) fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    if toks.len() == 1 {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nesting: 0,
    };
    let (expr, _) = p.expr()?;
    match p.peek() {
        Tok::End => Ok(expr),
        other => Err(syntax(p.offset(), format!("unexpected {}", other.describe()))),
    }
}
