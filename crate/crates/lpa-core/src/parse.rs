//! Recursive descent parser for the element expression grammar:
//!
//! ```text
//! element  := term (('+'|'-') term)*
//! term     := rational product? | product
//! product  := atom ('.' atom)*
//! atom     := ident ('^' nat)? ('*')?       -- '*' stars the powered atom
//! rational := int ('/' nat)?
//! ```
//!
//! Identifiers name vertices or edges; the literal `1` denotes the identity.
//! Whitespace is ignored between tokens. Non-composable concatenations yield
//! the zero element rather than an error.

use num_bigint::BigInt;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(BigInt),
    Plus,
    Minus,
    Slash,
    Caret,
    Star,
    Dot,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Position of the upcoming token, for error reporting.
    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn peek(&mut self) -> Option<Token> {
        let saved = self.pos;
        let t = self.next_token();
        self.pos = saved;
        t.ok().flatten()
    }

    fn next_token(&mut self) -> Result<Option<Token>> {
        self.skip_ws();
        if self.pos >= self.text.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.text[self.pos];
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Token::Plus
            }
            b'-' => {
                self.pos += 1;
                Token::Minus
            }
            b'/' => {
                self.pos += 1;
                Token::Slash
            }
            b'^' => {
                self.pos += 1;
                Token::Caret
            }
            b'*' => {
                self.pos += 1;
                Token::Star
            }
            b'.' => {
                self.pos += 1;
                Token::Dot
            }
            b'0'..=b'9' => {
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                Token::Number(s.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Token::Ident(
                    std::str::from_utf8(&self.text[start..self.pos])
                        .unwrap()
                        .to_string(),
                )
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok(Some(tok))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    alg: &'a Algebra,
}

impl<'a> Parser<'a> {
    fn err(&mut self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.lexer.peek_pos(),
            msg: msg.into(),
        }
    }

    fn element(&mut self) -> Result<Element> {
        let mut negate_first = false;
        if let Some(Token::Minus) = self.lexer.peek() {
            self.lexer.next_token()?;
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = self.alg.neg(&acc);
        }
        loop {
            match self.lexer.peek() {
                Some(Token::Plus) => {
                    self.lexer.next_token()?;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                Some(Token::Minus) => {
                    self.lexer.next_token()?;
                    let t = self.term()?;
                    acc = self.alg.sub(&acc, &t);
                }
                None => return Ok(acc),
                Some(_) => return Err(self.err("expected `+`, `-`, or end of input")),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        match self.lexer.peek() {
            Some(Token::Number(_)) => {
                // A number is a coefficient unless followed by `^`, `*` or
                // `.`, in which case it must be the identity atom `1`.
                let saved = self.lexer.pos;
                let Some(Token::Number(n)) = self.lexer.next_token()? else {
                    unreachable!()
                };
                match self.lexer.peek() {
                    Some(Token::Caret) | Some(Token::Star) | Some(Token::Dot) => {
                        self.lexer.pos = saved;
                        return self.product();
                    }
                    _ => {}
                }
                let coeff = if let Some(Token::Slash) = self.lexer.peek() {
                    self.lexer.next_token()?;
                    let den = match self.lexer.next_token()? {
                        Some(Token::Number(d)) => d,
                        _ => return Err(self.err("expected denominator")),
                    };
                    self.alg.field().ratio(&n, &den).map_err(|e| match e {
                        Error::Parse { msg, .. } => Error::Parse {
                            pos: self.lexer.pos,
                            msg,
                        },
                        other => other,
                    })?
                } else {
                    self.alg.field().from_bigint(&n)
                };
                let body = match self.lexer.peek() {
                    Some(Token::Ident(_)) | Some(Token::Number(_)) => self.product()?,
                    _ => self.alg.one(),
                };
                Ok(self.alg.scale(&coeff, &body))
            }
            Some(Token::Ident(_)) => self.product(),
            _ => Err(self.err("expected a term")),
        }
    }

    fn product(&mut self) -> Result<Element> {
        let mut acc = self.atom()?;
        while let Some(Token::Dot) = self.lexer.peek() {
            self.lexer.next_token()?;
            let a = self.atom()?;
            acc = self.alg.mul(&acc, &a);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Element> {
        let pos = self.lexer.peek_pos();
        let base = match self.lexer.next_token()? {
            Some(Token::Ident(name)) => {
                let graph = self.alg.graph();
                if let Some(v) = graph.vertex_by_name(&name) {
                    self.alg.vertex(v)
                } else if let Some(e) = graph.edge_by_name(&name) {
                    self.alg.edge(e)
                } else {
                    return Err(Error::UnknownIdent { name, pos });
                }
            }
            Some(Token::Number(n)) if n == BigInt::from(1) => self.alg.one(),
            _ => return Err(self.err("expected an identifier")),
        };
        let mut value = base;
        if let Some(Token::Caret) = self.lexer.peek() {
            self.lexer.next_token()?;
            let n = match self.lexer.next_token()? {
                Some(Token::Number(n)) => n,
                _ => return Err(self.err("expected an exponent")),
            };
            let n: usize = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            value = self.alg.power(&value, n);
        }
        if let Some(Token::Star) = self.lexer.peek() {
            self.lexer.next_token()?;
            value = self.alg.star(&value);
        }
        Ok(value)
    }
}

/// Parses an element expression over the given algebra.
pub fn parse_element(alg: &Algebra, text: &str) -> Result<Element> {
    let mut parser = Parser {
        lexer: Lexer::new(text),
        alg,
    };
    if parser.lexer.peek().is_none() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    parser.element()
}

/// Parses a path expression: identifiers joined by `.` with optional
/// `^n` powers — e.g. `c`, `e1.e2`, `c^3`. A single vertex name denotes
/// the length-0 path at that vertex.
pub fn parse_path(graph: &Graph, text: &str) -> Result<Path> {
    let mut lexer = Lexer::new(text);
    let mut path: Option<Path> = None;
    loop {
        let pos = lexer.peek_pos();
        let (name, npos) = match lexer.next_token()? {
            Some(Token::Ident(name)) => (name, pos),
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected a vertex or edge name".into(),
                })
            }
        };
        let mut piece = if let Some(e) = graph.edge_by_name(&name) {
            Path::from_edges(graph, vec![e])?
        } else if let Some(v) = graph.vertex_by_name(&name) {
            Path::vertex(v)
        } else {
            return Err(Error::UnknownIdent {
                name,
                pos: npos,
            });
        };
        if let Some(Token::Caret) = lexer.peek() {
            lexer.next_token()?;
            let n = match lexer.next_token()? {
                Some(Token::Number(n)) => n,
                _ => {
                    return Err(Error::Parse {
                        pos: lexer.pos,
                        msg: "expected an exponent".into(),
                    })
                }
            };
            let n: usize = n.try_into().map_err(|_| Error::Parse {
                pos: lexer.pos,
                msg: "exponent out of range".into(),
            })?;
            piece = piece.repeat(graph, n).map_err(|e| Error::Parse {
                pos: lexer.pos,
                msg: e.to_string(),
            })?;
        }
        path = Some(match path {
            None => piece,
            Some(p) => p.concat(graph, &piece).map_err(|e| Error::Parse {
                pos: npos,
                msg: e.to_string(),
            })?,
        });
        match lexer.next_token()? {
            None => break,
            Some(Token::Dot) => continue,
            Some(_) => {
                return Err(Error::Parse {
                    pos: lexer.pos,
                    msg: "expected `.` or end of input".into(),
                })
            }
        }
    }
    Ok(path.unwrap())
}
