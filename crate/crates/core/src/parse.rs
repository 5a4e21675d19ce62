//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | var ('^' uint)? | '(' expr ')'
//! ```
//!
//! A single leading sign is accepted at the start of an expression and of
//! each parenthesised group, so printed polynomials such as `-x^2 + y`
//! parse back. Juxtaposition is rejected.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::germmap::MapGerm;
use crate::polyring::{Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            let value = digits.parse::<BigInt>().expect("ascii digits");
            out.push(Spanned {
                token: Token::Number(value),
                line: l,
                column: col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned {
                token: Token::Ident(name),
                line: l,
                column: col,
            });
            continue;
        }
        let token = match c {
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => {
                return Err(Error::Parse {
                    line: l,
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push(Spanned {
            token,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        token: Token::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    tokens: Vec<Spanned>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek().token {
            Token::Minus => {
                self.advance();
                true
            }
            Token::Plus => {
                self.advance();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().token {
                Token::Plus => {
                    self.advance();
                    acc = acc + self.term()?;
                }
                Token::Minus => {
                    self.advance();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek().token == Token::Star {
            self.advance();
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let t = self.advance();
        match t.token {
            Token::Number(num) => {
                if self.peek().token == Token::Slash {
                    self.advance();
                    let d = self.advance();
                    let Token::Number(den) = d.token else {
                        return Err(Error::Parse {
                            line: d.line,
                            column: d.column,
                            message: "expected denominator after '/'".into(),
                        });
                    };
                    if den == BigInt::from(0) {
                        return Err(Error::Parse {
                            line: d.line,
                            column: d.column,
                            message: "zero denominator".into(),
                        });
                    }
                    Ok(Polynomial::constant(self.ring, Rational::new(num, den)))
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(num)))
                }
            }
            Token::Ident(name) => {
                let Some(index) = self.ring.index_of(&name) else {
                    return Err(Error::UnknownVariable {
                        name,
                        line: t.line,
                        column: t.column,
                    });
                };
                let var = Polynomial::variable(self.ring, index)?;
                if self.peek().token != Token::Caret {
                    return Ok(var);
                }
                self.advance();
                let e = self.advance();
                match e.token {
                    Token::Number(k) => {
                        let k = u32::try_from(k).map_err(|_| Error::Parse {
                            line: e.line,
                            column: e.column,
                            message: "exponent too large".into(),
                        })?;
                        Ok(var.pow(k))
                    }
                    Token::Minus => Err(Error::NegativeExponent {
                        line: e.line,
                        column: e.column,
                    }),
                    _ => Err(Error::Parse {
                        line: e.line,
                        column: e.column,
                        message: "expected a nonnegative integer exponent".into(),
                    }),
                }
            }
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek().token != Token::RParen {
                    return Err(self.error_here("expected ')'"));
                }
                self.advance();
                Ok(inner)
            }
            Token::End => Err(Error::Parse {
                line: t.line,
                column: t.column,
                message: "unexpected end of input".into(),
            }),
            other => Err(Error::Parse {
                line: t.line,
                column: t.column,
                message: format!("unexpected {}", describe(&other)),
            }),
        }
    }
}

fn describe(t: &Token) -> &'static str {
    match t {
        Token::Number(_) => "number",
        Token::Ident(_) => "identifier",
        Token::Plus => "'+'",
        Token::Minus => "'-'",
        Token::Star => "'*'",
        Token::Slash => "'/'",
        Token::Caret => "'^'",
        Token::LParen => "'('",
        Token::RParen => "')'",
        Token::End => "end of input",
    }
}

/// Parses `text` as a polynomial in the variables of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
    };
    let p = parser.expr()?;
    match parser.peek().token {
        Token::End => Ok(p),
        Token::Number(_) | Token::Ident(_) | Token::LParen => {
            Err(parser.error_here("implicit multiplication is not allowed; use '*'"))
        }
        ref other => Err(parser.error_here(format!("unexpected {}", describe(other)))),
    }
}

/// Parses a comma-separated variable list such as `x,y,z`.
pub fn parse_vars(text: &str) -> Result<Arc<Ring>> {
    let names: Vec<String> = text
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    for name in &names {
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "invalid variable name '{name}'"
            )));
        }
    }
    Ring::new(names)
}

/// Parses `;`-separated polynomials. Empty trailing entries are ignored.
pub fn parse_list(text: &str, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    let parts: Vec<&str> = text.split(';').collect();
    let mut out = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if part.trim().is_empty() && i + 1 == parts.len() && i > 0 {
            continue;
        }
        out.push(parse_polynomial(part, ring)?);
    }
    Ok(out)
}

/// Parses a map germ written as `"F1; F2; ..."`.
pub fn parse_map(text: &str, ring: &Arc<Ring>) -> Result<MapGerm> {
    MapGerm::new(parse_list(text, ring)?)
}
