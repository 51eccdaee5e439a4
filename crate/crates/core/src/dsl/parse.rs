use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use super::ast::{Constant, Expr, MapName};
use super::DslError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Star,
    Plus,
    Minus,
    Caret,
    Comma,
    At,
    HitL,
    HitR,
    EqEq,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// Whitespace separates this token from the previous one.
    spaced: bool,
}

fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut spaced = false;
    let err = |line, col, msg: &str| DslError::Syntax {
        line,
        col,
        message: msg.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let sp = spaced;
        spaced = false;
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
                spaced: sp,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                spaced = true;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                spaced = true;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                spaced = true;
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '[' => push(Tok::LBracket, 1, &mut i, &mut col),
            ']' => push(Tok::RBracket, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '^' => push(Tok::Caret, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '@' => push(Tok::At, 1, &mut i, &mut col),
            '.' if chars.get(i + 1) == Some(&'>') => push(Tok::HitL, 2, &mut i, &mut col),
            '<' if chars.get(i + 1) == Some(&'.') => push(Tok::HitR, 2, &mut i, &mut col),
            '=' if chars.get(i + 1) == Some(&'=') => push(Tok::EqEq, 2, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token {
                    tok: Tok::Number(text),
                    line: tl,
                    col: tc,
                    spaced: sp,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token {
                    tok: Tok::Ident(text),
                    line: tl,
                    col: tc,
                    spaced: sp,
                });
            }
            _ => return Err(err(line, col, "unexpected character")),
        }
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
        spaced,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    /// An opening parenthesis glued to the previous token, as in `f(x)`.
    fn glued_paren(&self) -> bool {
        let t = &self.toks[self.pos];
        t.tok == Tok::LParen && !t.spaced
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: &str) -> DslError {
        let t = &self.toks[self.pos];
        DslError::Syntax {
            line: t.line,
            col: t.col,
            message: msg.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn sum(&mut self) -> Result<Expr, DslError> {
        let mut e = if *self.peek() == Tok::Minus {
            self.bump();
            Expr::Neg(Box::new(self.tensor()?))
        } else {
            self.tensor()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.tensor()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.tensor()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr, DslError> {
        let first = self.product()?;
        if *self.peek() != Tok::At {
            return Ok(first);
        }
        let mut parts = alloc::vec![first];
        while *self.peek() == Tok::At {
            self.bump();
            parts.push(self.product()?);
        }
        Ok(Expr::Tensor(parts))
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Number(_) | Tok::LParen)
    }

    fn product(&mut self) -> Result<Expr, DslError> {
        let mut e = self.hit()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                e = Expr::mul(e, self.hit()?);
            } else if self.starts_factor() {
                e = Expr::mul(e, self.hit()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn hit(&mut self) -> Result<Expr, DslError> {
        let mut lefts = Vec::new();
        let mut core = self.primary()?;
        while *self.peek() == Tok::HitL {
            self.bump();
            lefts.push(core);
            core = self.primary()?;
        }
        while *self.peek() == Tok::HitR {
            self.bump();
            let x = self.primary()?;
            core = Expr::hit_right(core, x);
        }
        while let Some(x) = lefts.pop() {
            core = Expr::hit_left(x, core);
        }
        Ok(core)
    }

    fn small_int(&mut self, what: &str) -> Result<i64, DslError> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Number(s) if !s.contains('/') => {
                let v: i64 = s.parse().map_err(|_| self.error(what))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error(what)),
        }
    }

    /// `(k)` with a literal integer, consumed only when present.
    fn leg_suffix(&mut self) -> Result<Option<u32>, DslError> {
        if self.glued_paren()
            && matches!(self.peek_at(1), Tok::Number(s) if !s.contains('/'))
            && *self.peek_at(2) == Tok::RParen
        {
            self.bump();
            let k = self.small_int("leg index")?;
            self.bump();
            return Ok(Some(k as u32));
        }
        Ok(None)
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let base = match self.bump() {
            Tok::Number(s) => {
                let x = Scalar::from_str(&s).map_err(|_| self.error("bad number"))?;
                return Ok(Expr::Num(x));
            }
            Tok::LParen => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "expected ')'")?;
                e
            }
            Tok::Ident(name) => self.ident(name)?,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error("expected an expression"));
            }
        };
        self.postfix(base)
    }

    fn postfix(&mut self, mut e: Expr) -> Result<Expr, DslError> {
        while self.glued_paren() {
            self.bump();
            let x = self.sum()?;
            self.expect(Tok::RParen, "expected ')' after argument")?;
            e = Expr::pair(e, x);
        }
        Ok(e)
    }

    fn ident(&mut self, name: String) -> Result<Expr, DslError> {
        if name == "act" || name == "m" {
            self.expect(Tok::LParen, "expected '('")?;
            let x = self.sum()?;
            self.expect(Tok::Comma, "expected ','")?;
            let y = self.sum()?;
            self.expect(Tok::RParen, "expected ')'")?;
            return Ok(if name == "act" { Expr::act(x, y) } else { Expr::mul(x, y) });
        }
        if let Some(map) = MapName::from_name(&name) {
            self.expect(Tok::LParen, "expected '(' after map name")?;
            let arg = self.sum()?;
            self.expect(Tok::RParen, "expected ')'")?;
            return Ok(Expr::map(map, arg));
        }
        if let Some(c) = Constant::from_name(&name) {
            let mut copy = None;
            if *self.peek() == Tok::LBracket {
                self.bump();
                copy = Some(self.small_int("copy index")? as u32);
                self.expect(Tok::RBracket, "expected ']'")?;
            }
            let mut power = 1;
            if *self.peek() == Tok::Caret {
                if !c.has_power() {
                    return Err(self.error("only sigma and delta take powers"));
                }
                self.bump();
                power = self.small_int("power")? as i32;
            }
            let leg = self.leg_suffix()?;
            return Ok(Expr::Const { c, copy, power, leg });
        }
        let leg = self.leg_suffix()?;
        Ok(Expr::Var { name, leg })
    }
}

/// Parses one expression.
pub fn parse(src: &str) -> Result<Expr, DslError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Parses `LHS == RHS`.
pub fn parse_identity(src: &str) -> Result<(Expr, Expr), DslError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let l = p.sum()?;
    p.expect(Tok::EqEq, "expected '=='")?;
    let r = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(p.error("trailing input"));
    }
    Ok((l, r))
}

/// One identity per non-empty line, `#` comments allowed.
pub fn parse_identity_file(src: &str) -> Result<Vec<(Expr, Expr)>, DslError> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        out.push(parse_identity(body).map_err(|e| e.on_line(i + 1))?);
    }
    Ok(out)
}
