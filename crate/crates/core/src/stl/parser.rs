//! Recursive-descent parser for the textual formula syntax.
//!
//! Precedence, loosest first: `->` (right associative), `\/`, `/\` (both
//! left associative), the temporal binaries `U`, `R`, `RW` (non-associative),
//! then the prefix operators `!`, `X`, `F`, `G`.

use super::formula::{Atom, Formula};
use super::interval::Interval;
use super::StlError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    True,
    Inf,
    Not,
    And,
    Or,
    Implies,
    Next,
    Eventually,
    Always,
    Until,
    Release,
    NonStrictRelease,
    Ge,
    Le,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, StlError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: tline, col: tcol });
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let sym = match two.as_str() {
            "/\\" => Some(Tok::And),
            "\\/" => Some(Tok::Or),
            "->" => Some(Tok::Implies),
            ">=" => Some(Tok::Ge),
            "<=" => Some(Tok::Le),
            _ => None,
        };
        if let Some(tok) = sym {
            push(&mut out, tok);
            i += 2;
            col += 2;
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Not),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            push(&mut out, tok);
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v: f64 = text.parse().map_err(|_| StlError::Syntax {
                line: tline,
                col: tcol,
                msg: format!("malformed number `{text}`"),
            })?;
            push(&mut out, Tok::Num(v));
            col += i - start;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "true" => Tok::True,
                "inf" => Tok::Inf,
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Always,
                "U" => Tok::Until,
                "R" => Tok::Release,
                "RW" => Tok::NonStrictRelease,
                _ => Tok::Ident(word),
            };
            push(&mut out, tok);
            col += i - start;
            continue;
        }
        return Err(StlError::UnknownOperator { line: tline, col: tcol, found: c.to_string() });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

/// Parses formula text into its syntax tree.
pub fn parse_formula(src: &str) -> Result<Formula, StlError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.implication()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> StlError {
        let t = &self.toks[self.pos];
        StlError::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), StlError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(self.peek()))))
        }
    }

    fn implication(&mut self) -> Result<Formula, StlError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, StlError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, StlError> {
        let mut lhs = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.temporal()?);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula, StlError> {
        let lhs = self.unary()?;
        let op = self.peek().clone();
        if !matches!(op, Tok::Until | Tok::Release | Tok::NonStrictRelease) {
            return Ok(lhs);
        }
        self.bump();
        let iv = self.opt_interval()?;
        let rhs = self.unary()?;
        if matches!(self.peek(), Tok::Until | Tok::Release | Tok::NonStrictRelease) {
            return Err(self.error("temporal binary operators do not chain; add parentheses"));
        }
        Ok(match op {
            Tok::Until => lhs.until(iv, rhs),
            Tok::Release => lhs.release(iv, rhs),
            _ => lhs.nonstrict_release(iv, rhs),
        })
    }

    fn unary(&mut self) -> Result<Formula, StlError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Next | Tok::Eventually | Tok::Always => {
                let op = self.bump().tok;
                let iv = self.opt_interval()?;
                let inner = Box::new(self.unary()?);
                Ok(match op {
                    Tok::Next => Formula::Next(iv, inner),
                    Tok::Eventually => Formula::Eventually(iv, inner),
                    _ => Formula::Always(iv, inner),
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, StlError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::LParen => {
                self.bump();
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) | Tok::Num(_) | Tok::Minus | Tok::Plus => self.atom(),
            other => Err(self.error(format!("expected a formula, found {}", describe(&other)))),
        }
    }

    fn atom(&mut self) -> Result<Formula, StlError> {
        let mut terms: Vec<(String, f64)> = Vec::new();
        let mut sign = self.leading_sign();
        loop {
            let coef = match self.peek().clone() {
                Tok::Num(v) => {
                    self.bump();
                    self.expect(Tok::Star, "`*`")?;
                    v
                }
                _ => 1.0,
            };
            match self.bump().tok {
                Tok::Ident(name) => terms.push((name, sign * coef)),
                other => {
                    self.pos -= 1;
                    return Err(self.error(format!("expected a channel name, found {}", describe(&other))));
                }
            }
            match self.peek() {
                Tok::Plus => sign = 1.0,
                Tok::Minus => sign = -1.0,
                _ => break,
            }
            self.bump();
        }
        let cmp = self.bump().tok;
        let rhs = self.signed_number()?;
        let atom = match cmp {
            Tok::Ge => Atom::new(terms, -rhs),
            Tok::Le => Atom::new(terms.into_iter().map(|(n, c)| (n, -c)).collect(), rhs),
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected `>=` or `<=`, found {}", describe(&other))));
            }
        };
        atom.map(Formula::Atom).map_err(|e| self.error(e.to_string()))
    }

    fn signed_number(&mut self) -> Result<f64, StlError> {
        let sign = self.leading_sign();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(sign * v)
            }
            other => Err(self.error(format!("expected a number, found {}", describe(&other)))),
        }
    }

    fn opt_interval(&mut self) -> Result<Interval, StlError> {
        let lo_open = match self.peek() {
            Tok::LBracket => false,
            Tok::LParen if self.looks_like_interval() => true,
            _ => return Ok(Interval::unbounded()),
        };
        let (line, col) = (self.toks[self.pos].line, self.toks[self.pos].col);
        self.bump();
        let lo = self.signed_number()?;
        self.expect(Tok::Comma, "`,`")?;
        let hi = match self.peek() {
            Tok::Inf => {
                self.bump();
                f64::INFINITY
            }
            _ => self.signed_number()?,
        };
        let hi_open = match self.bump().tok {
            Tok::RBracket => false,
            Tok::RParen => true,
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected `]` or `)`, found {}", describe(&other))));
            }
        };
        Interval::new(lo, hi, lo_open, hi_open).map_err(|e| StlError::Syntax { line, col, msg: e.to_string() })
    }

    /// Consumes an optional `+` or `-`.
    fn leading_sign(&mut self) -> f64 {
        if matches!(self.peek(), Tok::Minus | Tok::Plus) && self.bump().tok == Tok::Minus {
            -1.0
        } else {
            1.0
        }
    }

    /// `(` starts an interval only in the shape `( number , ...`.
    fn looks_like_interval(&self) -> bool {
        let rest = &self.toks[self.pos + 1..];
        matches!(
            rest,
            [Spanned { tok: Tok::Num(_), .. }, Spanned { tok: Tok::Comma, .. }, ..]
                | [Spanned { tok: Tok::Minus, .. }, Spanned { tok: Tok::Num(_), .. }, Spanned { tok: Tok::Comma, .. }, ..]
        )
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Num(v) => format!("number `{v}`"),
        Tok::Eof => "end of input".to_string(),
        other => format!("{other:?}"),
    }
}
