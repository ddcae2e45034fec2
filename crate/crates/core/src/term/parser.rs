//! Recursive-descent parser for statements.
//!
//! ```text
//! statement := [atom (',' atom)* '|-'] atom
//! atom      := term ('=' | '<=' | '<=Q') term
//! term      := operand ['->' term]            -- right associative
//! operand   := postfix [binop postfix]        -- no chaining without parens
//! postfix   := primary "'"*
//! primary   := variable | '0' | '1' | '(' term ')'
//! binop     := '&' | '|' | '.' | '&&' | '||' | '(+)' | '&s' | '|s'
//! ```
//!
//! Variables start with a lowercase letter. `&s` and `|s` are operators
//! only when not immediately followed by an identifier character.

use std::fmt;

use thiserror::Error;

use super::ast::{Atom, BinOp, Statement, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    Zero,
    One,
    LParen,
    RParen,
    Star,
    Bin(BinOp),
    Eq,
    Leq,
    LeqQ,
    Comma,
    Turnstile,
    Unknown(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Var(v) => write!(f, "`{v}`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::One => f.write_str("`1`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Star => f.write_str("`'`"),
            Tok::Bin(op) => write!(f, "`{}`", op.symbol()),
            Tok::Eq => f.write_str("`=`"),
            Tok::Leq => f.write_str("`<=`"),
            Tok::LeqQ => f.write_str("`<=Q`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Unknown(s) => write!(f, "`{s}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {}; found {found}", .expected.join(", "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Vec<(usize, Tok)> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let at = |j: usize| chars.get(j).copied();
    while i < chars.len() {
        let c = chars[i];
        let start = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = match c {
            '(' if at(i + 1) == Some('+') && at(i + 2) == Some(')') => (Tok::Bin(BinOp::OPlus), 3),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '\'' => (Tok::Star, 1),
            '.' => (Tok::Bin(BinOp::Prod), 1),
            ',' => (Tok::Comma, 1),
            '=' => (Tok::Eq, 1),
            '-' if at(i + 1) == Some('>') => (Tok::Bin(BinOp::Imp), 2),
            '<' if at(i + 1) == Some('=') => {
                if at(i + 2) == Some('Q') {
                    (Tok::LeqQ, 3)
                } else {
                    (Tok::Leq, 2)
                }
            }
            '&' | '|' => {
                let (double, s_op, single) = if c == '&' {
                    (BinOp::MeetL, BinOp::SMeet, BinOp::Meet)
                } else {
                    (BinOp::JoinL, BinOp::SJoin, BinOp::Join)
                };
                match at(i + 1) {
                    Some(d) if d == c => (Tok::Bin(double), 2),
                    Some('-') if c == '|' => (Tok::Turnstile, 2),
                    Some('s') if !at(i + 2).is_some_and(is_ident_char) => (Tok::Bin(s_op), 2),
                    _ => (Tok::Bin(single), 1),
                }
            }
            '0' if !at(i + 1).is_some_and(is_ident_char) => (Tok::Zero, 1),
            '1' if !at(i + 1).is_some_and(is_ident_char) => (Tok::One, 1),
            c if c.is_ascii_lowercase() => {
                let len = chars[i..].iter().take_while(|&&c| is_ident_char(c)).count();
                (Tok::Var(chars[i..i + len].iter().collect()), len)
            }
            c if is_ident_char(c) => {
                let len = chars[i..].iter().take_while(|&&c| is_ident_char(c)).count();
                (Tok::Unknown(chars[i..i + len].iter().collect()), len)
            }
            c => (Tok::Unknown(c.to_string()), 1),
        };
        toks.push((start, tok));
        i += len;
    }
    toks.push((chars.len() + 1, Tok::End));
    toks
}

const TERM_START: &[&str] = &["variable", "`0`", "`1`", "`(`"];
const BINOPS: &[&str] = &["`&`", "`|`", "`.`", "`&&`", "`||`", "`(+)`", "`&s`", "`|s`"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&[&str]]) -> ParseError {
        let (column, tok) = &self.toks[self.pos];
        ParseError {
            line: self.line,
            column: *column,
            expected: expected
                .iter()
                .flat_map(|s| s.iter().map(|e| e.to_string()))
                .collect(),
            found: tok.to_string(),
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let mut atoms = vec![self.atom()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    atoms.push(self.atom()?);
                }
                Tok::Turnstile => {
                    self.bump();
                    let conclusion = self.atom()?;
                    self.expect_end()?;
                    return Ok(Statement {
                        hypotheses: atoms,
                        conclusion,
                    });
                }
                Tok::End if atoms.len() == 1 => {
                    return Ok(Statement::identity(atoms.pop().expect("one atom")));
                }
                Tok::End => return Err(self.error(&[&["`,`", "`|-`"]])),
                _ => return Err(self.error(&[&["`,`", "`|-`", "end of input"]])),
            }
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&[&["end of input"]]))
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let lhs = self.term()?;
        let rel = match self.peek() {
            Tok::Eq | Tok::Leq | Tok::LeqQ => self.bump(),
            _ => return Err(self.error(&[&["`->`", "`'`"], BINOPS, &["`=`", "`<=`", "`<=Q`"]])),
        };
        let rhs = self.term()?;
        Ok(match rel {
            Tok::Eq => Atom::Eq(lhs, rhs),
            Tok::Leq => Atom::Leq(lhs, rhs),
            _ => Atom::LeqQ(lhs, rhs),
        })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let lhs = self.operand()?;
        if *self.peek() == Tok::Bin(BinOp::Imp) {
            self.bump();
            let rhs = self.term()?;
            return Ok(Term::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn operand(&mut self) -> Result<Term, ParseError> {
        let lhs = self.postfix()?;
        let op = match self.peek() {
            Tok::Bin(op) if *op != BinOp::Imp => *op,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.postfix()?;
        if let Tok::Bin(next) = self.peek() {
            if *next != BinOp::Imp {
                // `x & y | z` or `x & y & z`: grouping must be explicit
                return Err(self.error(&[&["`->`", "`'`", "`)`", "`=`", "`<=`", "`<=Q`"]]));
            }
        }
        Ok(Term::bin(op, lhs, rhs))
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::star(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[&["`->`", "`'`"], BINOPS, &["`)`"]]));
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.error(&[TERM_START])),
        }
    }
}

/// Parses one statement; errors report line 1.
pub fn parse_statement(text: &str) -> Result<Statement, ParseError> {
    parse_statement_at(text, 1)
}

fn parse_statement_at(text: &str, line: usize) -> Result<Statement, ParseError> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        line,
    };
    p.statement()
}

/// Parses a single term.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        line: 1,
    };
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

/// One statement per line; `#` starts a comment. Returns `(line, statement)`.
pub fn parse_statement_file(text: &str) -> Result<Vec<(usize, Statement)>, ParseError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| parse_statement_at(line, i + 1).map(|s| (i + 1, s)))
        })
        .collect()
}
