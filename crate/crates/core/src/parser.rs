//! Text formats: signatures (`.sig`), theories (`.fol`), formulas,
//! interpretations (`.model`, JSON) and Kripke frames (`.frame`, JSON).
//!
//! Formula grammar, whitespace-insensitive, `#` starts a comment:
//!
//! ```text
//! formula := quant | iff
//! quant   := ("exists" | "forall") IDENT "." formula
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "(" formula ")" | "true" | "false" | quant
//!          | "<" ["^"] IDENT ">" unary | "[" ["^"] IDENT "]" unary
//!          | atom
//! atom    := PRED "(" term ("," term)* ")" | PRED | term "=" term
//! term    := IDENT | "@" IDENT | FN "(" term ("," term)* ")"
//! ```
//!
//! Undeclared identifiers in term position are variables, declared arity-0
//! functions are constants, and `@a` names domain element `a` directly.
//! The modal forms are only accepted by [`parse_modal_formula`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::kripke::{KripkeFrame, ModalFormula};
use crate::relalg::{Domain, Element, Relation};
use crate::syntax::{Formula, Signature, SymbolKind, SyntaxError, Term, KEYWORDS};
use crate::tarski::{FunctionTable, Interpretation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: symbol `{name}` declared more than once")]
    DuplicateSymbol { pos: Pos, name: String },
    #[error("{pos}: bad declaration of `{name}`: {msg}")]
    BadDeclaration { pos: Pos, name: String, msg: String },
    #[error("{pos}: bad arity `{text}`")]
    BadArity { pos: Pos, text: String },
    #[error("{pos}: `{symbol}` expects {expected} arguments, found {found}")]
    ArityMismatch {
        pos: Pos,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("{pos}: unknown predicate `{name}`")]
    UnknownPredicate { pos: Pos, name: String },
    #[error("{pos}: unknown function `{name}`")]
    UnknownFunction { pos: Pos, name: String },
    #[error("{pos}: modal operators are not allowed here")]
    ModalNotAllowed { pos: Pos },
    #[error("{pos}: `{name}` is not a sentence (free variables {free})")]
    NotASentence { pos: Pos, name: String, free: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("`{symbol}` has arity {expected} but a tuple has {found} entries")]
    TupleArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("`{symbol}` mentions `{element}`, which is not in the domain")]
    ElementNotInDomain { symbol: String, element: String },
    #[error("function `{symbol}` is undefined at ({args})")]
    PartialFunction { symbol: String, args: String },
    #[error("`{0}` is not declared in the signature")]
    UnknownSymbol(String),
    #[error("missing or invalid domain: {0}")]
    BadDomain(String),
    #[error("bad value for `{symbol}`: {msg}")]
    BadValue { symbol: String, msg: String },
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Elem(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Caret,
    Comma,
    Dot,
    Colon,
    Semi,
    Slash,
    Amp,
    Bar,
    Tilde,
    Eq,
    Arrow,
    Iff,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) | Tok::Number(s) => return write!(f, "`{s}`"),
            Tok::Elem(s) => return write!(f, "`@{s}`"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LAngle => "<",
            Tok::RAngle => ">",
            Tok::Caret => "^",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Slash => "/",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Tilde => "~",
            Tok::Eq => "=",
            Tok::Arrow => "->",
            Tok::Iff => "<->",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && ident_char(chars[i]) {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Number(chars[start..i].iter().collect()), pos));
            }
            '@' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && ident_char(chars[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected an element name after `@`".into(),
                    });
                }
                out.push((Tok::Elem(chars[start..j].iter().collect()), pos));
                col += j - i;
                i = j;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Arrow, pos));
                advance(2, &mut i, &mut col);
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                out.push((Tok::Iff, pos));
                advance(3, &mut i, &mut col);
            }
            _ => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '<' => Tok::LAngle,
                    '>' => Tok::RAngle,
                    '^' => Tok::Caret,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    '/' => Tok::Slash,
                    '&' => Tok::Amp,
                    '|' => Tok::Bar,
                    '~' => Tok::Tilde,
                    '=' => Tok::Eq,
                    other => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: format!("unexpected character `{other}`"),
                        })
                    }
                };
                out.push((tok, pos));
                advance(1, &mut i, &mut col);
            }
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
    sig: &'a Signature,
    modal: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.at + n).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            msg: format!("expected {wanted}, found {}", self.peek()),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        if KEYWORDS.contains(&name.as_str()) || self.sig.kind(&name).is_some() {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("`{name}` cannot be used as a variable"),
            });
        }
        Ok(name)
    }

    fn formula(&mut self) -> Result<ModalFormula, ParseError> {
        match self.peek() {
            Tok::Ident(k) if k == "exists" || k == "forall" => self.quant(),
            _ => self.iff(),
        }
    }

    fn quant(&mut self) -> Result<ModalFormula, ParseError> {
        let universal = matches!(self.bump(), Tok::Ident(k) if k == "forall");
        let x = self.variable()?;
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(if universal {
            ModalFormula::forall(&x, body)
        } else {
            ModalFormula::exists(&x, body)
        })
    }

    fn iff(&mut self) -> Result<ModalFormula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = ModalFormula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<ModalFormula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(ModalFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<ModalFormula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.and()?;
            lhs = ModalFormula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<ModalFormula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = ModalFormula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn modality(&mut self, close: Tok) -> Result<(String, bool), ParseError> {
        let pos = self.pos();
        if !self.modal {
            return Err(ParseError::ModalNotAllowed { pos });
        }
        self.bump();
        let intensional = self.eat(&Tok::Caret);
        let name = self.ident()?;
        self.expect(close)?;
        Ok((name, intensional))
    }

    fn unary(&mut self) -> Result<ModalFormula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(ModalFormula::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::LAngle => {
                let (name, intensional) = self.modality(Tok::RAngle)?;
                let body = self.unary()?;
                Ok(if intensional {
                    ModalFormula::int_diamond(&name, body)
                } else {
                    ModalFormula::diamond(&name, body)
                })
            }
            Tok::LBracket => {
                let (name, intensional) = self.modality(Tok::RBracket)?;
                let body = self.unary()?;
                Ok(if intensional {
                    ModalFormula::int_boxed(&name, body)
                } else {
                    ModalFormula::boxed(&name, body)
                })
            }
            Tok::Ident(k) if k == "true" => {
                self.bump();
                Ok(ModalFormula::True)
            }
            Tok::Ident(k) if k == "false" => {
                self.bump();
                Ok(ModalFormula::not(ModalFormula::True))
            }
            Tok::Ident(k) if k == "exists" || k == "forall" => self.quant(),
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<ModalFormula, ParseError> {
        let pos = self.pos();
        if let Tok::Ident(name) = self.peek().clone() {
            match self.sig.kind(&name) {
                Some(SymbolKind::Predicate) => {
                    self.bump();
                    let arity = self.sig.predicate_arity(&name).unwrap();
                    let args = if arity == 0 { Vec::new() } else { self.args(&name, pos, arity)? };
                    return Ok(ModalFormula::Atom(name, args));
                }
                None if *self.peek_at(1) == Tok::LParen => {
                    return Err(ParseError::UnknownPredicate { pos, name });
                }
                _ => {}
            }
        }
        let lhs = self.term()?;
        if !self.eat(&Tok::Eq) {
            return Err(self.unexpected("`=` or a predicate"));
        }
        let rhs = self.term()?;
        Ok(ModalFormula::Eq(lhs, rhs))
    }

    fn args(&mut self, symbol: &str, pos: Pos, arity: usize) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        if args.len() != arity {
            return Err(ParseError::ArityMismatch {
                pos,
                symbol: symbol.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Elem(e) => {
                self.bump();
                Ok(Term::Elem(e))
            }
            Tok::Ident(name) => {
                if KEYWORDS.contains(&name.as_str()) {
                    return Err(self.unexpected("a term"));
                }
                self.bump();
                match self.sig.kind(&name) {
                    Some(SymbolKind::Function) => {
                        let arity = self.sig.function_arity(&name).unwrap();
                        if arity == 0 {
                            if *self.peek() == Tok::LParen {
                                return Err(ParseError::ArityMismatch {
                                    pos,
                                    symbol: name,
                                    expected: 0,
                                    found: 1,
                                });
                            }
                            Ok(Term::App(name, Vec::new()))
                        } else if *self.peek() != Tok::LParen {
                            Err(ParseError::ArityMismatch {
                                pos,
                                symbol: name,
                                expected: arity,
                                found: 0,
                            })
                        } else {
                            let args = self.args(&name, pos, arity)?;
                            Ok(Term::App(name, args))
                        }
                    }
                    Some(SymbolKind::Predicate) => Err(ParseError::Syntax {
                        pos,
                        msg: format!("predicate `{name}` used as a term"),
                    }),
                    None if *self.peek() == Tok::LParen => Err(ParseError::UnknownFunction { pos, name }),
                    None => Ok(Term::Var(name)),
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of formula"))
        }
    }
}

fn parse_modal_tokens(toks: &[(Tok, Pos)], sig: &Signature, modal: bool) -> Result<ModalFormula, ParseError> {
    let mut p = Parser {
        toks,
        at: 0,
        sig,
        modal,
    };
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let f = parse_modal_tokens(&toks, sig, false)?;
    Ok(f.to_formula().expect("modal operators are rejected while parsing"))
}

/// Like [`parse_formula`] but also accepts `<r>`, `[r]` (relation `r` of the
/// inner frame) and `<^r>`, `[^r]` (intensional relation `r`).
pub fn parse_modal_formula(text: &str, sig: &Signature) -> Result<ModalFormula, ParseError> {
    let toks = lex(text)?;
    parse_modal_tokens(&toks, sig, true)
}

/// Canonical text of a formula; parses back to the same tree.
pub fn render(phi: &Formula) -> String {
    phi.to_string()
}

fn split_statements(toks: &[(Tok, Pos)]) -> Vec<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for (t, p) in toks {
        match t {
            Tok::Semi | Tok::Eof => {
                if !cur.is_empty() {
                    let mut stmt = std::mem::take(&mut cur);
                    stmt.push((Tok::Eof, *p));
                    out.push(stmt);
                }
            }
            _ => cur.push((t.clone(), *p)),
        }
    }
    out
}

fn declaration(stmt: &[(Tok, Pos)], sig: &mut Signature) -> Result<(), ParseError> {
    let kind = match &stmt[0].0 {
        Tok::Ident(k) => k.clone(),
        _ => unreachable!("caller checked the keyword"),
    };
    // `pred p/1, q/2` declares several symbols at once
    let mut i = 1;
    loop {
        let pos = stmt[i].1;
        let name = match &stmt[i].0 {
            Tok::Ident(n) => n.clone(),
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("expected a symbol name, found {other}"),
                })
            }
        };
        if stmt[i + 1].0 != Tok::Slash {
            return Err(ParseError::Syntax {
                pos: stmt[i + 1].1,
                msg: format!("expected `/arity` after `{name}`"),
            });
        }
        let arity = match &stmt[i + 2].0 {
            Tok::Number(n) => n.parse::<usize>().map_err(|_| ParseError::BadArity {
                pos: stmt[i + 2].1,
                text: n.clone(),
            })?,
            other => {
                return Err(ParseError::BadArity {
                    pos: stmt[i + 2].1,
                    text: other.to_string(),
                })
            }
        };
        let existing = if kind == "pred" {
            sig.predicate_arity(&name)
        } else {
            sig.function_arity(&name)
        };
        let res = if existing == Some(arity) {
            Ok(())
        } else if kind == "pred" {
            sig.add_predicate(&name, arity)
        } else {
            sig.add_function(&name, arity)
        };
        res.map_err(|e| match e {
            SyntaxError::DuplicateSymbol(name) => ParseError::DuplicateSymbol { pos, name },
            other => ParseError::BadDeclaration {
                pos,
                name: name.clone(),
                msg: other.to_string(),
            },
        })?;
        i += 3;
        match &stmt[i].0 {
            Tok::Comma => i += 1,
            Tok::Eof => return Ok(()),
            other => {
                return Err(ParseError::Syntax {
                    pos: stmt[i].1,
                    msg: format!("expected `;` or `,`, found {other}"),
                })
            }
        }
    }
}

fn is_keyword_stmt(stmt: &[(Tok, Pos)], kw: &[&str]) -> bool {
    matches!(&stmt[0].0, Tok::Ident(k) if kw.contains(&k.as_str()))
        && !matches!(stmt.get(1).map(|t| &t.0), Some(Tok::LParen | Tok::Eq | Tok::Colon))
}

/// Parse `pred NAME/ARITY;` and `fn NAME/ARITY;` declarations.
pub fn parse_signature(text: &str) -> Result<Signature, ParseError> {
    let toks = lex(text)?;
    let mut sig = Signature::new();
    for stmt in split_statements(&toks) {
        if !is_keyword_stmt(&stmt, &["pred", "fn"]) {
            return Err(ParseError::Syntax {
                pos: stmt[0].1,
                msg: format!("expected `pred` or `fn`, found {}", stmt[0].0),
            });
        }
        declaration(&stmt, &mut sig)?;
    }
    Ok(sig)
}

/// A signature, a list of named sentences and an optional domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryFile {
    pub signature: Signature,
    pub sentences: Vec<(String, Formula)>,
    pub domain: Option<Domain>,
}

impl TheoryFile {
    pub fn formulas(&self) -> Vec<Formula> {
        self.sentences.iter().map(|(_, f)| f.clone()).collect()
    }
}

/// Parse a theory: `;`-terminated statements, each a declaration, a
/// `domain a, b, ...` line, or a sentence optionally labelled `name: ...`.
/// Declarations may appear anywhere in the file and extend `base`.
pub fn parse_theory_with(text: &str, base: &Signature) -> Result<TheoryFile, ParseError> {
    let toks = lex(text)?;
    let stmts = split_statements(&toks);
    let mut sig = base.clone();
    let mut domain = None;
    for stmt in &stmts {
        if is_keyword_stmt(stmt, &["pred", "fn"]) {
            declaration(stmt, &mut sig)?;
        } else if is_keyword_stmt(stmt, &["domain"]) {
            let mut names = Vec::new();
            for (t, pos) in &stmt[1..stmt.len() - 1] {
                match t {
                    Tok::Ident(n) | Tok::Number(n) => names.push(n.clone()),
                    Tok::Comma => {}
                    other => {
                        return Err(ParseError::Syntax {
                            pos: *pos,
                            msg: format!("unexpected {other} in domain"),
                        })
                    }
                }
            }
            domain = Some(Domain::new(names).map_err(|e| ParseError::BadDomain(e.to_string()))?);
        }
    }
    let mut sentences = Vec::new();
    for stmt in &stmts {
        if is_keyword_stmt(stmt, &["pred", "fn", "domain"]) {
            continue;
        }
        let (name, body) = match (&stmt[0].0, stmt.get(1).map(|t| &t.0)) {
            (Tok::Ident(n), Some(Tok::Colon)) => (n.clone(), &stmt[2..]),
            _ => (format!("g{}", sentences.len() + 1), &stmt[..]),
        };
        let pos = body[0].1;
        let f = parse_modal_tokens(body, &sig, false)?
            .to_formula()
            .expect("modal operators rejected");
        let free = crate::syntax::free_var_tuple(&f);
        if !free.is_empty() {
            return Err(ParseError::NotASentence {
                pos,
                name,
                free: free.to_string(),
            });
        }
        sentences.push((name, f));
    }
    Ok(TheoryFile {
        signature: sig,
        sentences,
        domain,
    })
}

pub fn parse_theory(text: &str) -> Result<TheoryFile, ParseError> {
    parse_theory_with(text, &Signature::new())
}

fn domain_from_value(v: &Value) -> Result<Domain, ParseError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ParseError::BadDomain("expected an array of element names".into()))?;
    let names = arr
        .iter()
        .map(|e| {
            e.as_str()
                .map(str::to_string)
                .ok_or_else(|| ParseError::BadDomain(format!("element {e} is not a string")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Domain::new(names).map_err(|e| ParseError::BadDomain(e.to_string()))
}

fn element(domain: &Domain, symbol: &str, v: &Value) -> Result<Element, ParseError> {
    let name = v.as_str().ok_or_else(|| ParseError::BadValue {
        symbol: symbol.to_string(),
        msg: format!("expected an element name, found {v}"),
    })?;
    domain.index(name).ok_or_else(|| ParseError::ElementNotInDomain {
        symbol: symbol.to_string(),
        element: name.to_string(),
    })
}

fn relation_from_value(domain: &Domain, symbol: &str, arity: usize, v: &Value) -> Result<Relation, ParseError> {
    if arity == 0 {
        if let Some(b) = v.as_bool() {
            return Ok(Relation::from_bool(b));
        }
    }
    let rows = v.as_array().ok_or_else(|| ParseError::BadValue {
        symbol: symbol.to_string(),
        msg: "expected an array of tuples".into(),
    })?;
    let mut r = Relation::empty(arity);
    for row in rows {
        let row = row.as_array().ok_or_else(|| ParseError::BadValue {
            symbol: symbol.to_string(),
            msg: format!("expected a tuple array, found {row}"),
        })?;
        if row.len() != arity {
            return Err(ParseError::TupleArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: row.len(),
            });
        }
        let t = row
            .iter()
            .map(|e| element(domain, symbol, e))
            .collect::<Result<Vec<_>, _>>()?;
        r.insert(t).expect("length checked");
    }
    Ok(r)
}

fn function_from_value(domain: &Domain, symbol: &str, arity: usize, v: &Value) -> Result<FunctionTable, ParseError> {
    let mut values = Vec::new();
    for args in domain.tuples(arity) {
        let mut cur = v;
        for &a in &args {
            let map = cur.as_object().ok_or_else(|| ParseError::BadValue {
                symbol: symbol.to_string(),
                msg: "expected a nested object keyed by element names".into(),
            })?;
            for key in map.keys() {
                if domain.index(key).is_none() {
                    return Err(ParseError::ElementNotInDomain {
                        symbol: symbol.to_string(),
                        element: key.clone(),
                    });
                }
            }
            cur = map.get(domain.name(a)).ok_or_else(|| ParseError::PartialFunction {
                symbol: symbol.to_string(),
                args: args.iter().map(|&e| domain.name(e)).collect::<Vec<_>>().join(","),
            })?;
        }
        values.push(element(domain, symbol, cur)?);
    }
    Ok(FunctionTable::new(arity, domain, values).expect("one value per tuple"))
}

fn interpretation_from_object(
    obj: &Map<String, Value>,
    sig: &Arc<Signature>,
    inherited: Option<&Arc<Domain>>,
) -> Result<Interpretation, ParseError> {
    let domain = match (obj.get("domain"), inherited) {
        (Some(v), _) => Arc::new(domain_from_value(v)?),
        (None, Some(d)) => d.clone(),
        (None, None) => return Err(ParseError::BadDomain("no `domain` key".into())),
    };
    let mut m = Interpretation::new(sig.clone(), domain.clone());
    for (key, v) in obj {
        if key == "domain" {
            continue;
        }
        match sig.kind(key) {
            Some(SymbolKind::Predicate) => {
                let r = relation_from_value(&domain, key, sig.predicate_arity(key).unwrap(), v)?;
                m.set_predicate(key, r).expect("validated");
            }
            Some(SymbolKind::Function) => {}
            None => return Err(ParseError::UnknownSymbol(key.clone())),
        }
    }
    // every function must be given in full; missing predicates are empty
    for (name, arity) in sig.functions() {
        let v = obj.get(name).ok_or_else(|| ParseError::PartialFunction {
            symbol: name.clone(),
            args: "*".into(),
        })?;
        let table = function_from_value(&domain, name, *arity, v)?;
        m.set_function(name, table).expect("validated");
    }
    Ok(m)
}

/// Parse a `.model` JSON document, e.g.
/// `{"domain": ["a","b"], "p": [["a"]], "c": "a", "f": {"a": "b", "b": "a"}}`.
///
/// Predicates absent from the document are empty. Functions must be total.
pub fn parse_interpretation(data: &str, sig: &Arc<Signature>) -> Result<Interpretation, ParseError> {
    let v: Value = serde_json::from_str(data).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::Json("top level must be an object".into()))?;
    interpretation_from_object(obj, sig, None)
}

fn function_to_value(m: &Interpretation, table: &FunctionTable) -> Value {
    let d = m.domain();
    fn build(d: &Domain, table: &FunctionTable, prefix: &mut Vec<Element>) -> Value {
        if prefix.len() == table.arity() {
            return Value::String(d.name(table.apply(prefix, d.len())).to_string());
        }
        let mut map = Map::new();
        for e in d.elements() {
            prefix.push(e);
            map.insert(d.name(e).to_string(), build(d, table, prefix));
            prefix.pop();
        }
        Value::Object(map)
    }
    build(d, table, &mut Vec::new())
}

/// The JSON form read by [`parse_interpretation`].
pub fn interpretation_to_json(m: &Interpretation) -> Value {
    let d = m.domain();
    let mut obj = Map::new();
    obj.insert("domain".into(), Value::from(d.names().to_vec()));
    for ((name, _), r) in m.signature().predicates().iter().zip(m.predicates()) {
        let rows: Vec<Value> = r
            .iter()
            .map(|t| Value::from(t.iter().map(|&e| d.name(e).to_string()).collect::<Vec<_>>()))
            .collect();
        obj.insert(name.clone(), Value::Array(rows));
    }
    for ((name, _), f) in m.signature().functions().iter().zip(m.functions()) {
        obj.insert(name.clone(), function_to_value(m, f));
    }
    Value::Object(obj)
}

/// Parse a `.frame` JSON document:
///
/// ```json
/// {
///   "domain": ["a", "b"],
///   "worlds": ["u", "v"],
///   "relations": { "r": [["u", "v"]] },
///   "models": { "u": { "p": [["a"]] }, "v": "v.model" }
/// }
/// ```
///
/// `domain` defaults to a single element `*`. A model may be inline or a path
/// relative to `base_dir`; worlds without one get the empty interpretation.
pub fn parse_frame(
    data: &str,
    sig: &Arc<Signature>,
    base_dir: Option<&Path>,
) -> Result<(KripkeFrame, Vec<Interpretation>), ParseError> {
    let v: Value = serde_json::from_str(data).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::Json("top level must be an object".into()))?;
    let domain = Arc::new(match obj.get("domain") {
        Some(d) => domain_from_value(d)?,
        None => Domain::new(["*"]).expect("nonempty"),
    });
    let worlds: Vec<String> = obj
        .get("worlds")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Json("`worlds` must be an array of names".into()))?
        .iter()
        .map(|w| {
            w.as_str()
                .map(str::to_string)
                .ok_or_else(|| ParseError::Json(format!("world name {w} is not a string")))
        })
        .collect::<Result<_, _>>()?;
    let mut relations = BTreeMap::new();
    if let Some(rels) = obj.get("relations") {
        let rels = rels
            .as_object()
            .ok_or_else(|| ParseError::Json("`relations` must be an object".into()))?;
        for (name, pairs) in rels {
            let pairs = pairs
                .as_array()
                .ok_or_else(|| ParseError::Json(format!("relation `{name}` must be an array of pairs")))?;
            let mut out = Vec::new();
            for pair in pairs {
                let pair: Vec<&str> = pair
                    .as_array()
                    .map(|p| p.iter().filter_map(Value::as_str).collect())
                    .unwrap_or_default();
                if pair.len() != 2 {
                    return Err(ParseError::Json(format!("relation `{name}`: expected a pair of world names")));
                }
                out.push((pair[0].to_string(), pair[1].to_string()));
            }
            relations.insert(name.clone(), out);
        }
    }
    let frame = KripkeFrame::from_names(worlds.clone(), &relations).map_err(|e| ParseError::Json(e.to_string()))?;

    let models = obj.get("models").and_then(Value::as_object);
    let mut tables = Vec::new();
    for w in &worlds {
        let m = match models.and_then(|ms| ms.get(w)) {
            None => Interpretation::new(sig.clone(), domain.clone()),
            Some(Value::Object(o)) => interpretation_from_object(o, sig, Some(&domain))?,
            Some(Value::String(path)) => {
                let full = base_dir.map(|d| d.join(path)).unwrap_or_else(|| path.into());
                let text = std::fs::read_to_string(&full).map_err(|e| ParseError::Io(format!("{}: {e}", full.display())))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| ParseError::Json(e.to_string()))?;
                let o = v
                    .as_object()
                    .ok_or_else(|| ParseError::Json(format!("{}: top level must be an object", full.display())))?;
                interpretation_from_object(o, sig, Some(&domain))?
            }
            Some(other) => return Err(ParseError::Json(format!("model for `{w}` must be an object or a path, found {other}"))),
        };
        if m.domain() != &*domain {
            return Err(ParseError::BadDomain(format!("world `{w}` uses a different domain")));
        }
        tables.push(m);
    }
    Ok((frame, tables))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sig() -> Signature {
        parse_signature("pred p/1; pred q/2; fn c/0;").unwrap()
    }

    #[test]
    fn signature_declarations() {
        let s = sig();
        assert_eq!(s.predicate_arity("p"), Some(1));
        assert_eq!(s.predicate_arity("q"), Some(2));
        assert_eq!(s.function_arity("c"), Some(0));
        assert!(matches!(
            parse_signature("pred p/1; pred p/2;"),
            Err(ParseError::DuplicateSymbol { .. })
        ));
        assert!(matches!(
            parse_signature("pred p/1; fn p/1;"),
            Err(ParseError::DuplicateSymbol { .. })
        ));
        let base = parse_signature("pred p/1;").unwrap();
        let t = parse_theory_with("pred p/1; fn c/0; p(c);", &base).unwrap();
        assert_eq!(t.signature.predicates().len(), 1);
        assert!(parse_signature("").unwrap().is_empty());
        assert!(matches!(parse_signature("pred p/x;"), Err(ParseError::BadArity { .. })));
        assert!(matches!(parse_signature("pred p 1;"), Err(ParseError::Syntax { .. })));
        let multi = parse_signature("pred p/1, r/0;\nfn f/1;").unwrap();
        assert_eq!(multi.predicate_arity("r"), Some(0));
    }

    #[test]
    fn formula_examples() {
        let s = sig();
        let f = parse_formula("exists x. (p(x) & ~q(x,c))", &s).unwrap();
        let x = Term::var("x");
        assert_eq!(
            f,
            Formula::exists(
                "x",
                Formula::and(
                    Formula::atom("p", vec![x.clone()]),
                    Formula::not(Formula::atom("q", vec![x.clone(), Term::constant("c")]))
                )
            )
        );
        let f = parse_formula("forall x. p(x)", &s).unwrap();
        assert_eq!(
            f,
            Formula::not(Formula::exists("x", Formula::not(Formula::atom("p", vec![x.clone()]))))
        );
        let f = parse_formula("p(x) -> q(x,x)", &s).unwrap();
        assert_eq!(
            f,
            Formula::not(Formula::and(
                Formula::atom("p", vec![x.clone()]),
                Formula::not(Formula::atom("q", vec![x.clone(), x.clone()]))
            ))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let s = parse_signature("pred a/0; pred b/0; pred c/0;").unwrap();
        let a = || Formula::atom("a", vec![]);
        let b = || Formula::atom("b", vec![]);
        let c = || Formula::atom("c", vec![]);
        assert_eq!(
            parse_formula("a -> b -> c", &s).unwrap(),
            Formula::implies(a(), Formula::implies(b(), c()))
        );
        assert_eq!(
            parse_formula("a | b & c", &s).unwrap(),
            Formula::or(a(), Formula::and(b(), c()))
        );
        assert_eq!(parse_formula("a <-> b", &s).unwrap(), Formula::iff(a(), b()));
        assert_eq!(parse_formula("false", &s).unwrap(), Formula::falsum());
        assert_eq!(
            parse_formula("a & exists x. x = x", &s).unwrap(),
            Formula::and(a(), Formula::exists("x", Formula::eq(Term::var("x"), Term::var("x"))))
        );
    }

    #[test]
    fn formula_errors_carry_positions() {
        let s = sig();
        match parse_formula("p(x,y)", &s) {
            Err(ParseError::ArityMismatch { expected: 1, found: 2, pos, .. }) => assert_eq!(pos, Pos { line: 1, col: 1 }),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("r(x)", &s), Err(ParseError::UnknownPredicate { .. })));
        assert!(matches!(parse_formula("p(g(x))", &s), Err(ParseError::UnknownFunction { .. })));
        match parse_formula("p(x) &\n  & q(x,x)", &s) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, Pos { line: 2, col: 3 }),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("p(x) $", &s), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("<r> p(x)", &s), Err(ParseError::ModalNotAllowed { .. })));
        assert!(parse_formula("p(x))", &s).is_err());
        assert!(parse_formula("exists c. p(c)", &s).is_err());
    }

    #[test]
    fn render_examples() {
        let s = sig();
        for text in ["exists x. (p(x) & ~p(x))", "true", "x = y", "~(x = @a) & p(c)", "exists x. exists y. q(x,y)"] {
            let f = parse_formula(text, &s).unwrap();
            assert_eq!(render(&f), text);
        }
    }

    #[test]
    fn modal_syntax() {
        let s = sig();
        let f = parse_modal_formula("<r> p(x) & [^dia] q(x,x)", &s).unwrap();
        assert_eq!(f.to_string(), "<r>p(x) & ~<^dia>~q(x,x)");
        assert_eq!(parse_modal_formula(&f.to_string(), &s).unwrap(), f);
    }

    #[test]
    fn theory_files() {
        let text = "# a theory\npred p/1; pred q/2;\nfn c/0;\ndomain a, b;\nax1: forall x. (p(x) -> q(x,x));\np(c);\n";
        let t = parse_theory(text).unwrap();
        assert_eq!(t.sentences.len(), 2);
        assert_eq!(t.sentences[0].0, "ax1");
        assert_eq!(t.sentences[1].0, "g2");
        assert_eq!(t.domain.unwrap().names(), ["a", "b"]);
        match parse_theory("pred p/1;\np(x);") {
            Err(ParseError::NotASentence { pos, .. }) => assert_eq!(pos.line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interpretation_fixture_roundtrips() {
        let sig = Arc::new(sig());
        let m = parse_interpretation(r#"{"domain":["a","b"],"p":[["a"]],"q":[["a","b"],["b","b"]],"c":"a"}"#, &sig).unwrap();
        assert_eq!(m, fixtures::m1());
        let again = parse_interpretation(&interpretation_to_json(&m).to_string(), &sig).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn interpretation_errors() {
        let s = Arc::new(sig());
        assert!(matches!(
            parse_interpretation(r#"{"domain":["a","b"],"p":[["a","b"]],"c":"a"}"#, &s),
            Err(ParseError::TupleArityMismatch { .. })
        ));
        let fsig = Arc::new(parse_signature("fn f/1;").unwrap());
        assert!(matches!(
            parse_interpretation(r#"{"domain":["a"],"f":{"a":"b"}}"#, &fsig),
            Err(ParseError::ElementNotInDomain { .. })
        ));
        assert!(matches!(
            parse_interpretation(r#"{"domain":["a","b"],"f":{"a":"b"}}"#, &fsig),
            Err(ParseError::PartialFunction { .. })
        ));
        assert!(matches!(
            parse_interpretation(r#"{"domain":["a"],"z":[]}"#, &fsig),
            Err(ParseError::UnknownSymbol(_))
        ));
        assert!(matches!(parse_interpretation("{", &fsig), Err(ParseError::Json(_))));
    }

    #[test]
    fn frames() {
        let sig = Arc::new(parse_signature("pred p/0;").unwrap());
        let text = r#"{"worlds":["u","v"],"relations":{"r":[["v","u"]]},"models":{"u":{"p":true}}}"#;
        let (frame, tables) = parse_frame(text, &sig, None).unwrap();
        assert_eq!(frame.worlds().len(), 2);
        assert!(tables[0].predicate("p").unwrap().is_truth());
        assert!(!tables[1].predicate("p").unwrap().is_truth());
        assert!(parse_frame(r#"{"worlds":["u"],"relations":{"r":[["u","zz"]]}}"#, &sig, None).is_err());
    }
}
