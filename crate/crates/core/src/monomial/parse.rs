//! Text form of monomial ideals.
//!
//! ```text
//! ideal  ::= [ 'vars' var (',' var)* ';' ] mono (';' mono)*
//! mono   ::= factor ('*' factor)*
//! factor ::= var ('^' posint)?
//! ```
//!
//! Without a `vars` declaration the variables are ordered by first
//! appearance. Whitespace is ignored.

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Star,
    Caret,
    Semi,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b';' => {
                out.push((i, Tok::Semi));
                i += 1;
            }
            b',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: Vec<String>,
    declared: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected a variable name"),
        }
    }

    fn declaration(&mut self) -> Result<()> {
        let is_decl = matches!(self.peek(), Some(Tok::Ident(s)) if s == "vars")
            && matches!(self.toks.get(self.at + 1), Some((_, Tok::Ident(_))));
        if !is_decl {
            return Ok(());
        }
        self.at += 1;
        loop {
            let pos = self.pos();
            let v = self.ident()?;
            if self.vars.contains(&v) {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("variable `{v}` declared twice"),
                });
            }
            self.vars.push(v);
            match self.peek() {
                Some(Tok::Comma) => self.at += 1,
                Some(Tok::Semi) => {
                    self.at += 1;
                    break;
                }
                _ => return self.err("expected `,` or `;` in variable declaration"),
            }
        }
        self.declared = true;
        Ok(())
    }

    fn var_index(&mut self, name: &str, pos: usize) -> Result<usize> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(i);
        }
        if self.declared {
            return Err(Error::Syntax {
                pos,
                msg: format!("variable `{name}` is not declared"),
            });
        }
        self.vars.push(name.to_string());
        Ok(self.vars.len() - 1)
    }

    /// Factors as (variable index, exponent) pairs; resolved into vectors
    /// once the variable set is final.
    fn mono(&mut self) -> Result<Vec<(usize, u32, usize)>> {
        let mut factors = Vec::new();
        loop {
            let pos = self.pos();
            let name = self.ident()?;
            let idx = self.var_index(&name, pos)?;
            let mut exp = 1u32;
            if let Some(Tok::Caret) = self.peek() {
                self.at += 1;
                let epos = self.pos();
                match self.peek() {
                    Some(Tok::Int(digits)) => {
                        exp = digits
                            .parse::<u32>()
                            .map_err(|_| Error::ExponentOverflow { pos: epos })?;
                        if exp == 0 {
                            return Err(Error::ZeroExponent { pos: epos });
                        }
                        self.at += 1;
                    }
                    _ => return self.err("expected a positive integer exponent"),
                }
            }
            factors.push((idx, exp, pos));
            match self.peek() {
                Some(Tok::Star) => self.at += 1,
                _ => break,
            }
        }
        Ok(factors)
    }
}

/// Parse an ideal and return it together with the generators that were
/// dropped by minimalization (in textual order).
pub fn parse_ideal_verbose(text: &str) -> Result<(MonomialIdeal, Vec<Monomial>)> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
        vars: Vec::new(),
        declared: false,
    };
    p.declaration()?;
    if p.peek().is_none() {
        return Err(Error::EmptyIdeal);
    }
    let mut raw = Vec::new();
    loop {
        raw.push(p.mono()?);
        match p.peek() {
            Some(Tok::Semi) => {
                p.at += 1;
                // tolerate a trailing separator
                if p.peek().is_none() {
                    break;
                }
            }
            None => break,
            Some(_) => return p.err("expected `*`, `;` or end of input"),
        }
    }

    let n = p.vars.len();
    let mut gens = Vec::with_capacity(raw.len());
    for factors in raw {
        let mut e = vec![0u32; n];
        for (idx, exp, pos) in factors {
            e[idx] = e[idx]
                .checked_add(exp)
                .ok_or(Error::ExponentOverflow { pos })?;
        }
        gens.push(Monomial::new(e));
    }
    let ideal = MonomialIdeal::new(p.vars, gens.clone())?;
    let dropped = removed_generators(&gens, ideal.gens());
    Ok((ideal, dropped))
}

fn removed_generators(all: &[Monomial], kept: &[Monomial]) -> Vec<Monomial> {
    let mut remaining: Vec<&Monomial> = kept.iter().collect();
    let mut dropped = Vec::new();
    for g in all {
        if let Some(pos) = remaining.iter().position(|k| *k == g) {
            remaining.remove(pos);
        } else {
            dropped.push(g.clone());
        }
    }
    dropped
}

/// Parse an ideal in the text grammar, minimalizing its generators.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    parse_ideal_verbose(text).map(|(ideal, _)| ideal)
}

/// `a^4*b*c` form; exponent 1 omitted, factors in variable order, `1` for
/// the constant monomial.
pub fn render_monomial(var_names: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(var_names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical printer. A `vars` declaration is emitted only when the
/// first-appearance order would not reproduce the stored variable list.
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    if ideal.is_zero() {
        return "0".to_string();
    }
    let body = ideal
        .gens()
        .iter()
        .map(|g| render_monomial(ideal.var_names(), g))
        .collect::<Vec<_>>()
        .join("; ");
    if first_appearance_order(ideal) == (0..ideal.nvars()).collect::<Vec<_>>() {
        body
    } else {
        format!("vars {}; {}", ideal.var_names().join(","), body)
    }
}

fn first_appearance_order(ideal: &MonomialIdeal) -> Vec<usize> {
    let mut order = Vec::new();
    for g in ideal.gens() {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 && !order.contains(&i) {
                order.push(i);
            }
        }
    }
    order
}
