//! Polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ('/' integer)? | name | '(' expr ')'
//! ```
//!
//! Names must be ring variables; in domains containing Q(w) the name `w`
//! denotes the cube root of unity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::Coeff;
use super::ring::{PolyRing, SparsePoly};
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Name(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse {
                position: i,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = SparsePoly::zero(self.ring);
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .or_else(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            q /= BigRational::from_integer(d);
                        }
                        _ => return self.err("expected nonzero integer denominator"),
                    }
                }
                Ok(SparsePoly::rational(self.ring, q))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if let Ok(i) = self.ring.index_of(&name) {
                    Ok(SparsePoly::var_index(self.ring, i))
                } else if name == "w" && self.ring.domain().allows_w() {
                    Ok(SparsePoly::constant(self.ring, Coeff::w()))
                } else {
                    self.pos -= 1;
                    self.err(format!("undeclared name {name:?}"))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a polynomial of `ring`. Error positions are character
/// offsets into `text`.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<SparsePoly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}


/// Parses `text` where, besides the ring variables, the names in `defs` may
/// be used and stand for the given polynomials of `ring`.
pub fn parse_with_definitions(
    text: &str,
    ring: &Arc<PolyRing>,
    defs: &[(String, SparsePoly)],
) -> Result<SparsePoly, PolyError> {
    if defs.is_empty() {
        return parse_poly(text, ring);
    }
    let mut vars = ring.variables().to_vec();
    vars.extend(defs.iter().map(|(n, _)| n.clone()));
    let extended = PolyRing::new(vars, ring.domain().clone())?;
    let f = parse_poly(text, &extended)?;
    let assignment: Vec<(&str, SparsePoly)> = defs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    f.substitute(&assignment, ring)
}
