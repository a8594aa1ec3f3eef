//! Text syntax for elements.
//!
//! ```text
//! element  := "Omega" | "0" | term ("+" term)*
//! term     := "1" | "{" coeff "}" ["•" word] | word
//! coeff    := mono ("+" mono)*
//! mono     := "1" | item ("*" item)*
//! item     := ("U" | factor) ["^" n]
//! word     := factor ("*" factor)*
//! factor   := "M[" mu ";(" label ("," label)* ")" [";w" | ";nw=" n] "](" slot ("," slot)* ")"
//! slot     := ".v" | "." id | "^" id | "<" id | ">" id
//! ```
//!
//! Slot `j` of a factor sits at vertex `n - j` of the word as written. `.v`
//! is a flow-in, `.x` a pointing, `^x` a flow-out, and `<x`, `>x` are the
//! linked flow-in and flow-out left behind by a product. The printer emits
//! canonical rotations, so printing and reparsing is the identity on
//! normalized elements.

use crate::error::{Error, Result};
use crate::types::{Deco, Filtration, Label, Point, PreGenerator};

use super::{Coeff, Element, Monomial, Word};

/// A parsed monomial: raw atoms and the power of `U`.
pub type RawMonomial = (Vec<PreGenerator>, u32);
/// A parsed term: coefficient monomials and the word.
pub type RawTerm = (Vec<RawMonomial>, Word);

/// Reserved point id for flow-in slots.
pub const FLOW_IN: &str = "v";

fn slot_text(d: &Deco) -> String {
    match d {
        Deco::FlowIn => format!(".{FLOW_IN}"),
        Deco::Pointed(p) => format!(".{p}"),
        Deco::FlowOut(p) => format!("^{p}"),
        Deco::LinkedIn(p) => format!("<{p}"),
        Deco::LinkedOut(p) => format!(">{p}"),
    }
}

/// Prints one pre-generator.
pub fn show_factor(g: &PreGenerator) -> String {
    let slots: Vec<String> = g.slots().into_iter().map(slot_text).collect();
    format!("M[{}]({})", g.space(), slots.join(","))
}

fn show_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.atoms.len() {
        let mut k = 1;
        while i + k < m.atoms.len() && m.atoms[i + k] == m.atoms[i] {
            k += 1;
        }
        let a = show_factor(&m.atoms[i]);
        parts.push(if k == 1 { a } else { format!("{a}^{k}") });
        i += k;
    }
    match m.u {
        0 => {}
        1 => parts.push("U".into()),
        k => parts.push(format!("U^{k}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Prints a coefficient as a sum of monomials.
pub fn show_coeff(c: &Coeff) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.monomials().map(show_monomial).collect::<Vec<_>>().join(" + ")
}

/// Prints an element.
pub fn show_element(x: &Element) -> String {
    if x.is_omega() {
        return "Omega".into();
    }
    if x.is_zero() {
        return "0".into();
    }
    x.terms()
        .map(|(w, c)| {
            let word = w.iter().map(show_factor).collect::<Vec<_>>().join(" * ");
            match (w.is_empty(), c.is_one()) {
                (true, true) => "1".into(),
                (true, false) => format!("{{{}}}", show_coeff(c)),
                (false, true) => word,
                (false, false) => format!("{{{}}}•{word}", show_coeff(c)),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses an element without applying any relation. `None` is `Omega`.
pub fn parse(text: &str) -> Result<Option<Vec<RawTerm>>> {
    let mut p = Parser {
        s: text.chars().collect(),
        i: 0,
    };
    p.ws();
    if p.eat_str("Omega") {
        p.end()?;
        return Ok(None);
    }
    let mut terms = Vec::new();
    loop {
        p.ws();
        if let Some(t) = p.term()? {
            terms.push(t);
        }
        p.ws();
        if !p.eat('+') {
            break;
        }
    }
    p.end()?;
    Ok(Some(terms))
}

/// Parses a single pre-generator.
pub fn parse_factor(text: &str) -> Result<PreGenerator> {
    let mut p = Parser {
        s: text.chars().collect(),
        i: 0,
    };
    p.ws();
    let g = p.factor()?;
    p.end()?;
    Ok(g)
}

struct Parser {
    s: Vec<char>,
    i: usize,
}

impl Parser {
    fn err<T>(&self, msg: &str) -> Result<T> {
        let rest: String = self.s[self.i..].iter().take(20).collect();
        Err(Error::Parse(format!("{msg} at offset {} near {rest:?}", self.i)))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, t: &str) -> bool {
        let n = t.chars().count();
        if self.s.len() >= self.i + n && self.s[self.i..self.i + n].iter().copied().eq(t.chars()) {
            self.i += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.ws();
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected {c:?}"))
        }
    }

    fn end(&mut self) -> Result<()> {
        self.ws();
        if self.i == self.s.len() {
            Ok(())
        } else {
            self.err("unexpected input")
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.ws();
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected a number");
        }
        let t: String = self.s[start..self.i].iter().collect();
        t.parse().map_err(|_| Error::Parse(format!("number {t} out of range")))
    }

    fn ident(&mut self, ok: impl Fn(char) -> bool) -> Result<String> {
        self.ws();
        let start = self.i;
        while self.peek().is_some_and(&ok) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an identifier");
        }
        Ok(self.s[start..self.i].iter().collect())
    }

    /// A term, or `None` for the literal `0`.
    fn term(&mut self) -> Result<Option<RawTerm>> {
        match self.peek() {
            Some('0') => {
                self.i += 1;
                Ok(None)
            }
            Some('1') => {
                self.i += 1;
                Ok(Some((vec![(Vec::new(), 0)], Vec::new())))
            }
            Some('{') => {
                self.i += 1;
                let c = self.coeff()?;
                self.expect('}')?;
                self.ws();
                let w = if self.eat('•') { self.word()? } else { Vec::new() };
                Ok(Some((c, w)))
            }
            _ => Ok(Some((vec![(Vec::new(), 0)], self.word()?))),
        }
    }

    fn coeff(&mut self) -> Result<Vec<RawMonomial>> {
        let mut out = vec![self.monomial()?];
        loop {
            self.ws();
            if !self.eat('+') {
                return Ok(out);
            }
            out.push(self.monomial()?);
        }
    }

    fn monomial(&mut self) -> Result<RawMonomial> {
        self.ws();
        if self.eat('1') {
            return Ok((Vec::new(), 0));
        }
        let mut atoms = Vec::new();
        let mut u = 0;
        loop {
            self.ws();
            if self.eat('U') {
                u += self.exponent()?;
            } else {
                let g = self.factor()?;
                let k = self.exponent()?;
                atoms.extend(std::iter::repeat(g).take(k as usize));
            }
            self.ws();
            if !self.eat('*') {
                return Ok((atoms, u));
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        self.ws();
        if self.eat('^') {
            self.number()
        } else {
            Ok(1)
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = vec![self.factor()?];
        loop {
            self.ws();
            if !self.eat('*') {
                return Ok(w);
            }
            w.push(self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<PreGenerator> {
        self.ws();
        if !self.eat_str("M[") {
            return self.err("expected a factor M[...]");
        }
        let mu = self.number()?;
        self.expect(';')?;
        self.expect('(')?;
        let mut labels = Vec::new();
        loop {
            let l = self.ident(|c| c.is_alphanumeric() || c == '_' || c == '\'')?;
            labels.push(Label::new(&l)?);
            self.ws();
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        self.ws();
        let filtration = if self.eat(';') {
            self.ws();
            if self.eat_str("nw=") {
                Filtration::Nw(self.number()?)
            } else if self.eat('w') {
                Filtration::WFiltered
            } else {
                return self.err("expected ;w or ;nw=");
            }
        } else {
            Filtration::Unfiltered
        };
        self.expect(']')?;
        self.expect('(')?;
        let n = labels.len();
        let mut slots = Vec::new();
        loop {
            self.ws();
            let j = slots.len();
            if j >= n {
                return self.err("too many slots");
            }
            let raw = n - 1 - j;
            let (a, b) = (labels[raw].clone(), labels[(raw + 1) % n].clone());
            let kind = match self.peek() {
                Some(c @ ('.' | '^' | '<' | '>')) => c,
                _ => return self.err("expected a slot"),
            };
            self.i += 1;
            let id = self.ident(|c| !c.is_whitespace() && !",()[];{}+*^.<>•".contains(c))?;
            let d = if kind == '.' && id == FLOW_IN {
                Deco::FlowIn
            } else {
                let p = Point::new(&id, a, b)?;
                match kind {
                    '.' => Deco::Pointed(p),
                    '^' => Deco::FlowOut(p),
                    '<' => Deco::LinkedIn(p),
                    _ => Deco::LinkedOut(p),
                }
            };
            slots.push(d);
            self.ws();
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        PreGenerator::from_slots(&labels, mu, filtration, slots)
    }
}
