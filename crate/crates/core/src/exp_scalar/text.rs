//! Text form of exponential sums.
//!
//! ```text
//! scalar   := "0" | term (" + " term)*
//! term     := "(" cyc ")" [" * exp(" exponent ")"]
//! exponent := "(" linform ")*theta" [" + (" linform ")*theta2"] | "(" linform ")*theta2"
//! ```
//!
//! Coefficients print as `a + b*zeta(L)^k`, linear forms as `m11+ + 2*m11-`.

use super::cyclotomic::Cyc;
use super::linform::{LinForm, Symbol};
use super::scalar::{ExpScalar, Exponent};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn render(x: &ExpScalar) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = x.terms().iter().map(|(e, c)| render_term(e, c)).collect();
    parts.join(" + ")
}

fn render_term(e: &Exponent, c: &Cyc) -> String {
    let coeff = format!("({})", c);
    let mut exps = Vec::new();
    if !e.theta.is_zero() {
        exps.push(format!("({})*theta", e.theta));
    }
    if !e.theta2.is_zero() {
        exps.push(format!("({})*theta2", e.theta2));
    }
    if exps.is_empty() {
        coeff
    } else {
        format!("{} * exp({})", coeff, exps.join(" + "))
    }
}

pub fn parse(s: &str) -> Option<ExpScalar> {
    let mut p = Parser::new(s)?;
    let v = p.scalar()?;
    p.done().then_some(v)
}

pub fn parse_linform(s: &str) -> Option<LinForm> {
    let mut p = Parser::new(s)?;
    let v = p.linform()?;
    p.done().then_some(v)
}

pub fn parse_cyc(s: &str) -> Option<Cyc> {
    let mut p = Parser::new(s)?;
    let v = p.cyc()?;
    p.done().then_some(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Option<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' => i += 1,
            b'+' => {
                out.push(Tok::Plus);
                i += 1
            }
            b'-' => {
                out.push(Tok::Minus);
                i += 1
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1
            }
            b'/' => {
                out.push(Tok::Slash);
                i += 1
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1
            }
            b'(' => {
                out.push(Tok::LParen);
                i += 1
            }
            b')' => {
                out.push(Tok::RParen);
                i += 1
            }
            b'0'..=b'9' => {
                let st = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Int(s[st..i].parse().ok()?));
            }
            b'a'..=b'z' => {
                let st = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                // parameter names end in their sign: m12+, m3_10-
                if b[st] == b'm' && i > st + 1 && b[st + 1].is_ascii_digit() {
                    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
                        i += 1;
                    } else {
                        return None;
                    }
                }
                out.push(Tok::Ident(s[st..i].to_string()));
            }
            _ => return None,
        }
    }
    Some(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn new(s: &str) -> Option<Self> {
        Some(Parser { toks: lex(s)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Option<()> {
        self.eat(t).then_some(())
    }

    fn done(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn ident(&mut self) -> Option<String> {
        match self.peek()? {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        match self.peek()? {
            Tok::Int(n) => {
                let n = n.clone();
                self.pos += 1;
                Some(n)
            }
            _ => None,
        }
    }

    fn rational(&mut self) -> Option<BigRational> {
        let n = self.int()?;
        if self.eat(&Tok::Slash) {
            let d = self.int()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        } else {
            Some(BigRational::from_integer(n))
        }
    }

    /// Optional leading sign followed by items joined by `+`/`-`.
    fn signed_sum<T>(&mut self, mut item: impl FnMut(&mut Self) -> Option<T>, neg: impl Fn(T) -> T) -> Option<Vec<T>> {
        let mut out = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let v = item(self)?;
            out.push(if negative { neg(v) } else { v });
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                return Some(out);
            }
        }
    }

    fn cyc(&mut self) -> Option<Cyc> {
        let parts = self.signed_sum(Self::cyc_term, |c| c.neg_ref())?;
        Some(parts.iter().fold(Cyc::zero(), |a, c| a.add_ref(c)))
    }

    fn zeta(&mut self) -> Option<Cyc> {
        if self.ident()? != "zeta" {
            return None;
        }
        self.expect(&Tok::LParen)?;
        let order: u32 = self.int()?.try_into().ok()?;
        self.expect(&Tok::RParen)?;
        if order == 0 {
            return None;
        }
        let k: i64 = if self.eat(&Tok::Caret) { self.int()?.try_into().ok()? } else { 1 };
        Some(Cyc::zeta_pow(order, k))
    }

    fn cyc_term(&mut self) -> Option<Cyc> {
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            return self.zeta();
        }
        let r = self.rational()?;
        if self.eat(&Tok::Star) {
            Some(self.zeta()?.scale(&r))
        } else {
            Some(Cyc::from_rational(r))
        }
    }

    fn linform(&mut self) -> Option<LinForm> {
        let parts = self.signed_sum(Self::lin_term, |f| f.neg())?;
        Some(parts.iter().fold(LinForm::zero(), |a, f| a.add(f)))
    }

    fn lin_term(&mut self) -> Option<LinForm> {
        if let Some(Tok::Ident(_)) = self.peek() {
            let name = self.ident()?;
            return Some(LinForm::symbol(Symbol::parse(&name)?));
        }
        let r = self.rational()?;
        if self.eat(&Tok::Star) {
            let name = self.ident()?;
            Some(LinForm::term(Symbol::parse(&name)?, r))
        } else {
            Some(LinForm::constant(r))
        }
    }

    fn scalar(&mut self) -> Option<ExpScalar> {
        if self.peek() == Some(&Tok::Int(BigInt::from(0))) && self.toks.len() == 1 {
            self.pos += 1;
            return Some(ExpScalar::zero());
        }
        let mut acc = ExpScalar::zero();
        loop {
            acc.add_assign_ref(&self.term()?);
            if !self.eat(&Tok::Plus) {
                return Some(acc);
            }
        }
    }

    fn term(&mut self) -> Option<ExpScalar> {
        self.expect(&Tok::LParen)?;
        let c = self.cyc()?;
        self.expect(&Tok::RParen)?;
        let mut e = Exponent::zero();
        if self.peek() == Some(&Tok::Star) && self.peek_at(1) == Some(&Tok::Ident("exp".into())) {
            self.pos += 2;
            self.expect(&Tok::LParen)?;
            loop {
                self.expect(&Tok::LParen)?;
                let f = self.linform()?;
                self.expect(&Tok::RParen)?;
                self.expect(&Tok::Star)?;
                match self.ident()?.as_str() {
                    "theta" => e.theta = e.theta.add(&f),
                    "theta2" => e.theta2 = e.theta2.add(&f),
                    _ => return None,
                }
                if !self.eat(&Tok::Plus) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Some(ExpScalar::term(c, e))
    }
}
