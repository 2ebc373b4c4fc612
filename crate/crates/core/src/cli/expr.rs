//! Prefix-notation text form of [`DiskFunction`].
//!
//! ```text
//! expr := poly c0 c1 ...
//!       | mobius a b c d                  (a + bz)/(c + dz)
//!       | blaschke c a1 a2 ...            c · Π (a_k − z)/(1 − conj(a_k) z)
//!       | compose ( expr ) ( expr )       outer first, then inner
//!       | scale rho ( expr )              z ↦ inner(ρz)
//! ```
//!
//! Numbers are complex literals as accepted by [`parse_complex`]; `rho` is real.

use thiserror::Error;

use crate::blaschke::BlaschkeProduct;
use crate::calculus::DiskFunction;
use crate::cli::matrix_file::{format_complex, parse_complex};

#[derive(Debug, Error, Clone, PartialEq)]
#[error("function expression, token {position}: {message}")]
pub struct ExprError {
    /// 1-based token index.
    pub position: usize,
    pub message: String,
}

struct Tokens {
    items: Vec<String>,
    pos: usize,
}

impl Tokens {
    fn new(text: &str) -> Self {
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        Self { items: spaced.split_whitespace().map(str::to_owned).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<&str> {
        self.items.get(self.pos).map(String::as_str)
    }

    fn next(&mut self) -> Option<String> {
        let tok = self.items.get(self.pos).cloned();
        self.pos += 1;
        tok
    }

    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError { position: self.pos.max(1), message: message.into() }
    }

    fn expect(&mut self, want: &str) -> Result<(), ExprError> {
        match self.next() {
            Some(ref tok) if tok == want => Ok(()),
            Some(tok) => Err(self.error(format!("expected `{want}`, found `{tok}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<num_complex::Complex64, ExprError> {
        let tok = self.next().ok_or_else(|| self.error("expected a number, found end of input"))?;
        parse_complex(&tok).map_err(|m| self.error(m))
    }

    /// Numbers up to the next `)` or the end of input.
    fn numbers(&mut self) -> Result<Vec<num_complex::Complex64>, ExprError> {
        let mut out = Vec::new();
        while let Some(tok) = self.peek() {
            if tok == ")" {
                break;
            }
            out.push(self.number()?);
        }
        Ok(out)
    }
}

pub fn parse_function(text: &str) -> Result<DiskFunction, ExprError> {
    let mut tokens = Tokens::new(text);
    let f = parse_node(&mut tokens, 0)?;
    if let Some(extra) = tokens.peek() {
        return Err(ExprError { position: tokens.pos + 1, message: format!("unexpected trailing `{extra}`") });
    }
    f.validate().map_err(|e| tokens.error(e.to_string()))?;
    Ok(f)
}

fn parse_node(tokens: &mut Tokens, depth: usize) -> Result<DiskFunction, ExprError> {
    if depth > 64 {
        return Err(tokens.error("expression nested too deeply"));
    }
    let head = tokens.next().ok_or_else(|| tokens.error("expected a function, found end of input"))?;
    match head.as_str() {
        "poly" => {
            let coefficients = tokens.numbers()?;
            DiskFunction::polynomial(coefficients).map_err(|e| tokens.error(e.to_string()))
        }
        "mobius" => {
            let (a, b, c, d) = (tokens.number()?, tokens.number()?, tokens.number()?, tokens.number()?);
            DiskFunction::mobius(a, b, c, d).map_err(|e| tokens.error(e.to_string()))
        }
        "blaschke" => {
            let constant = tokens.number()?;
            let zeros = tokens.numbers()?;
            BlaschkeProduct::new(constant, zeros)
                .map(DiskFunction::Blaschke)
                .map_err(|e| tokens.error(e.to_string()))
        }
        "compose" => {
            tokens.expect("(")?;
            let outer = parse_node(tokens, depth + 1)?;
            tokens.expect(")")?;
            tokens.expect("(")?;
            let inner = parse_node(tokens, depth + 1)?;
            tokens.expect(")")?;
            Ok(DiskFunction::compose(outer, inner))
        }
        "scale" => {
            let rho = tokens.number()?;
            if rho.im != 0.0 {
                return Err(tokens.error("dilation factor must be real"));
            }
            tokens.expect("(")?;
            let inner = parse_node(tokens, depth + 1)?;
            tokens.expect(")")?;
            DiskFunction::scale(rho.re, inner).map_err(|e| tokens.error(e.to_string()))
        }
        other => Err(tokens.error(format!("unknown function `{other}`"))),
    }
}

pub fn format_function(f: &DiskFunction) -> String {
    let join = |zs: &mut dyn Iterator<Item = num_complex::Complex64>| {
        zs.map(format_complex).collect::<Vec<_>>().join(" ")
    };
    match f {
        DiskFunction::Polynomial(c) => format!("poly {}", join(&mut c.iter().copied())),
        DiskFunction::Mobius { a, b, c, d } => format!("mobius {}", join(&mut [*a, *b, *c, *d].into_iter())),
        DiskFunction::Blaschke(b) => format!(
            "blaschke {}",
            join(&mut std::iter::once(b.constant()).chain(b.zeros().iter().copied()))
        ),
        DiskFunction::Compose { outer, inner } => {
            format!("compose ( {} ) ( {} )", format_function(outer), format_function(inner))
        }
        DiskFunction::Scale { rho, inner } => format!("scale {:?} ( {} )", rho, format_function(inner)),
    }
}
