//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! the canonical print order: higher total degree first, then the sorted
//! variable words compared lexicographically. Zero coefficients and zero
//! exponents are never stored, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::{Poset, VarId, VarSet};

/// A product of variables; the empty product is the monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exponents: BTreeMap<VarId, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, exp: u32) -> Self {
        let mut m = Monomial::one();
        if exp > 0 {
            m.exponents.insert(v, exp);
        }
        m
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables accumulate and zero exponents are dropped.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            if e > 0 {
                *m.exponents.entry(v).or_insert(0) += e;
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exponents.values().map(|&e| e as u64).sum()
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        self.exponents.get(v).copied().unwrap_or(0)
    }

    /// Whether `v` occurs with positive exponent.
    pub fn contains(&self, v: &VarId) -> bool {
        self.exponents.contains_key(v)
    }

    /// Variables occurring in the monomial, in name order.
    pub fn vars(&self) -> impl Iterator<Item = &VarId> + '_ {
        self.exponents.keys()
    }

    pub fn powers(&self) -> impl Iterator<Item = (&VarId, u32)> + '_ {
        self.exponents.iter().map(|(v, &e)| (v, e))
    }

    /// `self / v`, if `v` divides `self`.
    pub fn div_var(&self, v: &VarId) -> Option<Monomial> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        if e == 1 {
            m.exponents.remove(v);
        } else {
            m.exponents.insert(v.clone(), e - 1);
        }
        Some(m)
    }

    fn word(&self) -> impl Iterator<Item = &VarId> + '_ {
        self.exponents
            .iter()
            .flat_map(|(v, &e)| iter::repeat_n(v, e as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (v, &e) in &rhs.exponents {
            *m.exponents.entry(v.clone()).or_insert(0) += e;
        }
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.exponents.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Total degree of a polynomial; the zero polynomial has degree `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `Z[X]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        Self::from_terms([(m, c.into())])
    }

    /// Sums the given terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    /// Monomials appearing with nonzero coefficient, in canonical order.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn appears(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn variables(&self) -> VarSet {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    /// Largest absolute coefficient, or zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// `m * self`. Multiplying by a monomial is injective on monomials, so no
    /// terms merge.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t * m, c.clone())).collect(),
        }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Errors with the first variable that is not a node of `poset`.
    pub fn check_variables(&self, poset: &Poset) -> Result<()> {
        match self.variables().into_iter().find(|v| !poset.contains(v)) {
            Some(v) => Err(Error::UnknownVariable(v)),
            None => Ok(()),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1 * m2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::one()
    }
}

/// Canonical text: terms in graded order, unit coefficients elided before
/// variables, `0` for the zero polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub fn format_poly(f: &Polynomial) -> String {
    f.to_string()
}

/// Parses `text` and checks that every variable is a node of `poset`.
pub fn parse_poly(text: &str, poset: &Poset) -> Result<Polynomial> {
    let p = text.parse::<Polynomial>()?;
    p.check_variables(poset)?;
    Ok(p)
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the polynomial grammar without restricting variable names to
    /// a poset.
    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// poly   := ['-'] term (('+'|'-') term)*
// term   := intlit ('*' factor)* | factor ('*' factor)*
// factor := varid ('^' posint)?
struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, col) = self.location(at);
        Error::syntax(line, col, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn describe(&self) -> String {
        match self.chars.get(self.pos) {
            Some(c) => format!("unexpected `{c}`"),
            None => "unexpected end of input".to_string(),
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        let mut negative = self.eat('-');
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.error_at(self.pos, self.describe()));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let (coeff, mut monomial) = match self.peek() {
            Some(c) if c.is_ascii_digit() => (self.intlit(), Monomial::one()),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => (BigInt::one(), self.factor()?),
            _ => return Err(self.error_at(self.pos, format!("{}, expected a term", self.describe()))),
        };
        while self.eat('*') {
            self.skip_ws();
            monomial = &monomial * &self.factor()?;
        }
        Ok((monomial, coeff))
    }

    fn intlit(&mut self) -> BigInt {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().expect("digit run parses as an integer")
    }

    fn factor(&mut self) -> Result<Monomial> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => {}
            _ => return Err(self.error_at(start, format!("{}, expected a variable", self.describe()))),
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let var = VarId::new(name)?;

        if !self.eat('^') {
            return Ok(Monomial::var(var));
        }
        self.skip_ws();
        let exp_start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if ('1'..='9').contains(c) => {}
            _ => {
                return Err(self.error_at(
                    exp_start,
                    format!("{}, exponent must be a positive integer", self.describe()),
                ))
            }
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[exp_start..self.pos].iter().collect();
        let exp: u32 = digits
            .parse()
            .map_err(|_| self.error_at(exp_start, format!("exponent `{digits}` too large")))?;
        Ok(Monomial::var_pow(var, exp))
    }
}
