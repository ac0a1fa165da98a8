//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a list of `(monomial, coefficient)` pairs kept strictly
//! descending under the monomial order of its [`Ring`]. Zero coefficients are
//! never stored, so two equal polynomials always have identical term lists.

mod gcd;
mod monomial;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gcd::{exact_div, gcd, squarefree_part, squarefree_pieces};
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{parse_expr, parse_polynomial, Expr, Func};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Ordered, duplicate-free list of variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                max: MAX_VARS,
                got: names.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidVariable(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarTable { names })
    }

    /// `prefix1 .. prefixn`
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    DegRevLex,
    Lex,
    DegLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::DegRevLex => "degrevlex",
            OrderKind::Lex => "lex",
            OrderKind::DegLex => "deglex",
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "degrevlex" | "grevlex" => Ok(OrderKind::DegRevLex),
            "lex" => Ok(OrderKind::Lex),
            "deglex" | "grlex" => Ok(OrderKind::DegLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

/// A monomial order: a kind plus an optional ranking of the variables.
///
/// `ranking[0]` is the most significant variable; without a ranking the
/// table order is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            ranking: None,
        }
    }

    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut sorted = ranking.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().enumerate().all(|(i, &v)| i == v),
            "variable ranking must be a permutation"
        );
        MonomialOrder {
            kind,
            ranking: Some(ranking),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex(a, b, nvars),
            OrderKind::DegLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.lex(a, b, nvars)),
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for k in (0..nvars).rev() {
                    let v = self.var_at(k);
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    #[inline]
    fn var_at(&self, k: usize) -> usize {
        match &self.ranking {
            Some(r) => r[k],
            None => k,
        }
    }

    fn lex(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        for k in 0..nvars {
            let v = self.var_at(k);
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::new(OrderKind::DegRevLex)
    }
}

#[derive(Debug)]
struct RingData {
    vars: VarTable,
    order: MonomialOrder,
}

/// Variable table plus monomial order, shared by every polynomial built over it.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars && self.0.order == other.0.order)
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(vars: VarTable, order: MonomialOrder) -> Self {
        Ring(Arc::new(RingData { vars, order }))
    }

    /// Ring over the given names with degrevlex order.
    pub fn with_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Ok(Ring::new(VarTable::new(names)?, MonomialOrder::default()))
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &VarTable {
        &self.0.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring::new(self.0.vars.clone(), order)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.compare(a, b, self.0.vars.len())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self, Rational::one())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self, i)
    }

    /// Parses a polynomial in this ring.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(self, text)
    }
}

pub type Term = (Monomial, Rational);

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        Self::term(ring, Monomial::var(i), Rational::one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (unsorted, possibly
    /// repeated) terms.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusts that `terms` is already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Single term (or zero).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0.exponent(v) > 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &Rational::one()))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &-Rational::one()))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * other`
    fn add_scaled(&self, other: &Polynomial, c: &Rational) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ring.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, &b[j].1 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1 * c;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, k)| (*m, k * c)));
        Polynomial::from_sorted(&self.ring, out)
    }

    /// `self - c * m * other`, the reduction step of division algorithms.
    pub fn sub_mul_term(&self, c: &Rational, m: &Monomial, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match self.ring.compare(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, -(&b[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 - &b[j].1 * c;
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(bm, k)| (bm.mul(m), -(k * c))));
        Polynomial::from_sorted(&self.ring, out)
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(c, m);
        }
        let mut acc: Vec<Term> = Vec::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                acc.push((m1.mul(m2), c1 * c2));
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// `c * m * self`; multiplication by a term preserves the term order.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `v`.
    ///
    /// Panics if `v` is not a variable of the ring.
    pub fn partial_derivative(&self, v: usize) -> Polynomial {
        assert!(v < self.ring.nvars(), "variable index {v} out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(v) > 0)
            .map(|(m, c)| {
                let e = m.exponent(v);
                (m.lower(v), c * Rational::from_integer(BigInt::from(e)))
            })
            .collect();
        // dividing by x_v preserves any monomial order
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::PointLength {
                expected: self.ring.nvars(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes the given values for some variables and keeps the others.
    pub fn evaluate_partial(&self, values: &[Option<Rational>]) -> Polynomial {
        assert_eq!(values.len(), self.ring.nvars());
        let mut acc = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps: Vec<u32> = m.exponents(self.ring.nvars()).iter().map(|&e| e as u32).collect();
            for (i, val) in values.iter().enumerate() {
                if let Some(x) = val {
                    if exps[i] > 0 {
                        coeff *= num_traits::pow(x.clone(), exps[i] as usize);
                        exps[i] = 0;
                    }
                }
            }
            acc.push((Monomial::from_exponents(&exps), coeff));
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// Replaces every variable `i` by `images[i]` (all over `target`).
    pub fn compose(&self, target: &Ring, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut total = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Moves the polynomial to another ring over the same variables
    /// (typically a different order).
    pub fn with_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(ring, self.terms.clone()))
    }

    /// Maps variable `i` of this ring to variable `map[i]` of `ring`.
    pub fn rename_vars(&self, ring: &Ring, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        let n = self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; ring.nvars()];
                for i in 0..n {
                    exps[map[i]] += m.exponent(i);
                }
                (Monomial::from_exponents(&exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let k = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&k);
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m, _)) => it.fold(*m, |acc, (t, _)| acc.gcd(t)),
        }
    }

    /// Divides every term by `m`; `m` must divide each of them.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (t.div(m).expect("monomial does not divide term"), c.clone()))
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Rendering with explicit variable names, independent of the ring's table.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(names);
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&abs.to_string());
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.ring.vars().names()))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                assert!(self.ring == rhs.ring, "polynomials over different rings");
                $body(self, rhs)
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial, b: &Polynomial| a
    .add_scaled(b, &Rational::one()));
binop!(Sub, sub, |a: &Polynomial, b: &Polynomial| a
    .add_scaled(b, &-Rational::one()));
binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.mul_unchecked(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
