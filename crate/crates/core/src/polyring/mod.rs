//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] is a map from [`Monomial`] to a nonzero [`Rational`]
//! coefficient, tagged with the [`Ring`] it lives in. The term map is kept
//! canonical (no zero coefficients), so structural equality is polynomial
//! equality.

mod gcd;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Variable context shared by every polynomial of one ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Arc<Ring>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidParameter(
                "a ring needs at least one variable".into(),
            ));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidParameter("empty variable name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate variable name `{a}`"
                )));
            }
        }
        Ok(Arc::new(Ring { names }))
    }

    /// Ring on `n` variables named `x, y, z` for `n <= 3`, else `x1..xn`.
    pub fn standard(n: usize) -> Result<Arc<Ring>> {
        match n {
            1 => Ring::new(["x"]),
            2 => Ring::new(["x", "y"]),
            3 => Ring::new(["x", "y", "z"]),
            _ => Ring::new((1..=n).map(|i| format!("x{i}"))),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector of a monomial. Its length is the variable count of the
/// ring it is used in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// `x_i^e` in a ring of `nvars` variables.
    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` if the monomial is a pure power `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, names }
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, &e) in self.names.iter().zip(self.mono.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded reverse-lexicographic comparison. Used as the global tie-break
/// order for normalization and printing.
pub fn cmp_grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| cmp_revlex_tail(a, b))
}

/// Reverse-lexicographic tie-break shared by the global and local degree
/// orders: the monomial with the smaller exponent in the last differing
/// variable is larger.
pub(crate) fn cmp_revlex_tail(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn variable(ring: &Arc<Ring>, i: usize) -> Result<Self> {
        if i >= ring.nvars() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: ring.nvars(),
            });
        }
        Ok(Polynomial::monomial(
            ring,
            Monomial::var(ring.nvars(), i, 1),
            Rational::one(),
        ))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        Polynomial::from_terms(ring, [(m, c)])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, combining
    /// repeated monomials and dropping zeros.
    ///
    /// Panics if a monomial has the wrong number of variables.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
            add_term(&mut map, m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub(crate) fn from_map(ring: &Arc<Ring>, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from integer-exponent/integer-coefficient pairs.
    pub fn from_int_terms(ring: &Arc<Ring>, terms: &[(&[u32], i64)]) -> Self {
        Polynomial::from_terms(
            ring,
            terms
                .iter()
                .map(|(e, c)| (Monomial::from_exponents(e), integer(*c))),
        )
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// Maximal total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Minimal total degree among the terms; infinite for zero.
    pub fn order_at_origin(&self) -> ExtNat {
        match self.terms.keys().map(Monomial::degree).min() {
            Some(d) => ExtNat::Finite(d as u64),
            None => ExtNat::Infinite,
        }
    }

    /// Largest term under graded reverse-lexicographic order.
    pub fn leading_term_grevlex(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| cmp_grevlex(a.0, b.0))
    }

    /// Scales so that the grevlex-largest coefficient is 1. Zero stays zero.
    pub fn normalized(&self) -> Polynomial {
        match self.leading_term_grevlex() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.leading_term_grevlex().is_none_or(|(_, c)| c.is_one())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial::from_map(&self.ring, terms))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), -c);
        }
        Ok(Polynomial::from_map(&self.ring, terms))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Polynomial::from_map(&self.ring, terms))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_map(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_map(
            &self.ring,
            self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            terms.insert(d, c * integer(e as i64));
        }
        Ok(Polynomial::from_map(&self.ring, terms))
    }

    /// All first partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Replaces each variable `x_i` by `components[i]` and expands.
    ///
    /// The result lives in the ring of the components.
    pub fn substitute(&self, components: &[Polynomial]) -> Result<Polynomial> {
        if components.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: components.len(),
            });
        }
        let target = components[0].ring.clone();
        for c in &components[1..] {
            components[0].check_ring(c)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = components
            .iter()
            .map(|c| vec![Polynomial::one(&target), c.clone()])
            .collect();
        let mut result = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &components[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            for (tm, tc) in term.terms {
                add_term(&mut result, tm, tc);
            }
        }
        Ok(Polynomial::from_map(&target, result))
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Same polynomial read in another ring with the same variable count.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.nvars() != self.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_map(ring, self.terms.clone()))
    }

    /// Applies a permutation of variables: variable `i` becomes `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = SmallVec::from_elem(0, self.nvars());
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_map(&self.ring, terms)
    }
}

pub(crate) fn add_term(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
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

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_map(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Prints terms in descending graded reverse-lexicographic order, e.g.
/// `3/2*x*y - y^3 + 1`. The output is accepted by the parser.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| cmp_grevlex(b.0, a.0));
        for (k, (m, c)) in sorted.into_iter().enumerate() {
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
                write!(f, "{}", m.display(self.ring.names()))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.ring.names()))?;
            }
        }
        Ok(())
    }
}
