use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::cmp_ds;
use crate::polyring::{Monomial, Polynomial, Rational, Ring};

/// Working representation for reductions: integer coefficients, terms
/// sorted descending under the local order, so the leading term is
/// `terms[0]`. Multiplying by a monomial keeps the order, which makes
/// subtraction a linear merge.
///
/// Reductions are fraction-free, so a `LocalPoly` stands for its rational
/// counterpart only up to a nonzero constant factor.
#[derive(Debug, Clone)]
pub(crate) struct LocalPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl LocalPoly {
    /// Clears denominators and divides out the content. Returns the
    /// polynomial and the factor `s` with `result = s * p`.
    pub(crate) fn from_poly_scaled(p: &Polynomial) -> (Self, Rational) {
        let denom = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<_> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom / c.denom())))
            .collect();
        terms.sort_by(|a, b| cmp_ds(&b.0, &a.0));
        let mut poly = LocalPoly { terms };
        let content = poly.make_primitive();
        (poly, Rational::new(denom, content))
    }

    pub(crate) fn from_poly(p: &Polynomial) -> Self {
        Self::from_poly_scaled(p).0
    }

    pub(crate) fn from_monomial(m: Monomial) -> Self {
        LocalPoly {
            terms: vec![(m, BigInt::one())],
        }
    }

    /// Bit size of the leading coefficient.
    pub(crate) fn lead_bits(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1.bits())
    }

    pub(crate) fn to_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        self.to_poly_scaled(ring, &Rational::one())
    }

    /// The rational polynomial `self / scale`.
    pub(crate) fn to_poly_scaled(&self, ring: &Arc<Ring>, scale: &Rational) -> Polynomial {
        let inv = scale.recip();
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from(c.clone()) * &inv)),
        )
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub(crate) fn lead_coeff(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub(crate) fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub(crate) fn ecart(&self) -> u32 {
        self.total_degree() - self.lead().degree()
    }

    /// Divides by the positive gcd of the coefficients and returns it.
    pub(crate) fn make_primitive(&mut self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.1);
            if g.is_one() {
                return g;
            }
        }
        if g.is_zero() {
            return BigInt::one();
        }
        for t in &mut self.terms {
            t.1 /= &g;
        }
        g
    }

    /// Primitive form with a positive leading coefficient.
    pub(crate) fn normalize(&mut self) {
        self.make_primitive();
        if !self.is_zero() && self.lead_coeff().is_negative() {
            for t in &mut self.terms {
                t.1 = -std::mem::take(&mut t.1);
            }
        }
    }

    /// Cancels the leading term of `self` against `mono * other`, whose
    /// leading monomial must coincide with it, and divides out the content:
    /// `self <- (a * self - b * mono * other) / c`. Returns `a / c`, the
    /// factor picked up by the part of `self` that survives.
    pub(crate) fn reduce_lead(&mut self, mono: &Monomial, other: &LocalPoly) -> Rational {
        let g = self.lead_coeff().gcd(other.lead_coeff());
        let a = other.lead_coeff() / &g;
        let b = self.lead_coeff() / &g;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut right = other.terms.iter().map(|(m, c)| (m.mul(mono), c)).peekable();
        loop {
            let ord = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => cmp_ds(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => {
                    let (m, c) = left.next().unwrap();
                    out.push((m, c * &a));
                }
                Ordering::Less => {
                    let (m, c) = right.next().unwrap();
                    out.push((m, -(c * &b)));
                }
                Ordering::Equal => {
                    let (m, x) = left.next().unwrap();
                    let (_, y) = right.next().unwrap();
                    let s = x * &a - y * &b;
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            }
        }
        self.terms = out;
        let content = self.make_primitive();
        Rational::new(a, content)
    }

    /// Reduction modulo `m^bound`: zero if the leading monomial already has
    /// degree `>= bound`, otherwise every term of degree `>= bound` is dropped.
    pub(crate) fn truncate(&mut self, bound: u32) {
        if self.is_zero() {
            return;
        }
        if self.lead().degree() >= bound {
            self.terms.clear();
        } else {
            self.terms.retain(|t| t.0.degree() < bound);
        }
    }

    /// Drops non-leading terms of degree `>= bound`, keeping the leading
    /// monomial in place.
    pub(crate) fn truncate_tail(&mut self, bound: u32) {
        if self.terms.len() <= 1 {
            return;
        }
        let lead = self.terms.remove(0);
        self.terms.retain(|t| t.0.degree() < bound);
        self.terms.insert(0, lead);
    }

    /// `mono * self`.
    pub(crate) fn shifted(&self, mono: &Monomial) -> Self {
        LocalPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }
}
