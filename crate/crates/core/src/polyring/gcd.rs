//! Exact division, multivariate gcd and squarefree parts over the rationals.
//!
//! The gcd is recursive: a polynomial is viewed as univariate in its
//! highest-index variable with coefficients in the remaining variables,
//! contents are split off recursively, and the primitive parts are handled
//! with a subresultant pseudo-remainder sequence.

use std::collections::BTreeMap;

use super::{add_term, Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

/// Dense univariate view: `coeffs[k]` is the coefficient of `v^k`, trimmed
/// so the last entry is nonzero.
struct Univariate {
    var: usize,
    coeffs: Vec<Polynomial>,
}

impl Univariate {
    fn split(p: &Polynomial, var: usize) -> Self {
        let deg = p.degree_in(var) as usize;
        let mut maps: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in p.terms() {
            let k = m.exponents()[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            maps[k].insert(rest, c.clone());
        }
        let coeffs = maps
            .into_iter()
            .map(|t| Polynomial::from_map(p.ring(), t))
            .collect();
        let mut u = Univariate { var, coeffs };
        u.trim();
        u
    }

    fn join(&self, template: &Polynomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (m, v) in c.terms() {
                let mut mm = m.clone();
                mm.0[self.var] += k as u32;
                terms.insert(mm, v.clone());
            }
        }
        Polynomial::from_map(template.ring(), terms)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Polynomial::is_zero) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &Polynomial {
        self.coeffs.last().expect("nonzero univariate")
    }

    fn content(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.lead().ring());
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            acc = gcd_inner(&acc, c);
            if acc.is_constant() {
                break;
            }
        }
        acc
    }

    fn divide_coeffs(&self, d: &Polynomial) -> Univariate {
        Univariate {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| divide_exact_inner(c, d).expect("exact coefficient division"))
                .collect(),
        }
    }

    fn primitive_part(&self) -> Univariate {
        let c = self.content();
        if c.is_constant() {
            Univariate {
                var: self.var,
                coeffs: self.coeffs.clone(),
            }
        } else {
            self.divide_coeffs(&c)
        }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Univariate) -> Univariate {
        let db = b.degree();
        let lb = b.lead().clone();
        let mut r = Univariate {
            var: self.var,
            coeffs: self.coeffs.clone(),
        };
        let mut e = self.degree() + 1 - db;
        while !r.is_zero() && r.degree() >= db {
            let lr = r.lead().clone();
            let shift = r.degree() - db;
            for c in r.coeffs.iter_mut() {
                *c = &*c * &lb;
            }
            for (k, bc) in b.coeffs.iter().enumerate() {
                let t = &lr * bc;
                r.coeffs[k + shift] = &r.coeffs[k + shift] - &t;
            }
            r.trim();
            e -= 1;
        }
        if e > 0 && !r.is_zero() {
            let f = lb.pow(e as u32);
            for c in r.coeffs.iter_mut() {
                *c = &*c * &f;
            }
        }
        r
    }
}

/// Exact quotient `p / q`, or `NotDivisible`.
pub(super) fn divide_exact_inner(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    p.check_ring(q)?;
    if q.is_constant() {
        return Ok(p.scale(&q.constant_term().recip()));
    }
    // Lex order: the map's largest key leads.
    let (qm, qc) = q.terms.iter().next_back().expect("q nonzero");
    let qinv = qc.recip();
    let mut rem = p.terms.clone();
    let mut quot = BTreeMap::new();
    while let Some((m, c)) = rem.iter().next_back() {
        let Some(tm) = m.div(qm) else {
            return Err(Error::NotDivisible);
        };
        let tc = c * &qinv;
        for (m2, c2) in &q.terms {
            add_term(&mut rem, m2.mul(&tm), -(c2 * &tc));
        }
        quot.insert(tm, tc);
    }
    Ok(Polynomial::from_map(p.ring(), quot))
}

fn main_variable(p: &Polynomial, q: &Polynomial) -> Option<usize> {
    (0..p.nvars())
        .rev()
        .find(|&i| p.degree_in(i) > 0 || q.degree_in(i) > 0)
}

/// Unnormalized gcd; the constant factor is arbitrary.
fn gcd_inner(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(p.ring());
    }
    let v = main_variable(p, q).expect("non-constant input");
    if p.degree_in(v) == 0 {
        return gcd_inner(p, &Univariate::split(q, v).content());
    }
    if q.degree_in(v) == 0 {
        return gcd_inner(&Univariate::split(p, v).content(), q);
    }
    let up = Univariate::split(p, v);
    let uq = Univariate::split(q, v);
    let cp = up.content();
    let cq = uq.content();
    let content = gcd_inner(&cp, &cq);
    let (mut a, mut b) = (up.divide_coeffs(&cp), uq.divide_coeffs(&cq));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    if coprime_by_specialization(&a, &b) {
        return content;
    }
    let prim = subresultant_gcd(a, b);
    let g = prim.join(p);
    if content.is_constant() {
        g
    } else {
        &g * &content
    }
}

/// Sufficient test that `a` and `b` share no factor involving the main
/// variable: the other variables are set to small integers keeping both
/// leading coefficients nonzero, and the univariate images are coprime.
fn coprime_by_specialization(a: &Univariate, b: &Univariate) -> bool {
    const POINTS: [i64; 5] = [1, -1, 2, -2, 3];
    let ring = a.lead().ring().clone();
    let n = ring.nvars();
    if a.coeffs.iter().chain(&b.coeffs).all(Polynomial::is_constant) {
        return false;
    }
    let image = |u: &Univariate, point: &[Rational]| -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(u.coeffs.len());
        for (k, c) in u.coeffs.iter().enumerate() {
            let v = c.evaluate(point).ok()?;
            terms.push((Monomial::var(n, u.var, k as u32), v));
        }
        Some(Polynomial::from_terms(&ring, terms))
    };
    for shift in 0..POINTS.len() {
        let point: Vec<Rational> = (0..n)
            .map(|j| Rational::from_integer(POINTS[(shift + j) % POINTS.len()].into()))
            .collect();
        let (Some(ia), Some(ib)) = (image(a, &point), image(b, &point)) else {
            return false;
        };
        if ia.degree_in(a.var) as usize != a.degree() || ib.degree_in(b.var) as usize != b.degree() {
            continue;
        }
        return gcd_inner(&ia, &ib).is_constant();
    }
    false
}

/// Gcd of two primitive polynomials in the same main variable.
fn subresultant_gcd(mut a: Univariate, mut b: Univariate) -> Univariate {
    let ring = a.lead().ring().clone();
    let mut g = Polynomial::one(&ring);
    let mut h = Polynomial::one(&ring);
    loop {
        let delta = a.degree() - b.degree();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive_part();
        }
        if r.degree() == 0 {
            return Univariate {
                var: a.var,
                coeffs: vec![Polynomial::one(&ring)],
            };
        }
        a = b;
        let divisor = &g * &h.pow(delta as u32);
        b = r.divide_coeffs(&divisor);
        g = a.lead().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => divide_exact_inner(&g.pow(d as u32), &h.pow(d as u32 - 1))
                .expect("subresultant division is exact"),
        };
    }
}

impl Polynomial {
    /// Exact quotient: returns `s` with `q * s == self`.
    pub fn divide_exact(&self, q: &Polynomial) -> Result<Polynomial> {
        divide_exact_inner(self, q)
    }

    /// Normalized greatest common divisor; `gcd(p, 0)` is `p` normalized.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(gcd_inner(self, other).normalized())
    }

    /// Sufficient test for squarefreeness by specialization.
    ///
    /// For each variable `x_i` occurring in `self`, the other variables are
    /// set to small integers that keep the degree in `x_i`. A repeated factor
    /// involving `x_i` would survive as a repeated factor of that univariate
    /// image, so a squarefree image for every `x_i` proves the claim. A
    /// `false` answer is inconclusive.
    fn squarefree_by_specialization(&self) -> bool {
        const POINTS: [i64; 4] = [1, -1, 2, 3];
        let ring = self.ring();
        let n = self.nvars();
        for i in 0..n {
            let deg = self.degree_in(i);
            if deg == 0 {
                continue;
            }
            let mut proven = false;
            for shift in 0..POINTS.len() {
                let subs: Vec<Polynomial> = (0..n)
                    .map(|j| {
                        if j == i {
                            Polynomial::variable(ring, i).expect("index in range")
                        } else {
                            let v = POINTS[(shift + j) % POINTS.len()];
                            Polynomial::constant(ring, Rational::from_integer(v.into()))
                        }
                    })
                    .collect();
                let image = self.substitute(&subs).expect("same ring");
                if image.degree_in(i) != deg {
                    continue;
                }
                let derivative = image.partial_derivative(i).expect("index in range");
                if gcd_inner(&image, &derivative).is_constant() {
                    proven = true;
                    break;
                }
            }
            if !proven {
                return false;
            }
        }
        true
    }

    /// Gcd of `self` with all of its partial derivatives.
    fn gcd_with_gradient(&self) -> Polynomial {
        if self.squarefree_by_specialization() {
            return Polynomial::one(self.ring());
        }
        let mut d = self.clone();
        for i in 0..self.nvars() {
            let di = self.partial_derivative(i).expect("index in range");
            if di.is_zero() {
                continue;
            }
            d = gcd_inner(&d, &di);
            if d.is_constant() {
                break;
            }
        }
        d
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn squarefree_part(&self) -> Result<Polynomial> {
        if self.is_constant() {
            return Err(Error::ConstantInput);
        }
        let mut q = self.clone();
        loop {
            let d = q.gcd_with_gradient();
            if d.is_constant() {
                return Ok(q.normalized());
            }
            q = divide_exact_inner(&q, &d)?;
        }
    }

    /// True iff the gcd of the polynomial with its gradient is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd_with_gradient().is_constant()
    }

    pub fn is_unit_multiple_of(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::polyring::Ring;

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"]).unwrap()
    }

    fn p(ring: &Arc<Ring>, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(ring, terms)
    }

    #[test]
    fn exact_division() {
        let r = xy();
        let num = p(&r, &[(&[2, 0], 1), (&[0, 2], -1)]);
        let den = p(&r, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(
            num.divide_exact(&den).unwrap(),
            p(&r, &[(&[1, 0], 1), (&[0, 1], 1)])
        );
        let x = p(&r, &[(&[1, 0], 1)]);
        let y = p(&r, &[(&[0, 1], 1)]);
        assert_eq!(x.divide_exact(&y), Err(Error::NotDivisible));
        assert_eq!(
            x.divide_exact(&Polynomial::zero(&r)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn monomial_gcd() {
        let r = xy();
        let a = p(&r, &[(&[2, 1], 1)]);
        let b = p(&r, &[(&[1, 2], 1)]);
        assert_eq!(a.gcd(&b).unwrap(), p(&r, &[(&[1, 1], 1)]));
        let f = p(&r, &[(&[3, 0], -2), (&[0, 2], 4)]);
        assert_eq!(f.gcd(&Polynomial::zero(&r)).unwrap(), f.normalized());
    }

    #[test]
    fn gcd_of_products() {
        let r = xy();
        let s = p(&r, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let d = p(&r, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let a = &s.pow(2) * &d;
        let b = &s * &d.pow(2);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, (&s * &d).normalized());
        assert!(a.divide_exact(&g).is_ok());
        assert!(b.divide_exact(&g).is_ok());
    }

    #[test]
    fn squarefree_examples() {
        let r = xy();
        let x2 = p(&r, &[(&[2, 0], 1)]);
        assert_eq!(x2.squarefree_part().unwrap(), p(&r, &[(&[1, 0], 1)]));
        let cusp = p(&r, &[(&[3, 0], 1), (&[0, 2], -1)]);
        assert!(cusp.squarefree_part().unwrap().is_unit_multiple_of(&cusp));
        let a = p(&r, &[(&[2, 0], 1), (&[0, 3], 1)]);
        let l = p(&r, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let f = &a.pow(2) * &l;
        assert_eq!(f.squarefree_part().unwrap(), (&a * &l).normalized());
        assert_eq!(
            Polynomial::one(&r).squarefree_part(),
            Err(Error::ConstantInput)
        );
    }
}
