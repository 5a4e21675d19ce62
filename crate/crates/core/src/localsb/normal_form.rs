use super::local_poly::LocalPoly;
use super::LocalOrder;
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};

#[derive(Clone)]
pub(crate) struct Reducer {
    pub(crate) poly: LocalPoly,
    pub(crate) ecart: u32,
}

impl Reducer {
    pub(crate) fn new(poly: LocalPoly) -> Self {
        let ecart = poly.ecart();
        Reducer { poly, ecart }
    }
}

/// Mora's normal form against `basis`.
///
/// The reducer is the divisor of the leading monomial with minimal ecart,
/// earliest first. When it has larger ecart than the current remainder, the
/// remainder itself joins the reducer set before being reduced. With a
/// `bound`, everything of degree `>= bound` is discarded; the caller
/// guarantees that `m^bound` lies in the ideal. Only finitely many
/// monomials remain, so plain reduction terminates and no remainder is
/// added to the reducer set.
pub(crate) fn mora_reduce(
    h: LocalPoly,
    basis: &[Reducer],
    bound: Option<u32>,
    cap: u32,
) -> Result<LocalPoly> {
    let reduced = mora_reduce_within(h, basis, bound, cap, &mut Budget::unlimited(), None)?;
    Ok(reduced.expect("unlimited budget"))
}

/// Limits on a reduction: remaining steps and the largest leading
/// coefficient, in bits, that may appear.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Budget {
    steps: Option<u64>,
    bits: Option<u64>,
}

impl Budget {
    pub(crate) fn unlimited() -> Self {
        Budget {
            steps: None,
            bits: None,
        }
    }

    pub(crate) fn limited(steps: u64, bits: u64) -> Self {
        Budget {
            steps: Some(steps),
            bits: Some(bits),
        }
    }

    fn spend(&mut self, h: &LocalPoly) -> bool {
        if self.bits.is_some_and(|b| h.lead_bits() > b) {
            return false;
        }
        match &mut self.steps {
            None => true,
            Some(0) => false,
            Some(n) => {
                *n -= 1;
                true
            }
        }
    }
}

/// [`mora_reduce`] that gives up with `Ok(None)` once `budget` runs out.
/// Each fraction-free step multiplies the surviving part of `h` by a
/// constant; `scale` accumulates these factors when given.
pub(crate) fn mora_reduce_within(
    mut h: LocalPoly,
    basis: &[Reducer],
    bound: Option<u32>,
    cap: u32,
    budget: &mut Budget,
    mut scale: Option<&mut Rational>,
) -> Result<Option<LocalPoly>> {
    let mut extra: Vec<Reducer> = Vec::new();
    loop {
        if !budget.spend(&h) {
            return Ok(None);
        }
        if let Some(b) = bound {
            h.truncate(b);
        }
        if h.is_zero() {
            return Ok(Some(h));
        }
        if h.total_degree() > cap {
            return Err(Error::DegreeCapExceeded { cap });
        }
        let lm = h.lead();
        let mut best: Option<(usize, u32)> = None;
        for (k, r) in basis.iter().chain(extra.iter()).enumerate() {
            if best.is_some_and(|(_, e)| r.ecart >= e) {
                continue;
            }
            if r.poly.lead().divides(lm) {
                best = Some((k, r.ecart));
            }
        }
        let Some((k, g_ecart)) = best else {
            return Ok(Some(h));
        };
        let g = if k < basis.len() {
            &basis[k].poly
        } else {
            &extra[k - basis.len()].poly
        };
        let shift = lm.div(g.lead()).expect("divisor chosen");
        let h_ecart = h.ecart();
        let saved = (g_ecart > h_ecart && bound.is_none()).then(|| h.clone());
        let factor = h.reduce_lead(&shift, g);
        if let Some(s) = scale.as_deref_mut() {
            *s *= factor;
        }
        if let Some(poly) = saved {
            extra.push(Reducer {
                poly,
                ecart: h_ecart,
            });
        }
    }
}

/// Weak normal form of `p` with respect to `gens` in the local ring.
///
/// There is a unit `u` (nonzero constant term) such that `u*p - NF` lies in
/// the ideal generated by `gens`, and a nonzero result has a leading
/// monomial divisible by no leading monomial of `gens`.
pub fn mora_normal_form(
    p: &Polynomial,
    gens: &[Polynomial],
    _order: LocalOrder,
    degree_cap: u32,
) -> Result<Polynomial> {
    let mut reducers = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring() != p.ring() {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        reducers.push(Reducer::new(LocalPoly::from_poly(g)));
    }
    reduce_rational(p, &reducers, degree_cap)
}

/// Normal form of `p` on the scale of `p` itself: the constant factors of
/// the fraction-free steps are divided back out.
pub(crate) fn reduce_rational(p: &Polynomial, reducers: &[Reducer], cap: u32) -> Result<Polynomial> {
    let (h, mut scale) = LocalPoly::from_poly_scaled(p);
    let nf = mora_reduce_within(h, reducers, None, cap, &mut Budget::unlimited(), Some(&mut scale))?
        .expect("unlimited budget");
    Ok(nf.to_poly_scaled(p.ring(), &scale))
}
