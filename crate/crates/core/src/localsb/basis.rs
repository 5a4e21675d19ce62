use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use super::local_poly::LocalPoly;
use super::monomial_ideal::MonomialIdeal;
use super::normal_form::{mora_reduce, mora_reduce_within, reduce_rational, Budget, Reducer};
use super::{LocalOrder, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::polyring::{Monomial, Polynomial, Ring};

/// Boxes larger than this are not enumerated when looking for a
/// truncation bound.
const CORNER_BOX_LIMIT: u64 = 1 << 20;

/// Work granted to the untruncated computation before the truncated
/// strategy takes over: reduction steps, and bits of a leading coefficient.
const PLAIN_STEPS: u64 = 2000;
const PLAIN_BITS: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SbOptions {
    /// Total-degree cap on intermediate remainders.
    pub degree_cap: u32,
    /// Once the leading ideal has finite colength, discard terms of degree
    /// beyond its highest corner.
    pub highest_corner: bool,
}

impl Default for SbOptions {
    fn default() -> Self {
        SbOptions {
            degree_cap: DEFAULT_DEGREE_CAP,
            highest_corner: true,
        }
    }
}

/// Standard basis of an ideal of the local ring under [`LocalOrder`].
#[derive(Debug, Clone)]
pub struct StandardBasis {
    ring: Arc<Ring>,
    order: LocalOrder,
    generators: Vec<Polynomial>,
    leading: Vec<Monomial>,
    bound: Option<u32>,
    degree_cap: u32,
}

impl StandardBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> LocalOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// Degree `D` such that `m^D` was shown to lie in the ideal, if the
    /// computation found one.
    pub fn truncation_bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn leading_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), self.leading.iter().cloned())
    }

    /// Dimension of the local ring modulo the ideal.
    pub fn colength(&self) -> ExtNat {
        self.leading_ideal().colength()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        reduce_rational(p, &self.reducers(), self.degree_cap)
    }

    /// Checks that every S-polynomial has normal form zero, reducing without
    /// any truncation.
    pub fn is_complete(&self) -> Result<bool> {
        let reducers = self.reducers();
        for j in 0..reducers.len() {
            for i in 0..j {
                let s = s_polynomial(&reducers[i].poly, &reducers[j].poly);
                if !mora_reduce(s, &reducers, None, self.degree_cap)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn reducers(&self) -> Vec<Reducer> {
        self.generators
            .iter()
            .map(|g| Reducer::new(LocalPoly::from_poly(g)))
            .collect()
    }
}

pub(crate) fn s_polynomial(f: &LocalPoly, g: &LocalPoly) -> LocalPoly {
    let lcm = f.lead().lcm(g.lead());
    let mf = lcm.div(f.lead()).expect("lcm");
    let mg = lcm.div(g.lead()).expect("lcm");
    let mut s = f.shifted(&mf);
    s.reduce_lead(&mg, g);
    s
}

/// Truncation bound from the current leading monomials: one more than the
/// largest degree of a standard monomial, when there are finitely many.
fn corner_bound(nvars: usize, leads: impl Iterator<Item = Monomial>) -> Option<u32> {
    let ideal = MonomialIdeal::new(nvars, leads);
    let bounds = ideal.pure_power_bounds()?;
    let size = bounds
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64))?;
    if size > CORNER_BOX_LIMIT {
        return None;
    }
    let std = ideal.standard_monomials()?;
    Some(std.iter().map(|m| m.degree() + 1).max().unwrap_or(0))
}

/// Standard basis via a Buchberger pair loop with Mora's normal form.
///
/// Pairs are processed by increasing degree of the lcm of their leading
/// monomials, then by index. A pair is dropped when Buchberger's chain
/// criterion applies, or when a truncation bound is known and the lcm has
/// degree at least the bound, since its S-polynomial then lies in `m^bound`.
/// The product criterion is not used: it fails for local orders.
///
/// With `highest_corner` set, a run with bounded work (reduction steps
/// and coefficient size) comes first. If it runs out of work or degree,
/// the ideal `I + m^(D+1)` is tried for `D = 4, 8, 16, ...` and finally
/// `D + 1` equal to the degree cap. Its basis is accepted as a basis of
/// `I` once every monomial of degree `D` is a leading monomial: then `m^D`
/// lies in `I + m^(D+1)`, hence in `I` by Nakayama's lemma. Otherwise the
/// unbounded untruncated computation decides the colength.
pub fn standard_basis(gens: &[Polynomial], options: SbOptions) -> Result<StandardBasis> {
    let ring = gens.first().ok_or(Error::EmptyIdeal)?.ring().clone();
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let cap = options.degree_cap;
    let mut basis: Vec<Reducer> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.total_degree().unwrap_or(0) > cap {
            return Err(Error::DegreeCapExceeded { cap });
        }
        let mut p = LocalPoly::from_poly(g);
        p.normalize();
        basis.push(Reducer::new(p));
    }
    if basis.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    if !options.highest_corner {
        return Ok(buchberger(&ring, basis, options, Budget::unlimited())?.expect("unlimited budget"));
    }
    match buchberger(&ring, basis.clone(), options, Budget::limited(PLAIN_STEPS, PLAIN_BITS)) {
        Ok(Some(sb)) => return Ok(sb),
        Ok(None) | Err(Error::DegreeCapExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let mut d = 4.min(cap.saturating_sub(1));
    while d >= 1 {
        let mut with_power = basis.clone();
        for m in monomials_of_degree(ring.nvars(), d + 1) {
            with_power.push(Reducer::new(LocalPoly::from_monomial(m)));
        }
        let sb = buchberger(&ring, with_power, options, Budget::unlimited())?.expect("unlimited budget");
        let top = sb
            .leading_ideal()
            .standard_monomials()
            .and_then(|std| std.iter().map(Monomial::degree).max());
        if top.map_or(true, |t| t < d) {
            return Ok(sb);
        }
        if d + 1 >= cap {
            break;
        }
        d = (2 * d).min(cap - 1);
    }
    Ok(buchberger(&ring, basis, options, Budget::unlimited())?.expect("unlimited budget"))
}

/// The pair `(i, j)` is redundant if some other leading monomial divides
/// the lcm of theirs and both pairs through it are already settled.
fn chain_criterion(basis: &[Reducer], pending: &HashSet<(usize, usize)>, i: usize, j: usize) -> bool {
    let lcm = basis[i].poly.lead().lcm(basis[j].poly.lead());
    let key = |a: usize, b: usize| if a > b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, r)| {
        k != i
            && k != j
            && r.poly.lead().divides(&lcm)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

/// All monomials of total degree `d` in `nvars` variables.
fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn fill(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, i: usize, left: u32) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            fill(out, exps, i + 1, left - e);
        }
    }
    fill(&mut out, &mut exps, 0, d);
    out
}

/// The pair loop. Returns `Ok(None)` if `budget` runs out.
fn buchberger(
    ring: &Arc<Ring>,
    mut basis: Vec<Reducer>,
    options: SbOptions,
    mut budget: Budget,
) -> Result<Option<StandardBasis>> {
    let ring = ring.clone();
    let nvars = ring.nvars();
    let cap = options.degree_cap;

    let mut bound = None;
    let refresh_bound = |basis: &mut Vec<Reducer>, bound: &mut Option<u32>| {
        if !options.highest_corner {
            return;
        }
        let nb = corner_bound(nvars, basis.iter().map(|r| r.poly.lead().clone()));
        if nb.is_some() && (bound.is_none() || nb < *bound) {
            *bound = nb;
            let b = nb.unwrap();
            for r in basis.iter_mut() {
                r.poly.truncate_tail(b);
                r.ecart = r.poly.ecart();
            }
        }
    };
    refresh_bound(&mut basis, &mut bound);

    let mut pairs = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |pairs: &mut BinaryHeap<_>, pending: &mut HashSet<_>, basis: &[Reducer], j: usize| {
        for i in 0..j {
            let d = basis[i].poly.lead().lcm(basis[j].poly.lead()).degree();
            pairs.push(Reverse((d, j, i)));
            pending.insert((j, i));
        }
    };
    for j in 1..basis.len() {
        push_pairs(&mut pairs, &mut pending, &basis, j);
    }

    while let Some(Reverse((ld, j, i))) = pairs.pop() {
        pending.remove(&(j, i));
        if bound.is_some_and(|b| ld >= b) || chain_criterion(&basis, &pending, i, j) {
            continue;
        }
        let s = s_polynomial(&basis[i].poly, &basis[j].poly);
        let Some(mut h) = mora_reduce_within(s, &basis, bound, cap, &mut budget, None)? else {
            return Ok(None);
        };
        if h.is_zero() {
            continue;
        }
        h.normalize();
        basis.push(Reducer::new(h));
        push_pairs(&mut pairs, &mut pending, &basis, basis.len() - 1);
        refresh_bound(&mut basis, &mut bound);
    }

    let leading = basis.iter().map(|r| r.poly.lead().clone()).collect();
    let generators = basis.iter().map(|r| r.poly.to_poly(&ring)).collect();
    Ok(Some(StandardBasis {
        ring,
        order: LocalOrder,
        generators,
        leading,
        bound,
        degree_cap: cap,
    }))
}
