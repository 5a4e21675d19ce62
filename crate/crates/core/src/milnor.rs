//! Milnor numbers of hypersurface germs at the origin.
//!
//! `milnor_number` goes through a local standard basis of the Jacobian
//! ideal. `milnor_oracle` is an independent route: exact linear algebra on
//! truncations `Q[x]/(J + m^D)` until the dimension stops changing.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::localsb::{standard_basis, SbOptions};
use crate::polyring::{Monomial, Polynomial, Rational};

/// Default degree cap of the truncation oracle.
pub const DEFAULT_ORACLE_CAP: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MilnorResult {
    /// `f(0) != 0`: the germ is empty.
    NotThroughOrigin,
    /// `f(0) = 0` with nonzero gradient at the origin; `mu = 0`.
    SmoothPoint,
    /// Isolated singularity with Milnor number `mu >= 1`.
    Finite(u64),
    /// The Jacobian ideal has infinite colength.
    NonIsolated,
}

impl MilnorResult {
    /// The Milnor number when it is defined, with smooth points counted as 0.
    pub fn mu(self) -> Option<u64> {
        match self {
            MilnorResult::SmoothPoint => Some(0),
            MilnorResult::Finite(mu) => Some(mu),
            _ => None,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            MilnorResult::NotThroughOrigin => "not_through_origin",
            MilnorResult::SmoothPoint => "smooth_point",
            MilnorResult::Finite(_) => "finite",
            MilnorResult::NonIsolated => "non_isolated",
        }
    }
}

impl std::fmt::Display for MilnorResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MilnorResult::NotThroughOrigin => f.write_str("not through origin"),
            MilnorResult::SmoothPoint => f.write_str("smooth point (mu = 0)"),
            MilnorResult::Finite(mu) => write!(f, "mu = {mu}"),
            MilnorResult::NonIsolated => f.write_str("non-isolated singularity"),
        }
    }
}

impl Serialize for MilnorResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mu = self.mu();
        let mut map = serializer.serialize_map(Some(if mu.is_some() { 2 } else { 1 }))?;
        map.serialize_entry("kind", self.kind())?;
        if let Some(mu) = mu {
            map.serialize_entry("mu", &mu)?;
        }
        map.end()
    }
}

/// The partial derivatives of `f`, zero entries kept in position.
pub fn jacobian_ideal(f: &Polynomial) -> Result<Vec<Polynomial>> {
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    Ok(f.gradient())
}

pub fn milnor_number(f: &Polynomial) -> Result<MilnorResult> {
    milnor_number_with(f, SbOptions::default())
}

/// Classifies the germ of `f` at the origin. `f` is assumed reduced.
pub fn milnor_number_with(f: &Polynomial, options: SbOptions) -> Result<MilnorResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Ok(MilnorResult::NotThroughOrigin);
    }
    let jac = jacobian_ideal(f)?;
    if jac.iter().any(|d| !d.constant_term().is_zero()) {
        return Ok(MilnorResult::SmoothPoint);
    }
    let gens: Vec<Polynomial> = jac.into_iter().filter(|d| !d.is_zero()).collect();
    let sb = standard_basis(&gens, options)?;
    Ok(match sb.colength() {
        ExtNat::Finite(mu) => MilnorResult::Finite(mu),
        ExtNat::Infinite => MilnorResult::NonIsolated,
    })
}

/// Dimension of `Q[x]/(I + m^D)` for the ideal generated by `gens`.
///
/// Builds the span of all `m * g` truncated below degree `D` over the
/// monomials of degree `< D` and subtracts its rank.
pub fn truncated_quotient_dimension(gens: &[Polynomial], degree: u32) -> u64 {
    let Some(first) = gens.first() else {
        return 0;
    };
    let nvars = first.nvars();
    let monomials = monomials_below(nvars, degree);
    let index: HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut echelon = Echelon::default();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let ord = g.order_at_origin().finite().expect("nonzero") as u32;
        for m in monomials.iter().take_while(|m| m.degree() + ord < degree) {
            let row: BTreeMap<usize, Rational> = g
                .terms()
                .filter_map(|(t, c)| {
                    let prod = t.mul(m);
                    (prod.degree() < degree).then(|| (index[&prod], c.clone()))
                })
                .collect();
            echelon.insert(row);
        }
    }
    (monomials.len() - echelon.rank()) as u64
}

/// Milnor number by truncated linear algebra, for `D = 2, 3, ...` up to
/// `degree_cap`, accepting the first `D` with `dim(D - 1) = dim(D)`.
///
/// Equal consecutive dimensions mean `m^(D-1)` lies in `J + m^D`, hence in
/// `J` locally by Nakayama, so the stabilized value is exact. Reaching the
/// cap is reported as an error; it is never read as a proof of a
/// non-isolated singularity.
pub fn milnor_oracle(f: &Polynomial, degree_cap: u32) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotThroughOrigin);
    }
    let jac = jacobian_ideal(f)?;
    let mut prev = None;
    let mut last = 0;
    for d in 2..=degree_cap {
        let dim = truncated_quotient_dimension(&jac, d);
        if prev == Some(dim) {
            return Ok(dim);
        }
        prev = Some(dim);
        last = dim;
    }
    Err(Error::CapExceededWithoutStabilization {
        cap: degree_cap,
        last_dim: last,
    })
}

/// All monomials of total degree `< degree`, sorted by degree.
fn monomials_below(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..degree {
        let mut exps = vec![0u32; nvars];
        push_of_degree(&mut out, &mut exps, 0, d);
    }
    out
}

fn push_of_degree(out: &mut Vec<Monomial>, exps: &mut [u32], var: usize, left: u32) {
    if var + 1 == exps.len() {
        exps[var] = left;
        out.push(Monomial::from_exponents(exps));
        exps[var] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[var] = e;
        push_of_degree(out, exps, var + 1, left - e);
    }
    exps[var] = 0;
}

/// Incremental row echelon form over the rationals, pivoting on the
/// smallest column of each row.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        while let Some((&col, lead)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&col) else {
                let inv = lead.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.pivots.insert(col, row);
                return;
            };
            let factor = lead.clone();
            for (c, v) in pivot {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }
}
