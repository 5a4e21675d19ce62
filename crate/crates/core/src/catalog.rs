//! Curated singularities and seeded generators of germs and finite maps.

use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::germmap::{local_multiplicity_with, MapGerm, Multiplicity};
use crate::localsb::SbOptions;
use crate::milnor::{milnor_number_with, MilnorResult};
use crate::polyring::{integer, rational, Monomial, Polynomial, Rational, Ring};

/// Bound on rejection-sampling attempts in the generators.
pub const MAX_ATTEMPTS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdeFamily {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub germ: Polynomial,
    pub expected_mu: u64,
    /// Irreducibility of the germ over the complex numbers when classical
    /// theory settles it here; `None` when unknown.
    pub irreducible: Option<bool>,
}

impl CatalogEntry {
    /// Recomputes the Milnor number and compares with `expected_mu`.
    pub fn check(&self) -> Result<()> {
        match milnor_number_with(&self.germ, SbOptions::default())? {
            MilnorResult::Finite(mu) if mu == self.expected_mu => Ok(()),
            other => Err(Error::InvalidParameter(format!(
                "{}: expected mu = {}, computed {other}",
                self.name, self.expected_mu
            ))),
        }
    }

    fn checked(self) -> Result<Self> {
        self.check()?;
        Ok(self)
    }
}

fn sum_of_terms(ring: &Arc<Ring>, terms: &[&[u32]]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|e| (Monomial::from_exponents(e), integer(1))),
    )
}

/// Simple singularities in two variables:
/// `A_k: x^(k+1) + y^2`, `D_k: x^(k-1) + x*y^2`, `E6: x^3 + y^4`,
/// `E7: x^3 + x*y^3`, `E8: x^3 + y^5`.
pub fn ade(family: AdeFamily) -> Result<CatalogEntry> {
    let ring = Ring::standard(2)?;
    let (name, germ, mu, irreducible) = match family {
        AdeFamily::A(k) => {
            if k < 1 {
                return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
            }
            let germ = sum_of_terms(&ring, &[&[k + 1, 0], &[0, 2]]);
            (format!("A{k}"), germ, k, k % 2 == 0)
        }
        AdeFamily::D(k) => {
            if k < 4 {
                return Err(Error::InvalidParameter("D_k needs k >= 4".into()));
            }
            let germ = sum_of_terms(&ring, &[&[k - 1, 0], &[1, 2]]);
            (format!("D{k}"), germ, k, false)
        }
        AdeFamily::E6 => ("E6".into(), sum_of_terms(&ring, &[&[3, 0], &[0, 4]]), 6, true),
        AdeFamily::E7 => ("E7".into(), sum_of_terms(&ring, &[&[3, 0], &[1, 3]]), 7, false),
        AdeFamily::E8 => ("E8".into(), sum_of_terms(&ring, &[&[3, 0], &[0, 5]]), 8, true),
    };
    CatalogEntry {
        name,
        germ,
        expected_mu: mu as u64,
        irreducible: Some(irreducible),
    }
    .checked()
}

/// Brieskorn-Pham germ `sum x_i^(a_i)` with `mu = prod (a_i - 1)`.
pub fn brieskorn(exponents: &[u32]) -> Result<CatalogEntry> {
    if exponents.is_empty() || exponents.iter().any(|&a| a < 2) {
        return Err(Error::InvalidParameter(
            "Brieskorn exponents must be >= 2".into(),
        ));
    }
    let n = exponents.len();
    let ring = Ring::standard(n)?;
    let germ = Polynomial::from_terms(
        &ring,
        exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| (Monomial::var(n, i, a), integer(1))),
    );
    let irreducible = match n {
        2 => Some(exponents[0].gcd(&exponents[1]) == 1),
        _ => None,
    };
    let list: Vec<String> = exponents.iter().map(u32::to_string).collect();
    CatalogEntry {
        name: format!("Brieskorn[{}]", list.join(",")),
        germ,
        expected_mu: exponents.iter().map(|&a| (a - 1) as u64).product(),
        irreducible,
    }
    .checked()
}

/// Every shipped entry: `A1..A10`, `D4..D8`, `E6..E8` and the Brieskorn
/// germs with exponents in `2..=6` for two and three variables.
pub fn full_catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for k in 1..=10 {
        out.push(ade(AdeFamily::A(k))?);
    }
    for k in 4..=8 {
        out.push(ade(AdeFamily::D(k))?);
    }
    for f in [AdeFamily::E6, AdeFamily::E7, AdeFamily::E8] {
        out.push(ade(f)?);
    }
    for a in 2..=6 {
        for b in 2..=6 {
            out.push(brieskorn(&[a, b])?);
        }
    }
    for a in 2..=6 {
        for b in 2..=6 {
            for c in 2..=6 {
                out.push(brieskorn(&[a, b, c])?);
            }
        }
    }
    Ok(out)
}

/// Germs used by the verification suite: entries not known to be
/// reducible. For two variables these are `A_k` with even `k`, `E6`, `E8`
/// and coprime Brieskorn pairs; for three variables, Brieskorn germs with
/// exponents in `2..=3` plus `[2,2,4]` and `[2,2,5]`.
pub fn theorem_pool(n: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    match n {
        2 => {
            for k in [2, 4, 6, 8, 10] {
                out.push(ade(AdeFamily::A(k))?);
            }
            out.push(ade(AdeFamily::E6)?);
            out.push(ade(AdeFamily::E8)?);
            for a in 2..=6u32 {
                for b in 2..=6u32 {
                    if a.gcd(&b) == 1 {
                        out.push(brieskorn(&[a, b])?);
                    }
                }
            }
        }
        3 => {
            for a in 2..=3 {
                for b in 2..=3 {
                    for c in 2..=3 {
                        out.push(brieskorn(&[a, b, c])?);
                    }
                }
            }
            out.push(brieskorn(&[2, 2, 4])?);
            out.push(brieskorn(&[2, 2, 5])?);
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "suite dimension must be 2 or 3, got {n}"
            )))
        }
    }
    debug_assert!(out.iter().all(|e| e.irreducible != Some(false)));
    Ok(out)
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let mut num = rng.gen_range(1..=3i64);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    if rng.gen_ratio(1, 4) {
        rational(num, 2)
    } else {
        integer(num)
    }
}

fn random_monomial_in(
    rng: &mut ChaCha8Rng,
    n: usize,
    vars: &[usize],
    degree: u32,
) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..degree {
        e[vars[rng.gen_range(0..vars.len())]] += 1;
    }
    Monomial::from_exponents(&e)
}

/// `F_i = x_i^(a_i) + p_i` where `p_i` is a polynomial without constant
/// term in the remaining variables. Exponents of 1 with zero perturbations
/// give the identity.
pub fn triangular_map(
    ring: &Arc<Ring>,
    exponents: &[u32],
    perturbations: Vec<Polynomial>,
) -> Result<MapGerm> {
    let n = ring.nvars();
    if exponents.len() != n || perturbations.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: exponents.len().min(perturbations.len()),
        });
    }
    let components = exponents
        .iter()
        .zip(perturbations)
        .enumerate()
        .map(|(i, (&a, p))| {
            Polynomial::monomial(ring, Monomial::var(n, i, a), integer(1)).try_add(&p)
        })
        .collect::<Result<Vec<_>>>()?;
    MapGerm::new(components)
}

/// Seeded finite map germ of triangular-plus-perturbation shape.
///
/// Each attempt draws `a_i` uniformly from `1..=max_degree` and up to two
/// perturbation terms per component, of degree `1..=max_degree` in the
/// other variables with coefficients in `{±1, ±2, ±3, ±1/2, ±3/2}`.
/// Attempts repeat until the local multiplicity is finite.
pub fn random_finite_map(n: usize, max_degree: u32, seed: u64) -> Result<MapGerm> {
    random_finite_map_with(n, max_degree, seed, SbOptions::default())
}

pub fn random_finite_map_with(
    n: usize,
    max_degree: u32,
    seed: u64,
    options: SbOptions,
) -> Result<MapGerm> {
    if !(2..=3).contains(&n) || max_degree < 2 {
        return Err(Error::InvalidParameter(format!(
            "random maps need n in 2..=3 and max_degree >= 2 (got n = {n}, max_degree = {max_degree})"
        )));
    }
    let ring = Ring::standard(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let exponents: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_degree)).collect();
        let perturbations = (0..n)
            .map(|i| {
                let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                let count = rng.gen_range(0..=2);
                Polynomial::from_terms(
                    &ring,
                    (0..count)
                        .map(|_| {
                            let d = rng.gen_range(1..=max_degree);
                            let m = random_monomial_in(&mut rng, n, &others, d);
                            (m, random_coefficient(&mut rng))
                        })
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let map = triangular_map(&ring, &exponents, perturbations)?;
        if let Ok(Multiplicity::Finite(_)) = local_multiplicity_with(&map, options) {
            return Ok(map);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Seeded germ with an isolated singularity at the origin: a Brieskorn form
/// with exponents in `2..=max_degree` plus up to three terms of degree
/// between its lowest exponent and `max_degree`, resampled until the Milnor
/// number is finite.
pub fn random_isolated_germ(n: usize, max_degree: u32, seed: u64) -> Result<Polynomial> {
    random_isolated_germ_with(n, max_degree, seed, SbOptions::default())
}

pub fn random_isolated_germ_with(
    n: usize,
    max_degree: u32,
    seed: u64,
    options: SbOptions,
) -> Result<Polynomial> {
    if !(1..=3).contains(&n) || max_degree < 2 {
        return Err(Error::InvalidParameter(format!(
            "random germs need n in 1..=3 and max_degree >= 2 (got n = {n}, max_degree = {max_degree})"
        )));
    }
    let ring = Ring::standard(n)?;
    let all: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut terms: Vec<(Monomial, Rational)> = (0..n)
            .map(|i| {
                (
                    Monomial::var(n, i, rng.gen_range(2..=max_degree)),
                    random_coefficient(&mut rng),
                )
            })
            .collect();
        let lowest = terms.iter().map(|t| t.0.degree()).min().unwrap_or(2);
        for _ in 0..rng.gen_range(0..=3) {
            let d = rng.gen_range(lowest..=max_degree);
            terms.push((
                random_monomial_in(&mut rng, n, &all, d),
                random_coefficient(&mut rng),
            ));
        }
        let germ = Polynomial::from_terms(&ring, terms);
        if germ.is_zero() {
            continue;
        }
        if let Ok(MilnorResult::Finite(_)) = milnor_number_with(&germ, options) {
            return Ok(germ);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: MAX_ATTEMPTS,
    })
}
