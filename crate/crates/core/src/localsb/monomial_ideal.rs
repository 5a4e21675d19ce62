use crate::extnat::ExtNat;
use crate::polyring::Monomial;

/// Monomial ideal kept as its minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes the given monomials: duplicates and monomials divisible
    /// by another generator are removed. Generators are sorted by degree,
    /// then lexicographically.
    pub fn new<I>(nvars: usize, monomials: I) -> Self
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut all: Vec<Monomial> = monomials.into_iter().collect();
        assert!(all.iter().all(|m| m.nvars() == nvars), "monomial arity mismatch");
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        all.dedup();
        let mut gens: Vec<Monomial> = Vec::new();
        for m in all {
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        MonomialIdeal { nvars, gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Smallest exponent `e_i` with `x_i^e_i` in the ideal, per variable.
    /// `None` when some variable has no pure power.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![None; self.nvars];
        for g in &self.gens {
            if g.is_one() {
                return Some(vec![0; self.nvars]);
            }
            if let Some(i) = g.pure_power_var() {
                let e = g.exponents()[i];
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    /// Monomials outside the ideal, or `None` if there are infinitely many.
    ///
    /// Enumerated inside the box cut out by the pure powers, in the box's
    /// odometer order.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let bounds = self.pure_power_bounds()?;
        let mut out = Vec::new();
        if bounds.iter().any(|&b| b == 0) {
            return Some(out);
        }
        let mut exps = vec![0u32; self.nvars];
        'outer: loop {
            let m = Monomial::from_exponents(&exps);
            if !self.contains(&m) {
                out.push(m);
            }
            for i in 0..self.nvars {
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    continue 'outer;
                }
                exps[i] = 0;
            }
            break;
        }
        Some(out)
    }

    /// Number of monomials outside the ideal.
    pub fn colength(&self) -> ExtNat {
        match self.standard_monomials() {
            Some(v) => ExtNat::Finite(v.len() as u64),
            None => ExtNat::Infinite,
        }
    }
}
