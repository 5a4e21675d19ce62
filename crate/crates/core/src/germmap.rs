//! Finite map germs, pullbacks of hypersurfaces and the Milnor number
//! comparison between a hypersurface and its reduced preimage.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::localsb::{standard_basis, SbOptions};
use crate::milnor::{milnor_number_with, MilnorResult};
use crate::polyring::{Polynomial, Ring};

/// Origin-preserving polynomial map germ `(k^n, 0) -> (k^n, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm {
    components: Vec<Polynomial>,
}

impl MapGerm {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let ring = components
            .first()
            .ok_or(Error::ArityMismatch {
                expected: 1,
                got: 0,
            })?
            .ring()
            .clone();
        if components.len() != ring.nvars() {
            return Err(Error::ArityMismatch {
                expected: ring.nvars(),
                got: components.len(),
            });
        }
        for (index, c) in components.iter().enumerate() {
            if c.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            if !c.constant_term().is_zero() {
                return Err(Error::NotOriginPreserving { index });
            }
        }
        Ok(MapGerm { components })
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        MapGerm {
            components: (0..ring.nvars())
                .map(|i| Polynomial::variable(ring, i).expect("in range"))
                .collect(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.components[0].ring()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `self ∘ inner`: each component of `self` with `inner` substituted.
    pub fn compose(&self, inner: &MapGerm) -> Result<MapGerm> {
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        MapGerm::new(components)
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for MapGerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.components.len()))?;
        for c in &self.components {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    NotFinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::NotFinite => None,
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(m) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("kind", "finite")?;
                map.serialize_entry("multiplicity", m)?;
                map.end()
            }
            Multiplicity::NotFinite => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("kind", "not_finite")?;
                map.end()
            }
        }
    }
}

pub fn local_multiplicity(map: &MapGerm) -> Result<Multiplicity> {
    local_multiplicity_with(map, SbOptions::default())
}

/// Colength of the ideal generated by the components. Infinite colength
/// means the origin is not isolated in the zero fiber.
pub fn local_multiplicity_with(map: &MapGerm, options: SbOptions) -> Result<Multiplicity> {
    let gens: Vec<Polynomial> = map
        .components
        .iter()
        .filter(|c| !c.is_zero())
        .cloned()
        .collect();
    if gens.is_empty() {
        return Ok(Multiplicity::NotFinite);
    }
    let sb = standard_basis(&gens, options)?;
    Ok(match sb.colength() {
        ExtNat::Finite(m) => Multiplicity::Finite(m),
        ExtNat::Infinite => Multiplicity::NotFinite,
    })
}

/// `g ∘ F` for a hypersurface through the origin.
pub fn pullback(g: &Polynomial, map: &MapGerm) -> Result<Polynomial> {
    if !g.constant_term().is_zero() {
        return Err(Error::NotThroughOrigin);
    }
    g.substitute(&map.components)
}

/// Reduced equation `h` of the preimage together with the exponent `r` of
/// `g ∘ F = c * h^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedPreimage {
    #[serde(serialize_with = "serialize_display")]
    pub pullback: Polynomial,
    #[serde(serialize_with = "serialize_display")]
    pub h: Polynomial,
    pub r: u32,
    /// True iff `h^r` equals the pullback up to a nonzero constant.
    pub pure: bool,
}

pub fn reduced_preimage(g: &Polynomial, map: &MapGerm) -> Result<ReducedPreimage> {
    let pulled = pullback(g, map)?;
    if pulled.is_zero() {
        return Err(Error::ZeroPullback);
    }
    let h = pulled.squarefree_part()?;
    let max_r = pulled.total_degree().unwrap_or(0)
        / (h.order_at_origin().finite().unwrap_or(1).max(1) as u32);
    let mut rest = pulled.clone();
    let mut r = 0;
    while r < max_r {
        match rest.divide_exact(&h) {
            Ok(q) => {
                rest = q;
                r += 1;
            }
            Err(Error::NotDivisible) => break,
            Err(e) => return Err(e),
        }
    }
    let pure = r >= 1 && rest.is_constant();
    Ok(ReducedPreimage {
        pullback: pulled,
        h,
        r: if pure { r } else { 1 },
        pure,
    })
}

fn serialize_display<S: Serializer, T: fmt::Display>(
    v: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(v)
}

fn serialize_opt_display<S: Serializer, T: fmt::Display>(
    v: &Option<T>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serializer.collect_str(v),
        None => serializer.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    NotThroughOrigin,
    MapNotFinite,
    ZeroPullback,
    NonIsolatedV,
    NonIsolatedW,
    DegreeCapExceeded,
}

impl SkipReason {
    pub const ALL: [SkipReason; 6] = [
        SkipReason::NotThroughOrigin,
        SkipReason::MapNotFinite,
        SkipReason::ZeroPullback,
        SkipReason::NonIsolatedV,
        SkipReason::NonIsolatedW,
        SkipReason::DegreeCapExceeded,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::NotThroughOrigin => "not_through_origin",
            SkipReason::MapNotFinite => "map_not_finite",
            SkipReason::ZeroPullback => "zero_pullback",
            SkipReason::NonIsolatedV => "non_isolated_v",
            SkipReason::NonIsolatedW => "non_isolated_w",
            SkipReason::DegreeCapExceeded => "degree_cap_exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Skipped(SkipReason),
}

impl Verdict {
    pub fn is_violated(self) -> bool {
        self == Verdict::Violated
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("holds"),
            Verdict::Violated => f.write_str("VIOLATED"),
            Verdict::Skipped(r) => write!(f, "skipped ({})", r.as_str()),
        }
    }
}

/// Outcome of comparing `mu(V)` with `mu(F^-1(V))` for one pair `(g, F)`.
///
/// Carries the inputs so that any violation can be reproduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "serialize_display")]
    pub g: Polynomial,
    pub map: MapGerm,
    pub seed: Option<u64>,
    #[serde(serialize_with = "serialize_opt_display")]
    pub g_reduced: Option<Polynomial>,
    pub multiplicity: Option<Multiplicity>,
    #[serde(serialize_with = "serialize_opt_display")]
    pub h: Option<Polynomial>,
    #[serde(rename = "mu_V")]
    pub mu_v: Option<MilnorResult>,
    #[serde(rename = "mu_W")]
    pub mu_w: Option<MilnorResult>,
    pub r: Option<u32>,
    pub pure: Option<bool>,
    pub inequality: Verdict,
    pub corollary: Verdict,
}

impl VerificationReport {
    /// Holds with `mu(W) = mu(V)`.
    pub fn is_equality(&self) -> bool {
        self.inequality == Verdict::Holds
            && self.mu_v.and_then(MilnorResult::mu) == self.mu_w.and_then(MilnorResult::mu)
    }
}

pub fn verify_theorem(g: &Polynomial, map: &MapGerm) -> VerificationReport {
    verify_theorem_with(g, map, SbOptions::default())
}

/// Compares the Milnor number of `V = {g = 0}` with that of the reduced
/// preimage `W = F^-1(V)`, and checks that a smooth `W` forces a smooth `V`.
/// Smooth points count as `mu = 0`. Every failure to decide becomes a
/// skipped verdict.
pub fn verify_theorem_with(g: &Polynomial, map: &MapGerm, options: SbOptions) -> VerificationReport {
    let mut report = VerificationReport {
        g: g.clone(),
        map: map.clone(),
        seed: None,
        g_reduced: None,
        multiplicity: None,
        h: None,
        mu_v: None,
        mu_w: None,
        r: None,
        pure: None,
        inequality: Verdict::Skipped(SkipReason::NotThroughOrigin),
        corollary: Verdict::Skipped(SkipReason::NotThroughOrigin),
    };
    let skip = |report: &mut VerificationReport, reason| {
        report.inequality = Verdict::Skipped(reason);
        report.corollary = Verdict::Skipped(reason);
    };
    let from_err = |e: Error| match e {
        Error::ZeroPullback => SkipReason::ZeroPullback,
        Error::NotThroughOrigin => SkipReason::NotThroughOrigin,
        _ => SkipReason::DegreeCapExceeded,
    };

    if g.is_zero() || g.ring() != map.ring() {
        return report;
    }
    if !g.constant_term().is_zero() {
        report.mu_v = Some(MilnorResult::NotThroughOrigin);
        return report;
    }
    let g_red = match g.squarefree_part() {
        Ok(p) => p,
        Err(_) => return report,
    };
    report.g_reduced = Some(g_red.clone());

    match local_multiplicity_with(map, options) {
        Ok(m) => report.multiplicity = Some(m),
        Err(e) => {
            skip(&mut report, from_err(e));
            return report;
        }
    }
    let mu_v = match milnor_number_with(&g_red, options) {
        Ok(m) => m,
        Err(e) => {
            skip(&mut report, from_err(e));
            return report;
        }
    };
    report.mu_v = Some(mu_v);
    if report.multiplicity == Some(Multiplicity::NotFinite) {
        skip(&mut report, SkipReason::MapNotFinite);
        return report;
    }
    let pre = match reduced_preimage(&g_red, map) {
        Ok(p) => p,
        Err(e) => {
            skip(&mut report, from_err(e));
            return report;
        }
    };
    report.r = Some(pre.r);
    report.pure = Some(pre.pure);
    report.h = Some(pre.h.clone());
    let mu_w = match milnor_number_with(&pre.h, options) {
        Ok(m) => m,
        Err(e) => {
            skip(&mut report, from_err(e));
            return report;
        }
    };
    report.mu_w = Some(mu_w);

    report.inequality = match (mu_v.mu(), mu_w.mu()) {
        (Some(v), Some(w)) if w >= v => Verdict::Holds,
        (Some(_), Some(_)) => Verdict::Violated,
        (None, _) => Verdict::Skipped(SkipReason::NonIsolatedV),
        (_, None) if mu_w == MilnorResult::NotThroughOrigin => {
            Verdict::Skipped(SkipReason::NotThroughOrigin)
        }
        (_, None) => Verdict::Skipped(SkipReason::NonIsolatedW),
    };
    report.corollary = match mu_w {
        MilnorResult::SmoothPoint if mu_v == MilnorResult::SmoothPoint => Verdict::Holds,
        MilnorResult::SmoothPoint => Verdict::Violated,
        MilnorResult::NotThroughOrigin => Verdict::Skipped(SkipReason::NotThroughOrigin),
        _ => Verdict::Holds,
    };
    report
}
