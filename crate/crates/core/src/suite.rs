//! Seeded verification suite: catalog germs against generated finite maps.
//!
//! Case `i` of a run with seed `s` uses the per-case seed
//! `splitmix64(s + (i + 1) * 0x9E3779B97F4A7C15)`. Its germ is entry
//! `i mod len` of [`theorem_pool`], except that with generated germs enabled
//! every case with `i mod 4 == 3` instead draws
//! `random_isolated_germ(n, max_degree + 2, case_seed ^ 0xA5A5_A5A5_A5A5_A5A5)`.
//! Its map is `random_finite_map(n, max_degree, case_seed)`, or the identity
//! when [`MapSource::Identity`] is configured. This mapping is stable.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{random_finite_map_with, random_isolated_germ_with, theorem_pool};
use crate::error::{Error, Result};
use crate::germmap::{verify_theorem_with, MapGerm, SkipReason, VerificationReport, Verdict};
use crate::localsb::{SbOptions, DEFAULT_DEGREE_CAP};
use crate::polyring::{Polynomial, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapSource {
    Random,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub num_cases: usize,
    pub n: usize,
    pub max_degree: u32,
    pub degree_cap: u32,
    pub generated_germs: bool,
    pub map_source: MapSource,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            num_cases: 200,
            n: 2,
            max_degree: 3,
            degree_cap: DEFAULT_DEGREE_CAP,
            generated_germs: false,
            map_source: MapSource::Random,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_cases == 0 {
            return Err(Error::InvalidParameter("num_cases must be >= 1".into()));
        }
        if !(2..=3).contains(&self.n) {
            return Err(Error::InvalidParameter(format!(
                "n must be 2 or 3, got {}",
                self.n
            )));
        }
        if self.max_degree < 2 {
            return Err(Error::InvalidParameter("max_degree must be >= 2".into()));
        }
        Ok(())
    }
}

pub fn case_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub index: usize,
    pub germ_name: String,
    /// Irreducibility of the germ when known.
    pub irreducible: Option<bool>,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SkipCounts {
    pub not_through_origin: usize,
    pub map_not_finite: usize,
    pub zero_pullback: usize,
    pub non_isolated_v: usize,
    pub non_isolated_w: usize,
    pub degree_cap_exceeded: usize,
}

impl SkipCounts {
    fn bump(&mut self, reason: SkipReason) {
        *match reason {
            SkipReason::NotThroughOrigin => &mut self.not_through_origin,
            SkipReason::MapNotFinite => &mut self.map_not_finite,
            SkipReason::ZeroPullback => &mut self.zero_pullback,
            SkipReason::NonIsolatedV => &mut self.non_isolated_v,
            SkipReason::NonIsolatedW => &mut self.non_isolated_w,
            SkipReason::DegreeCapExceeded => &mut self.degree_cap_exceeded,
        } += 1;
    }

    pub fn total(&self) -> usize {
        self.not_through_origin
            + self.map_not_finite
            + self.zero_pullback
            + self.non_isolated_v
            + self.non_isolated_w
            + self.degree_cap_exceeded
    }
}

/// Case tallies. Every case lands in exactly one of `holds`, `violated`,
/// `outside_hypotheses` (decided, but `g ∘ F` is not a pure power of its
/// reduced equation) or `skipped`; `equality_cases` counts the subset of
/// `holds` with equal Milnor numbers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteCounters {
    pub total: usize,
    pub holds: usize,
    pub violated: usize,
    pub outside_hypotheses: usize,
    pub equality_cases: usize,
    pub skipped: SkipCounts,
    pub corollary_holds: usize,
    pub corollary_violated: usize,
    pub pure_power_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: u64,
    pub mean_case_ms: u64,
    pub max_case_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub counters: SuiteCounters,
    pub cases: Vec<CaseReport>,
    pub timing: Timing,
}

impl SuiteReport {
    /// No theorem or corollary violation and no failed pure-power identity.
    pub fn success(&self) -> bool {
        self.counters.violated == 0
            && self.counters.corollary_violated == 0
            && self.counters.pure_power_failures == 0
    }

    pub fn skipped_fraction(&self) -> f64 {
        self.counters.skipped.total() as f64 / self.counters.total.max(1) as f64
    }
}

/// The germ and map of case `index`, without running it.
pub fn suite_case(cfg: &SuiteConfig, index: usize) -> Result<(String, Option<bool>, Polynomial, MapGerm)> {
    let pool = theorem_pool(cfg.n)?;
    case_inputs(cfg, &pool, index)
}

fn case_inputs(
    cfg: &SuiteConfig,
    pool: &[crate::catalog::CatalogEntry],
    index: usize,
) -> Result<(String, Option<bool>, Polynomial, MapGerm)> {
    let options = SbOptions {
        degree_cap: cfg.degree_cap,
        ..SbOptions::default()
    };
    let seed = case_seed(cfg.seed, index);
    let (name, irreducible, germ) = if cfg.generated_germs && index % 4 == 3 {
        let germ = random_isolated_germ_with(
            cfg.n,
            cfg.max_degree + 2,
            seed ^ 0xA5A5_A5A5_A5A5_A5A5,
            options,
        )?;
        ("generated".to_string(), None, germ)
    } else {
        let e = &pool[index % pool.len()];
        (e.name.clone(), e.irreducible, e.germ.clone())
    };
    let map = match cfg.map_source {
        MapSource::Random => random_finite_map_with(cfg.n, cfg.max_degree, seed, options)?,
        MapSource::Identity => MapGerm::identity(&Ring::standard(cfg.n)?),
    };
    Ok((name, irreducible, germ, map))
}

/// Exact check `h^r = c * (g ∘ F)` for a pure report.
pub fn pure_power_identity_holds(report: &VerificationReport) -> bool {
    let (Some(true), Some(h), Some(r), Some(g)) =
        (report.pure, &report.h, report.r, &report.g_reduced)
    else {
        return true;
    };
    match g.substitute(report.map.components()) {
        Ok(pulled) => h.pow(r).is_unit_multiple_of(&pulled),
        Err(_) => false,
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let pool = theorem_pool(cfg.n)?;
    let options = SbOptions {
        degree_cap: cfg.degree_cap,
        ..SbOptions::default()
    };
    let start = Instant::now();
    let results: Vec<(CaseReport, u64, bool)> = (0..cfg.num_cases)
        .into_par_iter()
        .map(|index| -> Result<(CaseReport, u64, bool)> {
            let t = Instant::now();
            let (germ_name, irreducible, germ, map) = case_inputs(cfg, &pool, index)?;
            let mut report = verify_theorem_with(&germ, &map, options);
            report.seed = Some(case_seed(cfg.seed, index));
            let pure_ok = pure_power_identity_holds(&report);
            let case = CaseReport {
                index,
                germ_name,
                irreducible,
                report,
            };
            Ok((case, t.elapsed().as_millis() as u64, pure_ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let total_ms = start.elapsed().as_millis() as u64;

    let mut counters = SuiteCounters {
        total: results.len(),
        ..SuiteCounters::default()
    };
    let mut max_case_ms = 0;
    let mut sum_ms = 0;
    let mut cases = Vec::with_capacity(results.len());
    for (case, ms, pure_ok) in results {
        max_case_ms = max_case_ms.max(ms);
        sum_ms += ms;
        let rep = &case.report;
        if !pure_ok {
            counters.pure_power_failures += 1;
        }
        match rep.inequality {
            Verdict::Skipped(reason) => counters.skipped.bump(reason),
            _ if rep.pure == Some(false) => counters.outside_hypotheses += 1,
            Verdict::Holds => {
                counters.holds += 1;
                if rep.is_equality() {
                    counters.equality_cases += 1;
                }
            }
            Verdict::Violated => counters.violated += 1,
        }
        match rep.corollary {
            Verdict::Holds => counters.corollary_holds += 1,
            Verdict::Violated => counters.corollary_violated += 1,
            _ => {}
        }
        cases.push(case);
    }
    Ok(SuiteReport {
        config: cfg.clone(),
        counters,
        timing: Timing {
            total_ms,
            mean_case_ms: sum_ms / cases.len().max(1) as u64,
            max_case_ms,
        },
        cases,
    })
}
