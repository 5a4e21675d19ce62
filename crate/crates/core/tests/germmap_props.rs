mod common;

use common::{oracle_colength_mod_p, oracle_mu_mod_p, ring};
use germlab::catalog::{
    full_catalog, random_finite_map, random_isolated_germ, theorem_pool, triangular_map, MAX_ATTEMPTS,
};
use germlab::germmap::{local_multiplicity, pullback, reduced_preimage, verify_theorem};
use germlab::milnor::milnor_oracle;
use germlab::parse::{parse_map, parse_polynomial};
use germlab::suite::{run_suite, MapSource, SuiteConfig};
use germlab::{Error, MapGerm, MilnorResult, Multiplicity, Polynomial, SkipReason, Verdict};
use proptest::prelude::*;

fn xy(text: &str) -> Polynomial {
    parse_polynomial(text, &ring(2)).unwrap()
}

fn map2(text: &str) -> MapGerm {
    parse_map(text, &ring(2)).unwrap()
}

/// `pullback = c * h^r` for a nonzero constant `c`.
fn is_constant_multiple_of_power(pullback: &Polynomial, h: &Polynomial, r: u32) -> bool {
    pullback
        .divide_exact(&h.pow(r))
        .is_ok_and(|q| q.is_constant() && !q.is_zero())
}

fn gradient_gcd_is_constant(h: &Polynomial) -> bool {
    let mut g = h.clone();
    for d in h.gradient() {
        g = g.gcd(&d).unwrap();
    }
    g.is_constant()
}

#[test]
fn map_germ_validation() {
    let r = ring(2);
    assert_eq!(
        MapGerm::new(vec![xy("x")]).unwrap_err(),
        Error::ArityMismatch { expected: 2, got: 1 }
    );
    assert_eq!(
        MapGerm::new(vec![xy("x"), xy("1 + y")]).unwrap_err(),
        Error::NotOriginPreserving { index: 1 }
    );
    assert_eq!(MapGerm::identity(&r).to_string(), "x; y");
}

#[test]
fn multiplicity_examples() {
    assert_eq!(local_multiplicity(&map2("x; y")).unwrap(), Multiplicity::Finite(1));
    assert_eq!(local_multiplicity(&map2("x^2; y^3")).unwrap(), Multiplicity::Finite(6));
    assert_eq!(local_multiplicity(&map2("x; x*y")).unwrap(), Multiplicity::NotFinite);
    assert_eq!(local_multiplicity(&map2("x^2; y^2")).unwrap(), Multiplicity::Finite(4));
}

#[test]
fn multiplicity_of_a_composition() {
    let f = map2("x^2; y^2");
    let g = map2("x^3; y^3");
    assert_eq!(local_multiplicity(&f.compose(&g).unwrap()).unwrap(), Multiplicity::Finite(36));
}

#[test]
fn pullback_examples() {
    assert_eq!(pullback(&xy("x^3 - y^2"), &map2("x; y^2")).unwrap(), xy("x^3 - y^4"));
    assert_eq!(pullback(&xy("x^2 + y^2"), &map2("x; y^2")).unwrap(), xy("x^2 + y^4"));
    let g = xy("x^5 - 3/2*x*y + y^7");
    assert_eq!(pullback(&g, &MapGerm::identity(&ring(2))).unwrap(), g);
    assert_eq!(pullback(&xy("1 + x"), &map2("x; y")).unwrap_err(), Error::NotThroughOrigin);
}

#[test]
fn reduced_preimage_examples() {
    let pre = reduced_preimage(&xy("x"), &map2("x^2; y")).unwrap();
    assert_eq!((pre.h.clone(), pre.r, pre.pure), (xy("x"), 2, true));

    let pre = reduced_preimage(&xy("x^3 - y^2"), &map2("x; y^2")).unwrap();
    assert!(pre.h.is_unit_multiple_of(&xy("x^3 - y^4")));
    assert_eq!((pre.r, pre.pure), (1, true));

    let pre = reduced_preimage(&xy("x*y"), &map2("x^2; y")).unwrap();
    assert_eq!(pre.pullback, xy("x^2*y"));
    assert!(pre.h.is_unit_multiple_of(&xy("x*y")));
    assert_eq!((pre.r, pre.pure), (1, false));

    let pre = reduced_preimage(&xy("y"), &map2("x; (x + y)*(x + y)")).unwrap();
    assert!(pre.h.is_unit_multiple_of(&xy("x + y")));
    assert_eq!((pre.r, pre.pure), (2, true));

    let pre = reduced_preimage(&xy("x^2 - y^3"), &map2("x^3; y^2")).unwrap();
    assert!(pre.h.is_unit_multiple_of(&xy("x^6 - y^6")));
    assert_eq!((pre.r, pre.pure), (1, true));

    assert_eq!(reduced_preimage(&xy("x - y"), &map2("x; x")).unwrap_err(), Error::ZeroPullback);
}

#[test]
fn verification_examples() {
    let report = verify_theorem(&xy("x^3 - y^2"), &map2("x; y^2"));
    assert_eq!(report.mu_v, Some(MilnorResult::Finite(2)));
    assert_eq!(report.mu_w, Some(MilnorResult::Finite(6)));
    assert_eq!((report.r, report.pure), (Some(1), Some(true)));
    assert_eq!(report.inequality, Verdict::Holds);
    assert_eq!(report.corollary, Verdict::Holds);

    let report = verify_theorem(&xy("x + y"), &map2("x^2; y^2"));
    assert_eq!(report.mu_v, Some(MilnorResult::SmoothPoint));
    assert!(report.h.as_ref().unwrap().is_unit_multiple_of(&xy("x^2 + y^2")));
    assert_eq!(report.mu_w, Some(MilnorResult::Finite(1)));
    assert_eq!(report.inequality, Verdict::Holds);

    let report = verify_theorem(&xy("x^2 + y^3"), &map2("y; x"));
    assert_eq!(report.mu_v, Some(MilnorResult::Finite(2)));
    assert!(report.is_equality());

    let report = verify_theorem(&xy("x^3 - y^2"), &map2("x; x*y"));
    assert_eq!(report.multiplicity, Some(Multiplicity::NotFinite));
    assert_eq!(report.inequality, Verdict::Skipped(SkipReason::MapNotFinite));
    assert_eq!(report.corollary, Verdict::Skipped(SkipReason::MapNotFinite));

    let r3 = ring(3);
    let umbrella = parse_polynomial("x^2 - y^2*z", &r3).unwrap();
    let report = verify_theorem(&umbrella, &MapGerm::identity(&r3));
    assert_eq!(report.mu_v, Some(MilnorResult::NonIsolated));
    assert_eq!(report.inequality, Verdict::Skipped(SkipReason::NonIsolatedV));

    let report = verify_theorem(&xy("1 + x"), &map2("x; y"));
    assert_eq!(report.mu_v, Some(MilnorResult::NotThroughOrigin));
    assert!(matches!(report.inequality, Verdict::Skipped(_)));
}

#[test]
fn reports_reduce_the_input_germ() {
    let report = verify_theorem(&xy("(x^3 - y^2)*(x^3 - y^2)"), &map2("x; y"));
    assert!(report.g_reduced.as_ref().unwrap().is_unit_multiple_of(&xy("x^3 - y^2")));
    assert_eq!(report.mu_v, Some(MilnorResult::Finite(2)));
    assert!(report.is_equality());
}

#[test]
fn identity_map_gives_equality_on_the_pool() {
    for n in [2, 3] {
        let id = MapGerm::identity(&ring(n));
        for entry in theorem_pool(n).unwrap() {
            let report = verify_theorem(&entry.germ, &id);
            assert!(report.is_equality(), "{}", entry.name);
            assert_eq!(report.mu_v, Some(MilnorResult::Finite(entry.expected_mu)));
        }
    }
}

#[test]
fn catalog_is_self_consistent() {
    for entry in full_catalog().unwrap() {
        assert_eq!(entry.check(), Ok(()), "{}", entry.name);
        let cap = if entry.germ.nvars() == 2 { 24 } else { 20 };
        assert_eq!(milnor_oracle(&entry.germ, cap).unwrap(), entry.expected_mu, "{}", entry.name);
        if entry.germ.nvars() == 2 {
            assert_eq!(oracle_mu_mod_p(&entry.germ, 24), Some(entry.expected_mu), "{}", entry.name);
        }
    }
}

#[test]
fn generators_are_deterministic_and_sound() {
    for n in [2, 3] {
        for seed in [0u64, 42, 7_000_000_007] {
            let map = random_finite_map(n, 3, seed).unwrap();
            assert_eq!(map, random_finite_map(n, 3, seed).unwrap());
            assert!(matches!(local_multiplicity(&map).unwrap(), Multiplicity::Finite(_)));
            let germ = random_isolated_germ(n, 4, seed).unwrap();
            assert_eq!(germ, random_isolated_germ(n, 4, seed).unwrap());
        }
    }
    assert!(MAX_ATTEMPTS <= 20);
    assert!(random_finite_map(4, 3, 1).is_err());
    assert!(random_finite_map(2, 1, 1).is_err());
    assert!(random_isolated_germ(2, 1, 1).is_err());
}

#[test]
fn triangular_map_with_unit_exponents_is_the_identity() {
    let r = ring(2);
    let zero = Polynomial::zero(&r);
    let map = triangular_map(&r, &[1, 1], vec![zero.clone(), zero]).unwrap();
    assert_eq!(map, MapGerm::identity(&r));
    assert_eq!(local_multiplicity(&map).unwrap(), Multiplicity::Finite(1));
}

#[test]
fn small_suite_examples() {
    let cfg = SuiteConfig {
        num_cases: 10,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg).unwrap();
    assert_eq!(report.cases.len(), 10);
    assert_eq!(report.counters.violated, 0);
    assert!(report.success());

    let again = run_suite(&cfg).unwrap();
    let strip = |r: &germlab::suite::SuiteReport| {
        let mut v = serde_json::to_value(r).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    assert_eq!(strip(&report), strip(&again));

    let identity = SuiteConfig {
        num_cases: 1,
        map_source: MapSource::Identity,
        ..SuiteConfig::default()
    };
    assert_eq!(run_suite(&identity).unwrap().counters.equality_cases, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplicity_is_multiplicative(s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = random_finite_map(2, 2, s1).unwrap();
        let g = random_finite_map(2, 2, s2).unwrap();
        let mf = local_multiplicity(&f).unwrap().finite().unwrap();
        let mg = local_multiplicity(&g).unwrap().finite().unwrap();
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(local_multiplicity(&fg).unwrap(), Multiplicity::Finite(mf * mg));
    }

    #[test]
    fn multiplicity_matches_the_modular_oracle(seed in any::<u64>(), n in 2usize..=3) {
        let f = random_finite_map(n, 3, seed).unwrap();
        let m = local_multiplicity(&f).unwrap().finite().unwrap();
        prop_assert_eq!(oracle_colength_mod_p(f.components(), n, 30), Some(m));
    }

    #[test]
    fn preimage_laws_on_random_pairs(seed in any::<u64>(), index in 0usize..64) {
        let pool = theorem_pool(2).unwrap();
        let g = &pool[index % pool.len()].germ;
        let map = random_finite_map(2, 3, seed).unwrap();
        let pre = reduced_preimage(g, &map).unwrap();
        prop_assert!(gradient_gcd_is_constant(&pre.h));
        prop_assert!(pre.pullback.divide_exact(&pre.h).is_ok());
        if pre.pure {
            prop_assert!(is_constant_multiple_of_power(&pre.pullback, &pre.h, pre.r));
            prop_assert!(!is_constant_multiple_of_power(&pre.pullback, &pre.h, pre.r + 1));
        } else {
            prop_assert_eq!(pre.r, 1);
        }
    }

    #[test]
    fn theorem_and_corollary_on_random_pairs(seed in any::<u64>(), index in 0usize..64) {
        let pool = theorem_pool(2).unwrap();
        let g = &pool[index % pool.len()].germ;
        let map = random_finite_map(2, 2, seed).unwrap();
        let report = verify_theorem(g, &map);
        prop_assert!(!report.inequality.is_violated(), "{:?}", report);
        prop_assert!(!report.corollary.is_violated(), "{:?}", report);
        // Colength w puts m^w inside the ideal, so the oracle stabilizes by
        // degree w + 1.
        if let (Some(MilnorResult::Finite(w)), Some(h)) = (report.mu_w, report.h.as_ref()) {
            if w <= 40 {
                prop_assert_eq!(oracle_mu_mod_p(h, w as u32 + 1), Some(w));
            }
        }
    }

    #[test]
    fn smooth_germs_stay_below_their_preimages(seed in any::<u64>(), a in -3i64..=3, b in 1i64..=3) {
        // g = x + a*y^b is smooth, so mu(V) = 0 and the inequality is free;
        // the corollary must still hold whatever mu(W) is.
        let g = &xy("x") + &xy("y").pow(b as u32).scale(&germlab::polyring::integer(a));
        let map = random_finite_map(2, 3, seed).unwrap();
        let report = verify_theorem(&g, &map);
        prop_assert_eq!(report.mu_v, Some(MilnorResult::SmoothPoint));
        prop_assert!(!report.inequality.is_violated());
        prop_assert!(!report.corollary.is_violated());
    }
}
