mod common;

use proptest::prelude::*;
use qdl_lab::fock::{self, ModeConfig, PhotonPattern};
use qdl_lab::mc::{
    self, estimate_c_q, estimate_gamma_q, estimate_moments, estimate_raw_c_q,
    estimate_transition_moments, CacheKind, CacheRecord, Coverage, GammaCache, GammaRecord,
    McOptions, Sampler,
};
use qdl_lab::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(parts: &[u32]) -> PhotonPattern {
    PhotonPattern::new(parts.iter().copied())
}

#[test]
fn mean_examples() {
    let e = estimate_moments(6, 2, &q(&[1, 1]), &McOptions::new(200_000, 1)).unwrap();
    assert!((e.mean - 1.0 / 21.0).abs() < 3.0 * e.stderr_mean, "{e:?}");

    let e = estimate_moments(2, 2, &q(&[2]), &McOptions::new(200_000, 2)).unwrap();
    let oracle = common::quadrature_two_photon_bunched(2);
    assert!((oracle - 1.0 / 3.0).abs() < 1e-6);
    assert!((e.mean - oracle).abs() < 3.0 * e.stderr_mean, "{e:?}");

    let e = estimate_moments(5, 2, &q(&[2]), &McOptions::new(200_000, 3)).unwrap();
    let oracle = common::quadrature_two_photon_bunched(5);
    assert!((oracle - 2.0 / 30.0).abs() < 1e-3, "{oracle}");
    assert!((e.mean - oracle).abs() < 3.0 * e.stderr_mean, "{e:?}");
}

#[test]
fn c_and_raw_c() {
    let opts = McOptions::new(200_000, 5);
    let c111 = estimate_c_q(10, 3, &q(&[1, 1, 1]), &opts).unwrap();
    assert!((c111 - 1.0 / 220.0).abs() / (1.0 / 220.0) < 0.02, "{c111}");
    let raw3 = estimate_raw_c_q(10, 3, &q(&[3]), &opts).unwrap();
    assert!((raw3 - 6.0 / 220.0).abs() / (6.0 / 220.0) < 0.05, "{raw3}");
}

#[test]
fn schur_uniformity_small_spaces() {
    // four sigma: about forty comparisons share one test
    for m in 1..=6usize {
        for n in 1..=3usize.min(m) {
            let d = 1.0 / common::exact_c(m, n);
            for p in fock::enumerate_patterns(m, n).unwrap() {
                let e = estimate_moments(m, n, &p, &McOptions::new(50_000, (m * 10 + n) as u64))
                    .unwrap();
                // a single mode has X ≡ 1 and no spread
                let z = match e.stderr_mean {
                    0.0 if (e.mean * d - 1.0).abs() < 1e-12 => 0.0,
                    0.0 => f64::INFINITY,
                    se => (e.mean * d - 1.0) / (se * d),
                };
                assert!(z.abs() < 4.0, "({m},{n}) {} z={z}", p.dashed());
            }
        }
    }
}

#[test]
fn completeness_of_coefficients() {
    let (m, n) = (5usize, 3usize);
    let (mut total, mut var) = (0.0, 0.0);
    for p in fock::enumerate_patterns(m, n).unwrap() {
        let e = estimate_moments(m, n, &p, &McOptions::new(100_000, 77)).unwrap();
        let dim = p.subspace_dim(m).unwrap() as f64;
        total += e.mean * dim;
        var += (e.stderr_mean * dim).powi(2);
    }
    assert!((total - 1.0).abs() < 3.0 * var.sqrt(), "{total} ± {}", var.sqrt());
}

#[test]
fn bunched_gamma_matches_exact_moments() {
    for &(m, n, samples) in &[(6usize, 2usize, 400_000usize), (10, 3, 400_000), (20, 2, 200_000), (8, 4, 400_000)] {
        let r = estimate_gamma_q(m, n, &PhotonPattern::bunched(n as u32), &McOptions::new(samples, 9))
            .unwrap();
        let exact = common::exact_bunched_two_gamma(m, n);
        assert!(
            (r.two_gamma_q - exact).abs() < 4.0 * r.stderr,
            "({m},{n}) {} ± {} vs {exact}",
            r.two_gamma_q,
            r.stderr
        );
    }
    // closed-form spot values
    assert!((common::exact_bunched_two_gamma(6, 2) - 4.6667).abs() < 1e-3);
    assert!((common::exact_bunched_two_gamma(10, 3) - 7.7363).abs() < 1e-3);
}

#[test]
fn gamma_respects_jensen_and_no_collision_bound() {
    let r = estimate_gamma_q(20, 2, &q(&[1, 1]), &McOptions::new(200_000, 4)).unwrap();
    assert!(r.two_gamma_q >= 2.0 - 3.0 * r.stderr);
    assert!(r.two_gamma_q <= 6.0);
    let r = estimate_gamma_q(10, 1, &q(&[1]), &McOptions::new(200_000, 4)).unwrap();
    // single photon: |U_11|² is Beta(1, m−1), 2γ = 4m/(m+1)
    assert!((r.two_gamma_q - 40.0 / 11.0).abs() < 3.0 * r.stderr);
}

#[test]
fn no_collision_convergence() {
    let mut last = 0.0;
    for m in [10usize, 20, 40] {
        let e = estimate_moments(m, 2, &q(&[1, 1]), &McOptions::new(200_000, 6)).unwrap();
        let ratio = e.mean / (2.0 / (m * m) as f64);
        let exact = m as f64 / (m as f64 + 1.0);
        let se = e.stderr_mean / (2.0 / (m * m) as f64);
        assert!((ratio - exact).abs() < 3.0 * se, "m={m} {ratio} vs {exact}");
        assert!(ratio > last - 3.0 * se);
        last = ratio;
    }
}

#[test]
fn representative_choice_does_not_matter() {
    let (m, n) = (7usize, 3usize);
    let base = estimate_moments(m, n, &q(&[2, 1]), &McOptions::new(100_000, 12)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut modes: Vec<usize> = (0..m).collect();
    for trial in 0..3u64 {
        modes.shuffle(&mut rng);
        let mut psi = vec![0u32; m];
        for &i in &modes[..n] {
            psi[i] = 1;
        }
        modes.shuffle(&mut rng);
        let mut phi = vec![0u32; m];
        phi[modes[0]] = 2;
        phi[modes[1]] = 1;
        let e = estimate_transition_moments(
            &ModeConfig::new(psi).unwrap(),
            &ModeConfig::new(phi).unwrap(),
            &McOptions::new(100_000, 100 + trial),
        )
        .unwrap();
        let se = (e.stderr_mean.powi(2) + base.stderr_mean.powi(2)).sqrt();
        assert!((e.mean - base.mean).abs() < 3.5 * se);
        let gse = (e.stderr_ratio.powi(2) + base.stderr_ratio.powi(2)).sqrt();
        assert!((e.ratio() - base.ratio()).abs() < 3.5 * gse);
    }
}

#[test]
fn column_and_full_unitary_samplers_agree() {
    let opts = McOptions::new(50_000, 21);
    let a = estimate_moments(6, 3, &q(&[2, 1]), &opts).unwrap();
    let b = estimate_moments(6, 3, &q(&[2, 1]), &opts.clone().sampler(Sampler::FullUnitary)).unwrap();
    let se = (a.stderr_mean.powi(2) + b.stderr_mean.powi(2)).sqrt();
    assert!((a.mean - b.mean).abs() < 3.0 * se);
}

#[test]
fn deterministic_across_workers() {
    let base = estimate_moments(10, 3, &q(&[2, 1]), &McOptions::new(30_000, 7).workers(1)).unwrap();
    for w in [2, 8, 0] {
        let e = estimate_moments(10, 3, &q(&[2, 1]), &McOptions::new(30_000, 7).workers(w)).unwrap();
        assert_eq!(e, base, "workers={w}");
    }
    let other = estimate_moments(10, 3, &q(&[2, 1]), &McOptions::new(30_000, 8)).unwrap();
    assert_ne!(other.mean, base.mean);
}

#[test]
fn stderr_shrinks_like_inverse_sqrt() {
    let small = estimate_moments(6, 2, &q(&[1, 1]), &McOptions::new(10_000, 1)).unwrap();
    let big = estimate_moments(6, 2, &q(&[1, 1]), &McOptions::new(160_000, 1)).unwrap();
    let ratio = small.stderr_mean / big.stderr_mean;
    assert!((ratio - 4.0).abs() < 0.6, "{ratio}");
}

#[test]
fn input_validation() {
    let opts = McOptions::new(1000, 1);
    assert!(matches!(estimate_moments(6, 2, &q(&[3]), &opts), Err(Error::Domain(_))));
    assert!(matches!(estimate_moments(2, 3, &q(&[1, 1, 1]), &opts), Err(Error::Domain(_))));
    assert!(matches!(
        estimate_moments(6, 2, &q(&[2]), &McOptions::new(999, 1)),
        Err(Error::Domain(_))
    ));
}

fn rec(m: usize, n: usize, parts: &[u32], v: f64) -> GammaRecord {
    GammaRecord {
        m,
        n,
        q: q(parts),
        two_gamma_q: v,
        stderr: 0.01,
        samples: 1000,
        seed: 1,
    }
}

#[test]
fn gamma_bound_cases() {
    let b = mc::gamma_bound(6, 2, &[rec(6, 2, &[1, 1], 3.770), rec(6, 2, &[2], 4.314)]).unwrap();
    assert_eq!(b.value, 4.314);
    assert_eq!(b.coverage, Coverage::Exhaustive);
    let b = mc::gamma_bound(30, 10, &[rec(30, 10, &[10], 111.5)]).unwrap();
    assert_eq!(b.value, 111.5);
    assert_eq!(b.coverage, Coverage::BunchedConjecture);
    assert!(matches!(mc::gamma_bound(6, 2, &[]), Err(Error::Domain(_))));
    assert!(mc::gamma_bound(6, 2, &[rec(6, 2, &[1, 1], 3.0)]).is_err());
    assert!(mc::gamma_bound(6, 2, &[rec(7, 2, &[2], 3.0)]).is_err());
}

#[test]
fn closed_form_coefficients() {
    assert!((mc::conjectured_c_min(6, 2).unwrap() - 1.0 / 21.0).abs() < 1e-15);
    let (c, g) = mc::no_collision_values(20, 2).unwrap();
    assert!((c - 0.005).abs() < 1e-15);
    assert_eq!(g, 6.0);
    for m in [3usize, 17, 200] {
        let (c, g) = mc::no_collision_values(m, 1).unwrap();
        assert!((c - 1.0 / m as f64).abs() < 1e-15);
        assert_eq!(g, 4.0);
        assert!((mc::conjectured_c_min(m, 1).unwrap() - 1.0 / m as f64).abs() < 1e-15);
    }
    let l = mc::log2_no_collision_c_min(8000, 20).unwrap();
    assert!((l - (-198.24)).abs() < 0.01, "{l}");
}

#[test]
fn cache_roundtrip_and_preference() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.csv");
    assert!(GammaCache::load(&path).unwrap().is_empty());
    let r = estimate_gamma_q(6, 2, &q(&[2]), &McOptions::new(5_000, 3)).unwrap();
    let mut more = r.clone();
    more.samples = 50_000;
    more.two_gamma_q = 4.6;
    GammaCache::append_to(&path, &[CacheRecord::from_gamma(&r)]).unwrap();
    GammaCache::append_to(&path, &[CacheRecord::from_gamma(&more)]).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("m,n")).count(), 1);
    let cache = GammaCache::load(&path).unwrap();
    assert_eq!(cache.len(), 2);
    let hit = cache.lookup(6, 2, &q(&[2]), CacheKind::TwoGamma).unwrap();
    assert_eq!(hit.value, 4.6);
    assert_eq!(cache.bunched_two_gamma(6, 2).unwrap(), 4.6);
    match cache.bunched_two_gamma(6, 3) {
        Err(Error::CacheMiss { missing }) => assert!(missing[0].contains("m=6, n=3")),
        other => panic!("{other:?}"),
    }
    // exact float round trip
    let back = cache.records()[0].clone();
    assert_eq!(back, CacheRecord::from_gamma(&r));
}

#[test]
fn shipped_cache_covers_rate_grid() {
    let cache = GammaCache::shipped();
    for m in [10usize, 20, 30, 40] {
        for n in 1..=m.min(16) {
            let v = cache.bunched_two_gamma(m, n).unwrap();
            assert!(v >= 2.0, "({m},{n}) {v}");
        }
    }
    // the well-sampled corner agrees with the exact moments
    for (m, n) in [(10usize, 3usize), (20, 4), (40, 2)] {
        let r = cache
            .lookup(m, n, &PhotonPattern::bunched(n as u32), CacheKind::TwoGamma)
            .unwrap();
        let exact = common::exact_bunched_two_gamma(m, n);
        assert!((r.value - exact).abs() < 4.0 * r.stderr, "({m},{n})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn estimate_invariants(m in 2usize..8, n in 1usize..4, pick: prop::sample::Index, seed: u64) {
        prop_assume!(n <= m);
        let patterns = fock::enumerate_patterns(m, n).unwrap();
        let p = &patterns[pick.index(patterns.len())];
        let e = estimate_moments(m, n, p, &McOptions::new(4096, seed)).unwrap();
        prop_assert!(e.second_moment >= e.mean * e.mean);
        prop_assert!(e.stderr_mean >= 0.0 && e.stderr_ratio >= 0.0);
        prop_assert!(e.mean > 0.0);
        let g = mc::gamma_record(&e);
        prop_assert!(g.two_gamma_q >= 2.0 - 3.0 * g.stderr);
    }
}
