use brody_core::dist::{brody_alpha, sample_exponential, sample_gamma2, sample_normal, sample_rayleigh};
use brody_core::ensembles::catalog::model;
use brody_core::mat2::DEFAULT_IMAG_TOL;
use brody_core::rng::stream;
use brody_core::sim::{histogram, ks_statistic, ks_threshold, run, run_with_threads};
use brody_core::{Complex64, Matrix2, PairKind, SimConfig, SpacingLaw};
use proptest::prelude::*;
use statrs::distribution::{ContinuousCDF, Exp, Gamma, Normal, Weibull};

const N: usize = 100_000;

fn ks_against<C: ContinuousCDF<f64, f64>>(mut xs: Vec<f64>, oracle: &C) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = oracle.cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

fn draws(seed: u64, mut f: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> f64) -> Vec<f64> {
    let mut rng = stream(seed, 0);
    (0..N).map(|_| f(&mut rng)).collect()
}

#[test]
fn exponential_sampler_matches_reference() {
    let xs = draws(11, |r| sample_exponential(r, 2.5));
    let d = ks_against(xs, &Exp::new(1.0 / 2.5).unwrap());
    assert!(d < ks_threshold(N), "{d}");
}

#[test]
fn gamma_sampler_matches_reference() {
    let xs = draws(12, |r| sample_gamma2(r, 10.0));
    let d = ks_against(xs, &Gamma::new(2.0, 0.1).unwrap());
    assert!(d < ks_threshold(N), "{d}");
}

#[test]
fn normal_and_rayleigh_samplers_match_reference() {
    let xs = draws(13, |r| sample_normal(r, 1.0, 3.0));
    assert!(ks_against(xs, &Normal::new(1.0, 3.0).unwrap()) < ks_threshold(N));
    // Rayleigh(sigma) is Weibull(shape 2, scale sigma sqrt 2)
    let xs = draws(14, |r| sample_rayleigh(r, 5.0));
    assert!(ks_against(xs, &Weibull::new(2.0, 5.0 * 2f64.sqrt()).unwrap()) < ks_threshold(N));
}

#[test]
fn law_cdfs_match_reference_weibull_and_gamma() {
    for q in [0.0, 0.3, 0.5, 0.9, 1.0] {
        let tau = q + 1.0;
        let brody = Weibull::new(tau, brody_alpha(q).powf(-1.0 / tau)).unwrap();
        let weibull = Weibull::new(tau, 3.0f64.powf(1.0 / tau)).unwrap();
        for i in 1..200 {
            let z = i as f64 * 0.025;
            let ours = SpacingLaw::Brody { q }.cdf(z);
            assert!((ours - brody.cdf(z)).abs() < 1e-13, "brody q={q} z={z}");
            let ours = SpacingLaw::Weibull { sigma: 3.0, tau }.cdf(z);
            assert!((ours - weibull.cdf(z)).abs() < 1e-13, "weibull q={q} z={z}");
        }
    }
    // (Z/ell)^Omega ~ Gamma(omega/Omega, 1)
    let (ell, omega, big) = (1.7, 3.0, 1.5);
    let g = Gamma::new(omega / big, 1.0).unwrap();
    for i in 1..200 {
        let z = i as f64 * 0.03;
        let ours = SpacingLaw::GeneralizedGamma { ell, omega, big_omega: big }.cdf(z);
        assert!((ours - g.cdf((z / ell).powf(big))).abs() < 1e-12, "z={z}");
    }
}

#[test]
fn law_samplers_pass_their_own_ks() {
    for law in [SpacingLaw::Brody { q: 0.4 }, SpacingLaw::BrodyII { q: 0.7 }, SpacingLaw::Wigner] {
        let mut xs = draws(15, |r| law.sample(r));
        xs.sort_by(f64::total_cmp);
        assert!(ks_statistic(&xs, &law) < ks_threshold(N), "{}", law.name());
    }
}

#[test]
fn wigner_histogram_tracks_the_density() {
    let law = SpacingLaw::Brody { q: 1.0 };
    let mut rng = stream(16, 0);
    let xs: Vec<f64> = (0..1_000_000).map(|_| law.sample(&mut rng)).collect();
    let h = histogram(&xs, 100, 4.0).unwrap();
    let kept = (h.total() - h.overflow) as f64 / h.total() as f64;
    for (i, d) in h.densities.iter().enumerate() {
        let mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
        assert!((d * kept - SpacingLaw::Wigner.pdf(mid)).abs() < 0.01, "bin {i}");
    }
}

#[test]
fn runs_are_bitwise_identical_across_workers() {
    let config = SimConfig::new(model("A3", 0.5).unwrap(), 20_000, 99);
    let one = run_with_threads(&config, 1).unwrap();
    for t in [2, 8] {
        assert_eq!(one, run_with_threads(&config, t).unwrap());
    }
}

#[test]
fn gamma_driver_reaches_brody_two() {
    let config = SimConfig::new(model("C3", 0.5).unwrap(), N, 7);
    assert_eq!(config.law, SpacingLaw::BrodyII { q: 0.5 });
    let mut set = run(&config).unwrap();
    set.scaled.sort_by(f64::total_cmp);
    assert!(ks_statistic(&set.scaled, &config.law) < ks_threshold(N));
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn histogram_mass_is_one(xs in prop::collection::vec(0.0f64..6.0, 1..400), bins in 1usize..64) {
        prop_assume!(xs.iter().any(|&x| x <= 4.0));
        let h = histogram(&xs, bins, 4.0).unwrap();
        let mass: f64 = h.densities.iter().zip(h.edges.windows(2)).map(|(d, e)| d * (e[1] - e[0])).sum();
        prop_assert!((mass - 1.0).abs() <= 1e-10);
        prop_assert_eq!(h.total(), xs.len() as u64);
    }

    #[test]
    fn scaled_sample_has_unit_mean(seed in any::<u64>(), n in 1usize..3000, q in 0.0f64..=1.0) {
        let set = run(&SimConfig::new(model("B1-II", q).unwrap(), n, seed)).unwrap();
        let mean = set.scaled.iter().sum::<f64>() / n as f64;
        prop_assert!((mean - 1.0).abs() <= 1e-12 * n as f64);
        for (s, z) in set.spacings.iter().zip(&set.scaled) {
            prop_assert_eq!(*z, s / set.sample_mean);
        }
    }

    #[test]
    fn eigenvalues_reproduce_trace_and_determinant(a in complex(), b in complex(), c in complex(), d in complex()) {
        let m = Matrix2::new(a, b, c, d);
        let p = m.eigenvalues();
        let scale = 1.0 + m.norm().powi(2);
        prop_assert!((p.plus + p.minus - m.trace()).norm() <= 1e-10 * (1.0 + m.norm()));
        prop_assert!((p.plus * p.minus - m.det()).norm() <= 1e-10 * scale);
        prop_assert!(m.char_poly_residual(p.plus) <= 1e-10 * scale);
        prop_assert!(m.char_poly_residual(p.minus) <= 1e-10 * scale);
    }

    #[test]
    fn real_matrices_give_real_or_conjugate_pairs(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3, d in -1e3f64..1e3) {
        let p = Matrix2::real(a, b, c, d).eigenvalues_with_tol(DEFAULT_IMAG_TOL);
        prop_assert!(matches!(p.kind, PairKind::RealPair | PairKind::ConjugatePair));
    }
}
