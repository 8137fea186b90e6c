//! Driver samplers and the exact spacing laws.
//!
//! Weibull parameters follow the convention used throughout the crate:
//! `Weibull(sigma, tau)` has density `(tau/sigma) w^(tau-1) exp(-w^tau / sigma)`,
//! so an exponential variate `Y ~ Exp(sigma)` maps to `Y^(1/tau) ~ Weibull(sigma, tau)`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::special::{gamma, gamma_p};
use crate::{Error, Result};

/// Scale parameters of the three driver distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleParams {
    pub sigma_e: f64,
    pub sigma_g: f64,
    pub sigma_r: f64,
}

impl ScaleParams {
    pub fn new(sigma_e: f64, sigma_g: f64, sigma_r: f64) -> Result<Self> {
        for (name, v) in [("sigma_e", sigma_e), ("sigma_g", sigma_g), ("sigma_r", sigma_r)] {
            check_positive(name, v)?;
        }
        Ok(Self { sigma_e, sigma_g, sigma_r })
    }
}

impl Default for ScaleParams {
    fn default() -> Self {
        Self { sigma_e: 1.0, sigma_g: 1.0, sigma_r: 1.0 }
    }
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be a finite positive number, got {v}")))
    }
}

fn check_q(q: f64) -> Result<()> {
    if (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("q must lie in [0, 1], got {q}")))
    }
}

// ---------------------------------------------------------------------------
// Samplers

/// Uniform draw on the open interval (0, 1). Zero is rejected and redrawn;
/// the 53-bit construction never yields 1.
pub fn uniform_open<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if u > 0.0 {
            return u;
        }
    }
}

/// Inverse transform of one uniform draw into an exponential variate.
#[inline]
pub fn exponential_from_uniform(u: f64, sigma_e: f64) -> f64 {
    -sigma_e * u.ln()
}

/// `Y ~ Exp(sigma_e)` by inverse transform sampling.
pub fn sample_exponential<R: Rng + ?Sized>(rng: &mut R, sigma_e: f64) -> f64 {
    exponential_from_uniform(uniform_open(rng), sigma_e)
}

/// Erlang-2 variate from two uniforms: the sum of two exponential(sigma_g) draws.
#[inline]
pub fn gamma2_from_uniforms(u1: f64, u2: f64, sigma_g: f64) -> f64 {
    exponential_from_uniform(u1, sigma_g) + exponential_from_uniform(u2, sigma_g)
}

/// `Y ~ Gamma(sigma_g, shape 2)`.
pub fn sample_gamma2<R: Rng + ?Sized>(rng: &mut R, sigma_g: f64) -> f64 {
    let u1 = uniform_open(rng);
    let u2 = uniform_open(rng);
    gamma2_from_uniforms(u1, u2, sigma_g)
}

/// Rayleigh variate with scale `sigma`, by inverse transform.
pub fn sample_rayleigh<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> f64 {
    sigma * (-2.0 * uniform_open(rng).ln()).sqrt()
}

pub fn sample_normal<R: Rng + ?Sized>(rng: &mut R, mean: f64, sd: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    mean + sd * z
}

// ---------------------------------------------------------------------------
// Spacing laws

/// The exact spacing laws. Every variant except `Weibull` and
/// `GeneralizedGamma` is mean-scaled (unit mean).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum SpacingLaw {
    Poisson,
    Wigner,
    Brody { q: f64 },
    SemiPoisson,
    Ginibre,
    BrodyII { q: f64 },
    Weibull { sigma: f64, tau: f64 },
    GeneralizedGamma { ell: f64, omega: f64, big_omega: f64 },
}

/// `alpha(q) = Gamma((q+2)/(q+1))^(q+1)`, the Brody normalisation.
pub fn brody_alpha(q: f64) -> f64 {
    gamma((q + 2.0) / (q + 1.0)).powf(q + 1.0)
}

/// `alpha(q) = Gamma((2q+3)/(q+1))^(q+1)` for the Brody-II law.
pub fn brody2_alpha(q: f64) -> f64 {
    gamma((2.0 * q + 3.0) / (q + 1.0)).powf(q + 1.0)
}

/// Level-repulsion exponent of the Brody-II law, `2q + 1`.
pub fn brody2_beta(q: f64) -> f64 {
    2.0 * q + 1.0
}

/// 1 - (1 + t) e^{-t}, accurate for small t.
fn erlang2_tail_complement(t: f64) -> f64 {
    if t < 0.05 {
        // sum_{n>=2} (-1)^n (n-1) t^n / n!
        let mut term = t;
        let mut sum = 0.0;
        for n in 2..20 {
            term *= -t / n as f64;
            sum += -(n as f64 - 1.0) * term;
        }
        sum
    } else {
        -(-t).exp_m1() - t * (-t).exp()
    }
}

impl SpacingLaw {
    pub fn brody(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Self::Brody { q })
    }

    pub fn brody2(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Self::BrodyII { q })
    }

    pub fn weibull(sigma: f64, tau: f64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        check_positive("tau", tau)?;
        Ok(Self::Weibull { sigma, tau })
    }

    pub fn generalized_gamma(ell: f64, omega: f64, big_omega: f64) -> Result<Self> {
        check_positive("ell", ell)?;
        check_positive("omega", omega)?;
        check_positive("Omega", big_omega)?;
        Ok(Self::GeneralizedGamma { ell, omega, big_omega })
    }

    /// Re-checks the parameter ranges (useful after deserialisation).
    pub fn validated(self) -> Result<Self> {
        match self {
            Self::Brody { q } => Self::brody(q),
            Self::BrodyII { q } => Self::brody2(q),
            Self::Weibull { sigma, tau } => Self::weibull(sigma, tau),
            Self::GeneralizedGamma { ell, omega, big_omega } => {
                Self::generalized_gamma(ell, omega, big_omega)
            }
            other => Ok(other),
        }
    }

    /// Whether the law describes mean-scaled spacings (population mean 1).
    pub fn is_mean_scaled(&self) -> bool {
        !matches!(self, Self::Weibull { .. } | Self::GeneralizedGamma { .. })
    }

    pub fn name(&self) -> String {
        match self {
            Self::Poisson => "poisson".into(),
            Self::Wigner => "wigner".into(),
            Self::Brody { q } => format!("brody(q={q})"),
            Self::SemiPoisson => "semi-poisson".into(),
            Self::Ginibre => "ginibre".into(),
            Self::BrodyII { q } => format!("brody2(q={q})"),
            Self::Weibull { sigma, tau } => format!("weibull(sigma={sigma},tau={tau})"),
            Self::GeneralizedGamma { ell, omega, big_omega } => {
                format!("gen-gamma(ell={ell},omega={omega},Omega={big_omega})")
            }
        }
    }

    /// Exact density at `z >= 0`.
    ///
    /// A Weibull law with `tau < 1` has a pole at the origin; `pdf(0)` then
    /// returns `f64::INFINITY`. Negative `z` has density 0.
    pub fn pdf(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        match *self {
            Self::Poisson => (-z).exp(),
            Self::Wigner => 0.5 * PI * z * (-0.25 * PI * z * z).exp(),
            Self::Brody { q } => {
                let a = brody_alpha(q);
                a * (q + 1.0) * z.powf(q) * (-a * z.powf(q + 1.0)).exp()
            }
            Self::SemiPoisson => 4.0 * z * (-2.0 * z).exp(),
            Self::Ginibre => {
                let c = 81.0 * PI * PI / 128.0;
                c * z.powi(3) * (-(9.0 * PI / 16.0) * z * z).exp()
            }
            Self::BrodyII { q } => {
                let a = brody2_alpha(q);
                a * a * (q + 1.0) * z.powf(brody2_beta(q)) * (-a * z.powf(q + 1.0)).exp()
            }
            Self::Weibull { sigma, tau } => {
                if z == 0.0 && tau < 1.0 {
                    return f64::INFINITY;
                }
                (tau / sigma) * z.powf(tau - 1.0) * (-z.powf(tau) / sigma).exp()
            }
            Self::GeneralizedGamma { ell, omega, big_omega } => {
                if z == 0.0 && omega < 1.0 {
                    return f64::INFINITY;
                }
                let norm = big_omega / (ell.powf(omega) * gamma(omega / big_omega));
                norm * z.powf(omega - 1.0) * (-(z / ell).powf(big_omega)).exp()
            }
        }
    }

    /// Exact cumulative distribution function.
    pub fn cdf(&self, z: f64) -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::Poisson => -(-z).exp_m1(),
            Self::Wigner => -(-0.25 * PI * z * z).exp_m1(),
            Self::Brody { q } => -(-brody_alpha(q) * z.powf(q + 1.0)).exp_m1(),
            Self::SemiPoisson => erlang2_tail_complement(2.0 * z),
            Self::Ginibre => erlang2_tail_complement(9.0 * PI / 16.0 * z * z),
            Self::BrodyII { q } => erlang2_tail_complement(brody2_alpha(q) * z.powf(q + 1.0)),
            Self::Weibull { sigma, tau } => -(-z.powf(tau) / sigma).exp_m1(),
            Self::GeneralizedGamma { ell, omega, big_omega } => {
                gamma_p(omega / big_omega, (z / ell).powf(big_omega))
            }
        }
    }

    /// Exact population mean.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Weibull { sigma, tau } => sigma.powf(1.0 / tau) * gamma(1.0 + 1.0 / tau),
            Self::GeneralizedGamma { ell, omega, big_omega } => {
                ell * gamma((omega + 1.0) / big_omega) / gamma(omega / big_omega)
            }
            _ => 1.0,
        }
    }

    /// Coefficient of variation (standard deviation over mean).
    pub fn cv(&self) -> f64 {
        // every law here is a power-transformed gamma variate: X = c * G^(1/s),
        // G ~ Gamma(shape); moments follow from Gamma(shape + m/s).
        let (shape, s) = match *self {
            Self::Poisson => (1.0, 1.0),
            Self::Wigner => (1.0, 2.0),
            Self::Brody { q } => (1.0, q + 1.0),
            Self::SemiPoisson => (2.0, 1.0),
            Self::Ginibre => (2.0, 2.0),
            Self::BrodyII { q } => (2.0, q + 1.0),
            Self::Weibull { tau, .. } => (1.0, tau),
            Self::GeneralizedGamma { omega, big_omega, .. } => (omega / big_omega, big_omega),
        };
        let m1 = gamma(shape + 1.0 / s) / gamma(shape);
        let m2 = gamma(shape + 2.0 / s) / gamma(shape);
        (m2 / (m1 * m1) - 1.0).sqrt()
    }

    /// Inverse CDF. Closed form where one exists, otherwise bisection on `cdf`.
    pub fn quantile(&self, p: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        if p >= 1.0 {
            return f64::INFINITY;
        }
        let e = -(-p).ln_1p();
        match *self {
            Self::Poisson => e,
            Self::Wigner => (4.0 * e / PI).sqrt(),
            Self::Brody { q } => (e / brody_alpha(q)).powf(1.0 / (q + 1.0)),
            Self::Weibull { sigma, tau } => (sigma * e).powf(1.0 / tau),
            _ => {
                let mut hi = self.mean().max(1.0);
                while self.cdf(hi) < p {
                    hi *= 2.0;
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < p {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= 1e-15 * hi {
                        break;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    /// Draws one variate from the law by inverse transform.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(uniform_open(rng))
    }

    /// The named law a one-parameter family collapses to at `q = 0` or `q = 1`.
    pub fn canonical(self) -> Self {
        match self {
            Self::Brody { q: 0.0 } => Self::Poisson,
            Self::Brody { q: 1.0 } => Self::Wigner,
            Self::BrodyII { q: 0.0 } => Self::SemiPoisson,
            Self::BrodyII { q: 1.0 } => Self::Ginibre,
            other => other,
        }
    }

    pub fn parse(id: &str, q: f64, sigma: f64, tau: f64) -> Result<Self> {
        match id.to_ascii_lowercase().as_str() {
            "poisson" => Ok(Self::Poisson),
            "wigner" => Ok(Self::Wigner),
            "brody" => Self::brody(q),
            "semi-poisson" | "semipoisson" => Ok(Self::SemiPoisson),
            "ginibre" => Ok(Self::Ginibre),
            "brody2" | "brody-ii" => Self::brody2(q),
            "weibull" => Self::weibull(sigma, tau),
            other => Err(Error::UnknownLaw(other.to_string())),
        }
    }
}

/// Free-function form of [`SpacingLaw::pdf`].
pub fn law_pdf(law: &SpacingLaw, z: f64) -> f64 {
    law.pdf(z)
}

/// Free-function form of [`SpacingLaw::cdf`].
pub fn law_cdf(law: &SpacingLaw, z: f64) -> f64 {
    law.cdf(z)
}

/// Free-function form of [`SpacingLaw::mean`].
pub fn law_mean(law: &SpacingLaw) -> f64 {
    law.mean()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const E: f64 = std::f64::consts::E;

    fn all_laws() -> Vec<SpacingLaw> {
        vec![
            SpacingLaw::Poisson,
            SpacingLaw::Wigner,
            SpacingLaw::Brody { q: 0.0 },
            SpacingLaw::Brody { q: 0.37 },
            SpacingLaw::Brody { q: 1.0 },
            SpacingLaw::SemiPoisson,
            SpacingLaw::Ginibre,
            SpacingLaw::BrodyII { q: 0.0 },
            SpacingLaw::BrodyII { q: 0.6 },
            SpacingLaw::BrodyII { q: 1.0 },
            SpacingLaw::Weibull { sigma: 2.0, tau: 1.5 },
            SpacingLaw::Weibull { sigma: 0.5, tau: 1.0 },
            SpacingLaw::GeneralizedGamma { ell: 1.3, omega: 2.0, big_omega: 1.5 },
        ]
    }

    /// Composite Simpson quadrature, used as the independent integration oracle.
    fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let n = n + n % 2;
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        s * h / 3.0
    }

    fn upper_limit(law: &SpacingLaw) -> f64 {
        let mut z = 1.0;
        while 1.0 - law.cdf(z) > 1e-13 {
            z *= 1.25;
        }
        z
    }

    #[test]
    fn exponential_inverse_transform_examples() {
        assert_eq!(exponential_from_uniform(1.0, 1.0), 0.0);
        assert!((exponential_from_uniform(1.0 / E, 1.0) - 1.0).abs() < 1e-15);
        let ln2 = 2f64.ln();
        assert!((exponential_from_uniform(1.0 / E, ln2) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((gamma2_from_uniforms(1.0 / E, 1.0 / E, 1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn law_pdf_examples() {
        let b0 = SpacingLaw::brody(0.0).unwrap();
        assert!((b0.pdf(1.0) - 0.367_879_441_171_442_3).abs() < 1e-12);
        assert_eq!(SpacingLaw::Brody { q: 0.4 }.pdf(0.0), 0.0);
        assert_eq!(SpacingLaw::BrodyII { q: 0.4 }.pdf(0.0), 0.0);
        let s0 = SpacingLaw::BrodyII { q: 0.0 };
        assert!((s0.pdf(1.0) - 4.0 * (-2.0f64).exp()).abs() < 1e-12);
        assert!((s0.pdf(1.0) - 0.541_341_132_946_451).abs() < 1e-12);
        let b1 = SpacingLaw::Brody { q: 1.0 };
        assert!((b1.pdf(1.0) - 0.5 * PI * (-PI / 4.0).exp()).abs() < 1e-12);
        assert!((b1.pdf(1.0) - 0.716_185_936_340_569).abs() < 1e-12);
        assert_eq!(SpacingLaw::Wigner.pdf(0.0), 0.0);
    }

    #[test]
    fn weibull_pole_sentinel() {
        let w = SpacingLaw::Weibull { sigma: 1.0, tau: 0.5 };
        assert!(w.pdf(0.0).is_infinite());
        assert!(w.pdf(1e-3).is_finite());
        assert_eq!(SpacingLaw::Weibull { sigma: 2.0, tau: 1.0 }.pdf(0.0), 0.5);
    }

    #[test]
    fn law_cdf_examples() {
        assert_eq!(SpacingLaw::Brody { q: 0.3 }.cdf(0.0), 0.0);
        let b0 = SpacingLaw::Brody { q: 0.0 };
        assert!((b0.cdf(2f64.ln()) - 0.5).abs() < 1e-15);
        let s0 = SpacingLaw::BrodyII { q: 0.0 };
        assert_eq!(s0.cdf(0.0), 0.0);
        for &z in &[1e-4f64, 0.01, 0.3, 1.0, 2.5] {
            let closed = 1.0 - (1.0 + 2.0 * z) * (-2.0 * z).exp();
            let quad = simpson(|t| s0.pdf(t), 0.0, z, 2000);
            assert!((s0.cdf(z) - quad).abs() < 1e-12, "z={z}");
            assert!((s0.cdf(z) - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn law_mean_examples() {
        assert!((SpacingLaw::Weibull { sigma: 1.0, tau: 1.0 }.mean() - 1.0).abs() < 1e-14);
        assert_eq!(SpacingLaw::Brody { q: 0.7 }.mean(), 1.0);
        let gg = SpacingLaw::GeneralizedGamma { ell: 1.0, omega: 2.0, big_omega: 1.0 };
        assert!((gg.mean() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn brody_alpha_endpoints() {
        assert!((brody_alpha(0.0) - 1.0).abs() < 1e-12);
        assert!((brody_alpha(1.0) - PI / 4.0).abs() < 1e-12);
        assert_eq!(brody2_beta(0.5), 2.0);
    }

    #[test]
    fn normalization_and_mean_by_quadrature() {
        for law in all_laws() {
            let zmax = upper_limit(&law);
            // z = u^4 smooths the z^q cusp at the origin.
            let umax = zmax.powf(0.25);
            let mass = simpson(|u| 4.0 * u.powi(3) * law.pdf(u.powi(4)), 0.0, umax, 200_000);
            assert!((mass - 1.0).abs() < 1e-9, "{} mass {mass}", law.name());
            let mean = simpson(|u| 4.0 * u.powi(7) * law.pdf(u.powi(4)), 0.0, umax, 200_000);
            assert!((mean - law.mean()).abs() < 1e-9, "{} mean {mean}", law.name());
        }
    }

    #[test]
    fn cdf_matches_pdf_by_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = 1e-5;
        for _ in 0..10 {
            let q: f64 = rng.random();
            let sigma = 0.2 + 3.0 * rng.random::<f64>();
            let tau = 0.6 + 2.0 * rng.random::<f64>();
            let laws = [
                SpacingLaw::Brody { q },
                SpacingLaw::BrodyII { q },
                SpacingLaw::Weibull { sigma, tau },
                SpacingLaw::GeneralizedGamma { ell: sigma, omega: 1.0 + tau, big_omega: tau },
                SpacingLaw::Poisson,
                SpacingLaw::Wigner,
                SpacingLaw::SemiPoisson,
                SpacingLaw::Ginibre,
            ];
            for law in laws {
                let zmax = upper_limit(&law).min(8.0);
                for i in 1..=100 {
                    let z = zmax * i as f64 / 101.0;
                    let fd = (law.cdf(z + h) - law.cdf(z - h)) / (2.0 * h);
                    assert!((fd - law.pdf(z)).abs() < 1e-6, "{} z={z}", law.name());
                }
            }
        }
    }

    #[test]
    fn endpoint_collapse() {
        let pairs = [
            (SpacingLaw::Brody { q: 0.0 }, SpacingLaw::Poisson),
            (SpacingLaw::Brody { q: 1.0 }, SpacingLaw::Wigner),
            (SpacingLaw::BrodyII { q: 0.0 }, SpacingLaw::SemiPoisson),
            (SpacingLaw::BrodyII { q: 1.0 }, SpacingLaw::Ginibre),
        ];
        for (a, b) in pairs {
            let mut worst: f64 = 0.0;
            for i in 0..=5000 {
                let z = 5.0 * i as f64 / 5000.0;
                worst = worst.max((a.pdf(z) - b.pdf(z)).abs());
            }
            assert!(worst < 1e-12, "{} vs {}: {worst:e}", a.name(), b.name());
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        for law in all_laws() {
            for &p in &[1e-6, 0.01, 0.3, 0.5, 0.9, 0.999] {
                let z = law.quantile(p);
                assert!((law.cdf(z) - p).abs() < 1e-12, "{} p={p}", law.name());
            }
        }
    }

    #[test]
    fn cv_matches_quadrature() {
        for law in all_laws() {
            let zmax = upper_limit(&law);
            let m2 = simpson(|z| z * z * law.pdf(z), 0.0, zmax, 200_000);
            let m = law.mean();
            let cv = (m2 - m * m).sqrt() / m;
            assert!((cv - law.cv()).abs() < 1e-8, "{}", law.name());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SpacingLaw::brody(1.5).is_err());
        assert!(SpacingLaw::weibull(0.0, 1.0).is_err());
        assert!(ScaleParams::new(1.0, -2.0, 1.0).is_err());
        assert!(ScaleParams::new(1.0, 2.0, 0.1).is_ok());
    }
}
