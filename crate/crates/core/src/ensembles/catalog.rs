//! Named models with their default constants, exponent rules, offsets and drivers.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use super::{
    AGenVariant, AdditiveVariant, AuxDist, BCase, BGenCase, CsVariant, DiagRule, Driver, ExponentProvider, Family,
    ModelSpec, OffsetSpec, ParamRule, Sign, StochasticRule,
};
use crate::{Complex64, Error, Result};

pub struct Entry {
    pub id: &'static str,
    pub description: &'static str,
}

const fn e(id: &'static str, description: &'static str) -> Entry {
    Entry { id, description }
}

/// Every catalogued model id.
pub const ENTRIES: &[Entry] = &[
    e("A1", "sub-class A, a = -q, b = q + 2, constants {1, 1, 1, -1}, shared X offsets"),
    e("A2", "zero-trace sub-class A, secant/cosecant exponents"),
    e("A3", "sub-class A with hyperbolic random exponents in U ~ Rayleigh(2), V = |N(1, 9)|"),
    e("A4", "sub-class A with Bessel-function constant exponents"),
    e("A1-cc1", "real asymmetric sub-class A with conjugate eigenvalues, k = -3"),
    e("A1-cc2", "complex non-Hermitian sub-class A with conjugate eigenvalues, k = -8"),
    e("Anh1", "complex non-Hermitian sub-class A with real eigenvalues, k = 15"),
    e("Ag2", "generalized sub-class A, upper off-diagonal zero, lower off-diagonal V"),
    e("Ag3", "generalized sub-class A, lower off-diagonal zero, upper off-diagonal V"),
    e("B1-I", "sub-class B case I, exponents {1, q + 2}"),
    e("B1-II", "sub-class B case II, exponents {-q, q + 2}"),
    e("B1-III", "sub-class B case III, exponents {q + 2, 1}"),
    e("B2-II", "sub-class B case II with a q-independent exponent"),
    e("Bg-I", "generalized case I of sub-class B with V ~ Exp(1)"),
    e("Bg-III", "generalized case III of sub-class B with V ~ Exp(1)"),
    e("Bcs1", "complex symmetric sub-class B with real eigenvalues, k = 4"),
    e("Bcs2", "complex symmetric sub-class B with conjugate eigenvalues, k = -4"),
    e("C1", "sub-class C, exponents {1/2, 3, -2, 3/2}"),
    e("C2", "sub-class C with hyperbolic q-dependent exponents"),
    e("C3", "sub-class C with trigonometric random exponents, gamma driver"),
    e("E1", "sub-class E with log2 diagonal offsets, k = (c + 2 sinh q)^2"),
    e("E2", "sub-class E with arctan/arccot diagonal offsets"),
    e("G1", "sub-class G with arcsec/arccsc diagonal offsets, k = pi^2/4"),
    e("I1", "sub-class I, exponents {7, -1, 3}"),
    e("I2", "sub-class I with trigonometric q-dependent exponents"),
    e("J1", "class J with trigonometric diagonal functions and arcsin/arccos exponents"),
    e("D1", "square-root diagonal model with off-diagonals c g(X) and -c / g(X)"),
    e("D1-minus", "square-root diagonal model with off-diagonals -c g(X) and c / g(X)"),
    e("D2", "complex-diagonal model with powers a + b = 1 of Y^(2/(q+1)) + c^2"),
    e("D3", "symmetric model with off-diagonals sqrt(Y^(2/(q+1)) - c^2) / 2"),
    e("R", "normal-squares diagonal model, exponents A + B = 4, generalized condition"),
    e("L", "model with independent off-diagonal elements"),
    e("ADD1", "additive model 1"),
    e("ADD2", "additive model 2, exponents {1/2, 3/2}"),
    e("P0", "q = 0 preset with Poisson spacings"),
    e("W1", "q = 1 preset of sub-class A with Wigner spacings"),
];

fn r(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn exp_driver(sigma_e: f64) -> Driver {
    Driver::Exponential { sigma_e }
}

struct Builder {
    spec: ModelSpec,
}

impl Builder {
    fn new(id: &str, family: Family, q: f64, constants: Vec<Complex64>) -> Self {
        Self {
            spec: ModelSpec {
                id: id.to_string(),
                family,
                q,
                constants,
                exponents: ExponentProvider::none(),
                offsets: None,
                aux_v: AuxDist::StdNormal,
                driver: exp_driver(1.0),
            },
        }
    }

    fn exps(mut self, p: ExponentProvider) -> Self {
        self.spec.exponents = p;
        self
    }

    fn rule(self, rule: ParamRule) -> Self {
        self.exps(ExponentProvider::parametric(rule))
    }

    fn fixed(self, v: &[f64]) -> Self {
        self.exps(ExponentProvider::constants(v))
    }

    fn offsets(mut self, rule: DiagRule) -> Self {
        self.spec.offsets = Some(OffsetSpec::diag(rule));
        self
    }

    fn aux(mut self, v: AuxDist) -> Self {
        self.spec.aux_v = v;
        self
    }

    fn driver(mut self, d: Driver) -> Self {
        self.spec.driver = d;
        self
    }

    fn done(self) -> ModelSpec {
        self.spec
    }
}

/// The catalogued model `id` at Brody parameter `q`.
pub fn model(id: &str, q: f64) -> Result<ModelSpec> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("q must lie in [0, 1], got {q}")));
    }
    let a_std = r(&[1.0, 1.0, 1.0, -1.0]);
    let b1 = r(&[1.0, 2.0, -0.5, 1.0, 0.5, 1.0]);
    let b3 = r(&[2.0, 1.0, 2.0, -1.0, 5.0, 3.0]);
    let c2 = r(&[1.0, 0.0, -0.5, 0.5, 0.5, -1.0]);
    let cq = Complex64::new(1.0 + q, 0.0);
    let spec = match id {
        "A1" => Builder::new(id, Family::A, q, a_std).rule(ParamRule::ShiftedPair).offsets(DiagRule::Shared).done(),
        "A2" => Builder::new(id, Family::AZeroTrace, q, a_std).rule(ParamRule::TrigZeroTrace).done(),
        "A3" => Builder::new(id, Family::A, q, a_std)
            .exps(ExponentProvider::stochastic(StochasticRule::HyperbolicUV {
                u: AuxDist::Rayleigh { sigma: 2.0 },
                v: AuxDist::AbsNormalFloored { mean: 1.0, sd: 3.0, floor: 0.25 },
            }))
            .offsets(DiagRule::Shared)
            .driver(exp_driver(LN_2))
            .done(),
        "A4" => Builder::new(id, Family::A, q, a_std).exps(ExponentProvider::bessel()).offsets(DiagRule::Shared).done(),
        "A1-cc1" => Builder::new(id, Family::A, q, r(&[2.0, 1.0, -1.0, 1.0]))
            .rule(ParamRule::ShiftedPair)
            .offsets(DiagRule::Shared)
            .done(),
        "A1-cc2" => Builder::new(id, Family::A, q, vec![c(1.0, 2.0), c(1.0, 1.0), c(1.0, -1.0), c(1.0, -2.0)])
            .rule(ParamRule::ShiftedPair)
            .offsets(DiagRule::Shared)
            .done(),
        "Anh1" => Builder::new(id, Family::A, q, vec![c(3.0, -1.0), c(2.0, 0.5), c(2.0, 0.5), c(1.0, 1.0)])
            .rule(ParamRule::ComplexShift)
            .offsets(DiagRule::Shared)
            .driver(exp_driver(5f64.sqrt()))
            .done(),
        "Ag2" => Builder::new(id, Family::AGeneralized(AGenVariant::C2Zero), q, r(&[1.0, -1.0])).done(),
        "Ag3" => Builder::new(id, Family::AGeneralized(AGenVariant::C3Zero), q, r(&[1.0, -1.0])).done(),
        "B1-I" => Builder::new(id, Family::B(BCase::I), q, b1).rule(ParamRule::CaseIShift).done(),
        "B1-II" => Builder::new(id, Family::B(BCase::II), q, r(&[-2.0, -1.5, 1.5, 2.0 / 3.0, -1.5, -3.0]))
            .rule(ParamRule::ShiftedPair)
            .done(),
        "B1-III" => Builder::new(id, Family::B(BCase::III), q, b3).rule(ParamRule::CaseIIIShift).done(),
        "B2-II" => Builder::new(id, Family::B(BCase::II), q, r(&[-1.0, -1.0, 0.25, 0.25, -1.0, -1.0]))
            .rule(ParamRule::OneMinusQ)
            .done(),
        "Bg-I" => Builder::new(id, Family::BGeneralized(BGenCase::I), q, b1)
            .aux(AuxDist::Exponential { sigma: 1.0 })
            .done(),
        "Bg-III" => Builder::new(id, Family::BGeneralized(BGenCase::III), q, b3)
            .aux(AuxDist::Exponential { sigma: 1.0 })
            .done(),
        "Bcs1" => Builder::new(
            id,
            Family::BComplexSymmetric(CsVariant::Cs1),
            q,
            vec![c(1.0, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(0.0, 0.5), c(0.0, -0.5), c(-1.0, 0.0)],
        )
        .rule(ParamRule::ShiftedPair)
        .driver(exp_driver(100.0))
        .done(),
        "Bcs2" => Builder::new(
            id,
            Family::BComplexSymmetric(CsVariant::Cs2),
            q,
            vec![c(1.0, 0.0), c(0.0, 0.5), c(0.0, 0.5), c(0.0, 0.5), c(0.0, 0.5), c(1.0, 0.0)],
        )
        .rule(ParamRule::TrigZeroTrace)
        .driver(exp_driver(1000.0))
        .done(),
        "C1" => Builder::new(id, Family::C, q, r(&[-1.0, 0.0, -0.5, 0.5, 0.5, 1.0])).fixed(&[0.5, 3.0, -2.0, 1.5]).done(),
        "C2" => Builder::new(id, Family::C, q, c2).rule(ParamRule::CoshC).driver(exp_driver(PI)).done(),
        "C3" => Builder::new(id, Family::C, q, c2)
            .exps(ExponentProvider::stochastic(StochasticRule::TrigV { v: AuxDist::Rayleigh { sigma: 5.0 } }))
            .driver(Driver::Gamma2 { sigma_g: 10.0 })
            .done(),
        "E1" => {
            let cc = 1.0;
            let k = (cc + 2.0 * q.sinh()).powi(2);
            Builder::new(id, Family::E, q, r(&[q.exp(), 0.5 * k, -0.5 * k, -0.5, -0.5, (-q).exp()]))
                .fixed(&[1.0, 1.0])
                .offsets(DiagRule::Log2Pair { c: cc })
                .done()
        }
        "E2" => {
            let cc = -1.0;
            let s = (q + FRAC_PI_4).powi(2);
            Builder::new(id, Family::E, q, r(&[q, cc, 1.0, 0.0, -s, -q]))
                .fixed(&[-2.0, 2.0])
                .offsets(DiagRule::ArctanArccot)
                .done()
        }
        "G1" => {
            let p2 = PI * PI / 4.0;
            Builder::new(id, Family::G, q, r(&[0.0, -PI, 0.25, 1.0, -p2, p2, 0.0, 0.0]))
                .fixed(&[-2.0, -4.0, 2.0, 3.0])
                .offsets(DiagRule::ArcsecArccsc { scale: q })
                .done()
        }
        "I1" => Builder::new(id, Family::I, q, r(&[-1.0, -1.0, 1.0, 1.0, 1.0]))
            .fixed(&[7.0, -1.0, 3.0])
            .offsets(DiagRule::Shared)
            .done(),
        "I2" => Builder::new(id, Family::I, q, r(&[1.0, 1.0, -1.0, -1.0, -1.0]))
            .rule(ParamRule::SinI)
            .offsets(DiagRule::Shared)
            .done(),
        "J1" => Builder::new(id, Family::J, q, r(&[1.0, 1.0, 1.0]))
            .rule(ParamRule::ArcsinArccos)
            .offsets(DiagRule::TrigPair)
            .done(),
        "D1" => Builder::new(id, Family::D1(Sign::Plus), q, vec![cq]).offsets(DiagRule::Zero).done(),
        "D1-minus" => Builder::new(id, Family::D1(Sign::Minus), q, vec![cq]).offsets(DiagRule::Zero).done(),
        "D2" => Builder::new(id, Family::D2, q, vec![cq]).fixed(&[0.25, 0.75]).offsets(DiagRule::Shared).done(),
        "D3" => Builder::new(id, Family::D3, q, vec![cq]).offsets(DiagRule::UnitShift).done(),
        "R" => Builder::new(id, Family::R, q, Vec::new())
            .exps(ExponentProvider::stochastic(StochasticRule::ConstrainedSum {
                a: AuxDist::Uniform { lo: 0.0, hi: 4.0 },
                total: 4.0,
            }))
            .driver(Driver::RayleighSquares { sigma_r: 1.0 })
            .done(),
        "L" => Builder::new(id, Family::L, q, Vec::new()).done(),
        "ADD1" => Builder::new(id, Family::Additive(AdditiveVariant::One), q, Vec::new()).done(),
        "ADD2" => Builder::new(id, Family::Additive(AdditiveVariant::Two), q, Vec::new()).fixed(&[0.5, 1.5]).done(),
        "P0" => Builder::new(id, Family::LimitQ0, q, r(&[-2.0, 0.0, 1.0, 0.0, 1.0, -1.0, -1.0, 0.0]))
            .fixed(&[1.0 / 3.0, 2.0 / 3.0, 1.0])
            .done(),
        "W1" => Builder::new(id, Family::LimitQ1, q, a_std).fixed(&[-1.0, 3.0]).offsets(DiagRule::Shared).done(),
        _ => return Err(Error::UnknownModel(id.to_string())),
    };
    Ok(spec)
}

/// Ids of every catalogued model.
pub fn ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.id).collect()
}

/// Brody parameter at which a preset is defined, if it is restricted to one.
pub fn fixed_q(id: &str) -> Option<f64> {
    match id {
        "P0" => Some(0.0),
        "W1" => Some(1.0),
        _ => None,
    }
}
