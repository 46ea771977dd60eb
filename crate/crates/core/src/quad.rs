//! Double-exponential quadrature at arbitrary precision.
//!
//! Finite intervals use the tanh-sinh map, semi-infinite ones the exp-sinh map.
//! The step is halved level by level, reusing every abscissa of the previous
//! level, until two successive estimates agree to half the tolerance.

use rayon::prelude::*;
use rug::float::Constant as MpfrConstant;
use rug::Float;
use thiserror::Error;

use crate::mpcore::{MpError, PrecisionCtx, Real};

/// Doublings of the step after the initial unit step.
pub const MAX_LEVELS: u32 = 12;
const MIN_LEVELS: u32 = 3;

#[derive(Debug, Clone)]
pub enum Domain {
    Finite { lo: Real, hi: Real },
    SemiInfinite { lo: Real },
}

impl Domain {
    pub fn finite(lo: Real, hi: Real) -> Domain {
        Domain::Finite { lo, hi }
    }

    pub fn semi_infinite(lo: Real) -> Domain {
        Domain::SemiInfinite { lo }
    }
}

/// An abscissa together with its exact distances to the interval ends.
///
/// Close to a nonzero endpoint `x` may round onto the endpoint itself while
/// the offset stays positive. Integrands singular at such an endpoint must
/// use `from_lo` / `to_hi` instead of `x - lo`.
#[derive(Debug, Clone)]
pub struct Point {
    pub x: Real,
    pub from_lo: Real,
    pub to_hi: Option<Real>,
}

#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: Real,
    pub error_estimate: Real,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Error)]
pub enum QuadError {
    #[error("no convergence after {MAX_LEVELS} step halvings; best value {} with estimate {}",
        .best.value.to_decimal(20), .best.error_estimate.to_decimal(3))]
    NotConverged { best: QuadratureResult },
    #[error("integrand failed at x={x}: {source}")]
    Integrand { x: String, source: MpError },
    #[error("integrand is not finite at x={x}")]
    NonFinite { x: String },
    #[error("empty or reversed interval")]
    InvalidDomain,
    #[error("tolerance {tol} is below what {digits} digits can certify")]
    ToleranceTooSmall { tol: String, digits: u32 },
}

struct Rule<'a> {
    domain: &'a Domain,
    bits: u32,
    half_pi: Float,
    // finite: half-width
    half: Float,
    t_lo: f64,
    t_hi: f64,
}

impl<'a> Rule<'a> {
    fn new(domain: &'a Domain, ctx: &PrecisionCtx) -> Result<Rule<'a>, QuadError> {
        let bits = ctx.bits();
        let half_pi = Float::with_val(bits, MpfrConstant::Pi) / 2u32;
        let ln2 = std::f64::consts::LN_2;
        let b = f64::from(bits);
        match domain {
            Domain::Finite { lo, hi } => {
                if !(lo < hi) {
                    return Err(QuadError::InvalidDomain);
                }
                let half = Float::with_val(bits, &hi.0 - &lo.0) / 2u32;
                // endpoint offsets fall below 2^(-2 bits - 20) of the half-width,
                // enough for x^(-s) singularities up to s = 1/2 and beyond
                let v = (b + 11.0) * ln2;
                let t = (v / std::f64::consts::FRAC_PI_2).asinh();
                Ok(Rule { domain, bits, half_pi, half, t_lo: -t, t_hi: t })
            }
            Domain::SemiInfinite { .. } => {
                let v_hi = (b + 10.0) * ln2;
                let v_lo = (2.0 * b + 20.0) * ln2;
                Ok(Rule {
                    domain,
                    bits,
                    half_pi,
                    half: Float::new(bits),
                    t_lo: -(v_lo / std::f64::consts::FRAC_PI_2).asinh(),
                    t_hi: (v_hi / std::f64::consts::FRAC_PI_2).asinh(),
                })
            }
        }
    }

    /// Abscissa and weight at `t`, or `None` once the offset underflows.
    fn node(&self, t: f64) -> Option<(Point, Float)> {
        let bits = self.bits;
        let t = Float::with_val(bits, t);
        let v = Float::with_val(bits, &self.half_pi * Float::with_val(bits, t.sinh_ref()));
        let cosh_t = Float::with_val(bits, t.cosh_ref());
        match self.domain {
            Domain::Finite { lo, hi } => {
                let ev = Float::with_val(bits, Float::with_val(bits, &v * 2u32).exp_ref());
                let one_plus = Float::with_val(bits, &ev + 1u32);
                let two_half = Float::with_val(bits, &self.half * 2u32);
                let to_hi = Float::with_val(bits, &two_half / &one_plus);
                let from_lo = Float::with_val(bits, &two_half - &to_hi);
                let from_lo = if t.is_sign_negative() {
                    Float::with_val(bits, &two_half * &ev) / &one_plus
                } else {
                    from_lo
                };
                let x = if t.is_sign_negative() {
                    Float::with_val(bits, &lo.0 + &from_lo)
                } else {
                    Float::with_val(bits, &hi.0 - &to_hi)
                };
                if from_lo.is_zero() || to_hi.is_zero() {
                    return None;
                }
                // half · (π/2) cosh t · 4 e^{2v} / (1 + e^{2v})²
                let w = Float::with_val(bits, &self.half * &self.half_pi) * cosh_t * 4u32 * &ev
                    / Float::with_val(bits, one_plus.square_ref());
                let p = Point { x: Real(x), from_lo: Real(from_lo), to_hi: Some(Real(to_hi)) };
                Some((p, w))
            }
            Domain::SemiInfinite { lo } => {
                let e = Float::with_val(bits, v.exp_ref());
                let x = Float::with_val(bits, &lo.0 + &e);
                if e.is_zero() {
                    return None;
                }
                let w = Float::with_val(bits, &self.half_pi * cosh_t) * &e;
                Some((Point { x: Real(x), from_lo: Real(e), to_hi: None }, w))
            }
        }
    }
}

fn short(x: &Float) -> String {
    format!("{:.12e}", x.to_f64())
}

/// Integrates `f` over `domain` to absolute tolerance `tol`.
///
/// The integrand may be called from several threads at once.
pub fn integrate<F>(f: F, domain: &Domain, tol: &Real, ctx: &PrecisionCtx) -> Result<QuadratureResult, QuadError>
where
    F: Fn(&Point) -> Result<Real, MpError> + Sync,
{
    let min_tol = ctx.pow10(-(ctx.digits() as i32) + 5);
    if *tol < min_tol || !(tol.is_finite()) {
        return Err(QuadError::ToleranceTooSmall { tol: tol.to_decimal(6), digits: ctx.digits() });
    }
    let rule = Rule::new(domain, ctx)?;
    let bits = rule.bits;

    let eval_level = |ts: Vec<f64>| -> Result<(Float, u64), QuadError> {
        let terms: Vec<Result<Option<Float>, QuadError>> = ts
            .par_iter()
            .map(|&t| {
                let Some((p, w)) = rule.node(t) else { return Ok(None) };
                let y = f(&p).map_err(|source| QuadError::Integrand { x: short(&p.x.0), source })?;
                if !y.is_finite() {
                    return Err(QuadError::NonFinite { x: short(&p.x.0) });
                }
                Ok(Some(Float::with_val(bits, &y.0 * &w)))
            })
            .collect();
        let mut sum = Float::with_val(bits, 0);
        let mut n = 0u64;
        for term in terms {
            if let Some(v) = term? {
                sum += v;
                n += 1;
            }
        }
        Ok((sum, n))
    };

    // level 0: integer t
    let ts: Vec<f64> = ((rule.t_lo.floor() as i64)..=(rule.t_hi.ceil() as i64))
        .map(|j| j as f64)
        .filter(|t| *t >= rule.t_lo - 1.0 && *t <= rule.t_hi + 1.0)
        .collect();
    let (mut total, mut evaluations) = eval_level(ts)?;
    let mut h = 1.0f64;
    let mut prev = Float::with_val(bits, &total * h);
    let tiny = {
        let e = ctx.epsilon();
        e.0
    };
    let half_tol = Float::with_val(bits, &tol.0 / 2u32);
    let mut last_diff = Float::with_val(bits, rug::float::Special::Infinity);

    for level in 1..=MAX_LEVELS {
        h /= 2.0;
        let first = (rule.t_lo / h).floor() as i64;
        let last = (rule.t_hi / h).ceil() as i64;
        let ts: Vec<f64> = (first..=last).filter(|j| j.rem_euclid(2) == 1).map(|j| j as f64 * h).collect();
        let (s, n) = eval_level(ts)?;
        total += s;
        evaluations += n;
        let est = Float::with_val(bits, &total * h);
        let diff = Float::with_val(bits, &est - &prev).abs();
        let floor = Float::with_val(bits, est.abs_ref()) * &tiny + &tiny;
        let err = if diff > floor { diff.clone() } else { floor };
        if level >= MIN_LEVELS && diff < half_tol {
            return Ok(QuadratureResult { value: Real(est), error_estimate: Real(err), evaluations });
        }
        last_diff = err;
        prev = est;
    }
    Err(QuadError::NotConverged {
        best: QuadratureResult { value: Real(prev), error_estimate: Real(last_diff), evaluations },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::default()
    }

    #[test]
    fn nodes_are_interior() {
        let c = ctx();
        let d = Domain::finite(c.int(2), c.int(3));
        let rule = Rule::new(&d, &c).unwrap();
        for t in [rule.t_lo, -3.0, -0.5, 0.0, 0.5, 3.0, rule.t_hi] {
            if let Some((p, w)) = rule.node(t) {
                assert!(p.x >= 2 && p.x <= 3);
                assert!(p.from_lo > 0 && *p.to_hi.as_ref().unwrap() > 0);
                assert!(w > 0);
                let back = c.int(2) + &p.from_lo;
                assert!((back - &p.x).abs() <= c.epsilon() * 4);
            }
        }
    }

    #[test]
    fn offsets_resolve_past_the_endpoint() {
        let c = ctx();
        let d = Domain::finite(c.int(2), c.int(3));
        let rule = Rule::new(&d, &c).unwrap();
        let (p, _) = rule.node(-4.5).unwrap();
        // far below one ulp of 2, yet representable as an offset
        assert!(p.from_lo < c.pow10(-60));
        assert!(p.from_lo > 0);
    }

    #[test]
    fn rejects_reversed_interval_and_tiny_tolerance() {
        let c = ctx();
        let f = |p: &Point| Ok(p.x.clone());
        let d = Domain::finite(c.one(), c.zero());
        assert!(matches!(integrate(f, &d, &c.pow10(-20), &c), Err(QuadError::InvalidDomain)));
        let d = Domain::finite(c.zero(), c.one());
        assert!(matches!(integrate(f, &d, &c.pow10(-50), &c), Err(QuadError::ToleranceTooSmall { .. })));
    }

    #[test]
    fn integrand_errors_propagate() {
        let c = ctx();
        let d = Domain::finite(c.int(-1), c.one());
        let r = integrate(|p: &Point| p.x.ln(), &d, &c.pow10(-20), &c);
        assert!(matches!(r, Err(QuadError::Integrand { .. })));
    }

    #[test]
    fn non_convergence_reports_best() {
        let c = ctx();
        let d = Domain::finite(c.zero(), c.one());
        // sin(1/x)-like oscillation is out of scope for the rule
        let r = integrate(|p: &Point| Ok((c.int(1000) / &p.x).sin()), &d, &c.pow10(-40), &c);
        match r {
            Err(QuadError::NotConverged { best }) => assert!(best.error_estimate > 0),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
