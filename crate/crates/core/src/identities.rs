//! Named catalog of Clausen and dilogarithm identities with residual
//! evaluators.
//!
//! Every entry evaluates `LHS − RHS` as a single expression. Parametric
//! entries are sampled from a seeded generator; fixed-point entries are
//! evaluated once.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::feynman::{
    c_closed, derive, i1_closed_form, i2_closed_form, q_values, r_values, s_values, FeynmanError, MassPair,
};
use crate::mpcore::{Complex, MpError, PrecisionCtx, Real};
use crate::polylog::{cl2, li2, li2_real};

/// Distance kept from the boundary of every sampling domain.
pub const SAMPLE_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("sample count must be positive")]
    NoSamples,
    #[error("sampling domain of `{0}` is empty")]
    EmptyDomain(String),
    #[error("expected {expected} parameters, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Feynman(#[from] FeynmanError),
    #[error(transparent)]
    Mp(#[from] MpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Proven,
    Conjectural,
}

/// Where the parameters of an identity are drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampler {
    /// No parameters.
    Fixed,
    /// One parameter, uniform in `(lo, hi)`.
    Interval { lo: f64, hi: f64 },
    /// `(x, y)` with `x, y > m` and `x + y < 1 − m`.
    Simplex,
    /// Masses `(a, b)` with `a, b > m` and `a² + b² < 4 − m`.
    QuarterDisk,
}

type Builder = fn(&[Real], &PrecisionCtx) -> Result<Real, IdentityError>;

#[derive(Clone)]
pub struct IdentitySpec {
    pub name: &'static str,
    /// `(name, domain)` pairs.
    pub parameters: Vec<(&'static str, &'static str)>,
    pub status: Status,
    pub sampler: Sampler,
    builder: Builder,
}

impl std::fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("name", &self.name)
            .field("parameters", &self.parameters)
            .field("status", &self.status)
            .field("sampler", &self.sampler)
            .finish()
    }
}

impl IdentitySpec {
    /// Residual at the given parameters. Single-relation entries return the
    /// signed value, multi-relation entries the largest magnitude.
    pub fn residual(&self, params: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
        let expected = self.parameters.len();
        if params.len() != expected {
            return Err(IdentityError::Arity { expected, got: params.len() });
        }
        (self.builder)(params, ctx)
    }

    pub fn is_fixed(&self) -> bool {
        self.sampler == Sampler::Fixed
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Result<Vec<f64>, IdentityError> {
        let m = SAMPLE_MARGIN;
        let empty = || IdentityError::EmptyDomain(self.name.to_string());
        Ok(match self.sampler {
            Sampler::Fixed => vec![],
            Sampler::Interval { lo, hi } => {
                if !(lo < hi) {
                    return Err(empty());
                }
                vec![rng.gen_range(lo..hi)]
            }
            Sampler::Simplex => loop {
                let (x, y) = (rng.gen_range(m..1.0), rng.gen_range(m..1.0));
                if x + y < 1.0 - m {
                    break vec![x, y];
                }
            },
            Sampler::QuarterDisk => loop {
                let (a, b) = (rng.gen_range(m..2.0), rng.gen_range(m..2.0));
                if a * a + b * b < 4.0 - m {
                    break vec![a, b];
                }
            },
        })
    }
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    pub status: Status,
    pub samples: usize,
    pub max_residual: Real,
    pub digits: u32,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(name: &str, status: Status, samples: usize, max_residual: Real, digits: u32) -> IdentityReport {
        let pass = max_residual < pass_threshold(digits);
        IdentityReport { name: name.to_string(), status, samples, max_residual, digits, pass }
    }
}

/// `10^(−digits+10)`.
pub fn pass_threshold(digits: u32) -> Real {
    use rug::ops::Pow;
    Real::from_float(rug::Float::with_val(64, 10).pow(10 - digits as i32))
}

fn spec(
    name: &'static str,
    parameters: &[(&'static str, &'static str)],
    status: Status,
    sampler: Sampler,
    builder: Builder,
) -> IdentitySpec {
    IdentitySpec { name, parameters: parameters.to_vec(), status, sampler, builder }
}

const MASSES: [(&str, &str); 2] = [("a", "a > 0, a^2 + b^2 < 4"), ("b", "b > 0, a^2 + b^2 < 4")];
const UNIT_X: [(&str, &str); 1] = [("x", "0 < x < 1")];

pub fn catalog() -> Vec<IdentitySpec> {
    use Sampler::*;
    use Status::*;
    let m = SAMPLE_MARGIN;
    let unit = Interval { lo: m, hi: 1.0 - m };
    let mut v = vec![
        spec("conj-1.1", &[], Proven, Fixed, conj_1_1),
        spec("conj-1.2", &[], Proven, Fixed, conj_1_2),
        spec("conj-1.3", &[], Proven, Fixed, conj_1_3),
        spec("conj-1.4", &[], Conjectural, Fixed, conj_1_4),
        spec("theorem-1", &[("t", "0 < t < 1")], Proven, Interval { lo: 0.01, hi: 0.99 }, theorem_1),
        spec("prop-1", &MASSES, Proven, QuarterDisk, prop_1),
        spec("prop-2", &MASSES, Proven, QuarterDisk, prop_2),
        spec("duplication", &[("x", "real")], Proven, Interval { lo: -10.0, hi: 10.0 }, duplication),
        spec("q-relations", &MASSES, Proven, QuarterDisk, q_relations),
        spec("i1-plus-i2", &MASSES, Proven, QuarterDisk, i1_plus_i2),
        spec("r-relations", &MASSES, Proven, QuarterDisk, r_relations),
        spec("rs-relations", &MASSES, Proven, QuarterDisk, rs_relations),
        spec("angle-relations", &MASSES, Proven, QuarterDisk, angle_relations),
        spec("broadhurst-c11", &[], Proven, Fixed, broadhurst_c11),
        spec("prop1-T-checks", &MASSES, Proven, QuarterDisk, prop1_t_checks),
        spec("prop2-log-checks", &MASSES, Proven, QuarterDisk, prop2_log_checks),
        spec("lewin-1.1", &UNIT_X, Proven, unit, lewin_1_1),
        spec("lewin-1.2", &UNIT_X, Proven, unit, lewin_1_2),
        spec("lewin-1.3", &UNIT_X, Proven, unit, lewin_1_3),
        spec("lewin-1.4", &[("x", "0 < x, x + y < 1"), ("y", "0 < y, x + y < 1")], Proven, Simplex, lewin_1_4),
        spec("lewin-1.5", &UNIT_X, Proven, unit, lewin_1_5),
        spec("harmonic-closed-form", &[("z", "0 < z < 1; also z = -i/sqrt(8)")], Proven, unit, harmonic_closed_form),
        spec("harmonic-gf", &UNIT_X, Proven, unit, harmonic_gf),
    ];
    for (k, f) in CHAIN.iter().enumerate() {
        v.push(spec(CHAIN_NAMES[k], &[], Proven, Fixed, *f));
    }
    v.push(spec("broadhurst-series", &[], Proven, Fixed, broadhurst_series_residual));
    v.push(spec("r5-r11-tan-form", &MASSES, Proven, QuarterDisk, r5_r11_tan_form));
    v
}

pub fn find(name: &str) -> Result<IdentitySpec, IdentityError> {
    catalog().into_iter().find(|s| s.name == name).ok_or_else(|| IdentityError::UnknownIdentity(name.to_string()))
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Maximum residual of `name` over `samples` seeded parameter draws.
/// Fixed-point identities are evaluated once whatever `samples` is.
pub fn verify(name: &str, samples: usize, seed: u64, ctx: &PrecisionCtx) -> Result<IdentityReport, IdentityError> {
    let s = find(name)?;
    if samples == 0 {
        return Err(IdentityError::NoSamples);
    }
    let n = if s.is_fixed() { 1 } else { samples };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ name_hash(name));
    let draws: Vec<Vec<f64>> = (0..n).map(|_| s.draw(&mut rng)).collect::<Result<_, _>>()?;
    let residuals: Vec<Real> = draws
        .par_iter()
        .map(|p| {
            let params: Vec<Real> = p.iter().map(|v| ctx.real(*v)).collect();
            s.residual(&params, ctx).map(|r| r.abs())
        })
        .collect::<Result<_, _>>()?;
    let max = residuals.into_iter().fold(ctx.zero(), Real::max);
    Ok(IdentityReport::new(name, s.status, n, max, ctx.digits()))
}

// ---------------------------------------------------------------------------
// Shared angles

fn cl(x: Real, ctx: &PrecisionCtx) -> Real {
    cl2(&x, ctx)
}

/// tan α = 1/√2.
fn alpha_tan(ctx: &PrecisionCtx) -> Real {
    ctx.ratio(1, 2).sqrt().expect("positive").atan()
}

/// tan β = √8 + √3.
fn beta_tan(ctx: &PrecisionCtx) -> Real {
    (ctx.int(8).sqrt().expect("positive") + ctx.int(3).sqrt().expect("positive")).atan()
}

/// sin α = 1/3.
fn alpha_sin(ctx: &PrecisionCtx) -> Real {
    ctx.ratio(1, 3).asin().expect("in range")
}

/// `2α_c − (π/2 − α_s)` with tan α_c = 1/√2 and sin α_s = 1/3; zero.
pub fn alpha_bridge(ctx: &PrecisionCtx) -> Real {
    alpha_tan(ctx) * 2 - (ctx.pi() / 2 - alpha_sin(ctx))
}

/// `4√2 (Cl₂(4α) − Cl₂(2α))` with sin α = 1/3.
pub fn broadhurst_constant(ctx: &PrecisionCtx) -> Real {
    let a = alpha_sin(ctx);
    ctx.int(32).sqrt().expect("positive") * (cl(&a * 4, ctx) - cl(&a * 2, ctx))
}

fn max_abs(v: impl IntoIterator<Item = Real>, ctx: &PrecisionCtx) -> Real {
    v.into_iter().fold(ctx.zero(), |m, x| m.max(x.abs()))
}

fn masses(p: &[Real], ctx: &PrecisionCtx) -> Result<MassPair, IdentityError> {
    Ok(MassPair::new(p[0].clone(), p[1].clone(), ctx)?)
}

// ---------------------------------------------------------------------------
// Fixed Clausen identities

fn conj_1_1(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let (a, pi) = (alpha_tan(ctx), ctx.pi());
    Ok(cl(a.clone(), ctx) + cl(&pi - &a, ctx) + cl(&pi / 3 - &a, ctx)
        - cl(&pi * 2 / 3 - &a, ctx)
        - cl(&pi * 2 / 3, ctx) * 7 / 4)
}

fn conj_1_2(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let (a, pi) = (alpha_tan(ctx), ctx.pi());
    Ok(cl(&a * 6 - &pi, ctx) + cl(&pi + &a * 2, ctx) - cl(&a * 2, ctx) * 2 + cl(&pi - &a * 4, ctx) * 2)
}

fn conj_1_3(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let (a, b, pi) = (alpha_tan(ctx), beta_tan(ctx), ctx.pi());
    Ok(cl(&pi - &b * 2, ctx) + cl(&b * 2 - &a * 4, ctx) + cl(&b * 2 - &a * 2, ctx)
        - cl(&b * 2 + &a * 2 - &pi, ctx)
        - cl(&a * 2, ctx)
        - cl(&pi - &a * 4, ctx) * 2
        - cl(&pi + &a * 2, ctx) * 2)
}

/// The five Clausen values whose integer combination
/// `−12, 4, −12, −18, 7` is conjectured to vanish.
pub fn conj_1_4_values(ctx: &PrecisionCtx) -> Vec<Real> {
    let (a, b, pi) = (alpha_tan(ctx), beta_tan(ctx), ctx.pi());
    vec![
        cl((&b - &a) * 2, ctx),
        cl(&pi - &a * 4, ctx),
        cl(&pi - &b * 2, ctx),
        cl(&pi + &a * 2, ctx),
        cl(&a * 4, ctx),
    ]
}

pub const CONJ_1_4_COEFFS: [i64; 5] = [-12, 4, -12, -18, 7];

fn conj_1_4(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let v = conj_1_4_values(ctx);
    Ok(v.iter().zip(CONJ_1_4_COEFFS).fold(ctx.zero(), |acc, (x, k)| acc + x * ctx.int(k)))
}

fn broadhurst_c11(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let m = MassPair::new(ctx.one(), ctx.one(), ctx)?;
    Ok(c_closed(&m, ctx)? - broadhurst_constant(ctx))
}

// ---------------------------------------------------------------------------
// Parametric Clausen identities

fn theorem_1(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let pi = ctx.pi();
    let a = p[0].atan() * 2;
    let b = a.sin().atan() * 2;
    Ok(cl(&pi - &b * 2, ctx) - cl(b.clone(), ctx) * 2 - cl(&pi - &b, ctx) * 2
        + cl(a.clone(), ctx) * 2
        + cl(&pi - &a, ctx) * 2
        + cl(&b - &a, ctx) * 2
        - cl(&pi - &a - &b, ctx) * 2)
}

struct PropAngles {
    gamma: Real,
    phi: Real,
    phi_a: Real,
    phi_b: Real,
}

fn prop_angles(p: &[Real], ctx: &PrecisionCtx) -> Result<PropAngles, IdentityError> {
    let (a, b) = (&p[0], &p[1]);
    let d = (ctx.int(4) - a.square() - b.square()).sqrt()?;
    let pp = a + b + 2;
    let u = (b.square() * 2 + b * 4).sqrt()?;
    Ok(PropAngles {
        gamma: ((&pp + &u) / &d).atan(),
        phi: (&d / &pp).atan(),
        phi_a: (&d / a).atan(),
        phi_b: (&d / b).atan(),
    })
}

fn prop_1(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let PropAngles { gamma: g, phi: ph, phi_a: pa, .. } = prop_angles(p, ctx)?;
    let pi = ctx.pi();
    Ok(cl((&g + &pa) * 2 - &pi, ctx) * 2 + cl((&g + &ph) * 2 - &pi, ctx) * 2 + cl(&pa * 2 - &ph * 4, ctx)
        - cl((&g - &ph + &pa) * 2 - &pi, ctx) * 2
        + cl(&pi - &g * 2, ctx) * 2
        + cl(&ph * 4, ctx)
        - cl(&pa * 2, ctx)
        - cl(&ph * 2, ctx) * 4)
}

fn prop_2(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let PropAngles { phi: ph, phi_a: pa, phi_b: pb, .. } = prop_angles(p, ctx)?;
    Ok(cl(&ph * 2, ctx) * 2 - cl(&pb * 2, ctx) * 4 + cl(&pb * 4, ctx) + cl((&pb - &ph) * 2, ctx) * 2
        - cl((&pa - &ph) * 2, ctx) * 2
        + cl(&pa * 2 - &ph * 4, ctx)
        + cl((&pa + &pb - &ph) * 2, ctx) * 2
        - cl(&pa * 2 + &pb * 4 - &ph * 4, ctx))
}

/// The three unit ratios of the first proposition's differential, each
/// as numerator minus denominator.
fn prop1_t_checks(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let PropAngles { gamma: g, phi: ph, phi_a: pa, .. } = prop_angles(p, ctx)?;
    let h = ctx.pi() / 2;
    let s1 = (&g + &pa - &h).sin();
    let s2 = (&g + &ph - &h).sin();
    let s3 = (&g - &ph + &pa - &h).sin();
    let s4 = (&pa - &ph * 2).sin();
    let t1 = &s1 * &s2 - &s3 * (&h - &g).sin();
    let t2 = s1.square() * &s4 - s3.square() * pa.sin();
    let t3 = &s2 * &s3 * (&ph * 2).sin() - &s4 * ph.sin().square();
    Ok(max_abs([t1, t2, t3], ctx))
}

/// The three log arguments of the second proposition's differential.
fn prop2_log_checks(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let PropAngles { phi: ph, phi_a: pa, phi_b: pb, .. } = prop_angles(p, ctx)?;
    let sa = (&pa - &ph).sin();
    let sb = (&pb - &ph).sin();
    let sab = (&pa + &pb - &ph).sin();
    let sa2 = (&pa - &ph * 2).sin();
    let sab2 = (&pa + &pb * 2 - &ph * 2).sin();
    let l1 = ph.sin() * &sa * &sab2 - &sb * &sa2 * &sab;
    let l2 = &sa2 * sab.square() - sa.square() * &sab2;
    let l3 = (&pb * 2).sin() * &sb * &sab - pb.sin().square() * &sab2;
    Ok(max_abs([l1, l2, l3], ctx))
}

fn duplication(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let x = &p[0];
    Ok(cl(x * 2, ctx) - cl(x.clone(), ctx) * 2 + cl(ctx.pi() - x, ctx) * 2)
}

fn clausen_vectors(p: &[Real], ctx: &PrecisionCtx) -> Result<[Vec<Real>; 3], IdentityError> {
    let g = derive(&masses(p, ctx)?, ctx)?;
    // index 0 unused so that q[k] is qₖ
    let pad = |v: Vec<crate::feynman::ClausenValue>| {
        std::iter::once(ctx.zero()).chain(v.into_iter().map(|c| c.value)).collect::<Vec<_>>()
    };
    Ok([pad(q_values(&g, ctx)), pad(r_values(&g, ctx)), pad(s_values(&g, ctx))])
}

fn q_relations(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let [q, _, _] = clausen_vectors(p, ctx)?;
    Ok(max_abs(
        [
            &q[1] - &q[5] * 2 + &q[8] * 2,
            &q[2] - &q[9] * 2 + &q[4] * 2,
            &q[3] - &q[6],
            &q[4] * 2 + &q[7] - &q[8] * 2 - &q[10] * 2 + &q[11] * 2 - &q[12] * 2 + &q[13] * 2,
        ],
        ctx,
    ))
}

fn i1_plus_i2(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let g = derive(&masses(p, ctx)?, ctx)?;
    Ok(i1_closed_form(&g, ctx).evaluate(ctx) + i2_closed_form(&g, ctx).evaluate(ctx))
}

/// Pairs `(i, j, sign)` with `rᵢ = sign · rⱼ`.
pub const R_RELATIONS: [(usize, usize, i64); 6] = [(2, 9, 1), (5, 11, 1), (4, 13, -1), (1, 15, 1), (8, 17, -1), (6, 18, 1)];

fn r_relations(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let [_, r, _] = clausen_vectors(p, ctx)?;
    Ok(max_abs(R_RELATIONS.iter().map(|&(i, j, s)| &r[i] - &r[j] * ctx.int(s)), ctx))
}

fn rs_relations(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let [_, r, s] = clausen_vectors(p, ctx)?;
    Ok(max_abs(
        [
            -(&r[10] * 2) - &r[11] * 2 - &r[14] + &r[15] * 2 - &r[19] * 2 - &s[1] + &s[6] + &s[8] * 4,
            &r[3] - &s[4],
            &r[7] + &s[2],
            &r[9] - &s[3],
            &r[12] + &s[7],
            &r[16] - &s[5],
            &r[18] - &s[8],
        ],
        ctx,
    ))
}

fn angle_relations(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let g = derive(&masses(p, ctx)?, ctx)?;
    Ok(max_abs(g.invariant_residuals(ctx)?.into_iter().map(|(_, r)| r), ctx))
}

/// `r₅ = r₁₁` after taking tangents, cleared of denominators.
fn r5_r11_tan_form(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let (a, b) = (&p[0], &p[1]);
    let c = (ctx.int(4) - b.square()).sqrt()?;
    let d = (ctx.int(4) - a.square() - b.square()).sqrt()?;
    let pp = a + b + 2;
    let u = (b.square() * 2 + b * 4).sqrt()?;
    let (an, ad) = (a * b + &c * &d, &d * 2 + b * &c);
    let (bn, bd) = (&pp * &c - &d * &u, d.square() + a * &pp);
    let lhs = &d * &u * (&ad * &bd + &an * &bn);
    let rhs = (&an * &bd - &bn * &ad) * (pp.square() + d.square() + &pp * &u);
    Ok(lhs - rhs)
}

// ---------------------------------------------------------------------------
// Dilogarithm identities

fn lewin_1_1(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let x = &p[0];
    Ok(li2_real(x, ctx) + li2_real(&-x.clone(), ctx) - li2_real(&x.square(), ctx) / 2)
}

fn lewin_1_2(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let x = &p[0];
    let om = ctx.one() - x;
    Ok(li2_real(x, ctx) + li2_real(&(-x.clone() / &om), ctx) + om.ln()?.square() / 2)
}

fn lewin_1_3(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let x = &p[0];
    let op = ctx.one() + x;
    Ok(li2_real(&op.recip()?, ctx) - li2_real(&-x.clone(), ctx) - ctx.pi().square() / 6
        + op.ln()? * (&op / x.square()).ln()? / 2)
}

fn lewin_1_4(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let (x, y) = (&p[0], &p[1]);
    let (ox, oy) = (ctx.one() - x, ctx.one() - y);
    let lhs = li2_real(&(x / &ox * y / &oy), ctx);
    let rhs = li2_real(&(x / &oy), ctx) + li2_real(&(y / &ox), ctx) - li2_real(x, ctx) - li2_real(y, ctx)
        - ox.ln()? * oy.ln()?;
    Ok(lhs - rhs)
}

fn lewin_1_5(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let x = &p[0];
    let om = ctx.one() - x;
    Ok(li2_real(x, ctx) + li2_real(&om, ctx) - ctx.pi().square() / 6 + x.ln()? * om.ln()?)
}

/// Terms needed for `|z|^(2n) · (1 + ln n)` to drop below the working
/// epsilon.
fn series_terms(norm: f64, ctx: &PrecisionCtx) -> usize {
    let target = f64::from(ctx.bits()) * std::f64::consts::LN_2 + 10.0;
    let per_term = -norm.ln();
    ((target + 2.0 * (target / per_term).ln().max(0.0)) / per_term).ceil() as usize + 2
}

/// `Σ_{n≥1} Hₙ/(2n+1) z^{2n+1}`, `|z| < 1`.
pub fn harmonic_odd_series(z: &Complex, ctx: &PrecisionCtx) -> Complex {
    let z2 = z.square();
    let n = series_terms(z2.abs().to_f64(), ctx);
    let mut pow = z.clone();
    let mut h = ctx.zero();
    let mut acc = Complex::from_real(ctx.zero());
    for k in 1..=n as i64 {
        h += ctx.ratio(1, k);
        pow = pow * &z2;
        acc = acc + &pow * &(&h / ctx.int(2 * k + 1));
    }
    acc
}

/// Closed form of [`harmonic_odd_series`] in logarithms and dilogarithms.
pub fn harmonic_odd_closed(z: &Complex, ctx: &PrecisionCtx) -> Result<Complex, IdentityError> {
    let one = Complex::from_real(ctx.one());
    let (om, op) = (&one - z, &one + z);
    let (lm, lp) = (om.ln()?, op.ln()?);
    let log2 = ctx.log2();
    let v = (lm.square() - lp.square()) / 2 + (&lm - &lp) * &log2 + li2(&(&op / 2), ctx) - li2(&(&om / 2), ctx);
    Ok(v / 2)
}

fn harmonic_closed_form(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let real = Complex::from_real(p[0].clone());
    let imag = Complex::imaginary(-ctx.int(8).sqrt()?.recip()?);
    let mut worst = ctx.zero();
    for z in [real, imag] {
        let r = harmonic_odd_series(&z, ctx) - harmonic_odd_closed(&z, ctx)?;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

fn harmonic_gf(p: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    let x2 = p[0].square();
    let n = series_terms(x2.to_f64(), ctx);
    let mut pow = ctx.one();
    let mut h = ctx.zero();
    let mut acc = ctx.zero();
    for k in 1..=n as i64 {
        h += ctx.ratio(1, k);
        pow *= &x2;
        acc += &pow * &h;
    }
    let om = ctx.one() - &x2;
    Ok(acc + om.ln()? / om)
}

// ---------------------------------------------------------------------------
// Dilogarithm chain at x = (1 + i/√8)/2, y = 1/2, u = (√8 + i)/3, z = −i/√8

struct ChainPoint {
    x: Complex,
    y: Complex,
    u: Complex,
    z: Complex,
    ctx: PrecisionCtx,
}

impl ChainPoint {
    fn new(ctx: &PrecisionCtx) -> Result<ChainPoint, MpError> {
        let r8 = ctx.int(8).sqrt()?;
        let inv = r8.recip()?;
        Ok(ChainPoint {
            x: Complex::new(ctx.ratio(1, 2), &inv / 2),
            y: Complex::from_real(ctx.ratio(1, 2)),
            u: Complex::new(&r8 / 3, ctx.ratio(1, 3)),
            z: Complex::imaginary(-inv),
            ctx: *ctx,
        })
    }

    fn li(&self, w: &Complex) -> Complex {
        li2(w, &self.ctx)
    }

    fn one(&self) -> Complex {
        Complex::from_real(self.ctx.one())
    }

    fn zeta2(&self) -> Complex {
        Complex::from_real(self.ctx.pi().square() / 6)
    }

    /// `log z · log(1−z)`.
    fn lz(&self) -> Result<Complex, MpError> {
        Ok(self.z.ln()? * (self.one() - &self.z).ln()?)
    }

    /// `½ log(1+z) · log((1+z)/z²)`.
    fn lzz(&self) -> Result<Complex, MpError> {
        let op = self.one() + &self.z;
        Ok(op.ln()? * (&op / self.z.square()).ln()? / 2)
    }

    fn log1mx(&self) -> Result<Complex, MpError> {
        (self.one() - &self.x).ln()
    }

    fn log2_log1mx(&self) -> Result<Complex, MpError> {
        Ok(self.log1mx()? * &self.ctx.log2())
    }

    fn u2(&self) -> Complex {
        self.u.square()
    }

    fn u4(&self) -> Complex {
        self.u.powi(4)
    }

    /// Right-hand side of the eighth equation.
    fn r8(&self) -> Result<Complex, MpError> {
        let zb = self.z.conj();
        Ok(self.li(&zb) - self.li(&self.z) - self.li(&self.x) * 3 + self.zeta2() * 2 - self.li(&self.y)
            + self.log2_log1mx()?
            - self.log1mx()?.square()
            - self.lz()?
            - self.lzz()?)
    }

    fn residual(&self, k: usize) -> Result<Real, MpError> {
        let one = self.one();
        let (x, y, z) = (&self.x, &self.y, &self.z);
        let zb = z.conj();
        let v = match k {
            1 => {
                self.li(&self.u2())
                    - (self.li(&(&one - z)) + self.li(&(&one + z).recip()?) - self.li(x) - self.li(y)
                        + self.log2_log1mx()?)
            }
            2 => self.li(&(&one - z)) - (-self.li(z) + self.zeta2() - self.lz()?),
            3 => self.li(&(&one + z).recip()?) - (self.li(&-z.clone()) + self.zeta2() - self.lzz()?),
            4 => {
                self.li(&self.u2())
                    - (self.li(&zb) - self.li(z) - self.li(x) + self.zeta2() * 2 - self.li(y) + self.log2_log1mx()?
                        - self.lz()?
                        - self.lzz()?)
            }
            5 => self.li(x) + self.li(&-self.u2()) + self.log1mx()?.square() / 2,
            6 => self.li(&self.u2()) + self.li(&-self.u2()) - self.li(&self.u4()) / 2,
            7 => self.li(&self.u4()) - (self.li(&self.u2()) * 2 - self.li(x) * 2 - self.log1mx()?.square()),
            8 => self.li(&self.u4()) - self.li(&self.u2()) - self.r8()?,
            9 => {
                let lhs = Complex::from_real((self.li(&self.u4()) - self.li(&self.u2())).im());
                let minus_i = Complex::imaginary(-self.ctx.one());
                let rest = self.log2_log1mx()? - self.log1mx()?.square() - self.lz()? - self.lzz()?;
                let rhs = (self.li(&zb) - self.li(z)) * &minus_i
                    - (self.li(x) - self.li(&x.conj())) * &minus_i * 3 / 2
                    + Complex::from_real(rest.im());
                lhs - rhs
            }
            _ => unreachable!("chain has nine equations"),
        };
        Ok(v.abs())
    }

    fn substitutions(&self) -> Result<Vec<(&'static str, Real)>, MpError> {
        let one = self.one();
        let (x, y, z, u) = (&self.x, &self.y, &self.z, &self.u);
        Ok(vec![
            ("x/(1-x) = u^2", (x / &(&one - x) - self.u2()).abs()),
            ("y/(1-y) = 1", (y / &(&one - y) - &one).abs()),
            ("x/(1-y) = 1-z", (x / &(&one - y) - (&one - z)).abs()),
            ("y/(1-x) = 1/(1+z)", (y / &(&one - x) - (&one + z).recip()?).abs()),
            ("|u| = 1", u.abs() - 1),
        ])
    }
}

const CHAIN_NAMES: [&str; 9] =
    ["chain-2.1", "chain-2.2", "chain-2.3", "chain-2.4", "chain-2.5", "chain-2.6", "chain-2.7", "chain-2.8", "chain-2.9"];

macro_rules! chain_entry {
    ($($f:ident = $k:literal),*) => {
        $(fn $f(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
            Ok(ChainPoint::new(ctx)?.residual($k)?)
        })*
        const CHAIN: [Builder; 9] = [$($f),*];
    };
}

chain_entry!(chain_1 = 1, chain_2 = 2, chain_3 = 3, chain_4 = 4, chain_5 = 5, chain_6 = 6, chain_7 = 7, chain_8 = 8, chain_9 = 9);

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// `(name, |LHS − RHS|)` for each equation of the chain.
    pub equations: Vec<(String, Real)>,
    /// The four argument substitutions and `|u| = 1`.
    pub substitutions: Vec<(String, Real)>,
    pub digits: u32,
}

impl ChainReport {
    pub fn max_residual(&self) -> Real {
        self.equations.iter().chain(&self.substitutions).map(|(_, r)| r.abs()).fold(Real::from_float(rug::Float::new(2)), Real::max)
    }

    pub fn pass(&self) -> bool {
        self.max_residual() < pass_threshold(self.digits)
    }
}

pub fn appendix_chain(ctx: &PrecisionCtx) -> Result<ChainReport, IdentityError> {
    let p = ChainPoint::new(ctx)?;
    let equations = (1..=9)
        .map(|k| Ok((CHAIN_NAMES[k - 1].to_string(), p.residual(k)?)))
        .collect::<Result<Vec<_>, MpError>>()?;
    let substitutions = p.substitutions()?.into_iter().map(|(n, r)| (n.to_string(), r)).collect();
    Ok(ChainReport { equations, substitutions, digits: ctx.digits() })
}

// ---------------------------------------------------------------------------
// Series for C(1,1)

#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: Real,
    pub terms: usize,
    /// Bound on the omitted tail.
    pub tail_bound: Real,
}

/// Partial sum over `n < terms` of
/// `Σ (−1/8)ⁿ/(n+½)·(1/(n+½) − 3 log 2) − 3 Σ_{n≥1} (−1/8)ⁿ Hₙ/(n+½)`.
pub fn broadhurst_series(ctx: &PrecisionCtx, terms: usize) -> SeriesValue {
    let three_log2 = ctx.log2() * 3;
    let mut pow = ctx.one();
    let mut h = ctx.zero();
    let mut acc = ctx.zero();
    for n in 0..terms as i64 {
        if n > 0 {
            pow /= ctx.int(-8);
            h += ctx.ratio(1, n);
        }
        let inv = ctx.ratio(2, 2 * n + 1);
        acc += &pow * &inv * (&inv - &three_log2 - &h * 3);
    }
    // |term n| ≤ 8⁻ⁿ · 2(2 + 3 log 2 + 3(1 + ln n)); successive bounds shrink by
    // more than 4, so the tail is at most 4/3 of its first term
    let n = terms.max(1) as f64;
    let c = 2.0 * (2.0 + 3.0 * std::f64::consts::LN_2 + 3.0 * (1.0 + n.ln())) * 4.0 / 3.0;
    let tail_bound = ctx.real(c) * ctx.int(8).powi(-(terms as i32));
    SeriesValue { value: acc, terms, tail_bound }
}

/// Terms of [`broadhurst_series`] needed to reach the working precision.
pub fn broadhurst_terms(ctx: &PrecisionCtx) -> usize {
    ((f64::from(ctx.bits()) + 8.0) / 3.0).ceil() as usize
}

fn broadhurst_series_residual(_: &[Real], ctx: &PrecisionCtx) -> Result<Real, IdentityError> {
    Ok(broadhurst_series(ctx, broadhurst_terms(ctx)).value - broadhurst_constant(ctx))
}
