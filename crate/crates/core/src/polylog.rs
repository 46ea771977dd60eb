//! Clausen function, dilogarithm, and two closed-form log-trigonometric integrals.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant as MpfrConstant;
use rug::{Float, Integer, Rational};
use thiserror::Error;

use crate::mpcore::{Complex, MpError, PrecisionCtx, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolylogError {
    #[error(transparent)]
    Mp(#[from] MpError),
    #[error("a^2 + b^2 >= c^2 is required (a={a}, b={b}, c={c})")]
    Hypothesis { a: String, b: String, c: String },
    #[error("a cos(phi) + b sin(phi) + c is negative at phi={phi}")]
    IntegrandNegative { phi: String },
    #[error("angle {name}={value} is outside (-pi/2, pi/2)")]
    AngleOutOfRange { name: &'static str, value: String },
    #[error("tan(phi) > tan(delta) fails on the interval (delta={delta}, lower end={lower})")]
    TanNotAbove { delta: String, lower: String },
}

fn short(x: &Real) -> String {
    x.to_decimal(12)
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Tangent numbers T_1..T_n (Knuth and Buckholtz).
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t: Vec<Integer> = Vec::with_capacity(n + 1);
    t.push(Integer::new());
    t.push(Integer::from(1));
    for k in 2..=n {
        let prev = Integer::from(&t[k - 1] * (k as u32 - 1));
        t.push(prev);
    }
    for k in 2..=n {
        for j in k..=n {
            let lhs = Integer::from(&t[j - 1] * (j - k) as u32);
            let rhs = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = lhs + rhs;
        }
    }
    t
}

/// Exact `B_{2n}` for `n >= 1`.
pub fn bernoulli_b2n(n: usize) -> Rational {
    assert!(n >= 1, "B_0 and B_1 are not even-index Bernoulli numbers");
    let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() < n {
        let want = n.max(2 * cache.len()).max(32);
        let t = tangent_numbers(want);
        let mut out = Vec::with_capacity(want);
        for (k, tk) in t.iter().enumerate().skip(1) {
            let four_k = Integer::from(1) << (2 * k as u32);
            let den = Integer::from(&four_k * (four_k.clone() - 1u32));
            let num = Integer::from(tk * (2 * k as u32));
            let mut b = Rational::from((num, den));
            if k % 2 == 0 {
                b = -b;
            }
            out.push(b);
        }
        *cache = out;
    }
    cache[n - 1].clone()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Table {
    // |B_2n| / (2n (2n+1) (2n)!)
    Clausen,
    // B_2n / (2n+1)!
    DilogLog,
}

fn coefficient_table(kind: Table, bits: u32) -> Arc<Vec<Float>> {
    static TABLES: OnceLock<Mutex<HashMap<(Table, u32), Arc<Vec<Float>>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap_or_else(|e| e.into_inner()).get(&(kind, bits)) {
        return t.clone();
    }
    // Clausen terms shrink by at least 9 per step on (0, 2π/3];
    // the log-variable dilog series by at least 2 for |u| <= 2π/√2.
    let len = match kind {
        Table::Clausen => (bits as usize + 16) * 10 / 31 + 4,
        Table::DilogLog => bits as usize + 16,
    };
    bernoulli_b2n(len);
    let mut out = Vec::with_capacity(len);
    let mut fact = Integer::from(1);
    for n in 1..=len {
        let two_n = 2 * n as u32;
        fact *= (two_n - 1) * two_n;
        let b = bernoulli_b2n(n);
        let q = match kind {
            Table::Clausen => {
                let den = Integer::from(&fact * two_n) * (two_n + 1);
                Rational::from((b.numer().clone().abs(), Integer::from(b.denom() * &den)))
            }
            Table::DilogLog => {
                let den = Integer::from(&fact * (two_n + 1));
                Rational::from((b.numer().clone(), Integer::from(b.denom() * &den)))
            }
        };
        out.push(Float::with_val(bits, &q));
    }
    let arc = Arc::new(out);
    tables
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry((kind, bits))
        .or_insert(arc)
        .clone()
}

fn negligible(term: &Float, sum: &Float, bits: u32) -> bool {
    match (term.get_exp(), sum.get_exp()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(t), Some(s)) => i64::from(t) < i64::from(s) - i64::from(bits) - 4,
    }
}

fn complex_negligible(term: &rug::Complex, sum: &rug::Complex, bits: u32) -> bool {
    let mag = |z: &rug::Complex| {
        let a = z.real().get_exp().map(i64::from);
        let b = z.imag().get_exp().map(i64::from);
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.max(y)),
        }
    };
    match (mag(term), mag(sum)) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(t), Some(s)) => t < s - i64::from(bits) - 4,
    }
}

// ---------------------------------------------------------------------------
// Clausen function

/// `Cl₂(θ) = Σ sin(nθ)/n²` at working precision.
pub fn cl2(theta: &Real, ctx: &PrecisionCtx) -> Real {
    let bits = ctx.bits();
    let extra = theta.0.get_exp().map_or(0, |e| e.max(0) as u32);
    let wp = bits + extra + 8;
    let x = Float::with_val(wp, &theta.0);
    if !x.is_finite() {
        return Real(Float::with_val(bits, rug::float::Special::Nan));
    }
    let two_pi = Float::with_val(wp, MpfrConstant::Pi) * 2u32;
    let k = Float::with_val(wp, &x / &two_pi).round();
    let r = Float::with_val(bits + 8, x - k * &two_pi);
    let neg = r.is_sign_negative();
    let r = r.abs();
    let v = cl2_positive(&r, bits + 8);
    let v = Float::with_val(bits, if neg { -v } else { v });
    Real(v)
}

// r in [0, π]
fn cl2_positive(r: &Float, bits: u32) -> Float {
    if r.is_zero() {
        return Float::with_val(bits, 0);
    }
    let pi = Float::with_val(bits, MpfrConstant::Pi);
    if *r >= pi {
        return Float::with_val(bits, 0);
    }
    let two_thirds_pi = Float::with_val(bits, &pi * 2u32) / 3u32;
    if *r <= two_thirds_pi {
        return cl2_series(r, bits);
    }
    // Cl₂(θ) = 2Cl₂(θ/2) − 2Cl₂(π − θ/2)
    let h = Float::with_val(bits, r / 2u32);
    let g = Float::with_val(bits, &pi - &h);
    (cl2_series(&h, bits) - cl2_series(&g, bits)) * 2u32
}

// r in (0, 2π/3]
fn cl2_series(r: &Float, bits: u32) -> Float {
    let coeffs = coefficient_table(Table::Clausen, bits);
    let lt = Float::with_val(bits, r.ln_ref());
    let mut sum = Float::with_val(bits, r - Float::with_val(bits, r * &lt));
    let t2 = Float::with_val(bits, r.square_ref());
    let mut p = r.clone();
    let mut converged = false;
    for c in coeffs.iter() {
        p *= &t2;
        let term = Float::with_val(bits, c * &p);
        sum += &term;
        if negligible(&term, &sum, bits) {
            converged = true;
            break;
        }
    }
    debug_assert!(converged, "Clausen series table too short");
    sum
}

/// `Cl₂(θ)` as `Im Li₂(e^{iθ})`; an independent second evaluation path.
pub fn cl2_via_li2(theta: &Real, ctx: &PrecisionCtx) -> Real {
    let wp = PrecisionCtx::with_guard(ctx.digits(), ctx.guard_digits() + 3).unwrap_or(*ctx);
    let t = theta.with_precision(&wp);
    let (s, c) = t.sin_cos();
    let z = Complex::new(c, s);
    li2(&z, &wp).im().with_precision(ctx)
}

// ---------------------------------------------------------------------------
// Dilogarithm

/// Principal-branch dilogarithm. On the cut `z > 1` the value is the limit
/// from below the real axis, `Im Li₂(x) = −π log x`.
pub fn li2(z: &Complex, ctx: &PrecisionCtx) -> Complex {
    let bits = ctx.bits() + 8;
    let z = rug::Complex::with_val(bits, &z.0);
    let v = li2_mpc(z, bits);
    Complex(rug::Complex::with_val(ctx.bits(), v))
}

fn real_part_gt_half(z: &rug::Complex) -> bool {
    Float::with_val(z.real().prec(), z.real() * 2u32) > 1
}

fn clean_ln(z: &rug::Complex) -> rug::Complex {
    let mut w = z.clone();
    if w.imag().is_zero() {
        let p = w.imag().prec();
        *w.mut_imag() = Float::with_val(p, 0);
    }
    if w.real().is_zero() {
        let p = w.real().prec();
        *w.mut_real() = Float::with_val(p, 0);
    }
    w.ln()
}

fn li2_mpc(z: rug::Complex, bits: u32) -> rug::Complex {
    if z.real().is_zero() && z.imag().is_zero() {
        return z;
    }
    if *z.real() == 1 && z.imag().is_zero() {
        let pi2 = Float::with_val(bits, MpfrConstant::Pi).square();
        return rug::Complex::with_val(bits, (pi2 / 6u32, 0));
    }
    let pi2_6 = Float::with_val(bits, MpfrConstant::Pi).square() / 6u32;
    let norm = Float::with_val(bits, z.norm_ref());
    if norm > 1 {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ½ log²(−z)
        let inv = rug::Complex::with_val(bits, z.recip_ref());
        let l = clean_ln(&rug::Complex::with_val(bits, -&z));
        let l2 = rug::Complex::with_val(bits, l.square_ref()) / 2u32;
        return -li2_mpc(inv, bits) - pi2_6 - l2;
    }
    if real_part_gt_half(&z) {
        // Li₂(z) = −Li₂(1−z) + π²/6 − log z · log(1−z)
        let w = rug::Complex::with_val(bits, 1 - &z);
        let lz = clean_ln(&z);
        let lw = clean_ln(&w);
        let prod = rug::Complex::with_val(bits, &lz * &lw);
        return -li2_mpc(w, bits) + pi2_6 - prod;
    }
    if norm * 4u32 <= 1 {
        li2_defining_series(&z, bits)
    } else {
        li2_log_series(&z, bits)
    }
}

fn li2_defining_series(z: &rug::Complex, bits: u32) -> rug::Complex {
    let mut sum = z.clone();
    let mut p = z.clone();
    let mut n: u64 = 1;
    loop {
        n += 1;
        p *= z;
        let term = rug::Complex::with_val(bits, &p / Integer::from(n * n));
        sum += &term;
        if complex_negligible(&term, &sum, bits) {
            return sum;
        }
    }
}

// Σ B_n u^{n+1}/(n+1)! with u = −log(1−z); converges for |u| < 2π.
fn li2_log_series(z: &rug::Complex, bits: u32) -> rug::Complex {
    let coeffs = coefficient_table(Table::DilogLog, bits);
    let u = -clean_ln(&rug::Complex::with_val(bits, 1 - z));
    let u2 = rug::Complex::with_val(bits, u.square_ref());
    let mut sum = rug::Complex::with_val(bits, &u - rug::Complex::with_val(bits, &u2 / 4u32));
    let mut p = u.clone();
    let mut converged = false;
    for c in coeffs.iter() {
        p *= &u2;
        let term = rug::Complex::with_val(bits, &p * c);
        sum += &term;
        if complex_negligible(&term, &sum, bits) {
            converged = true;
            break;
        }
    }
    debug_assert!(converged, "dilogarithm log-series table too short");
    sum
}

/// Real dilogarithm for real `x`; the imaginary part is discarded (it is
/// zero for `x <= 1`).
pub fn li2_real(x: &Real, ctx: &PrecisionCtx) -> Real {
    li2(&Complex::from_real(x.clone()), ctx).re()
}

// ---------------------------------------------------------------------------
// Closed-form log-trigonometric integrals

/// `∫_α^β log(a cos φ + b sin φ + c) dφ` with the auxiliary angles used.
#[derive(Debug, Clone)]
pub struct LogTrigClosedForm {
    pub value: Real,
    pub delta1: Real,
    pub delta2: Real,
}

fn factorization_residual(a: &Real, b: &Real, c: &Real, r: &Real, d1: &Real, d2: &Real, phi: &Real) -> Real {
    let (s, co) = phi.sin_cos();
    let lhs = a * &co + b * &s + c;
    let rhs = r * 2 * ((d2 - phi) / 2).sin() * ((d1 + phi) / 2).sin();
    (lhs - rhs).abs()
}

#[allow(clippy::too_many_arguments)]
fn factorization_holds(
    a: &Real,
    b: &Real,
    c: &Real,
    r: &Real,
    d1: &Real,
    d2: &Real,
    tol: &Real,
    ctx: &PrecisionCtx,
) -> bool {
    [0, 1, 2, -3]
        .iter()
        .all(|&k| factorization_residual(a, b, c, r, d1, d2, &ctx.int(k)) <= *tol)
}

/// The closed form `(β−α) log(√(a²+b²)/2) + Cl₂(δ₂−β) − Cl₂(δ₂−α) + Cl₂(δ₁+α) − Cl₂(δ₁+β)`.
pub fn log_sin_product_integral(
    alpha: &Real,
    beta: &Real,
    a: &Real,
    b: &Real,
    c: &Real,
    ctx: &PrecisionCtx,
) -> Result<LogTrigClosedForm, PolylogError> {
    let (alpha, beta) = (alpha.with_precision(ctx), beta.with_precision(ctx));
    let (a, b, c) = (a.with_precision(ctx), b.with_precision(ctx), c.with_precision(ctx));
    let r2 = a.square() + b.square();
    let disc = &r2 - c.square();
    let scale = r2.clone() + c.square() + 1;
    let tol = ctx.pow10(-(ctx.digits() as i32) + 5) * &scale;
    if disc < -tol.clone() || r2.is_zero() {
        return Err(PolylogError::Hypothesis { a: short(&a), b: short(&b), c: short(&c) });
    }
    let s = if disc.is_sign_negative() { ctx.zero() } else { disc.sqrt()? };
    let r = r2.sqrt()?;

    let mut d1 = (&a + &c).atan2(&(&b + &s)) * 2;
    let mut d2 = (&a + &c).atan2(&(&s - &b)) * 2;
    if !factorization_holds(&a, &b, &c, &r, &d1, &d2, &tol, ctx) {
        let theta0 = b.atan2(&a);
        let cos_sigma = (-&c / &r).max(ctx.int(-1)).min(ctx.one());
        let sigma = cos_sigma.acos()?;
        d1 = &sigma - &theta0;
        d2 = &sigma + &theta0;
        assert!(
            factorization_holds(&a, &b, &c, &r, &d1, &d2, &tol, ctx),
            "no branch of the auxiliary angles factorizes the integrand"
        );
    }

    // integrand sign at the endpoints and at interior minima θ₀ + π + 2kπ
    let (lo, hi) = if alpha <= beta { (alpha.clone(), beta.clone()) } else { (beta.clone(), alpha.clone()) };
    let f = |phi: &Real| {
        let (s, co) = phi.sin_cos();
        &a * &co + &b * &s + &c
    };
    let mut probes = vec![lo.clone(), hi.clone()];
    let two_pi = ctx.pi() * 2;
    let min_at = b.atan2(&a) + ctx.pi();
    let k0 = ((&lo - &min_at) / &two_pi).to_f64().ceil() as i64;
    let k1 = ((&hi - &min_at) / &two_pi).to_f64().floor() as i64;
    for k in k0..=k1 {
        probes.push(&min_at + &two_pi * ctx.int(k));
    }
    for phi in &probes {
        if f(phi) < -tol.clone() {
            return Err(PolylogError::IntegrandNegative { phi: short(phi) });
        }
    }

    if alpha == beta {
        return Ok(LogTrigClosedForm { value: ctx.zero(), delta1: d1, delta2: d2 });
    }
    let value = (&beta - &alpha) * (&r / 2).ln()? + cl2(&(&d2 - &beta), ctx) - cl2(&(&d2 - &alpha), ctx)
        + cl2(&(&d1 + &alpha), ctx)
        - cl2(&(&d1 + &beta), ctx);
    Ok(LogTrigClosedForm { value, delta1: d1, delta2: d2 })
}

/// `∫_α^β log(tan φ − tan δ) dφ`
/// `= ½{Cl₂(2α−2δ) − Cl₂(2β−2δ) + Cl₂(π−2α) − Cl₂(π−2β)} − (β−α) log cos δ`.
pub fn log_tan_integral(alpha: &Real, beta: &Real, delta: &Real, ctx: &PrecisionCtx) -> Result<Real, PolylogError> {
    let (alpha, beta, delta) = (alpha.with_precision(ctx), beta.with_precision(ctx), delta.with_precision(ctx));
    let half_pi = ctx.pi() / 2;
    for (name, v) in [("alpha", &alpha), ("beta", &beta), ("delta", &delta)] {
        if v.abs() >= half_pi {
            return Err(PolylogError::AngleOutOfRange { name, value: short(v) });
        }
    }
    let lower = alpha.clone().min(beta.clone());
    if delta > lower {
        return Err(PolylogError::TanNotAbove { delta: short(&delta), lower: short(&lower) });
    }
    if alpha == beta {
        return Ok(ctx.zero());
    }
    let pi = ctx.pi();
    let two = |x: &Real| x * 2;
    let bracket = cl2(&(two(&alpha) - two(&delta)), ctx) - cl2(&(two(&beta) - two(&delta)), ctx)
        + cl2(&(&pi - two(&alpha)), ctx)
        - cl2(&(&pi - two(&beta)), ctx);
    Ok(bracket / 2 - (&beta - &alpha) * delta.cos().ln()?)
}
