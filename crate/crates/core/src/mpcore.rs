//! Arbitrary-precision real and complex arithmetic.
//!
//! Every operation takes its precision from an explicit [`PrecisionCtx`];
//! there is no ambient precision setting. [`Real`] and [`Complex`] are thin
//! immutable wrappers over MPFR/MPC values. Values carry the precision of the
//! context that created them, and binary operations run at the larger of the
//! two operand precisions.

use std::cmp::Ordering;
use std::f64::consts::LOG2_10;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::float::Constant as MpfrConstant;
use rug::ops::Pow;
use rug::Float;
use thiserror::Error;

pub const DEFAULT_DIGITS: u32 = 50;
pub const DEFAULT_GUARD_DIGITS: u32 = 10;
pub const MIN_DIGITS: u32 = 15;
pub const MIN_GUARD_DIGITS: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MpError {
    #[error("invalid precision: digits must be >= {MIN_DIGITS} and guard digits >= {MIN_GUARD_DIGITS} (got {digits}, {guard})")]
    InvalidPrecision { digits: u32, guard: u32 },
    #[error("{function}: argument {arg} is outside the domain")]
    Domain { function: &'static str, arg: String },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("malformed decimal literal `{0}`")]
    Parse(String),
    #[error("{0}: result is not finite")]
    NonFinite(&'static str),
}

/// Working precision carried through every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionCtx {
    digits: u32,
    guard_digits: u32,
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx { digits: DEFAULT_DIGITS, guard_digits: DEFAULT_GUARD_DIGITS }
    }
}

impl PrecisionCtx {
    pub fn new(digits: u32) -> Result<Self, MpError> {
        Self::with_guard(digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Result<Self, MpError> {
        if digits < MIN_DIGITS || guard_digits < MIN_GUARD_DIGITS {
            return Err(MpError::InvalidPrecision { digits, guard: guard_digits });
        }
        Ok(PrecisionCtx { digits, guard_digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Binary precision used internally: digits + guard digits, in bits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits + self.guard_digits) * LOG2_10).ceil() as u32
    }

    /// The same context with `extra` more output digits.
    pub fn refined(&self, extra: u32) -> Self {
        PrecisionCtx { digits: self.digits + extra, guard_digits: self.guard_digits }
    }

    /// `10^exp` at working precision.
    pub fn pow10(&self, exp: i32) -> Real {
        let ten = Float::with_val(self.bits(), 10);
        Real(ten.pow(exp))
    }

    /// Relative spacing of working-precision values, `2^(1-bits)`.
    pub fn epsilon(&self) -> Real {
        let one = Float::with_val(self.bits(), 1);
        Real(one >> (self.bits() - 1))
    }

    pub fn zero(&self) -> Real {
        Real(Float::with_val(self.bits(), 0))
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Real {
        Real(Float::with_val(self.bits(), v))
    }

    /// `num / den` rounded once at working precision.
    pub fn ratio(&self, num: i64, den: i64) -> Real {
        let q = rug::Rational::from((num, den));
        Real(Float::with_val(self.bits(), &q))
    }

    /// An `f64` converted exactly (every finite `f64` is representable).
    pub fn real(&self, v: f64) -> Real {
        debug_assert!(v.is_finite());
        Real(Float::with_val(self.bits(), v))
    }

    pub fn pi(&self) -> Real {
        Real(Float::with_val(self.bits(), MpfrConstant::Pi))
    }

    pub fn log2(&self) -> Real {
        Real(Float::with_val(self.bits(), MpfrConstant::Log2))
    }

    pub fn catalan(&self) -> Real {
        Real(Float::with_val(self.bits(), MpfrConstant::Catalan))
    }

    /// Parses a decimal literal at working precision.
    pub fn parse(&self, s: &str) -> Result<Real, MpError> {
        Real::parse(s, self)
    }
}

/// Named mathematical constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    Log2,
    Catalan,
}

impl FromStr for Constant {
    type Err = MpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pi" => Ok(Constant::Pi),
            "log2" => Ok(Constant::Log2),
            "catalan" => Ok(Constant::Catalan),
            other => Err(MpError::UnknownConstant(other.to_string())),
        }
    }
}

pub fn constant(name: &str, ctx: &PrecisionCtx) -> Result<Real, MpError> {
    Ok(match name.parse::<Constant>()? {
        Constant::Pi => ctx.pi(),
        Constant::Log2 => ctx.log2(),
        Constant::Catalan => ctx.catalan(),
    })
}

/// Elementary functions reachable through [`elementary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Atan,
    Asin,
    Acos,
    Atanh,
}

impl FromStr for Elementary {
    type Err = MpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "exp" => Elementary::Exp,
            "log" | "ln" => Elementary::Log,
            "sqrt" => Elementary::Sqrt,
            "sin" => Elementary::Sin,
            "cos" => Elementary::Cos,
            "tan" => Elementary::Tan,
            "atan" => Elementary::Atan,
            "asin" => Elementary::Asin,
            "acos" => Elementary::Acos,
            "atanh" => Elementary::Atanh,
            other => return Err(MpError::UnknownFunction(other.to_string())),
        })
    }
}

/// Evaluates `f(x)` at the context's working precision.
pub fn elementary(f: Elementary, x: &Real, ctx: &PrecisionCtx) -> Result<Real, MpError> {
    let x = x.with_precision(ctx);
    let y = match f {
        Elementary::Exp => x.exp(),
        Elementary::Log => x.ln()?,
        Elementary::Sqrt => x.sqrt()?,
        Elementary::Sin => x.sin(),
        Elementary::Cos => x.cos(),
        Elementary::Tan => x.tan(),
        Elementary::Atan => x.atan(),
        Elementary::Asin => x.asin()?,
        Elementary::Acos => x.acos()?,
        Elementary::Atanh => x.atanh()?,
    };
    y.finite("elementary")
}

/// Complex counterpart of [`elementary`]; only `exp`, `log` and `sqrt` apply.
pub fn elementary_complex(f: Elementary, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex, MpError> {
    let z = z.with_precision(ctx);
    match f {
        Elementary::Exp => Ok(z.exp()),
        Elementary::Log => z.ln(),
        Elementary::Sqrt => Ok(z.sqrt()),
        other => Err(MpError::UnknownFunction(format!("{other:?} (complex)"))),
    }
}

/// An arbitrary-precision real number.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(pub(crate) Float);

fn domain(function: &'static str, x: &Float) -> MpError {
    MpError::Domain { function, arg: format!("{:.6e}", x.to_f64()) }
}

impl Real {
    /// Parses `[+-]digits[.digits][e[+-]k]` at the context's precision.
    pub fn parse(s: &str, ctx: &PrecisionCtx) -> Result<Real, MpError> {
        let t = s.trim();
        if !is_decimal_literal(t) {
            return Err(MpError::Parse(s.to_string()));
        }
        let parsed = Float::parse(t).map_err(|_| MpError::Parse(s.to_string()))?;
        Ok(Real(Float::with_val(ctx.bits(), parsed)))
    }

    pub fn from_float(f: Float) -> Real {
        Real(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Re-rounds to the context's working precision.
    pub fn with_precision(&self, ctx: &PrecisionCtx) -> Real {
        Real(Float::with_val(ctx.bits(), &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }

    pub fn finite(self, what: &'static str) -> Result<Real, MpError> {
        if self.0.is_finite() {
            Ok(self)
        } else {
            Err(MpError::NonFinite(what))
        }
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn powi(&self, n: i32) -> Real {
        Real(self.0.clone().pow(n))
    }

    pub fn recip(&self) -> Result<Real, MpError> {
        if self.0.is_zero() {
            return Err(domain("recip", &self.0));
        }
        Ok(Real(self.0.clone().recip()))
    }

    pub fn checked_div(&self, rhs: &Real) -> Result<Real, MpError> {
        if rhs.0.is_zero() {
            return Err(domain("div", &rhs.0));
        }
        Ok(self / rhs)
    }

    pub fn sqrt(&self) -> Result<Real, MpError> {
        if self.0.is_sign_negative() && !self.0.is_zero() {
            return Err(domain("sqrt", &self.0));
        }
        Ok(Real(self.0.clone().sqrt()))
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Result<Real, MpError> {
        if !(self.0 > 0) {
            return Err(domain("log", &self.0));
        }
        Ok(Real(self.0.clone().ln()))
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.0.prec()));
        (Real(s), Real(c))
    }

    pub fn tan(&self) -> Real {
        Real(self.0.clone().tan())
    }

    pub fn sinh(&self) -> Real {
        Real(self.0.clone().sinh())
    }

    pub fn cosh(&self) -> Real {
        Real(self.0.clone().cosh())
    }

    pub fn atan(&self) -> Real {
        Real(self.0.clone().atan())
    }

    /// Two-argument arctangent of `self / x`, in `(-π, π]`.
    pub fn atan2(&self, x: &Real) -> Real {
        let prec = self.prec().max(x.prec());
        Real(Float::with_val(prec, self.0.atan2_ref(&x.0)))
    }

    pub fn asin(&self) -> Result<Real, MpError> {
        if self.0.clone().abs() > 1 {
            return Err(domain("asin", &self.0));
        }
        Ok(Real(self.0.clone().asin()))
    }

    pub fn acos(&self) -> Result<Real, MpError> {
        if self.0.clone().abs() > 1 {
            return Err(domain("acos", &self.0));
        }
        Ok(Real(self.0.clone().acos()))
    }

    /// Real inverse hyperbolic tangent; `|x| < 1` required.
    pub fn atanh(&self) -> Result<Real, MpError> {
        if !(self.0.clone().abs() < 1) {
            return Err(domain("atanh", &self.0));
        }
        Ok(Real(self.0.clone().atanh()))
    }

    /// Nearest integer, ties to even.
    pub fn round_to_integer(&self) -> Option<rug::Integer> {
        self.0.to_integer()
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Decimal string with at most `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.0, Some(digits.max(1)))
    }

    /// Decimal string rounded to the context's output digits.
    pub fn to_decimal_ctx(&self, ctx: &PrecisionCtx) -> String {
        self.to_decimal(ctx.digits() as usize)
    }
}

impl fmt::Display for Real {
    /// Shortest decimal that reads back to the identical value at this precision.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_decimal(&self.0, None))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(24))
    }
}

impl PartialEq<i32> for Real {
    fn eq(&self, other: &i32) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i32> for Real {
    fn partial_cmp(&self, other: &i32) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

fn is_decimal_literal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut mantissa_digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        mantissa_digits += i - frac_start;
    }
    if mantissa_digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

fn format_decimal(x: &Float, digits: Option<usize>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, digits);
    let exp = exp.expect("finite nonzero value has an exponent");
    let trimmed = mantissa.trim_end_matches('0');
    let m = if trimmed.is_empty() { "0" } else { trimmed };
    // value = 0.m * 10^exp, so the leading digit has decimal exponent exp - 1.
    let e10 = exp - 1;
    let mut out = String::with_capacity(m.len() + 8);
    if neg {
        out.push('-');
    }
    if (-7..=20).contains(&e10) {
        if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if m.len() <= int_len {
                out.push_str(m);
                out.extend(std::iter::repeat_n('0', int_len - m.len()));
            } else {
                out.push_str(&m[..int_len]);
                out.push('.');
                out.push_str(&m[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e10 - 1) as usize));
            out.push_str(m);
        }
    } else {
        out.push_str(&m[..1]);
        if m.len() > 1 {
            out.push('.');
            out.push_str(&m[1..]);
        }
        out.push_str(&format!("e{e10:+}"));
    }
    out
}

macro_rules! real_binop {
    ($Tr:ident, $m:ident, $TrA:ident, $ma:ident) => {
        impl $Tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let prec = self.0.prec().max(rhs.0.prec());
                Real(Float::with_val(prec, (&self.0).$m(&rhs.0)))
            }
        }
        impl $Tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $Tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $Tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $TrA<&Real> for Real {
            fn $ma(&mut self, rhs: &Real) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $TrA<Real> for Real {
            fn $ma(&mut self, rhs: Real) {
                *self = (&*self).$m(&rhs);
            }
        }
        real_binop!(@scalar $Tr, $m, i32);
        real_binop!(@scalar $Tr, $m, f64);
    };
    (@scalar $Tr:ident, $m:ident, $S:ty) => {
        impl $Tr<$S> for &Real {
            type Output = Real;
            fn $m(self, rhs: $S) -> Real {
                Real(Float::with_val(self.0.prec(), (&self.0).$m(rhs)))
            }
        }
        impl $Tr<$S> for Real {
            type Output = Real;
            fn $m(self, rhs: $S) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $Tr<&Real> for $S {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.0.prec(), self.$m(&rhs.0)))
            }
        }
        impl $Tr<Real> for $S {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

impl<'a> std::iter::Sum<&'a Real> for Real {
    /// Panics on an empty iterator; sums carry no context to pick a precision.
    fn sum<I: Iterator<Item = &'a Real>>(mut iter: I) -> Real {
        let first = iter.next().expect("sum of an empty sequence of Real").clone();
        iter.fold(first, |acc, x| acc + x)
    }
}

/// An arbitrary-precision complex number, principal branches throughout.
#[derive(Clone, PartialEq)]
pub struct Complex(pub(crate) rug::Complex);

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        let prec = re.prec().max(im.prec());
        Complex(rug::Complex::with_val(prec, (re.0, im.0)))
    }

    pub fn from_real(re: Real) -> Complex {
        let prec = re.prec();
        Complex(rug::Complex::with_val(prec, (re.0, 0)))
    }

    /// `i * im`.
    pub fn imaginary(im: Real) -> Complex {
        let prec = im.prec();
        Complex(rug::Complex::with_val(prec, (0, im.0)))
    }

    pub fn with_precision(&self, ctx: &PrecisionCtx) -> Complex {
        Complex(rug::Complex::with_val(ctx.bits(), &self.0))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.max(self.0.prec().1)
    }

    pub fn re(&self) -> Real {
        Real(self.0.real().clone())
    }

    pub fn im(&self) -> Real {
        Real(self.0.imag().clone())
    }

    pub fn conj(&self) -> Complex {
        Complex(self.0.clone().conj())
    }

    pub fn abs(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> Real {
        Real(Float::with_val(self.prec(), self.0.norm_ref()))
    }

    /// Argument in `(-π, π]`.
    pub fn arg(&self) -> Real {
        Real(Float::with_val(self.prec(), self.normalized().arg_ref()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.real().is_finite() && self.0.imag().is_finite()
    }

    // Signed zeros would select the lower side of the negative real axis.
    fn normalized(&self) -> rug::Complex {
        let mut z = self.0.clone();
        if z.imag().is_zero() {
            let p = z.imag().prec();
            *z.mut_imag() = Float::with_val(p, 0);
        }
        if z.real().is_zero() {
            let p = z.real().prec();
            *z.mut_real() = Float::with_val(p, 0);
        }
        z
    }

    /// Principal logarithm, imaginary part in `(-π, π]`.
    pub fn ln(&self) -> Result<Complex, MpError> {
        if self.is_zero() {
            return Err(MpError::Domain { function: "complex log", arg: "0".to_string() });
        }
        Ok(Complex(self.normalized().ln()))
    }

    pub fn exp(&self) -> Complex {
        Complex(self.0.clone().exp())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Complex {
        Complex(self.normalized().sqrt())
    }

    pub fn square(&self) -> Complex {
        Complex(self.0.clone().square())
    }

    pub fn powi(&self, n: i32) -> Complex {
        Complex(self.0.clone().pow(n))
    }

    pub fn recip(&self) -> Result<Complex, MpError> {
        if self.is_zero() {
            return Err(MpError::Domain { function: "complex recip", arg: "0".to_string() });
        }
        Ok(Complex(self.0.clone().recip()))
    }

    pub fn mul_i(&self) -> Complex {
        Complex(self.0.clone().mul_i(false))
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let im = self.im();
        let sign = if im.is_sign_negative() { "-" } else { "+" };
        format!("{} {} {}i", self.re().to_decimal(digits), sign, im.abs().to_decimal(digits))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({})", self.to_decimal(24))
    }
}

macro_rules! complex_binop {
    ($Tr:ident, $m:ident) => {
        impl $Tr<&Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                let prec = self.prec().max(rhs.prec());
                Complex(rug::Complex::with_val(prec, (&self.0).$m(&rhs.0)))
            }
        }
        impl $Tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl $Tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl $Tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                self.$m(&rhs)
            }
        }
        impl $Tr<&Real> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: &Real) -> Complex {
                let prec = self.prec().max(rhs.prec());
                Complex(rug::Complex::with_val(prec, (&self.0).$m(&rhs.0)))
            }
        }
        impl $Tr<&Real> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Real) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl $Tr<i32> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: i32) -> Complex {
                Complex(rug::Complex::with_val(self.prec(), (&self.0).$m(rhs)))
            }
        }
        impl $Tr<i32> for Complex {
            type Output = Complex;
            fn $m(self, rhs: i32) -> Complex {
                (&self).$m(rhs)
            }
        }
        impl $Tr<&Complex> for i32 {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                Complex(rug::Complex::with_val(rhs.prec(), self.$m(&rhs.0)))
            }
        }
        impl $Tr<Complex> for i32 {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                self.$m(&rhs)
            }
        }
    };
}

complex_binop!(Add, add);
complex_binop!(Sub, sub);
complex_binop!(Mul, mul);
complex_binop!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex(-self.0)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex(-self.0.clone())
    }
}
