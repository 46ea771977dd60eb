//! Integer relation detection (PSLQ, Ferguson and Bailey).

use rug::float::Round;
use rug::Float;
pub use rug::Integer;
use thiserror::Error;

use crate::mpcore::{PrecisionCtx, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PslqError {
    #[error("need at least two values, got {0}")]
    TooShort(usize),
    #[error("value {0} is zero at working precision")]
    ZeroEntry(usize),
    #[error("coefficient vector has length {coeffs}, value vector {values}")]
    LengthMismatch { coeffs: usize, values: usize },
    #[error("precision exhausted after {iterations} iterations; exclusion bound reached {bound}")]
    PrecisionExhausted { iterations: usize, bound: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationStatus {
    Found,
    NoneFound,
}

#[derive(Debug, Clone)]
pub struct RelationResult {
    pub status: RelationStatus,
    /// Canonical relation: gcd 1, first nonzero entry positive.
    pub coeffs: Option<Vec<Integer>>,
    pub residual: Real,
    /// Every relation with smaller Euclidean norm is excluded.
    pub exclusion_bound: Option<Real>,
    pub iterations: usize,
}

impl RelationResult {
    pub fn found(&self) -> bool {
        self.status == RelationStatus::Found
    }

    /// Coefficients as machine integers, if found and small enough.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.as_ref()?.iter().map(|c| c.to_i64()).collect()
    }
}

/// `10^(−0.7·digits)`.
pub fn detection_threshold(ctx: &PrecisionCtx) -> Real {
    ctx.pow10(-((ctx.digits() as f64 * 0.7).floor() as i32))
}

/// `|Σ coeffsᵢ·xᵢ|`.
pub fn check_relation(coeffs: &[Integer], xs: &[Real], ctx: &PrecisionCtx) -> Result<Real, PslqError> {
    if coeffs.len() != xs.len() {
        return Err(PslqError::LengthMismatch { coeffs: coeffs.len(), values: xs.len() });
    }
    let mut acc = Float::with_val(ctx.bits(), 0);
    for (c, x) in coeffs.iter().zip(xs) {
        acc += Float::with_val(ctx.bits(), &x.0 * c);
    }
    Ok(Real(acc.abs()))
}

fn canonical(mut v: Vec<Integer>) -> Vec<Integer> {
    let g = v.iter().fold(Integer::new(), |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    v
}

fn nint(x: &Float) -> Integer {
    let mut r = x.clone();
    r.round_mut();
    r.to_integer_round(Round::Nearest).map(|(i, _)| i).unwrap_or_default()
}

/// Searches for integers `c` with `Σ cᵢ xᵢ = 0` and `|c| < max_norm`.
pub fn find_relation(xs: &[Real], max_norm: &Real, ctx: &PrecisionCtx) -> Result<RelationResult, PslqError> {
    let n = xs.len();
    if n < 2 {
        return Err(PslqError::TooShort(n));
    }
    if let Some(i) = xs.iter().position(|x| x.is_zero()) {
        return Err(PslqError::ZeroEntry(i));
    }
    let bits = ctx.bits();
    let threshold = detection_threshold(ctx);
    let orig: Vec<Real> = xs.iter().map(|x| x.with_precision(ctx)).collect();
    let f = |v: i32| Float::with_val(bits, v);

    // normalized x and partial norms s_k = |x_k..x_n|
    let norm = orig.iter().fold(f(0), |acc, x| acc + Float::with_val(bits, x.0.square_ref())).sqrt();
    let x: Vec<Float> = orig.iter().map(|v| Float::with_val(bits, &v.0 / &norm)).collect();
    let mut s = vec![f(0); n];
    let mut acc = f(0);
    for k in (0..n).rev() {
        acc += Float::with_val(bits, x[k].square_ref());
        s[k] = Float::with_val(bits, acc.sqrt_ref());
    }

    let mut y = x.clone();
    let mut h = vec![vec![f(0); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            h[i][j] = if i == j {
                Float::with_val(bits, &s[j + 1] / &s[j])
            } else {
                -Float::with_val(bits, &x[i] * &x[j]) / Float::with_val(bits, &s[j] * &s[j + 1])
            };
        }
    }
    let mut a: Vec<Vec<Integer>> =
        (0..n).map(|i| (0..n).map(|j| Integer::from((i == j) as i32)).collect()).collect();
    let mut b = a.clone();

    let reduce = |h: &mut Vec<Vec<Float>>,
                  y: &mut Vec<Float>,
                  a: &mut Vec<Vec<Integer>>,
                  b: &mut Vec<Vec<Integer>>,
                  i: usize,
                  j: usize| {
        let t = nint(&Float::with_val(bits, &h[i][j] / &h[j][j]));
        if t == 0 {
            return;
        }
        let yi = Float::with_val(bits, &y[i] * &t);
        y[j] += yi;
        for k in 0..=j {
            let d = Float::with_val(bits, &h[j][k] * &t);
            h[i][k] -= d;
        }
        for k in 0..n {
            let d = Integer::from(&a[j][k] * &t);
            a[i][k] -= d;
            let d = Integer::from(&b[k][i] * &t);
            b[k][j] += d;
        }
    };

    for i in 1..n {
        for j in (0..i.min(n - 1)).rev() {
            reduce(&mut h, &mut y, &mut a, &mut b, i, j);
        }
    }

    let coeff_cap_bits = (f64::from(bits) * 0.7) as u32;
    // smallest |y_j| below the threshold, with an integer column small
    // enough for the precision to certify
    let detect = |y: &[Float], b: &[Vec<Integer>], iteration: usize| -> Result<Option<RelationResult>, PslqError> {
        let (j, smallest) = y
            .iter()
            .enumerate()
            .map(|(j, v)| (j, Float::with_val(bits, v.abs_ref())))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal))
            .expect("n >= 2");
        if smallest >= threshold.0 {
            return Ok(None);
        }
        let col: Vec<Integer> = (0..n).map(|k| b[k][j].clone()).collect();
        if col.iter().all(|c| *c == 0) || col.iter().any(|c| c.significant_bits() > coeff_cap_bits) {
            return Ok(None);
        }
        let coeffs = canonical(col);
        let residual = check_relation(&coeffs, &orig, ctx)?;
        if residual >= threshold {
            return Ok(None);
        }
        Ok(Some(RelationResult {
            status: RelationStatus::Found,
            coeffs: Some(coeffs),
            residual,
            exclusion_bound: None,
            iterations: iteration,
        }))
    };
    if let Some(found) = detect(&y, &b, 0)? {
        return Ok(found);
    }

    let gamma = Float::with_val(bits, 4) / 3u32;
    let gamma = gamma.sqrt();
    let max_iterations = 2000 * n * n;
    let mut bound = f(0);

    for iteration in 1..=max_iterations {
        // select the row maximizing γ^i |H_ii|
        let mut m = 0;
        let mut best = f(-1);
        let mut gp = gamma.clone();
        for i in 0..n - 1 {
            let v = Float::with_val(bits, &gp * Float::with_val(bits, h[i][i].abs_ref()));
            if v > best {
                best = v;
                m = i;
            }
            gp *= &gamma;
        }

        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }

        if m < n - 2 {
            let t0 = Float::with_val(bits, h[m][m].square_ref()) + Float::with_val(bits, h[m][m + 1].square_ref());
            let t0 = t0.sqrt();
            let t1 = Float::with_val(bits, &h[m][m] / &t0);
            let t2 = Float::with_val(bits, &h[m][m + 1] / &t0);
            for row in h.iter_mut().skip(m) {
                let (t3, t4) = (row[m].clone(), row[m + 1].clone());
                row[m] = Float::with_val(bits, &t1 * &t3) + Float::with_val(bits, &t2 * &t4);
                row[m + 1] = Float::with_val(bits, &t1 * &t4) - Float::with_val(bits, &t2 * &t3);
            }
        }

        for i in m + 1..n {
            for j in (0..(i).min(m + 2)).rev() {
                if j < n - 1 {
                    reduce(&mut h, &mut y, &mut a, &mut b, i, j);
                }
            }
        }

        if let Some(found) = detect(&y, &b, iteration)? {
            return Ok(found);
        }

        let hmax = h.iter().enumerate().take(n - 1).fold(f(0), |acc, (j, row)| {
            let v = Float::with_val(bits, row[j].abs_ref());
            if v > acc {
                v
            } else {
                acc
            }
        });
        if hmax.is_zero() {
            return Err(PslqError::PrecisionExhausted { iterations: iteration, bound: format!("{:.4e}", bound.to_f64()) });
        }
        bound = Float::with_val(bits, hmax.recip_ref());
        if bound >= max_norm.0 {
            return Ok(RelationResult {
                status: RelationStatus::NoneFound,
                coeffs: None,
                residual: ctx.zero(),
                exclusion_bound: Some(Real(bound)),
                iterations: iteration,
            });
        }
        let big = a.iter().flatten().chain(b.iter().flatten()).any(|v| v.significant_bits() > coeff_cap_bits);
        if big {
            return Err(PslqError::PrecisionExhausted { iterations: iteration, bound: format!("{:.4e}", bound.to_f64()) });
        }
    }
    Err(PslqError::PrecisionExhausted { iterations: max_iterations, bound: format!("{:.4e}", bound.to_f64()) })
}

/// Runs [`find_relation`] on `values(ctx)` and re-checks any relation found
/// against `values` recomputed with 20 more digits. A relation that fails the
/// re-check is reported as `NoneFound` with no exclusion bound.
pub fn find_relation_confirmed<F>(values: F, max_norm: &Real, ctx: &PrecisionCtx) -> Result<RelationResult, PslqError>
where
    F: Fn(&PrecisionCtx) -> Vec<Real>,
{
    let r = find_relation(&values(ctx), max_norm, ctx)?;
    if let Some(coeffs) = &r.coeffs {
        let fine = ctx.refined(20);
        let residual = check_relation(coeffs, &values(&fine), &fine)?;
        if residual >= detection_threshold(&fine) {
            return Ok(RelationResult {
                status: RelationStatus::NoneFound,
                coeffs: None,
                residual,
                exclusion_bound: None,
                iterations: r.iterations,
            });
        }
        return Ok(RelationResult { residual: residual.with_precision(ctx), ..r });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylog::cl2;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn negatives_differing_in_the_last_bits() {
        // found by the initial reduction, before any iteration
        let c = PrecisionCtx::default();
        let t = c.ratio(7, 5);
        let xs = [cl2(&t, &c), -crate::polylog::cl2_via_li2(&t, &c)];
        let r = find_relation(&xs, &c.int(1_000_000), &c).unwrap();
        assert_eq!(r.coeffs_i64(), Some(vec![1, 1]));
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn one_and_a_half() {
        let c = PrecisionCtx::default();
        let r = find_relation(&[c.one(), c.ratio(1, 2)], &c.int(1000), &c).unwrap();
        assert_eq!(r.coeffs_i64(), Some(vec![1, -2]));
        assert!(check_relation(&ints(&[1, -2]), &[c.one(), c.ratio(1, 2)], &c).unwrap().is_zero());
    }

    #[test]
    fn clausen_thirds() {
        let c = PrecisionCtx::new(100).unwrap();
        let pi = c.pi();
        let xs = [cl2(&(&pi * 2 / 3), &c), cl2(&(&pi / 3), &c)];
        let r = find_relation(&xs, &c.int(1000), &c).unwrap();
        assert_eq!(r.coeffs_i64(), Some(vec![3, -2]));
        assert!(check_relation(&ints(&[3, -2]), &xs, &c).unwrap() < c.pow10(-95));
    }

    #[test]
    fn check_relation_plain_sum() {
        let c = PrecisionCtx::default();
        let v = check_relation(&ints(&[1, 1]), &[c.one(), c.pi()], &c).unwrap();
        assert!((v - c.pi() - 1).abs() < c.pow10(-48));
        assert!(matches!(
            check_relation(&ints(&[1]), &[c.one(), c.pi()], &c),
            Err(PslqError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn input_validation() {
        let c = PrecisionCtx::default();
        assert!(matches!(find_relation(&[c.one()], &c.int(10), &c), Err(PslqError::TooShort(1))));
        assert!(matches!(find_relation(&[c.one(), c.zero()], &c.int(10), &c), Err(PslqError::ZeroEntry(1))));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical(ints(&[0, -4, 6])), ints(&[0, 2, -3]));
    }

    #[test]
    fn confirmed_relation() {
        let c = PrecisionCtx::new(60).unwrap();
        let gen = |c: &PrecisionCtx| vec![c.log2(), c.int(3).ln().unwrap(), c.int(12).ln().unwrap()];
        let r = find_relation_confirmed(gen, &c.int(1000), &c).unwrap();
        assert_eq!(r.coeffs_i64(), Some(vec![2, 1, -1]));
    }
}
