use proptest::prelude::*;
use tetra::quad::{integrate, Domain, Point};
use tetra::{PrecisionCtx, Real};

fn ctx() -> PrecisionCtx {
    PrecisionCtx::default()
}

fn check(value: &Real, expect: &Real, tol: &Real) {
    assert!((value - expect).abs() < *tol, "{value:?} vs {expect:?}");
}

#[test]
fn constant_on_unit_interval() {
    let c = ctx();
    let tol = c.pow10(-45);
    let r = integrate(|_: &Point| Ok(c.one()), &Domain::finite(c.zero(), c.one()), &tol, &c).unwrap();
    check(&r.value, &c.one(), &tol);
    assert!(r.error_estimate > 0 && r.error_estimate <= tol);
}

#[test]
fn log_singularity() {
    let c = ctx();
    let tol = c.pow10(-45);
    let r = integrate(|p: &Point| p.x.ln(), &Domain::finite(c.zero(), c.one()), &tol, &c).unwrap();
    check(&r.value, &c.int(-1), &tol);
}

#[test]
fn inverse_square_root_singularity() {
    let c = ctx();
    let tol = c.pow10(-45);
    let r = integrate(|p: &Point| p.x.sqrt()?.recip(), &Domain::finite(c.zero(), c.one()), &tol, &c).unwrap();
    check(&r.value, &c.int(2), &tol);
}

#[test]
fn inverse_square_tail() {
    let c = ctx();
    let tol = c.pow10(-45);
    let r = integrate(|p: &Point| p.x.square().recip(), &Domain::semi_infinite(c.int(2)), &tol, &c).unwrap();
    check(&r.value, &c.ratio(1, 2), &tol);
}

#[test]
fn singularity_at_nonzero_endpoint_via_offset() {
    // ∫₂³ (w−2)^{−1/2} dw = 2
    let c = ctx();
    let tol = c.pow10(-40);
    let r = integrate(|p: &Point| p.from_lo.sqrt()?.recip(), &Domain::finite(c.int(2), c.int(3)), &tol, &c).unwrap();
    check(&r.value, &c.int(2), &tol);
}

#[test]
fn deterministic() {
    let c = ctx();
    let d = Domain::finite(c.zero(), c.int(3));
    let f = |p: &Point| Ok((p.x.square() + 1).recip()?);
    let a = integrate(f, &d, &c.pow10(-40), &c).unwrap();
    let b = integrate(f, &d, &c.pow10(-40), &c).unwrap();
    assert!(a.value == b.value && a.evaluations == b.evaluations);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn additivity(a in -2.0f64..0.0, m in 0.05f64..0.95, w in 0.5f64..3.0) {
        let c = ctx();
        let tol = c.pow10(-40);
        let (lo, hi) = (c.real(a), c.real(a + w));
        let mid = c.real(a + m * w);
        let f = |p: &Point| Ok(p.x.exp() * p.x.cos());
        let whole = integrate(f, &Domain::finite(lo.clone(), hi.clone()), &tol, &c).unwrap();
        let left = integrate(f, &Domain::finite(lo, mid.clone()), &tol, &c).unwrap();
        let right = integrate(f, &Domain::finite(mid, hi), &tol, &c).unwrap();
        let bound = &whole.error_estimate + &left.error_estimate + &right.error_estimate;
        prop_assert!((whole.value - left.value - right.value).abs() <= bound);
    }

    #[test]
    fn tolerance_refinement(s in 0.1f64..3.0) {
        let c = ctx();
        let d = Domain::finite(c.zero(), c.one());
        let s = c.real(s);
        let f = |p: &Point| Ok(p.x.ln()? * (&s * &p.x).cos());
        let tol = c.pow10(-30);
        let coarse = integrate(f, &d, &tol, &c).unwrap();
        let fine = integrate(f, &d, &(&tol / 2), &c).unwrap();
        prop_assert!((fine.value - &coarse.value).abs() <= coarse.error_estimate);
    }

    #[test]
    fn exponential_tail(lo in 0.0f64..10.0) {
        let c = ctx();
        let lo = c.real(lo);
        let tol = c.pow10(-40);
        let r = integrate(|p: &Point| Ok((-&p.x).exp()), &Domain::semi_infinite(lo.clone()), &tol, &c).unwrap();
        prop_assert!((r.value - (-lo).exp()).abs() < tol);
    }
}
