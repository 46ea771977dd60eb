use proptest::prelude::*;
use tetra::feynman::{
    c_closed, c_direct, derive, i1_closed_form, i2_closed_form, i3_closed_form, i4_closed_form, q_values, r_values,
    s_values, stepwise, DerivedAngles, MassPair,
};
use tetra::polylog::cl2;
use tetra::quad::{integrate, Domain, Point};
use tetra::{MpError, PrecisionCtx, Real};

fn ctx() -> PrecisionCtx {
    PrecisionCtx::default()
}

fn inv_pi_inv_e(c: &PrecisionCtx) -> MassPair {
    MassPair::new(c.pi().recip().unwrap(), c.one().exp().recip().unwrap(), c).unwrap()
}

fn pair(a: f64, b: f64, c: &PrecisionCtx) -> MassPair {
    MassPair::new(c.real(a), c.real(b), c).unwrap()
}

fn quad_pt(f: impl Fn(&Point) -> Result<Real, MpError> + Sync, lo: &Real, hi: &Real, c: &PrecisionCtx) -> Real {
    let tol = c.pow10(-(c.digits() as i32) + 8);
    integrate(f, &Domain::finite(lo.clone(), hi.clone()), &tol, c).unwrap().value
}

fn quad(f: impl Fn(&Real) -> Result<Real, MpError> + Sync, lo: &Real, hi: &Real, c: &PrecisionCtx) -> Real {
    quad_pt(|p: &Point| f(&p.x), lo, hi, c)
}

#[test]
fn stepwise_unit_masses() {
    let c = ctx();
    let rep = stepwise(&pair(1.0, 1.0, &c), &c).unwrap();
    assert!(rep.failures().is_empty(), "{:?}", rep.failures());
    assert_eq!(rep.c_closed.to_decimal(20), "0.17390061066200274273");
}

#[test]
fn stepwise_transcendental_masses() {
    let c = ctx();
    let rep = stepwise(&inv_pi_inv_e(&c), &c).unwrap();
    assert!(rep.failures().is_empty(), "{:?}", rep.failures());
    assert!(rep.i1_plus_i2.abs() < c.pow10(-40));
}

#[test]
fn stepwise_where_two_d_below_bc() {
    // 2d − bc < 0 here; δ₂, δ₃ take the second-quadrant branch
    let c = ctx();
    let rep = stepwise(&pair(1.6, 1.0, &c), &c).unwrap();
    assert!(rep.failures().is_empty(), "{:?}", rep.failures());
}

#[test]
fn angle_identities_at_transcendental_masses() {
    let c = ctx();
    let g = derive(&inv_pi_inv_e(&c), &c).unwrap();
    for (name, r) in g.invariant_residuals(&c).unwrap() {
        assert!(r.abs() < c.pow10(-40), "{name}: {r:?}");
    }
}

// Substituted φ- and u-forms of the four integrals, each checked against the
// Clausen closed form.

fn i1_phi(g: &DerivedAngles, c: &PrecisionCtx) -> Real {
    let v = quad(
        |phi| {
            let (s, co) = phi.sin_cos();
            ((&g.c * &co + &g.b * &s) / (&g.c * &co - &g.b * &s)).ln()
        },
        &c.zero(),
        &g.alpha1,
        c,
    );
    v / (&g.c * 2)
}

fn i2_phi(g: &DerivedAngles, c: &PrecisionCtx) -> Real {
    // cos α₂ = b/2, so cos φ − b/2 = 2 sin((φ+α₂)/2) sin((α₂−φ)/2)
    let hb = &g.b / 2;
    let v = quad_pt(
        |p| {
            let phi = &p.x;
            let gap = p.to_hi.as_ref().unwrap();
            let below = ((phi + &g.alpha2) / 2).sin() * (gap / 2).sin() * 2;
            Ok((below / (phi.cos() + &hb)).ln()? - (phi / 2).tan().ln()? * 2)
        },
        &g.alpha1,
        &g.alpha2,
        c,
    );
    v / (&g.c * 2)
}

fn i3_phi(g: &DerivedAngles, c: &PrecisionCtx) -> Real {
    let (dc, bc, ab) = (&g.d * &g.c, &g.b * &g.c, &g.a * &g.b);
    let v = quad(
        |phi| {
            let (s, co) = phi.sin_cos();
            ((&dc * &co + &bc * &s - &ab) / (&dc * &co - &bc * &s + &ab)).ln()
        },
        &g.alpha3,
        &g.alpha4,
        c,
    );
    v / (&g.d * 2)
}

fn i3_u(g: &DerivedAngles, c: &PrecisionCtx) -> Real {
    let d2 = g.d.square();
    quad(
        |u| {
            let q = (c.one() - &g.a * u * 2 - &d2 * u.square()).sqrt()?;
            Ok((&g.b * u / &q).atanh()? / q)
        },
        &c.zero(),
        &g.p.recip().unwrap(),
        c,
    )
}

fn i4_phi(g: &DerivedAngles, c: &PrecisionCtx) -> Real {
    let d = &g.d;
    let r7 = &g.a / d;
    let (r9, r10, r11) = ((&g.a - &g.b - 2) / d, (&g.a - &g.b + 2) / d, (&g.a + &g.b - 2) / d);
    let pre_num = d.square();
    let pre_den = g.c.square() * g.f.square();
    let cos6 = g.alpha6.cos();
    let v = quad_pt(
        |p| {
            let phi = &p.x;
            let t = phi.tan();
            // tan α₆ = (a+b+2)/d: take that factor from the offset
            let t8 = p.from_lo.sin() / (phi.cos() * &cos6);
            let num = &pre_num * (&t - &r7).square() * t8 * (&t - &r9);
            let den = &pre_den * (&t - &r10) * (&t - &r11);
            (num / den).abs().ln()
        },
        &g.alpha6,
        &g.alpha7,
        c,
    );
    v / d
}

#[test]
fn substituted_forms_match_closed_forms() {
    let c = ctx();
    let tol = c.pow10(-40);
    for m in [pair(1.0, 1.0, &c), inv_pi_inv_e(&c), pair(0.3, 1.8, &c), pair(1.85, 0.5, &c)] {
        let g = derive(&m, &c).unwrap();
        let closed = [
            i1_closed_form(&g, &c).evaluate(&c),
            i2_closed_form(&g, &c).evaluate(&c),
            i3_closed_form(&g, &c).evaluate(&c),
            i4_closed_form(&g, &c).evaluate(&c),
        ];
        let checks = [
            ("I1 phi", i1_phi(&g, &c), &closed[0]),
            ("I2 phi", i2_phi(&g, &c), &closed[1]),
            ("I3 phi", i3_phi(&g, &c), &closed[2]),
            ("I3 u", i3_u(&g, &c), &closed[2]),
            ("I4 phi", i4_phi(&g, &c), &closed[3]),
        ];
        for (name, v, expect) in checks {
            assert!((&v - expect).abs() < tol, "{name} at a={:?}: {v:?} vs {expect:?}", g.a);
        }
    }
}

#[test]
fn unit_masses_match_broadhurst_constant() {
    let c = ctx();
    let alpha = c.ratio(1, 3).asin().unwrap();
    let expect = c.int(32).sqrt().unwrap() * (cl2(&(&alpha * 4), &c) - cl2(&(&alpha * 2), &c));
    let closed = c_closed(&pair(1.0, 1.0, &c), &c).unwrap();
    assert!((&closed - &expect).abs() < c.pow10(-45));
    let direct = c_direct(&pair(1.0, 1.0, &c), &c.pow10(-35), &c).unwrap();
    assert!((direct.value - expect).abs() < c.pow10(-30));
}

#[test]
fn direct_route_symmetric() {
    let c = ctx();
    let tol = c.pow10(-30);
    let m = pair(0.45, 1.3, &c);
    let x = c_direct(&m, &tol, &c).unwrap();
    let y = c_direct(&m.swapped(), &tol, &c).unwrap();
    assert!((x.value - y.value).abs() < tol * 2);
}

fn vals(v: Vec<tetra::feynman::ClausenValue>) -> Vec<Real> {
    std::iter::once(Real::from_float(rug::Float::new(2))).chain(v.into_iter().map(|x| x.value)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn clausen_relations(a in 0.05f64..1.9, b in 0.05f64..1.9) {
        prop_assume!(a * a + b * b <= 3.9);
        let c = ctx();
        let g = derive(&pair(a, b, &c), &c).unwrap();
        let (q, r, s) = (vals(q_values(&g, &c)), vals(r_values(&g, &c)), vals(s_values(&g, &c)));
        let tol = c.pow10(-45);
        let residuals = [
            &q[1] - &q[5] * 2 + &q[8] * 2,
            &q[2] - &q[9] * 2 + &q[4] * 2,
            &r[2] - &r[9],
            &r[5] - &r[11],
            &r[4] + &r[13],
            &r[1] - &r[15],
            &r[8] + &r[17],
            &r[6] - &r[18],
            &r[3] - &s[4],
            &r[7] + &s[2],
            &r[9] - &s[3],
            &r[12] + &s[7],
            &r[16] - &s[5],
            &r[18] - &s[8],
            -(&r[10] * 2) - &r[11] * 2 - &r[14] + &r[15] * 2 - &r[19] * 2 - &s[1] + &s[6] + &s[8] * 4,
        ];
        for (i, x) in residuals.iter().enumerate() {
            prop_assert!(x.abs() < tol, "relation {} residual {:?}", i, x);
        }
    }

    #[test]
    fn closed_routes_agree(a in 0.05f64..1.9, b in 0.05f64..1.9) {
        prop_assume!(a * a + b * b <= 3.9);
        let c = ctx();
        let g = derive(&pair(a, b, &c), &c).unwrap();
        let i1 = i1_closed_form(&g, &c).evaluate(&c);
        let i2 = i2_closed_form(&g, &c).evaluate(&c);
        prop_assert!((i1 + i2).abs() < c.pow10(-45));
        let i34 = i3_closed_form(&g, &c).evaluate(&c) + i4_closed_form(&g, &c).evaluate(&c);
        let via = c.int(16) / (&g.a * &g.b) * i34;
        let closed = c_closed(&pair(a, b, &c), &c).unwrap();
        prop_assert!((via - closed).abs() < c.pow10(-43));
    }
}
