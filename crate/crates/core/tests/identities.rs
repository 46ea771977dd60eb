use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tetra::identities::{
    alpha_bridge, appendix_chain, broadhurst_constant, broadhurst_series, catalog, find, harmonic_odd_closed,
    harmonic_odd_series, verify, Status,
};
use tetra::{Complex, PrecisionCtx, Real};

fn ctx60() -> PrecisionCtx {
    PrecisionCtx::new(60).unwrap()
}

#[test]
fn every_proven_entry_passes_twenty_samples() {
    let c = ctx60();
    for s in catalog().iter().filter(|s| s.status == Status::Proven) {
        let r = verify(s.name, 20, 42, &c).unwrap();
        assert!(r.max_residual < c.pow10(-50), "{}: {:?}", s.name, r.max_residual);
        assert!(r.pass);
    }
}

#[test]
fn conjectural_entry_at_two_precisions() {
    for digits in [60, 200] {
        let c = PrecisionCtx::new(digits).unwrap();
        let r = verify("conj-1.4", 20, 42, &c).unwrap();
        assert_eq!(r.samples, 1);
        assert!(r.pass, "{digits} digits: {:?}", r.max_residual);
    }
}

#[test]
fn reports_are_deterministic() {
    let c = ctx60();
    let a = verify("prop-2", 5, 9, &c).unwrap();
    let b = verify("prop-2", 5, 9, &c).unwrap();
    assert_eq!(a.max_residual.to_string(), b.max_residual.to_string());
}

#[test]
fn theorem_at_sixty_degrees_is_first_conjecture() {
    // sin α = tan(π/6) gives tan α = 1/√2
    let c = ctx60();
    let t = (c.ratio(1, 3).sqrt().unwrap().asin().unwrap() / 2).tan();
    let r = find("theorem-1").unwrap().residual(&[t], &c).unwrap();
    assert!(r.abs() < c.pow10(-50));
    assert!(verify("conj-1.1", 1, 0, &c).unwrap().pass);
}

fn central_difference(name: &str, params: &[Real], which: usize, c: &PrecisionCtx) -> Real {
    let s = find(name).unwrap();
    let h = c.pow10(-(c.digits() as i32) / 3);
    let mut up = params.to_vec();
    let mut down = params.to_vec();
    up[which] = &up[which] + &h;
    down[which] = &down[which] - &h;
    (s.residual(&up, c).unwrap() - s.residual(&down, c).unwrap()) / (h * 2)
}

#[test]
fn residual_derivatives_vanish() {
    let c = ctx60();
    let bound = c.pow10(-(c.digits() as i32) / 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let t = c.real(rng.gen_range(0.05..0.95));
        assert!(central_difference("theorem-1", &[t], 0, &c).abs() < bound);
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(0.05..1.9), rng.gen_range(0.05..1.9));
            if a * a + b * b < 3.8 {
                break (c.real(a), c.real(b));
            }
        };
        for name in ["prop-1", "prop-2"] {
            for k in 0..2 {
                let d = central_difference(name, &[a.clone(), b.clone()], k, &c);
                assert!(d.abs() < bound, "{name} d/d{k}: {d:?}");
            }
        }
    }
}

#[test]
fn derivative_check_detects_a_broken_identity() {
    // the same difference applied to Cl₂ recovers −log(2 sin(x/2)), far from zero
    let c = ctx60();
    let h = c.pow10(-20);
    let x = c.ratio(1, 2);
    let d = (tetra::polylog::cl2(&(&x + &h), &c) - tetra::polylog::cl2(&(&x - &h), &c)) / (h * 2);
    let expect = -((&x / 2).sin() * 2).ln().unwrap();
    assert!((&d - &expect).abs() < c.pow10(-30));
    assert!(d > 0);
}

#[test]
fn alpha_conventions_bridge() {
    for digits in [60, 200] {
        let c = PrecisionCtx::new(digits).unwrap();
        assert!(alpha_bridge(&c).abs() < c.pow10(-(digits as i32) - 5));
    }
}

#[test]
fn series_against_clausen_value() {
    let c = PrecisionCtx::new(50).unwrap();
    let s = broadhurst_series(&c, 80);
    assert!((s.value - broadhurst_constant(&c)).abs() < c.pow10(-40));
    let s120 = broadhurst_series(&c, 120);
    assert!((s120.value - broadhurst_constant(&c)).abs() < c.pow10(-40));
}

#[test]
fn series_tail_is_geometric() {
    let c = PrecisionCtx::new(100).unwrap();
    let a = broadhurst_series(&c, 80);
    let b = broadhurst_series(&c, 120);
    let diff = (&a.value - &b.value).abs();
    assert!(diff < c.pow10(-70));
    assert!(diff <= a.tail_bound);
}

#[test]
fn series_zeroth_term() {
    let c = PrecisionCtx::new(50).unwrap();
    let s = broadhurst_series(&c, 1);
    let expect = (c.int(2) - c.log2() * 3) * 2;
    assert!((s.value - expect).abs() < c.pow10(-48));
}

#[test]
fn chain_holds_link_by_link() {
    let c = PrecisionCtx::new(50).unwrap();
    let r = appendix_chain(&c).unwrap();
    assert_eq!(r.equations.len(), 9);
    for (name, v) in r.equations.iter().chain(&r.substitutions) {
        assert!(v.abs() < c.pow10(-40), "{name}: {v:?}");
    }
    assert!(r.pass());
}

#[test]
fn harmonic_series_at_imaginary_argument() {
    // direct summation against the closed form on the branch the chain uses
    let c = ctx60();
    let z = Complex::imaginary(-c.int(8).sqrt().unwrap().recip().unwrap());
    let d = harmonic_odd_series(&z, &c) - harmonic_odd_closed(&z, &c).unwrap();
    assert!(d.abs() < c.pow10(-55));
}

#[test]
fn catalog_shape() {
    let cat = catalog();
    assert_eq!(cat.iter().filter(|s| s.name.starts_with("lewin-")).count(), 5);
    assert_eq!(cat.iter().filter(|s| s.status == Status::Conjectural).count(), 1);
    assert_eq!(find("prop-1").unwrap().parameters.len(), 2);
    for s in &cat {
        if s.is_fixed() {
            assert!(s.parameters.is_empty(), "{}", s.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn seeds_do_not_matter(seed in any::<u64>()) {
        let c = PrecisionCtx::new(40).unwrap();
        for name in ["theorem-1", "prop-1", "lewin-1.4"] {
            let r = verify(name, 3, seed, &c).unwrap();
            prop_assert!(r.pass, "{} seed {}: {:?}", name, seed, r.max_residual);
        }
    }
}
