use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Integer;
use tetra::polylog::cl2;
use tetra::pslq::{check_relation, find_relation, RelationStatus};
use tetra::{PrecisionCtx, Real};

fn random_real(rng: &mut ChaCha8Rng, c: &PrecisionCtx) -> Real {
    // assemble enough random bits to fill the working precision
    let mut x = c.zero();
    let mut scale = c.one();
    for _ in 0..(c.bits() / 52 + 2) {
        scale = scale / c.real(2f64.powi(52));
        x += &scale * c.real((rng.gen::<u64>() >> 12) as f64);
    }
    x + c.real(rng.gen_range(0.1..2.0))
}

fn canonical(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_gcd(g, x.abs()));
    let mut out: Vec<i64> = v.iter().map(|x| x / g).collect();
    if out.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        out.iter_mut().for_each(|x| *x = -*x);
    }
    out
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn no_false_positives() {
    let c = PrecisionCtx::new(100).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let xs: Vec<Real> = (0..8).map(|_| random_real(&mut rng, &c)).collect();
        let r = find_relation(&xs, &c.int(10_000), &c).unwrap();
        assert_eq!(r.status, RelationStatus::NoneFound);
        assert!(*r.exclusion_bound.as_ref().unwrap() >= 10_000);
    }
}

#[test]
fn conjectural_five_term_identity() {
    let c = PrecisionCtx::new(200).unwrap();
    let alpha = c.int(2).sqrt().unwrap().recip().unwrap().atan();
    let beta = (c.int(8).sqrt().unwrap() + c.int(3).sqrt().unwrap()).atan();
    let pi = c.pi();
    let xs = [
        cl2(&((&beta - &alpha) * 2), &c),
        cl2(&(&pi - &alpha * 4), &c),
        cl2(&(&pi - &beta * 2), &c),
        cl2(&(&pi + &alpha * 2), &c),
        cl2(&(&alpha * 4), &c),
    ];
    let r = find_relation(&xs, &c.int(1_000_000), &c).unwrap();
    let v = r.coeffs_i64().unwrap();
    assert_eq!(v, vec![12, -4, 12, 18, -7]);
    assert!(r.residual < c.pow10(-190));
}

#[test]
fn scale_invariance() {
    let c = PrecisionCtx::new(80).unwrap();
    let pi = c.pi();
    let xs = vec![cl2(&(&pi * 2 / 3), &c), cl2(&(&pi / 3), &c), c.log2()];
    let k = c.int(7).sqrt().unwrap() * c.int(-3);
    let scaled: Vec<Real> = xs.iter().map(|x| x * &k).collect();
    let a = find_relation(&xs, &c.int(1000), &c).unwrap();
    let b = find_relation(&scaled, &c.int(1000), &c).unwrap();
    assert_eq!(a.coeffs, b.coeffs);
    assert_eq!(a.coeffs_i64(), Some(vec![3, -2, 0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planted_relation(seed in any::<u64>(), len in 2usize..=8) {
        let c = PrecisionCtx::new(80).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(-12i64..=12)).collect();
        if v[0] == 0 {
            v[0] = 1;
        }
        let norm2: i64 = v.iter().map(|x| x * x).sum();
        prop_assume!(norm2 <= 2500);
        let mut xs: Vec<Real> = (1..len).map(|_| random_real(&mut rng, &c)).collect();
        let partial = v[1..].iter().zip(&xs).fold(c.zero(), |acc, (k, x)| acc + x * c.int(*k));
        let x1 = -partial / c.int(v[0]);
        prop_assume!(!x1.is_zero());
        xs.insert(0, x1);
        let r = find_relation(&xs, &c.int(1_000_000), &c).unwrap();
        prop_assert_eq!(r.coeffs_i64(), Some(canonical(&v)));
        let coeffs: Vec<Integer> = r.coeffs.clone().unwrap();
        prop_assert!(check_relation(&coeffs, &xs, &c).unwrap() < c.pow10(-50));
    }
}
