//! Random elements, polynomials and Mac Lane valuations from a seed.

use maclane_core::maclane::{InductiveValuation, P};
use maclane_core::poly::Poly;
use maclane_core::valued_field::ValuedField;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::random_elem;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn integral_elem<F: ValuedField>(k: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    let mut a = k.zero();
    for s in 0..4 {
        let r = k.residue_field().random(rng);
        a = k.add(&a, &k.mul(&k.lift(&r), &k.pi_pow(s)));
    }
    a
}

pub fn poly<F: ValuedField>(k: &F, deg: usize, rng: &mut ChaCha8Rng) -> P<F> {
    Poly::new(k, (0..=deg).map(|_| random_elem(k, rng)).collect())
}

pub fn monic<F: ValuedField>(k: &F, deg: usize, rng: &mut ChaCha8Rng) -> P<F> {
    let mut c: Vec<F::Elem> = (0..deg).map(|_| integral_elem(k, rng)).collect();
    c.push(k.one());
    Poly::new(k, c)
}

fn small_q(rng: &mut ChaCha8Rng, max_den: i64, max_num: i64) -> BigRational {
    let d = rng.random_range(1..=max_den);
    let n = rng.random_range(1..=max_num * d);
    BigRational::new(n.into(), d.into())
}

/// A valuation with up to `depth` steps and total ramification at most
/// `max_e`: a random linear `phi_1`, then key polynomials from `lift_key`
/// while the last step ramifies.
pub fn valuation<F: ValuedField>(k: &F, depth: usize, max_e: u64, rng: &mut ChaCha8Rng) -> InductiveValuation<F> {
    let c = integral_elem(k, rng);
    valuation_from(k, c, depth, max_e, rng)
}

/// As [`valuation`] with `phi_1 = x - pi c`, so that every diskoid lies in
/// the open unit disc.
pub fn positive_valuation<F: ValuedField>(
    k: &F,
    depth: usize,
    max_e: u64,
    rng: &mut ChaCha8Rng,
) -> InductiveValuation<F> {
    let c = k.mul(&integral_elem(k, rng), &k.uniformizer());
    valuation_from(k, c, depth, max_e, rng)
}

fn valuation_from<F: ValuedField>(
    k: &F,
    c: F::Elem,
    depth: usize,
    max_e: u64,
    rng: &mut ChaCha8Rng,
) -> InductiveValuation<F> {
    let x = Poly::x(k);
    let phi = x.sub(k, &Poly::constant(k, c));
    let mut v = InductiveValuation::gauss(k)
        .augment(&phi, &small_q(rng, max_e.min(6) as i64, 3))
        .expect("linear polynomials are keys over v0");
    while v.len() < depth && v.e_at(v.len()) >= 2 {
        let kf = k.residue_field();
        let rho = loop {
            let r = kf.random(rng);
            if !kf.is_zero(&r) {
                break r;
            }
        };
        let phi = v.lift_key(&rho);
        let mu = v.evaluate(&phi).expect_finite().clone();
        let scale = BigRational::from_integer((v.e_total() as i64).into());
        let lambda = mu + small_q(rng, 4, 2) / scale;
        let w = v.augment(&phi, &lambda).expect("lift_key gives key polynomials");
        if w.e_total() > max_e {
            break;
        }
        v = w;
    }
    v
}
