//! Properties of the valued fields, finite-field factorization and
//! polynomial arithmetic.

mod common;

use maclane_core::finite_field::{FFPoly, FiniteField, Fq};
use maclane_core::maclane::InductiveValuation;
use maclane_core::poly::{resultant, Poly};
use maclane_core::rat::Rat;
use maclane_core::valued_field::{Laurent, Padic, RatFn, ValuedField};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn padic_elem() -> impl Strategy<Value = (i64, i64, i64)> {
    (-2000i64..2000, 1i64..200, -3i64..4)
}

fn padic(k: &Padic, (n, d, e): (i64, i64, i64)) -> BigRational {
    k.mul(&BigRational::new(BigInt::from(n), BigInt::from(d)), &k.pi_pow(e))
}

fn laurent_elem() -> impl Strategy<Value = (Vec<u64>, Vec<u64>, i64)> {
    (prop::collection::vec(0u64..5, 0..6), prop::collection::vec(0u64..5, 0..4), -2i64..3)
}

/// `t^e num(t) / (1 + t den(t))`, coefficients reduced mod p.
fn laurent(k: &Laurent, (num, den, e): &(Vec<u64>, Vec<u64>, i64)) -> RatFn {
    let ff = k.residue_field();
    let to_poly = |c: &[u64]| ff.poly(c.iter().map(|&x| ff.from_u64(x)).collect());
    let mut d = vec![1];
    d.extend(den);
    let a = k.frac(to_poly(num), to_poly(&d));
    k.mul(&a, &k.pi_pow(*e))
}

fn axioms<F: ValuedField>(k: &F, a: &F::Elem, b: &F::Elem) -> Result<(), TestCaseError> {
    let (va, vb) = (k.val(a), k.val(b));
    prop_assert_eq!(k.val(&k.mul(a, b)), va.clone() + vb.clone());
    let vs = k.val(&k.add(a, b));
    prop_assert!(vs >= va.clone().min(vb.clone()));
    if va != vb {
        prop_assert_eq!(vs, va.min(vb));
    }
    Ok(())
}

/// Moves `a` into the valuation ring.
fn integral<F: ValuedField>(k: &F, a: &F::Elem) -> F::Elem {
    match k.ord(a) {
        Some(v) if v < 0 => k.mul(a, &k.pi_pow(-v)),
        _ => a.clone(),
    }
}

fn residue_hom<F: ValuedField>(k: &F, a: &F::Elem, b: &F::Elem) -> Result<(), TestCaseError> {
    let (a, b) = (integral(k, a), integral(k, b));
    let kf = k.residue_field();
    let (ra, rb) = (k.residue(&a).unwrap(), k.residue(&b).unwrap());
    prop_assert_eq!(k.residue(&k.mul(&a, &b)).unwrap(), kf.mul(&ra, &rb));
    prop_assert_eq!(k.residue(&k.add(&a, &b)).unwrap(), kf.add(&ra, &rb));
    Ok(())
}

fn section<F: ValuedField>(k: &F, r: &Fq) -> Result<(), TestCaseError> {
    let l = k.lift(r);
    prop_assert_eq!(k.lift(&k.residue(&l).unwrap()), l);
    prop_assert_eq!(&k.residue(&k.lift_small(r)).unwrap(), r);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn padic_valuation_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7]), a in padic_elem(), b in padic_elem()) {
        let k = Padic::new(p).unwrap();
        let (a, b) = (padic(&k, a), padic(&k, b));
        axioms(&k, &a, &b)?;
        residue_hom(&k, &a, &b)?;
    }

    #[test]
    fn laurent_valuation_axioms(p in prop::sample::select(vec![2u64, 3, 5]), a in laurent_elem(), b in laurent_elem()) {
        let k = Laurent::new(p, 1).unwrap();
        let (a, b) = (laurent(&k, &a), laurent(&k, &b));
        axioms(&k, &a, &b)?;
        residue_hom(&k, &a, &b)?;
    }

    #[test]
    fn lift_is_a_section(p in prop::sample::select(vec![2u64, 3, 5, 7]), c in 0u64..7, m in 1usize..3) {
        let k = Padic::new(p).unwrap();
        let r = k.residue_field().from_u64(c);
        section(&k, &r)?;
        let k = Laurent::new(p, m).unwrap();
        let kf = k.residue_field();
        let r = Fq((0..m).map(|i| (c + i as u64) % p).collect());
        prop_assert!(kf.elements().contains(&r));
        section(&k, &r)?;
    }
}

// ---- finite fields ----

fn field(i: usize) -> FiniteField {
    [FiniteField::new(2, 1), FiniteField::new(3, 1), FiniteField::new(5, 1), FiniteField::new(2, 2)][i].clone()
}

fn ff_poly(kf: &FiniteField, raw: &[u64]) -> FFPoly {
    let m = kf.m();
    kf.poly(raw.chunks(m).map(|c| Fq(c.iter().map(|&x| x % kf.p()).collect())).filter(|c| c.0.len() == m).collect())
}

/// `x^{q^i} - x` has no common factor with `h` for `0 < i < deg h`, by
/// repeated q-th powers modulo `h`.
fn irreducible_by_frobenius(kf: &FiniteField, h: &FFPoly) -> bool {
    let x = kf.poly_x();
    let q = kf.order().to_u64_digits()[0];
    let pow_q = |a: &FFPoly| {
        let mut r = kf.poly_one();
        for _ in 0..q {
            r = kf.poly_rem(&kf.poly_mul(&r, a), h);
        }
        r
    };
    let mut xi = kf.poly_rem(&x, h);
    for _ in 1..h.deg() {
        xi = pow_q(&xi);
        if kf.poly_gcd(h, &kf.poly_sub(&xi, &x)).deg() > 0 {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn factor_round_trip(
        i in 0usize..4,
        parts in prop::collection::vec((prop::collection::vec(0u64..5, 2..10), 1usize..3), 1..4),
    ) {
        let kf = field(i);
        let mut g = kf.poly_one();
        for (raw, e) in &parts {
            let h = ff_poly(&kf, raw);
            if !h.is_zero() {
                g = kf.poly_mul(&g, &kf.poly_pow(&h, *e));
            }
        }
        prop_assume!(g.deg() <= 12);
        let fac = kf.factor(&g).unwrap();
        let mut prod = kf.poly(vec![fac.unit.clone()]);
        for (h, e) in &fac.factors {
            prop_assert!(kf.is_one(h.lead()));
            prop_assert!(irreducible_by_frobenius(&kf, h), "reducible factor {}", kf.fmt_poly(h, "x"));
            prod = kf.poly_mul(&prod, &kf.poly_pow(h, *e));
        }
        prop_assert_eq!(&prod, &g);
        let again = kf.factor(&prod).unwrap();
        let mut a = fac.factors.clone();
        let mut b = again.factors.clone();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let mut hs: Vec<&FFPoly> = fac.factors.iter().map(|(h, _)| h).collect();
        hs.sort();
        hs.dedup();
        prop_assert_eq!(hs.len(), fac.factors.len());
    }
}

// ---- polynomials ----

fn padic_poly(k: &Padic, raw: &[(i64, i64, i64)]) -> Poly<BigRational> {
    Poly::new(k, raw.iter().map(|&c| padic(k, c)).collect())
}

fn laurent_poly(k: &Laurent, raw: &[(Vec<u64>, Vec<u64>, i64)]) -> Poly<RatFn> {
    Poly::new(k, raw.iter().map(|c| laurent(k, c)).collect())
}

fn monic_of<F: ValuedField>(k: &F, mut c: Vec<F::Elem>) -> Poly<F::Elem> {
    c.push(k.one());
    Poly::new(k, c)
}

fn expand_round_trip<F: ValuedField>(k: &F, a: &Poly<F::Elem>, phi: &Poly<F::Elem>) -> Result<(), TestCaseError> {
    let digits = a.phi_expand(k, phi).unwrap();
    for d in &digits {
        prop_assert!(d.is_zero() || d.deg() < phi.deg());
    }
    prop_assert_eq!(&Poly::reassemble(k, &digits, phi), a);
    Ok(())
}

/// Determinant of the Sylvester matrix by Gaussian elimination.
fn sylvester<F: ValuedField>(k: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
    let (m, n) = (a.deg(), b.deg());
    let size = m + n;
    if size == 0 {
        return k.one();
    }
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (p, count) in [(a, n), (b, m)] {
        let desc: Vec<F::Elem> = p.coeffs().iter().rev().cloned().collect();
        for s in 0..count {
            let mut row = vec![k.zero(); size];
            for (j, c) in desc.iter().enumerate() {
                row[s + j] = c.clone();
            }
            rows.push(row);
        }
    }
    let mut det = k.one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !k.is_zero(&rows[r][col])) else { return k.zero() };
        if piv != col {
            rows.swap(piv, col);
            det = k.neg(&det);
        }
        let p = rows[col][col].clone();
        det = k.mul(&det, &p);
        let inv = k.inv(&p);
        for r in col + 1..size {
            let f = k.mul(&rows[r][col], &inv);
            if k.is_zero(&f) {
                continue;
            }
            for c in col..size {
                let t = k.mul(&f, &rows[col][c]);
                rows[r][c] = k.sub(&rows[r][c], &t);
            }
        }
    }
    det
}

fn gauss_lemma<F: ValuedField>(k: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<(), TestCaseError> {
    let v0 = InductiveValuation::gauss(k);
    prop_assert_eq!(v0.evaluate(&a.mul(k, b)), v0.evaluate(a) + v0.evaluate(b));
    prop_assert_eq!(v0.evaluate(a), a.gauss_val(k));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn padic_phi_expand_round_trip(
        a in prop::collection::vec(padic_elem(), 0..13),
        phi in prop::collection::vec((-50i64..50, 1i64..4, 0i64..3), 1..5),
    ) {
        let k = Padic::new(3).unwrap();
        expand_round_trip(&k, &padic_poly(&k, &a), &monic_of(&k, phi.iter().map(|&c| padic(&k, c)).collect()))?;
    }

    #[test]
    fn laurent_phi_expand_round_trip(
        a in prop::collection::vec(laurent_elem(), 0..13),
        phi in prop::collection::vec(laurent_elem(), 1..4),
    ) {
        let k = Laurent::new(2, 1).unwrap();
        expand_round_trip(&k, &laurent_poly(&k, &a), &monic_of(&k, phi.iter().map(|c| laurent(&k, c)).collect()))?;
    }

    #[test]
    fn padic_gauss_lemma(a in prop::collection::vec(padic_elem(), 1..8), b in prop::collection::vec(padic_elem(), 1..8)) {
        let k = Padic::new(2).unwrap();
        let (a, b) = (padic_poly(&k, &a), padic_poly(&k, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        gauss_lemma(&k, &a, &b)?;
    }

    #[test]
    fn laurent_gauss_lemma(a in prop::collection::vec(laurent_elem(), 1..6), b in prop::collection::vec(laurent_elem(), 1..6)) {
        let k = Laurent::new(3, 1).unwrap();
        let (a, b) = (laurent_poly(&k, &a), laurent_poly(&k, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        gauss_lemma(&k, &a, &b)?;
    }

    #[test]
    fn padic_resultant_matches_sylvester(
        a in prop::collection::vec((-9i64..10, 1i64..4, 0i64..2), 1..7),
        b in prop::collection::vec((-9i64..10, 1i64..4, 0i64..2), 1..7),
    ) {
        let k = Padic::new(5).unwrap();
        let (a, b) = (padic_poly(&k, &a), padic_poly(&k, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(resultant(&k, &a, &b).unwrap(), sylvester(&k, &a, &b));
    }

    #[test]
    fn laurent_resultant_matches_sylvester(
        a in prop::collection::vec(laurent_elem(), 1..7),
        b in prop::collection::vec(laurent_elem(), 1..7),
    ) {
        let k = Laurent::new(3, 1).unwrap();
        let (a, b) = (laurent_poly(&k, &a), laurent_poly(&k, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(resultant(&k, &a, &b).unwrap(), sylvester(&k, &a, &b));
    }
}

#[test]
fn resultant_exhaustive_small_degrees() {
    // Every pair of monic polynomials over Q with coefficients in {-1, 0, 1}
    // and degrees 1 and 2.
    let k = Padic::new(2).unwrap();
    let mut polys = Vec::new();
    for d in 1..=2usize {
        for code in 0..3usize.pow(d as u32) {
            let mut c: Vec<i64> = (0..d).map(|i| (code / 3usize.pow(i as u32) % 3) as i64 - 1).collect();
            c.push(1);
            polys.push(Poly::from_ints(&k, &c));
        }
    }
    for a in &polys {
        for b in &polys {
            assert_eq!(resultant(&k, a, b).unwrap(), sylvester(&k, a, b), "{} {}", a.fmt(&k), b.fmt(&k));
        }
    }
    assert_eq!(k.val(&resultant(&k, &polys[0], &polys[0]).unwrap()), Rat::Inf);
}
