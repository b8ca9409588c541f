//! Arithmetic in F_{p^m} and factorization of univariate polynomials over it.
//!
//! Elements are coefficient vectors in the generator `u`, reduced modulo the
//! lexicographically smallest monic irreducible polynomial of degree `m`.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hash::Fnv1a;

/// An element of F_{p^m}: exactly `m` coefficients in `[0, p)`, constant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub Vec<u64>);

/// Dense polynomial over F_q, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFPoly(pub Vec<Fq>);

impl FFPoly {
    pub fn zero() -> Self {
        FFPoly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> &Fq {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.0
    }
}

impl PartialOrd for FFPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the constant term up.
impl Ord for FFPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

fn prime_coeffs(a: &FFPoly) -> Vec<u64> {
    a.0.iter().map(|c| c.0[0]).collect()
}

/// Output of [`FiniteField::factor`]: `g = unit * prod f_i^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fq,
    pub factors: Vec<(FFPoly, usize)>,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    tables: Option<Arc<Tables>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.m, &self.modulus) == (other.p, other.m, &other.modulus)
    }
}

impl Eq for FiniteField {}

/// Small extension fields keep elements coded as integers `sum c_i p^i` with
/// logarithm and addition tables for the polynomial kernels.
struct Tables {
    q: usize,
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl std::fmt::Debug for Tables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tables(q = {})", self.q)
    }
}

const TABLE_LIMIT: u64 = 256;

impl Tables {
    fn mul(&self, x: u16, y: u16) -> u16 {
        if x == 0 || y == 0 {
            0
        } else {
            self.exp[self.log[x as usize] as usize + self.log[y as usize] as usize]
        }
    }

    fn inv(&self, x: u16) -> u16 {
        let n = self.q - 1;
        self.exp[(n - self.log[x as usize] as usize) % n]
    }

    fn add(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.q + y as usize]
    }
}

impl FiniteField {
    /// The field F_{p^m}. `p` must be a prime below 2^32.
    pub fn new(p: u64, m: usize) -> Self {
        assert!(m >= 1, "extension degree must be positive");
        assert!((2..(1 << 32)).contains(&p), "characteristic out of range");
        let prime = FiniteField { p, m: 1, modulus: vec![0, 1], tables: None };
        if m == 1 {
            return prime;
        }
        let modulus = prime.irreducible_modulus(m);
        let mut k = FiniteField { p, m, modulus, tables: None };
        if (m as u32) < 64 && p.checked_pow(m as u32).is_some_and(|q| q <= TABLE_LIMIT) {
            k.tables = Some(Arc::new(k.build_tables()));
        }
        k
    }

    fn build_tables(&self) -> Tables {
        let q = self.p.pow(self.m as u32) as usize;
        let code = |a: &Fq| self.code(a) as usize;
        let elems: Vec<Fq> = (0..q).map(|c| self.decode(c as u16)).collect();
        let mut add = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        for (i, a) in elems.iter().enumerate() {
            neg[i] = code(&self.neg(a)) as u16;
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = code(&self.add(a, b)) as u16;
            }
        }
        // A generator of the multiplicative group.
        let one = self.one();
        let mut powers = Vec::new();
        for g in &elems[1..] {
            powers.clear();
            let mut x = one.clone();
            loop {
                powers.push(code(&x) as u16);
                x = self.mul(&x, g);
                if x == one {
                    break;
                }
            }
            if powers.len() == q - 1 {
                break;
            }
        }
        let mut log = vec![0u16; q];
        for (i, &c) in powers.iter().enumerate() {
            log[c as usize] = i as u16;
        }
        let mut exp = powers.clone();
        exp.extend_from_slice(&powers);
        Tables { q, exp, log, add, neg }
    }

    fn code(&self, a: &Fq) -> u16 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u16
    }

    fn decode(&self, mut c: u16) -> Fq {
        let mut out = vec![0; self.m];
        for x in out.iter_mut() {
            *x = c as u64 % self.p;
            c /= self.p as u16;
        }
        Fq(out)
    }

    fn coded(&self, a: &FFPoly) -> Vec<u16> {
        a.0.iter().map(|c| self.code(c)).collect()
    }

    fn poly_from_codes(&self, v: Vec<u16>) -> FFPoly {
        self.poly(v.into_iter().map(|c| self.decode(c)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The defining polynomial of the extension as coefficients over F_p.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.m as u32)
    }

    // Lexicographically smallest monic irreducible of degree m over F_p; only
    // meaningful on the prime field.
    fn irreducible_modulus(&self, m: usize) -> Vec<u64> {
        debug_assert_eq!(self.m, 1);
        let mut low = vec![0u64; m];
        loop {
            let mut coeffs: Vec<Fq> = low.iter().map(|&c| Fq(vec![c])).collect();
            coeffs.push(self.one());
            if self.is_irreducible(&FFPoly(coeffs)) {
                let mut out = low.clone();
                out.push(1);
                return out;
            }
            // Count upward with the constant term as the fastest digit.
            let mut i = 0;
            loop {
                assert!(i < m, "no irreducible polynomial found");
                low[i] += 1;
                if low[i] < self.p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    pub fn zero(&self) -> Fq {
        Fq(vec![0; self.m])
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    /// The generator `u` of F_{p^m} over F_p (equal to 0 when m = 1 is not
    /// meaningful, so this requires m > 1).
    pub fn generator(&self) -> Fq {
        assert!(self.m > 1, "prime field has no extension generator");
        let mut c = vec![0; self.m];
        c[1] = 1;
        Fq(c)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        let mut c = vec![0; self.m];
        c[0] = n % self.p;
        Fq(c)
    }

    pub fn from_i64(&self, n: i64) -> Fq {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    /// Element from coefficients over F_p in the generator, constant first.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Fq {
        let mut acc = self.zero();
        let mut power = self.one();
        let u = if self.m > 1 { self.generator() } else { self.one() };
        for (i, &c) in coeffs.iter().enumerate() {
            if i > 0 {
                assert!(self.m > 1, "prime field element with generator terms");
                power = self.mul(&power, &u);
            }
            acc = self.add(&acc, &self.mul(&self.from_i64(c), &power));
        }
        acc
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &Fq) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Fq(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % self.p).collect())
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        Fq(a.0.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect())
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if self.m == 1 {
            return Fq(vec![a.0[0] * b.0[0] % self.p]);
        }
        let p = self.p as u128;
        let m = self.m;
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                let t = c * mc as u128 % p;
                prod[k - m + i] = (prod[k - m + i] + p - t) % p;
            }
        }
        Fq(prod[..m].iter().map(|&c| c as u64).collect())
    }

    pub fn pow(&self, a: &Fq, e: &BigUint) -> Fq {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Fq) -> Fq {
        assert!(!self.is_zero(a), "inverse of zero in finite field");
        if self.m == 1 {
            let (mut r0, mut r1) = (self.p as i64, a.0[0] as i64);
            let (mut s0, mut s1) = (0i64, 1i64);
            while r1 != 0 {
                let t = r0 / r1;
                (r0, r1) = (r1, r0 - t * r1);
                (s0, s1) = (s1, s0 - t * s1);
            }
            return Fq(vec![s0.rem_euclid(self.p as i64) as u64]);
        }
        if let Some(t) = &self.tables {
            return self.decode(t.inv(self.code(a)));
        }
        let e = self.order() - 2u32;
        self.pow(a, &e)
    }

    pub fn div(&self, a: &Fq, b: &Fq) -> Fq {
        self.mul(a, &self.inv(b))
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: &Fq) -> Fq {
        let e = self.order() / BigUint::from(self.p);
        self.pow(a, &e)
    }

    pub fn random(&self, rng: &mut impl Rng) -> Fq {
        Fq((0..self.m).map(|_| rng.random_range(0..self.p)).collect())
    }

    /// Every element, in counting order. Intended for small fields.
    pub fn elements(&self) -> Vec<Fq> {
        let q = self.p.pow(self.m as u32);
        (0..q)
            .map(|mut k| {
                let mut c = vec![0; self.m];
                for slot in c.iter_mut() {
                    *slot = k % self.p;
                    k /= self.p;
                }
                Fq(c)
            })
            .collect()
    }

    pub fn fmt_elem(&self, a: &Fq) -> String {
        if self.m == 1 {
            return a.0[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    // ---- polynomials over F_q ----

    pub fn poly(&self, mut coeffs: Vec<Fq>) -> FFPoly {
        while coeffs.last().is_some_and(|c| self.is_zero(c)) {
            coeffs.pop();
        }
        FFPoly(coeffs)
    }

    /// Polynomial from small integer coefficients (prime-field images), constant first.
    pub fn poly_from_ints(&self, coeffs: &[i64]) -> FFPoly {
        self.poly(coeffs.iter().map(|&c| self.from_i64(c)).collect())
    }

    pub fn poly_one(&self) -> FFPoly {
        FFPoly(vec![self.one()])
    }

    pub fn poly_x(&self) -> FFPoly {
        FFPoly(vec![self.zero(), self.one()])
    }

    pub fn poly_add(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let n = a.0.len().max(b.0.len());
        let zero = self.zero();
        let c = (0..n)
            .map(|i| self.add(a.0.get(i).unwrap_or(&zero), b.0.get(i).unwrap_or(&zero)))
            .collect();
        self.poly(c)
    }

    pub fn poly_neg(&self, a: &FFPoly) -> FFPoly {
        FFPoly(a.0.iter().map(|c| self.neg(c)).collect())
    }

    pub fn poly_sub(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        self.poly_add(a, &self.poly_neg(b))
    }

    pub fn poly_scale(&self, a: &FFPoly, c: &Fq) -> FFPoly {
        self.poly(a.0.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        if a.is_zero() || b.is_zero() {
            return FFPoly::zero();
        }
        if self.m == 1 {
            let p = self.p;
            let (a, b) = (prime_coeffs(a), prime_coeffs(b));
            let mut c = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    c[i + j] = (c[i + j] + x * y % p) % p;
                }
            }
            return self.poly(c.into_iter().map(|x| Fq(vec![x])).collect());
        }
        if let Some(t) = &self.tables {
            let (a, b) = (self.coded(a), self.coded(b));
            let mut c = vec![0u16; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    c[i + j] = t.add(c[i + j], t.mul(x, y));
                }
            }
            return self.poly_from_codes(c);
        }
        let mut c = vec![self.zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] = self.add(&c[i + j], &self.mul(x, y));
            }
        }
        self.poly(c)
    }

    pub fn poly_pow(&self, a: &FFPoly, e: usize) -> FFPoly {
        let mut result = self.poly_one();
        for _ in 0..e {
            result = self.poly_mul(&result, a);
        }
        result
    }

    pub fn poly_divrem(&self, a: &FFPoly, b: &FFPoly) -> Result<(FFPoly, FFPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let mut r = a.0.clone();
        let db = b.deg();
        if r.len() <= db {
            return Ok((FFPoly::zero(), a.clone()));
        }
        let inv_lead = self.inv(b.lead());
        if self.m == 1 {
            let p = self.p;
            let il = inv_lead.0[0];
            let mut r = prime_coeffs(a);
            let b = prime_coeffs(b);
            let mut q = vec![0u64; r.len() - db];
            for k in (0..q.len()).rev() {
                let c = r[k + db] * il % p;
                if c == 0 {
                    continue;
                }
                for (i, &bi) in b.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - c * bi % p) % p;
                }
                q[k] = c;
            }
            r.truncate(db);
            let wrap = |v: Vec<u64>| self.poly(v.into_iter().map(|x| Fq(vec![x])).collect());
            return Ok((wrap(q), wrap(r)));
        }
        if let Some(t) = &self.tables {
            let il = self.code(&inv_lead);
            let mut r = self.coded(a);
            let b = self.coded(b);
            let mut q = vec![0u16; r.len() - db];
            for k in (0..q.len()).rev() {
                let c = t.mul(r[k + db], il);
                if c == 0 {
                    continue;
                }
                for (i, &bi) in b.iter().enumerate() {
                    r[k + i] = t.add(r[k + i], t.neg[t.mul(c, bi) as usize]);
                }
                q[k] = c;
            }
            r.truncate(db);
            return Ok((self.poly_from_codes(q), self.poly_from_codes(r)));
        }
        let mut q = vec![self.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(&r[k + db], &inv_lead);
            if self.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.0.iter().enumerate() {
                r[k + i] = self.sub(&r[k + i], &self.mul(&c, bi));
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((self.poly(q), self.poly(r)))
    }

    pub fn poly_rem(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        self.poly_divrem(a, b).expect("nonzero divisor").1
    }

    pub fn poly_div_exact(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let (q, r) = self.poly_divrem(a, b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn poly_monic(&self, a: &FFPoly) -> FFPoly {
        if a.is_zero() {
            return a.clone();
        }
        self.poly_scale(a, &self.inv(a.lead()))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn poly_gcd(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_deriv(&self, a: &FFPoly) -> FFPoly {
        let c = a
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| self.mul(x, &self.from_u64(i as u64)))
            .collect();
        self.poly(c)
    }

    pub fn poly_eval(&self, a: &FFPoly, x: &Fq) -> Fq {
        a.0.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// `a^e mod f`.
    pub fn poly_powmod(&self, a: &FFPoly, e: &BigUint, f: &FFPoly) -> FFPoly {
        let base = self.poly_rem(a, f);
        let mut result = self.poly_rem(&self.poly_one(), f);
        for i in (0..e.bits()).rev() {
            result = self.poly_rem(&self.poly_mul(&result, &result), f);
            if e.bit(i) {
                result = self.poly_rem(&self.poly_mul(&result, &base), f);
            }
        }
        result
    }

    /// Irreducibility via `gcd(f, x^{q^i} - x) = 1` for `i <= deg f / 2`.
    pub fn is_irreducible(&self, f: &FFPoly) -> bool {
        let Some(n) = f.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.poly_monic(f);
        let q = self.order();
        let x = self.poly_x();
        let mut h = self.poly_rem(&x, &f);
        for _ in 1..=n / 2 {
            h = self.poly_powmod(&h, &q, &f);
            let g = self.poly_gcd(&f, &self.poly_sub(&h, &x));
            if g.deg() > 0 {
                return false;
            }
        }
        true
    }

    /// All roots in F_q, sorted, without multiplicity.
    pub fn roots(&self, f: &FFPoly) -> Result<Vec<Fq>> {
        let fac = self.factor(f)?;
        let mut roots: Vec<Fq> = fac
            .factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| self.neg(&g.0[0]))
            .collect();
        roots.sort();
        Ok(roots)
    }

    /// Complete factorization into monic irreducibles, sorted by degree and
    /// then coefficients. Deterministic: the equal-degree splitting draws from
    /// a generator seeded by a hash of the input.
    pub fn factor(&self, g: &FFPoly) -> Result<Factorization> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = g.lead().clone();
        let f = self.poly_monic(g);
        let mut rng = ChaCha8Rng::seed_from_u64(self.fingerprint(&f));
        let mut factors = Vec::new();
        for (sqf, mult) in self.squarefree(&f) {
            for (block, d) in self.distinct_degree(&sqf) {
                for h in self.equal_degree(&block, d, &mut rng) {
                    factors.push((h, mult));
                }
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    fn fingerprint(&self, f: &FFPoly) -> u64 {
        let mut h = Fnv1a::new();
        h.write_u64(self.p);
        h.write_u64(self.m as u64);
        for c in &f.0 {
            for &x in &c.0 {
                h.write_u64(x);
            }
        }
        h.finish()
    }

    fn squarefree(&self, f: &FFPoly) -> Vec<(FFPoly, usize)> {
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let mut c = self.poly_gcd(f, &self.poly_deriv(f));
        let mut w = self.poly_div_exact(f, &c);
        let mut i = 1;
        while w.deg() > 0 {
            let y = self.poly_gcd(&w, &c);
            let fac = self.poly_div_exact(&w, &y);
            if fac.deg() > 0 {
                out.push((fac, i));
            }
            w = y;
            c = self.poly_div_exact(&c, &w);
            i += 1;
        }
        if c.deg() > 0 {
            let p = self.p as usize;
            let root = self.poly(c.0.iter().step_by(p).map(|a| self.pth_root(a)).collect());
            for (g, k) in self.squarefree(&root) {
                out.push((g, k * p));
            }
        }
        out
    }

    fn distinct_degree(&self, f: &FFPoly) -> Vec<(FFPoly, usize)> {
        let mut out = Vec::new();
        let q = self.order();
        let x = self.poly_x();
        let mut rest = f.clone();
        let mut h = self.poly_rem(&x, &rest);
        let mut d = 1;
        while rest.deg() >= 2 * d {
            h = self.poly_powmod(&h, &q, &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if g.deg() > 0 {
                rest = self.poly_div_exact(&rest, &g);
                h = self.poly_rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.deg() > 0 {
            let d = rest.deg();
            out.push((rest, d));
        }
        out
    }

    fn equal_degree(&self, f: &FFPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FFPoly> {
        if f.deg() == d {
            return vec![f.clone()];
        }
        let n = f.deg();
        loop {
            let a = self.poly((0..n).map(|_| self.random(rng)).collect());
            if a.degree().is_none_or(|k| k == 0) {
                continue;
            }
            let b = if self.p == 2 {
                self.trace_map(&a, d, f)
            } else {
                let e = (self.order().pow(d as u32) - 1u32) / 2u32;
                self.poly_sub(&self.poly_powmod(&a, &e, f), &self.poly_one())
            };
            let g = self.poly_gcd(f, &b);
            if g.deg() > 0 && g.deg() < n {
                let other = self.poly_div_exact(f, &g);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    // a + a^2 + a^4 + ... + a^{2^{md-1}} mod f, in characteristic 2.
    fn trace_map(&self, a: &FFPoly, d: usize, f: &FFPoly) -> FFPoly {
        let mut term = self.poly_rem(a, f);
        let mut acc = term.clone();
        for _ in 1..self.m * d {
            term = self.poly_rem(&self.poly_mul(&term, &term), f);
            acc = self.poly_add(&acc, &term);
        }
        acc
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn fmt_poly(&self, a: &FFPoly, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in a.0.iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let cs = self.fmt_elem(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (i, self.is_one(c)) {
                (0, _) => out.push_str(&cs),
                (_, true) => out.push_str(&mono),
                _ => {
                    let _ = write!(out, "{cs}*{mono}");
                }
            }
        }
        out
    }
}
