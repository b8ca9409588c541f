//! Discretely valued base fields: Q with a p-adic valuation, and F_q(t) with
//! the t-adic valuation.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finite_field::{FFPoly, FiniteField, Fq};
use crate::rat::Rat;

/// A discretely valued field K with finite residue field, normalized so that
/// the uniformizer has valuation 1.
pub trait ValuedField: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    /// Canonical spec string, e.g. `padic:3`.
    fn spec(&self) -> String;
    fn residue_field(&self) -> &FiniteField;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Integer valuation, `None` for zero.
    fn ord(&self, a: &Self::Elem) -> Option<i64>;
    /// Reduction to the residue field; requires valuation >= 0.
    fn residue(&self, a: &Self::Elem) -> Result<Fq>;
    /// Deterministic section of [`ValuedField::residue`].
    fn lift(&self, r: &Fq) -> Self::Elem;
    fn uniformizer(&self) -> Self::Elem;

    /// Section of the residue map with the smallest absolute value where that
    /// makes sense; used for the constant terms of constructed key polynomials.
    fn lift_small(&self, r: &Fq) -> Self::Elem {
        self.lift(r)
    }

    /// Named constants available to the expression parser (`t`, `u`).
    fn variable(&self, name: &str) -> Option<Self::Elem>;
    /// Exact text form, re-readable by the expression parser.
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn val(&self, a: &Self::Elem) -> Rat {
        match self.ord(a) {
            Some(n) => Rat::from_int(n),
            None => Rat::Inf,
        }
    }

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut result = self.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        result
    }

    /// `pi^n`, possibly with negative exponent.
    fn pi_pow(&self, n: i64) -> Self::Elem {
        self.pow(&self.uniformizer(), n)
    }
}

// ---------------------------------------------------------------------------

/// Q with the p-adic valuation. Elements are reduced fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    k: FiniteField,
}

impl Padic {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::Parse(format!("{p} is not a supported prime")));
        }
        Ok(Padic { p, k: FiniteField::new(p, 1) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }
}

fn p_adic_ord(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

impl ValuedField for Padic {
    type Elem = BigRational;

    fn spec(&self) -> String {
        format!("padic:{}", self.p)
    }

    fn residue_field(&self) -> &FiniteField {
        &self.k
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn ord(&self, a: &BigRational) -> Option<i64> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        Some(p_adic_ord(a.numer(), &p) - p_adic_ord(a.denom(), &p))
    }

    fn residue(&self, a: &BigRational) -> Result<Fq> {
        match self.ord(a) {
            None => Ok(self.k.zero()),
            Some(v) if v < 0 => Err(Error::NegativeValuation),
            Some(v) if v > 0 => Ok(self.k.zero()),
            Some(_) => {
                let p = BigInt::from(self.p);
                let n = a.numer().mod_floor(&p).to_u64().expect("residue fits");
                let d = a.denom().mod_floor(&p).to_u64().expect("residue fits");
                Ok(self.k.div(&self.k.from_u64(n), &self.k.from_u64(d)))
            }
        }
    }

    fn lift(&self, r: &Fq) -> BigRational {
        BigRational::from_integer(r.0[0].into())
    }

    fn uniformizer(&self) -> BigRational {
        BigRational::from_integer(self.p.into())
    }

    /// Representative in `(-p/2, p/2]`.
    fn lift_small(&self, r: &Fq) -> BigRational {
        let c = r.0[0];
        let c = if c > self.p / 2 { c as i64 - self.p as i64 } else { c as i64 };
        BigRational::from_integer(c.into())
    }

    fn variable(&self, _name: &str) -> Option<BigRational> {
        None
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        crate::rat::fmt_q(a)
    }
}

// ---------------------------------------------------------------------------

/// An element of F_q(t): `num/den` in lowest terms with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: FFPoly,
    pub den: FFPoly,
}

/// F_q(t) with the t-adic valuation, q = p^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    k: FiniteField,
}

impl Laurent {
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 || m == 0 || m > 16 {
            return Err(Error::Parse(format!("unsupported residue field {p}^{m}")));
        }
        Ok(Laurent { k: FiniteField::new(p, m) })
    }

    /// `num/den` reduced; `den` must be nonzero.
    pub fn frac(&self, num: FFPoly, den: FFPoly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: self.k.poly_one() };
        }
        let (num, den) = if den.deg() == 0 {
            (num, den)
        } else if den.0[..den.deg()].iter().all(|c| self.k.is_zero(c)) {
            // den = c t^d: cancel the common power of t.
            let s = low_order(&num).min(den.deg());
            (FFPoly(num.0[s..].to_vec()), FFPoly(den.0[s..].to_vec()))
        } else {
            let g = self.k.poly_gcd(&num, &den);
            (self.k.poly_div_exact(&num, &g), self.k.poly_div_exact(&den, &g))
        };
        let c = self.k.inv(den.lead());
        RatFn { num: self.k.poly_scale(&num, &c), den: self.k.poly_scale(&den, &c) }
    }

    /// Polynomial in t with prime-field integer coefficients, constant first.
    pub fn poly_t(&self, coeffs: &[i64]) -> RatFn {
        self.frac(self.k.poly_from_ints(coeffs), self.k.poly_one())
    }

    fn fmt_ffpoly(&self, a: &FFPoly) -> String {
        self.k.fmt_poly(a, "t").replace(' ', "")
    }
}

fn low_order(a: &FFPoly) -> usize {
    a.0.iter().position(|c| c.0.iter().any(|&x| x != 0)).expect("nonzero polynomial")
}

impl ValuedField for Laurent {
    type Elem = RatFn;

    fn spec(&self) -> String {
        format!("laurent:{}^{}", self.k.p(), self.k.m())
    }

    fn residue_field(&self) -> &FiniteField {
        &self.k
    }

    fn zero(&self) -> RatFn {
        RatFn { num: FFPoly::zero(), den: self.k.poly_one() }
    }

    fn one(&self) -> RatFn {
        RatFn { num: self.k.poly_one(), den: self.k.poly_one() }
    }

    fn from_bigint(&self, n: &BigInt) -> RatFn {
        let r = n.mod_floor(&BigInt::from(self.k.p())).to_u64().expect("fits");
        self.frac(self.k.poly(vec![self.k.from_u64(r)]), self.k.poly_one())
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let k = &self.k;
        if a.den == b.den {
            return self.frac(k.poly_add(&a.num, &b.num), a.den.clone());
        }
        let num = k.poly_add(&k.poly_mul(&a.num, &b.den), &k.poly_mul(&b.num, &a.den));
        self.frac(num, k.poly_mul(&a.den, &b.den))
    }

    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn { num: self.k.poly_neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let k = &self.k;
        self.frac(k.poly_mul(&a.num, &b.num), k.poly_mul(&a.den, &b.den))
    }

    fn inv(&self, a: &RatFn) -> RatFn {
        assert!(!a.num.is_zero(), "inverse of zero");
        self.frac(a.den.clone(), a.num.clone())
    }

    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_zero()
    }

    fn ord(&self, a: &RatFn) -> Option<i64> {
        if a.num.is_zero() {
            return None;
        }
        Some(low_order(&a.num) as i64 - low_order(&a.den) as i64)
    }

    fn residue(&self, a: &RatFn) -> Result<Fq> {
        match self.ord(a) {
            None => Ok(self.k.zero()),
            Some(v) if v < 0 => Err(Error::NegativeValuation),
            Some(v) if v > 0 => Ok(self.k.zero()),
            Some(_) => {
                let i = low_order(&a.den);
                Ok(self.k.div(&a.num.0[i], &a.den.0[i]))
            }
        }
    }

    fn lift(&self, r: &Fq) -> RatFn {
        self.frac(self.k.poly(vec![r.clone()]), self.k.poly_one())
    }

    fn uniformizer(&self) -> RatFn {
        RatFn { num: self.k.poly_x(), den: self.k.poly_one() }
    }

    fn variable(&self, name: &str) -> Option<RatFn> {
        match name {
            "t" => Some(self.uniformizer()),
            "u" if self.k.m() > 1 => Some(self.lift(&self.k.generator())),
            _ => None,
        }
    }

    fn fmt_elem(&self, a: &RatFn) -> String {
        let num = self.fmt_ffpoly(&a.num);
        if a.den.deg() == 0 {
            return num;
        }
        let den = self.fmt_ffpoly(&a.den);
        let num = if num.contains('+') { format!("({num})") } else { num };
        let den = if den.contains(['+', '*']) { format!("({den})") } else { den };
        format!("{num}/{den}")
    }
}

// ---------------------------------------------------------------------------

/// A parsed base-field spec, used to dispatch to the generic code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    Padic(Padic),
    Laurent(Laurent),
}

impl FromStr for BaseField {
    type Err = Error;

    /// `padic:<p>` or `laurent:<p>^<m>` (`laurent:<p>` means m = 1).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad base field spec {s:?}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "padic" => {
                let p = rest.trim().parse::<u64>().map_err(|_| bad())?;
                Ok(BaseField::Padic(Padic::new(p)?))
            }
            "laurent" => {
                let (p, m) = rest.split_once('^').unwrap_or((rest, "1"));
                let p = p.trim().parse::<u64>().map_err(|_| bad())?;
                let m = m.trim().parse::<usize>().map_err(|_| bad())?;
                Ok(BaseField::Laurent(Laurent::new(p, m)?))
            }
            _ => Err(bad()),
        }
    }
}

impl BaseField {
    pub fn spec(&self) -> String {
        match self {
            BaseField::Padic(k) => k.spec(),
            BaseField::Laurent(k) => k.spec(),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
