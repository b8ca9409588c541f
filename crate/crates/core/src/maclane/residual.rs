//! Graded leading forms and residual polynomials.
//!
//! A monomial at level `j` is an exponent vector over `(pi, phi_1, ..., phi_{j-1})`.
//! For `d` in the value group of `v_{j-1}` the standard monomial `U_j(d)` is the
//! unique one of value `d` with `0 <= m_i < e_i` for every `phi_i` exponent.
//! With `T_j = U_j(-e_j lambda_j)`, the residue coordinate at level `j` is the
//! class `y_j` of `T_j * phi_j^{e_j}`.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::InductiveValuation;
use super::P;
use crate::finite_field::{FFPoly, Fq};
use crate::rat::Rat;
use crate::valued_field::ValuedField;

/// Leading form of `g` at level `j >= 1`.
///
/// With `g = sum a_i phi_j^i`, `s = min (v_{j-1}(a_i) + i lambda_j)` and `s0`
/// the first index attaining it, the leading form is
/// `U_j(d) * phi_j^{s0} * r(y_j)` with `d = s - s0 lambda_j`.
/// The polynomial `r` has a nonzero constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingForm {
    pub s: BigRational,
    pub s0: usize,
    pub d: BigRational,
    pub r: FFPoly,
}

fn add_mono(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<F: ValuedField> InductiveValuation<F> {
    /// `U_j(d)`; `d` must lie in the value group of `v_{j-1}`.
    pub fn std_monomial(&self, j: usize, d: &BigRational) -> Vec<i64> {
        let mut out = vec![0i64; j];
        let mut rest = d.clone();
        for i in (1..j).rev() {
            let n_i = BigRational::from_integer(self.big_n(i).into());
            let lambda = self.lambda(i);
            let b = (0..self.e_at(i))
                .find(|&b| {
                    let t = &n_i * (&rest - lambda * BigRational::from_integer(b.into()));
                    t.is_integer()
                })
                .expect("value outside the value group");
            rest -= lambda * BigRational::from_integer(b.into());
            out[i] = b as i64;
        }
        assert!(rest.is_integer(), "value outside the value group");
        out[0] = rest.to_integer().to_i64().expect("exponent fits in i64");
        out
    }

    /// `T_j = U_j(-e_j lambda_j)`.
    pub fn t_monomial(&self, j: usize) -> Vec<i64> {
        let e = BigRational::from_integer(self.e_at(j).into());
        self.std_monomial(j, &(-(e * self.lambda(j))))
    }

    pub fn leading_form(&self, j: usize, g: &P<F>) -> LeadingForm {
        assert!(j >= 1 && !g.is_zero());
        let k = &self.k;
        let digits = g.phi_expand(k, self.phi(j)).expect("monic key polynomial");
        let lambda = self.lambda(j);
        let points: Vec<(usize, BigRational)> = digits
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let w = &self.eval_level(j - 1, a) + &(lambda * BigRational::from_integer(i.into()));
                match w {
                    Rat::Finite(q) => (i, q),
                    Rat::Inf => unreachable!("nonzero digit"),
                }
            })
            .collect();
        let s = points.iter().map(|(_, w)| w.clone()).min().expect("nonzero");
        let s0 = points.iter().find(|(_, w)| *w == s).expect("minimum attained").0;
        let d = &s - lambda * BigRational::from_integer(s0.into());
        let e = self.e_at(j) as usize;
        let u = self.std_monomial(j, &d);
        let t = self.t_monomial(j);
        let kf = k.residue_field();
        let top = points.iter().filter(|(_, w)| *w == s).map(|(i, _)| *i).max().expect("attained");
        let mut coeffs = vec![kf.zero(); (top - s0) / e + 1];
        let mut mono = u;
        for (idx, c) in coeffs.iter_mut().enumerate() {
            let i = s0 + idx * e;
            if points.iter().any(|(p, w)| *p == i && *w == s) {
                *c = self.class_level(j, &digits[i], &mono);
            }
            mono = add_mono(&mono, &t);
        }
        LeadingForm { s, s0, d, r: kf.poly(coeffs) }
    }

    /// Residue class of `a / mono` where `deg a < deg phi_j` and the monomial
    /// `mono` (level `j`) has value `v_{j-1}(a)`.
    pub(crate) fn class_level(&self, j: usize, a: &P<F>, mono: &[i64]) -> Fq {
        let k = &self.k;
        if j == 1 {
            debug_assert!(a.deg() == 0);
            let c = k.mul(&a.coeffs()[0], &k.pi_pow(-mono[0]));
            return k.residue(&c).expect("unit");
        }
        let lf = self.leading_form(j - 1, a);
        debug_assert_eq!(lf.r.deg(), 0, "digit of a key expansion has constant leading form");
        let mut q = self.std_monomial(j - 1, &lf.d);
        q.push(lf.s0 as i64);
        let q: Vec<i64> = q.iter().zip(mono).map(|(x, y)| x - y).collect();
        let kf = k.residue_field();
        kf.mul(&self.monomial_class(j, &q), &lf.r.0[0])
    }

    /// Class of a value-zero monomial at level `j`.
    pub(crate) fn monomial_class(&self, j: usize, q: &[i64]) -> Fq {
        let kf = self.k.residue_field();
        if j == 1 {
            debug_assert_eq!(q[0], 0);
            return kf.one();
        }
        let e = self.e_at(j - 1) as i64;
        let b = q[j - 1];
        assert!(b % e == 0, "monomial of nonzero value");
        let kk = b / e;
        let t = self.t_monomial(j - 1);
        let rest: Vec<i64> = q[..j - 1].iter().zip(&t).map(|(x, y)| x - kk * y).collect();
        let rho = &self.rho[j - 2];
        let rho_pow = if kk >= 0 {
            kf.pow(rho, &num_bigint::BigUint::from(kk as u64))
        } else {
            kf.inv(&kf.pow(rho, &num_bigint::BigUint::from((-kk) as u64)))
        };
        kf.mul(&self.monomial_class(j - 1, &rest), &rho_pow)
    }

    /// Value of a monomial at level `j` (under `v_{j-1}`).
    pub fn monomial_value(&self, m: &[i64]) -> BigRational {
        let mut v = BigRational::from_integer(m[0].into());
        for (i, &b) in m.iter().enumerate().skip(1) {
            v += self.lambda(i) * BigRational::from_integer(b.into());
        }
        v
    }
}
