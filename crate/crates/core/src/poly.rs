//! Dense univariate polynomials over a valued base field.

use crate::error::{Error, Result};
use crate::finite_field::FFPoly;
use crate::rat::Rat;
use crate::valued_field::ValuedField;

/// Dense polynomial, constant term first, without trailing zeros.
///
/// Arithmetic takes the coefficient field as an explicit context argument.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn new<F: ValuedField<Elem = E>>(k: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<F: ValuedField<Elem = E>>(k: &F, c: E) -> Self {
        Poly::new(k, vec![c])
    }

    pub fn one<F: ValuedField<Elem = E>>(k: &F) -> Self {
        Poly { coeffs: vec![k.one()] }
    }

    pub fn x<F: ValuedField<Elem = E>>(k: &F) -> Self {
        Poly { coeffs: vec![k.zero(), k.one()] }
    }

    /// `c * x^n`.
    pub fn monomial<F: ValuedField<Elem = E>>(k: &F, c: E, n: usize) -> Self {
        let mut coeffs = vec![k.zero(); n];
        coeffs.push(c);
        Poly::new(k, coeffs)
    }

    pub fn from_ints<F: ValuedField<Elem = E>>(k: &F, coeffs: &[i64]) -> Self {
        Poly::new(k, coeffs.iter().map(|&c| k.from_int(c)).collect())
    }

    pub fn is_monic<F: ValuedField<Elem = E>>(&self, k: &F) -> bool {
        self.lead().is_some_and(|c| k.is_one(c))
    }

    /// All coefficients have valuation >= 0.
    pub fn is_integral<F: ValuedField<Elem = E>>(&self, k: &F) -> bool {
        self.coeffs.iter().all(|c| k.ord(c).is_none_or(|v| v >= 0))
    }

    /// Minimum coefficient valuation (the Gauss valuation).
    pub fn gauss_val<F: ValuedField<Elem = E>>(&self, k: &F) -> Rat {
        self.coeffs.iter().map(|c| k.val(c)).min().unwrap_or(Rat::Inf)
    }

    pub fn add<F: ValuedField<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let c = (0..n)
            .map(|i| k.add(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Poly::new(k, c)
    }

    pub fn neg<F: ValuedField<Elem = E>>(&self, k: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub<F: ValuedField<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        self.add(k, &other.neg(k))
    }

    pub fn scale<F: ValuedField<Elem = E>>(&self, k: &F, c: &E) -> Self {
        Poly::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn mul<F: ValuedField<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = k.add(&c[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k, c)
    }

    pub fn pow<F: ValuedField<Elem = E>>(&self, k: &F, e: usize) -> Self {
        let mut result = Poly::one(k);
        let mut base = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(k, &base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(k, &base);
            }
        }
        result
    }

    pub fn eval<F: ValuedField<Elem = E>>(&self, k: &F, x: &E) -> E {
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn deriv<F: ValuedField<Elem = E>>(&self, k: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| k.mul(a, &k.from_int(i as i64)))
            .collect();
        Poly::new(k, c)
    }

    /// `(q, r)` with `self = q*b + r` and `deg r < deg b`.
    pub fn divmod<F: ValuedField<Elem = E>>(&self, k: &F, b: &Self) -> Result<(Self, Self)> {
        let Some(db) = b.degree() else { return Err(Error::DivisionByZeroPoly) };
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead = b.lead().expect("nonzero");
        let inv_lead = if k.is_one(lead) { None } else { Some(k.inv(lead)) };
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = match &inv_lead {
                Some(il) => k.mul(&r[i + db], il),
                None => r[i + db].clone(),
            };
            if k.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((Poly::new(k, q), Poly::new(k, r)))
    }

    pub fn rem<F: ValuedField<Elem = E>>(&self, k: &F, b: &Self) -> Result<Self> {
        Ok(self.divmod(k, b)?.1)
    }

    /// Base-`phi` digits `a_0, ..., a_r` with `self = sum a_j phi^j` and
    /// `deg a_j < deg phi`. The zero polynomial expands to an empty list.
    pub fn phi_expand<F: ValuedField<Elem = E>>(&self, k: &F, phi: &Self) -> Result<Vec<Self>> {
        if !phi.is_monic(k) || phi.deg() == 0 {
            return Err(Error::NonMonicPhi);
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.divmod(k, phi)?;
            digits.push(r);
            rest = q;
        }
        Ok(digits)
    }

    /// Inverse of [`Poly::phi_expand`].
    pub fn reassemble<F: ValuedField<Elem = E>>(k: &F, digits: &[Self], phi: &Self) -> Self {
        digits.iter().rev().fold(Poly::zero(), |acc, d| acc.mul(k, phi).add(k, d))
    }

    /// Monic gcd.
    pub fn gcd<F: ValuedField<Elem = E>>(&self, k: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(k, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.lead() {
            Some(l) if !k.is_one(l) => a.scale(k, &k.inv(l)),
            _ => a,
        }
    }

    /// Coefficientwise reduction of an integral polynomial.
    pub fn reduce<F: ValuedField<Elem = E>>(&self, k: &F) -> Result<FFPoly> {
        let c = self.coeffs.iter().map(|a| k.residue(a)).collect::<Result<Vec<_>>>()?;
        Ok(k.residue_field().poly(c))
    }

    /// Coefficientwise lift of a residue polynomial.
    pub fn lift<F: ValuedField<Elem = E>>(k: &F, g: &FFPoly) -> Self {
        Poly::new(k, g.coeffs().iter().map(|c| k.lift(c)).collect())
    }

    /// Text form in `x`, highest degree first, re-readable by the parser.
    pub fn fmt<F: ValuedField<Elem = E>>(&self, k: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let mut cs = k.fmt_elem(c);
            let negative = cs.starts_with('-') && !cs[1..].contains(['+', '-']);
            if negative {
                cs.remove(0);
            }
            let compound = cs.contains(['+', '-']) && i > 0;
            if compound {
                cs = format!("({cs})");
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                out.push_str(&cs);
            } else if cs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{cs}*{mono}"));
            }
        }
        out
    }
}

/// Resultant via the subresultant remainder sequence.
///
/// Normalized as the Sylvester determinant with `a` listed first, so that
/// `Res(a, b) = lc(a)^{deg b} * prod b(alpha)` over the roots of `a`.
pub fn resultant<F: ValuedField>(k: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = false;
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        sign = a.deg() % 2 == 1 && b.deg() % 2 == 1;
    }
    if b.deg() == 0 {
        let r = k.pow(b.lead().expect("nonzero"), a.deg() as i64);
        return Ok(if sign { k.neg(&r) } else { r });
    }
    let mut g = k.one();
    let mut h = k.one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        let delta = (da - db) as i64;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let lb = b.lead().expect("nonzero").clone();
        let prem = a.scale(k, &k.pow(&lb, delta + 1)).rem(k, &b)?;
        a = b;
        if prem.is_zero() {
            return Ok(k.zero());
        }
        let denom = k.mul(&g, &k.pow(&h, delta));
        b = prem.scale(k, &k.inv(&denom));
        g = a.lead().expect("nonzero").clone();
        h = k.mul(&k.pow(&h, 1 - delta), &k.pow(&g, delta));
        if b.deg() == 0 {
            let da = a.deg() as i64;
            let r = k.mul(&k.pow(&h, 1 - da), &k.pow(b.lead().expect("nonzero"), da));
            return Ok(if sign { k.neg(&r) } else { r });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::Padic;

    fn px(k: &Padic, c: &[i64]) -> Poly<num_rational::BigRational> {
        Poly::from_ints(k, c)
    }

    #[test]
    fn divmod_examples() {
        let k = Padic::new(3).unwrap();
        let (q, r) = px(&k, &[-9, 0, 0, 1]).divmod(&k, &px(&k, &[0, 1])).unwrap();
        assert_eq!((q, r), (px(&k, &[0, 0, 1]), px(&k, &[-9])));
        let f = px(&k, &[-18, -36, -6, 0, 1]);
        let (q, r) = f.divmod(&k, &px(&k, &[-3, 0, 1])).unwrap();
        assert_eq!((q, r), (px(&k, &[-3, 0, 1]), px(&k, &[-27, -36])));
        let (q, r) = px(&k, &[0, 1]).divmod(&k, &px(&k, &[0, 0, 1])).unwrap();
        assert_eq!((q, r), (Poly::zero(), px(&k, &[0, 1])));
        assert_eq!(px(&k, &[1]).divmod(&k, &Poly::zero()), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn expansion_examples() {
        let k = Padic::new(3).unwrap();
        let d = px(&k, &[-9, 0, 0, 1]).phi_expand(&k, &px(&k, &[0, 1])).unwrap();
        assert_eq!(d, vec![px(&k, &[-9]), Poly::zero(), Poly::zero(), px(&k, &[1])]);
        let phi = px(&k, &[-3, 0, 1]);
        let d = px(&k, &[-18, -36, -6, 0, 1]).phi_expand(&k, &phi).unwrap();
        assert_eq!(d, vec![px(&k, &[-27, -36]), Poly::zero(), px(&k, &[1])]);
        assert_eq!(phi.phi_expand(&k, &phi).unwrap(), vec![Poly::zero(), px(&k, &[1])]);
        assert_eq!(px(&k, &[1, 1]).phi_expand(&k, &px(&k, &[0, 2])), Err(Error::NonMonicPhi));
    }

    #[test]
    fn resultant_examples() {
        let k = Padic::new(5).unwrap();
        let r = resultant(&k, &px(&k, &[-9, 0, 0, 1]), &px(&k, &[0, 1])).unwrap();
        assert_eq!(r, k.from_int(9));
        let r = resultant(&k, &px(&k, &[-5, 0, 1]), &px(&k, &[0, 1])).unwrap();
        assert_eq!(r, k.from_int(-5));
        assert_eq!(k.val(&r), Rat::from_int(1));
        let g = px(&k, &[7, -2, 0, 3]);
        let r = resultant(&k, &px(&k, &[-4, 1]), &g).unwrap();
        assert_eq!(r, g.eval(&k, &k.from_int(4)));
    }

    #[test]
    fn formatting() {
        let k = Padic::new(3).unwrap();
        assert_eq!(px(&k, &[-18, -36, -6, 0, 1]).fmt(&k), "x^4 - 6*x^2 - 36*x - 18");
        assert_eq!(px(&k, &[0, -1]).fmt(&k), "-x");
        let half = Poly::new(&k, vec![k.elem(1, 2), k.elem(-3, 4)]);
        assert_eq!(half.fmt(&k), "-3/4*x + 1/2");
    }
}
