//! The valuation `v_f` of a monic irreducible polynomial, by Mac Lane
//! approximation along a single branch.

use num_rational::BigRational;

use super::{InductiveValuation, P};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::valued_field::ValuedField;

// Safety net against non-terminating approximation (repeated roots in
// characteristic p, where the separability test below does not apply).
const MAX_ITERATIONS: usize = 512;

/// A side of a lower convex hull, from abscissa `start` to `end`, with
/// `slope` the negated geometric slope.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonSide {
    pub start: usize,
    pub end: usize,
    pub slope: BigRational,
}

/// Lower convex hull of the points `(j, y_j)`, sorted by `j`, left to right.
pub fn newton_polygon(points: &[(usize, BigRational)]) -> Vec<NewtonSide> {
    let mut hull: Vec<&(usize, BigRational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or above the segment a -> pt.
            let lhs = (&b.1 - &a.1) * BigRational::from_integer(((pt.0 - a.0) as i64).into());
            let rhs = (&pt.1 - &a.1) * BigRational::from_integer(((b.0 - a.0) as i64).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| NewtonSide {
            start: w[0].0,
            end: w[1].0,
            slope: (&w[0].1 - &w[1].1) / BigRational::from_integer(((w[1].0 - w[0].0) as i64).into()),
        })
        .collect()
}

/// `v_f` for a monic integral `f`, with `f` certified to have a single
/// branch over the completion along the way.
pub fn compute_vf<F: ValuedField>(k: &F, f: &P<F>) -> Result<InductiveValuation<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic(k) {
        return Err(Error::NonMonic);
    }
    if !f.is_integral(k) {
        return Err(Error::NonIntegral);
    }
    if f.deg() == 0 {
        return Err(Error::NotIrreducibleOverCompletion);
    }
    let gauss = InductiveValuation::gauss(k);
    if f.deg() == 1 {
        return Ok(gauss);
    }
    let df = f.deriv(k);
    if !df.is_zero() && f.gcd(k, &df).deg() > 0 {
        return Err(Error::NotIrreducibleOverCompletion);
    }

    let kf = k.residue_field();
    let fac = kf.factor(&f.reduce(k)?)?;
    if fac.factors.len() != 1 {
        return Err(Error::NotIrreducibleOverCompletion);
    }
    let g = &fac.factors[0].0;
    if g.deg() > 1 {
        return Err(Error::UnramifiedExtensionRequired(g.deg()));
    }
    let mut phi = Poly::new(k, vec![k.lift_small(&g.0[0]), k.one()]);
    let mut v = gauss;

    for _ in 0..MAX_ITERATIONS {
        let digits = f.phi_expand(k, &phi)?;
        if digits[0].is_zero() {
            return Err(Error::NotIrreducibleOverCompletion);
        }
        let r = digits.len() - 1;
        let points: Vec<(usize, BigRational)> = digits
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, v.evaluate(a).expect_finite().clone()))
            .collect();
        let mu = v.evaluate(&phi);
        let principal: Vec<NewtonSide> = newton_polygon(&points)
            .into_iter()
            .filter(|s| Rat::Finite(s.slope.clone()) > mu)
            .collect();
        let [side] = principal.as_slice() else {
            return Err(Error::NotIrreducibleOverCompletion);
        };
        if side.start != 0 || side.end != r {
            return Err(Error::NotIrreducibleOverCompletion);
        }
        let w = v.augment(&phi, &side.slope)?;
        let res = kf.factor(&w.residual_polynomial(f)?)?;
        if res.factors.len() != 1 {
            return Err(Error::NotIrreducibleOverCompletion);
        }
        let (h, m) = &res.factors[0];
        if h.deg() > 1 {
            return Err(Error::UnramifiedExtensionRequired(h.deg()));
        }
        let e = w.e_at(w.len());
        if *m == 1 {
            // m = 1 forces e = r >= 2 here, so f is a proper key polynomial.
            if e < 2 {
                return Err(Error::NotIrreducibleOverCompletion);
            }
            return Ok(w);
        }
        let rho = kf.neg(&h.0[0]);
        phi = w.lift_key(&rho);
        v = w;
    }
    Err(Error::NotIrreducibleOverCompletion)
}

/// A root `alpha` of a monic polynomial `f` that is irreducible over the
/// completion, represented by `f` and its valuation `v_f`.
#[derive(Clone, Debug)]
pub struct PseudoRoot<F: ValuedField> {
    f: P<F>,
    vf: InductiveValuation<F>,
}

impl<F: ValuedField> PseudoRoot<F> {
    pub fn new(k: &F, f: &P<F>) -> Result<Self> {
        let vf = compute_vf(k, f)?;
        Ok(PseudoRoot { f: f.clone(), vf })
    }

    pub fn f(&self) -> &P<F> {
        &self.f
    }

    pub fn vf(&self) -> &InductiveValuation<F> {
        &self.vf
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    /// `nu_K(g(alpha))`, computed as `v_f(g mod f)`.
    pub fn evaluate(&self, g: &P<F>) -> Rat {
        let k = self.vf.field();
        let r = g.rem(k, &self.f).expect("f is nonzero");
        self.vf.evaluate(&r)
    }
}

/// Whether `alpha` lies in the diskoid `D(phi_n, lambda_n)` of `v`.
pub fn diskoid_contains<F: ValuedField>(v: &InductiveValuation<F>, root: &PseudoRoot<F>) -> Result<bool> {
    let Some(last) = v.last() else { return Ok(true) };
    if last.phi.deg() > root.degree() {
        return Err(Error::DegreeMismatch);
    }
    Ok(root.evaluate(&last.phi) >= Rat::Finite(last.lambda.clone()))
}
