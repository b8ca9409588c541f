//! Inductive valuations `[v0, v1(phi_1)=lambda_1, ..., vn(phi_n)=lambda_n]`.
//!
//! Only residually split valuations are constructed: every key polynomial has
//! a linear residual polynomial over the previous level, so the residue field
//! never grows. A step that would need a larger residue field fails with
//! [`Error::UnramifiedExtensionRequired`].

mod residual;
mod vf;

use std::cmp::Ordering;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_field::{FFPoly, Fq};
use crate::parse;
use crate::poly::Poly;
use crate::rat::{denom_u64, fmt_q, lcm_u64, Rat};
use crate::valued_field::ValuedField;

pub use residual::LeadingForm;
pub use vf::{compute_vf, diskoid_contains, newton_polygon, NewtonSide, PseudoRoot};

pub type P<F> = Poly<<F as ValuedField>::Elem>;

/// One augmentation step `v(phi) = lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct Step<F: ValuedField> {
    pub phi: P<F>,
    pub lambda: BigRational,
}

/// Result of [`InductiveValuation::compare`] in the order `v <= w` iff the
/// diskoid of `v` contains the diskoid of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A Mac Lane valuation in canonical form (strictly increasing key degrees).
#[derive(Clone, Debug)]
pub struct InductiveValuation<F: ValuedField> {
    k: F,
    steps: Vec<Step<F>>,
    // Per level i = 1..n (stored at i-1): e_i = denominator of deg(phi_i) * lambda_i.
    e: Vec<u64>,
    // rho_i for i = 1..n-1 (stored at i-1): root of the residual polynomial of
    // phi_{i+1} over v_i.
    rho: Vec<Fq>,
}

impl<F: ValuedField> PartialEq for InductiveValuation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.steps == other.steps
    }
}

impl<F: ValuedField> InductiveValuation<F> {
    /// The Gauss valuation `v0`.
    pub fn gauss(k: &F) -> Self {
        InductiveValuation { k: k.clone(), steps: Vec::new(), e: Vec::new(), rho: Vec::new() }
    }

    /// Builds `[v0, phi_1 = lambda_1, ...]` by successive augmentation.
    /// Non-canonical input (repeated key degrees) is merged.
    pub fn from_steps(k: &F, steps: Vec<(P<F>, BigRational)>) -> Result<Self> {
        let mut v = Self::gauss(k);
        for (phi, lambda) in steps {
            v = v.augment(&phi, &lambda)?;
        }
        Ok(v)
    }

    /// Parses a bracketed literal or its JSON form.
    pub fn parse(k: &F, s: &str) -> Result<Self> {
        Self::from_steps(k, parse::parse_valuation(k, s)?)
    }

    pub fn from_json(k: &F, v: &Value) -> Result<Self> {
        Self::from_steps(k, parse::parse_valuation_json(k, v)?)
    }

    pub fn field(&self) -> &F {
        &self.k
    }

    /// Number of augmentation steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_gauss(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step<F>] {
        &self.steps
    }

    pub fn last(&self) -> Option<&Step<F>> {
        self.steps.last()
    }

    /// `phi_i` for `i = 1..=n`.
    pub fn phi(&self, i: usize) -> &P<F> {
        &self.steps[i - 1].phi
    }

    /// `lambda_i` for `i = 1..=n`.
    pub fn lambda(&self, i: usize) -> &BigRational {
        &self.steps[i - 1].lambda
    }

    /// `deg(phi_i)`, which equals `N_i`, the index of the value group of
    /// `v_{i-1}` over that of `v0`.
    pub fn big_n(&self, i: usize) -> u64 {
        self.phi(i).deg() as u64
    }

    /// Relative ramification `e(v_i / v_{i-1})`.
    pub fn e_at(&self, i: usize) -> u64 {
        self.e[i - 1]
    }

    /// The truncation `v_j`.
    pub fn truncate(&self, j: usize) -> Self {
        assert!(j <= self.len());
        InductiveValuation {
            k: self.k.clone(),
            steps: self.steps[..j].to_vec(),
            e: self.e[..j].to_vec(),
            rho: self.rho[..j.saturating_sub(1)].to_vec(),
        }
    }

    /// `e(v / v0)`, the lcm of the denominators of the lambdas.
    pub fn e_total(&self) -> u64 {
        self.steps.iter().fold(1, |acc, s| lcm_u64(acc, denom_u64(&s.lambda)))
    }

    /// `e(self / w)`; requires the value group of `w` inside that of `self`.
    pub fn ramification(&self, w: &Self) -> Result<u64> {
        let (a, b) = (self.e_total(), w.e_total());
        if a % b != 0 {
            return Err(Error::IncompatibleValueGroups);
        }
        Ok(a / b)
    }

    pub fn evaluate(&self, g: &P<F>) -> Rat {
        self.eval_level(self.len(), g)
    }

    pub(crate) fn eval_level(&self, j: usize, g: &P<F>) -> Rat {
        if g.is_zero() {
            return Rat::Inf;
        }
        if j == 0 {
            return g.gauss_val(&self.k);
        }
        let digits = g.phi_expand(&self.k, self.phi(j)).expect("key polynomials are monic");
        let lambda = self.lambda(j);
        digits
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| &self.eval_level(j - 1, a) + &(lambda * BigRational::from_integer(i.into())))
            .min()
            .expect("nonzero polynomial has a digit")
    }

    /// `v <= w` in the diskoid order: `w(phi_n) >= lambda_n`.
    fn le(&self, w: &Self) -> bool {
        match self.last() {
            None => true,
            Some(s) => w.evaluate(&s.phi) >= Rat::Finite(s.lambda.clone()),
        }
    }

    pub fn compare(&self, w: &Self) -> Comparison {
        match (self.le(w), w.le(self)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        }
    }

    /// Equality as valuations (not as step lists).
    pub fn same(&self, w: &Self) -> bool {
        self.compare(w) == Comparison::Equal
    }

    pub fn is_key(&self, phi: &P<F>) -> Result<bool> {
        if !phi.is_monic(&self.k) || phi.deg() == 0 {
            return Err(Error::NonMonicPhi);
        }
        if !phi.is_integral(&self.k) {
            return Err(Error::NonIntegralPhi);
        }
        let n = self.len();
        if n == 0 {
            let red = phi.reduce(&self.k)?;
            return Ok(self.k.residue_field().is_irreducible(&red));
        }
        let dn = self.phi(n).deg();
        if !phi.deg().is_multiple_of(dn) {
            return Ok(false);
        }
        let s = phi.deg() / dn;
        let lf = self.leading_form(n, phi);
        let top = BigRational::from_integer(s.into()) * self.lambda(n);
        if lf.s != top {
            return Ok(false);
        }
        if lf.s0 == s {
            return Ok(s == 1);
        }
        if lf.s0 != 0 {
            return Ok(false);
        }
        Ok(self.k.residue_field().is_irreducible(&lf.r))
    }

    /// `[v, v(phi) = lambda]`, merged into the last step when `phi` has the
    /// degree of the current last key polynomial.
    pub fn augment(&self, phi: &P<F>, lambda: &BigRational) -> Result<Self> {
        if !self.is_key(phi)? {
            return Err(Error::NotAKeyPolynomial);
        }
        let current = self.evaluate(phi);
        if Rat::Finite(lambda.clone()) <= current {
            return Err(Error::LambdaTooSmall(fmt_q(lambda), current.to_string()));
        }
        let n = self.len();
        if n == 0 {
            if phi.deg() > 1 {
                return Err(Error::UnramifiedExtensionRequired(phi.deg()));
            }
            return Ok(self.push_step(phi, lambda));
        }
        if phi.deg() == self.phi(n).deg() {
            return Ok(self.truncate(n - 1).push_step(phi, lambda));
        }
        let lf = self.leading_form(n, phi);
        let d = lf.r.deg();
        if d > 1 {
            return Err(Error::UnramifiedExtensionRequired(d));
        }
        Ok(self.push_step(phi, lambda))
    }

    /// `[self, phi = lambda]`, or `self` itself when `lambda = self(phi)`.
    pub fn with_last(&self, phi: &P<F>, lambda: &BigRational) -> Result<Self> {
        if self.evaluate(phi) == Rat::Finite(lambda.clone()) {
            return Ok(self.clone());
        }
        self.augment(phi, lambda)
    }

    // Appends a step already known to be valid and residually split.
    fn push_step(&self, phi: &P<F>, lambda: &BigRational) -> Self {
        let mut out = self.clone();
        let n = self.len();
        if n >= 1 {
            let lf = self.leading_form(n, phi);
            debug_assert_eq!(lf.r.deg(), 1);
            let kf = self.k.residue_field();
            let root = kf.neg(&kf.div(&lf.r.0[0], &lf.r.0[1]));
            out.rho.push(root);
        }
        let big_n = BigRational::from_integer((phi.deg() as u64).into());
        out.e.push(denom_u64(&(big_n * lambda)));
        out.steps.push(Step { phi: phi.clone(), lambda: lambda.clone() });
        out
    }

    /// Reduction of `g` to a polynomial in the coordinate `y` of the residue
    /// ring. At `v0` this is `g / pi^{v0(g)}` reduced, with `y` the image of
    /// `x`; at level `n >= 1` see [`LeadingForm`].
    pub fn residual_polynomial(&self, g: &P<F>) -> Result<FFPoly> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.len();
        if n == 0 {
            let m = g.coeffs().iter().filter_map(|c| self.k.ord(c)).min().expect("nonzero");
            return g.scale(&self.k, &self.k.pi_pow(-m)).reduce(&self.k);
        }
        Ok(self.leading_form(n, g).r)
    }

    /// Text literal `[v0, (x)=1/2, (x^2-3)=5/4]`.
    pub fn literal(&self) -> String {
        let mut out = String::from("[v0");
        for s in &self.steps {
            out.push_str(&format!(", ({})={}", s.phi.fmt(&self.k).replace(' ', ""), fmt_q(&s.lambda)));
        }
        out.push(']');
        out
    }

    /// JSON object `{"steps":[{"phi":[...],"lambda":"b/c"}], "literal": ...}`.
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let phi: Vec<String> = s.phi.coeffs().iter().map(|c| self.k.fmt_elem(c)).collect();
                json!({"phi": phi, "lambda": fmt_q(&s.lambda)})
            })
            .collect();
        json!({"steps": steps, "literal": self.literal()})
    }

    /// Monic key polynomial over `self` (level `n >= 1`) of degree
    /// `e_n * deg(phi_n)` whose residual polynomial has the root `rho`.
    pub fn lift_key(&self, rho: &Fq) -> P<F> {
        let n = self.len();
        assert!(n >= 1, "lift_key needs a non-Gauss valuation");
        let k = &self.k;
        let kf = k.residue_field();
        let e = self.e_at(n);
        let e_lambda = BigRational::from_integer(e.into()) * self.lambda(n);
        let m = self.std_monomial(n, &e_lambda);
        let t = self.t_monomial(n);
        let mt: Vec<i64> = m.iter().zip(&t).map(|(a, b)| a + b).collect();
        let c = kf.neg(&kf.div(rho, &self.monomial_class(n, &mt)));
        let tail = self.monomial_poly(&m).scale(k, &k.lift_small(&c));
        self.phi(n).pow(k, e as usize).add(k, &tail)
    }

    /// The monomial `pi^{m_0} phi_1^{m_1} ... phi_{j-1}^{m_{j-1}}` as a polynomial.
    /// All exponents must be non-negative except possibly the power of pi.
    pub fn monomial_poly(&self, m: &[i64]) -> P<F> {
        let k = &self.k;
        let mut out = Poly::constant(k, k.pi_pow(m[0]));
        for (i, &b) in m.iter().enumerate().skip(1) {
            assert!(b >= 0, "negative key polynomial exponent");
            out = out.mul(k, &self.phi(i).pow(k, b as usize));
        }
        out
    }

    /// Lambda values as exact rationals.
    pub fn lambdas(&self) -> Vec<BigRational> {
        self.steps.iter().map(|s| s.lambda.clone()).collect()
    }

    /// Whether `lambda_n` lies in the value group of `v_{n-1}`.
    pub fn last_in_previous_group(&self) -> bool {
        let n = self.len();
        n >= 1 && self.e_at(n) == 1
    }
}

/// Orders valuations by their canonical literal; used only to make outputs
/// deterministic.
pub fn literal_order<F: ValuedField>(a: &InductiveValuation<F>, b: &InductiveValuation<F>) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.lambdas().cmp(&b.lambdas()))
        .then_with(|| a.literal().cmp(&b.literal()))
}
