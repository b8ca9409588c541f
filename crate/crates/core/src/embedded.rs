//! Minimal embedded resolution of the projective line together with the
//! divisor of zeros of a monic irreducible polynomial.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::maclane::{InductiveValuation, PseudoRoot, P};
use crate::models::{minimal_regular_resolution, specialize, ModelGraph, SpecializationReport};
use crate::npath::successor_precursor;
use crate::rat::{ceil_q, floor_q, Rat};
use crate::valued_field::ValuedField;

type V<F> = InductiveValuation<F>;

/// Successor and precursor valuations `(v', v'')` of `v`: the neighbours of
/// `v` along its last key polynomial in the resolution graph.
pub fn successor_precursor_valuations<F: ValuedField>(v: &V<F>) -> Result<(V<F>, V<F>)> {
    let n = v.len();
    if n == 0 || v.last_in_previous_group() {
        return Err(Error::LambdaInValueGroup);
    }
    let lam = v.lambda(n);
    let big_n = v.big_n(n);
    let nb = BigRational::from_integer(big_n.into());
    let lower = if n == 1 {
        BigRational::from_integer(floor_q(lam))
    } else {
        BigRational::from_integer(v.e_at(n - 1).into()) * v.lambda(n - 1)
    };
    let upper = BigRational::from_integer(ceil_q(&(lam * &nb))) / &nb;
    let (l1, l2) = successor_precursor(lam, big_n, &lower, &upper)?;
    let base = v.truncate(n - 1);
    let phi = v.phi(n);
    Ok((base.with_last(phi, &l1)?, base.with_last(phi, &l2)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chosen {
    Prime,
    Dprime,
}

impl fmt::Display for Chosen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chosen::Prime => "PRIME",
            Chosen::Dprime => "DPRIME",
        })
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddedResolutionResult<F: ValuedField> {
    pub vf: V<F>,
    pub vf_prime: V<F>,
    pub vf_dprime: V<F>,
    pub e_prime: u64,
    pub e_dprime: u64,
    pub chosen: Chosen,
    pub model: ModelGraph<F>,
    pub specialization: SpecializationReport<F>,
}

impl<F: ValuedField> EmbeddedResolutionResult<F> {
    pub fn chosen_valuation(&self) -> &V<F> {
        match self.chosen {
            Chosen::Prime => &self.vf_prime,
            Chosen::Dprime => &self.vf_dprime,
        }
    }
}

/// Minimal embedded resolution of `(P^1, div_0(f))` for monic integral `f`
/// of degree at least 2, irreducible over the completion, with roots of
/// positive valuation.
pub fn minimal_embedded_resolution<F: ValuedField>(k: &F, f: &P<F>) -> Result<EmbeddedResolutionResult<F>> {
    let root = PseudoRoot::new(k, f)?;
    if f.deg() < 2 {
        return Err(Error::DegreeTooSmall);
    }
    if root.evaluate(&crate::poly::Poly::x(k)) <= Rat::Finite(BigRational::zero()) {
        return Err(Error::RootNotPositive);
    }
    let vf = root.vf().clone();
    let (vf_prime, vf_dprime) = successor_precursor_valuations(&vf)?;
    let (e_prime, e_dprime) = (vf_prime.e_total(), vf_dprime.e_total());
    let chosen = if e_prime <= e_dprime { Chosen::Prime } else { Chosen::Dprime };
    let target = match chosen {
        Chosen::Prime => &vf_prime,
        Chosen::Dprime => &vf_dprime,
    };
    let model = minimal_regular_resolution(target)?.adjoin_origin()?;
    let specialization = specialize(&model, &root)?;
    Ok(EmbeddedResolutionResult { vf, vf_prime, vf_dprime, e_prime, e_dprime, chosen, model, specialization })
}
