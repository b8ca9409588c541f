//! Independent checks run over the corpus. Each returns `Err(description)` on
//! the first violated identity so callers can either panic or report.

use maclane_core::embedded::{minimal_embedded_resolution, successor_precursor_valuations, Chosen};
use maclane_core::maclane::{compute_vf, Comparison, InductiveValuation, PseudoRoot, P};
use maclane_core::models::{
    classify_contraction, contraction_chain, families, is_divisor_regular, minimal_regular_resolution, specialize,
    ContractionType, ModelGraph,
};
use maclane_core::poly::{resultant, Poly};
use maclane_core::rat::{denom_u64, lcm_u64, Rat};
use maclane_core::valued_field::ValuedField;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type V<F> = InductiveValuation<F>;
pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn qi(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn fin(r: Rat) -> BigRational {
    r.expect_finite().clone()
}

pub fn random_elem<F: ValuedField>(k: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    let mut a = k.zero();
    for s in 0..3 {
        if rng.random_bool(0.6) {
            let r = k.residue_field().random(rng);
            a = k.add(&a, &k.mul(&k.lift(&r), &k.pi_pow(s)));
        }
    }
    if rng.random_bool(0.1) {
        a = k.mul(&a, &k.pi_pow(-1));
    }
    a
}

fn random_poly<F: ValuedField>(k: &F, deg: usize, rng: &mut ChaCha8Rng) -> P<F> {
    Poly::new(k, (0..=deg).map(|_| random_elem(k, rng)).collect())
}

/// A random nonzero `g` with `deg g < deg f`. Half of them are built from the
/// key polynomials of `v_f` so that large values actually occur.
pub fn random_g<F: ValuedField>(k: &F, f: &P<F>, vf: &V<F>, rng: &mut ChaCha8Rng) -> P<F> {
    let d = f.deg();
    loop {
        let g = match rng.random_range(0..4) {
            0 | 1 => random_poly(k, d - 1, rng),
            2 if !vf.is_gauss() => {
                let j = rng.random_range(1..=vf.len());
                let phi = vf.phi(j);
                let a = rng.random_range(1..=d / phi.deg());
                let h = random_poly(k, rng.random_range(0..phi.deg()), rng);
                let s = rng.random_range(0..6);
                let tail = random_poly(k, d - 1, rng).scale(k, &k.pi_pow(s));
                phi.pow(k, a).mul(k, &h).add(k, &tail)
            }
            _ => f.deriv(k).add(k, &random_poly(k, d - 1, rng).scale(k, &k.pi_pow(rng.random_range(0..4)))),
        };
        let g = g.rem(k, f).expect("f is monic");
        if !g.is_zero() {
            return g;
        }
    }
}

/// `nu(Res(f, g)) = deg(f) * v_f(g)` for `count` random `g`.
pub fn resultant_oracle<F: ValuedField>(k: &F, f: &P<F>, count: usize, rng: &mut ChaCha8Rng) -> Check {
    let vf = compute_vf(k, f).map_err(|e| format!("compute_vf: {e}"))?;
    let d = f.deg() as i64;
    for _ in 0..count {
        let g = random_g(k, f, &vf, rng);
        let res = resultant(k, f, &g).map_err(|e| e.to_string())?;
        let lhs = k.val(&res);
        let rhs = vf.evaluate(&g).scale(d);
        ensure!(lhs == rhs, "g = {}: nu(Res) = {lhs}, deg f * v_f(g) = {rhs}", g.fmt(k));
    }
    Ok(())
}

/// Multiplicities, tree shape, adjacency as the cover relation of the
/// diskoid order, and the fiber relation with negative integral `c`.
pub fn dual_graph<F: ValuedField>(g: &ModelGraph<F>) -> Check {
    let vs = g.vertices();
    ensure!(g.is_tree(), "not a tree");
    ensure!(g.edges().len() + 1 == vs.len(), "edge count {} for {} vertices", g.edges().len(), vs.len());
    for (i, v) in vs.iter().enumerate() {
        ensure!(g.multiplicities()[i] == v.e_total(), "multiplicity of {}", v.literal());
    }
    let less = |a: &V<F>, b: &V<F>| a.compare(b) == Comparison::Less;
    let mut expected = Vec::new();
    for (a, u) in vs.iter().enumerate() {
        for (b, w) in vs.iter().enumerate() {
            if less(u, w) && !vs.iter().any(|z| less(u, z) && less(z, w)) {
                expected.push((a.min(b), a.max(b)));
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    expected.sort();
    edges.sort();
    ensure!(edges == expected, "edges {edges:?} differ from the cover relation {expected:?}");
    for i in 0..vs.len() {
        let s: u64 = g.neighbours(i).iter().map(|&j| g.multiplicities()[j]).sum();
        let e = g.multiplicities()[i];
        let c = g.self_intersections()[i];
        if vs.len() == 1 {
            ensure!(c == 0, "single component has c = {c}");
            continue;
        }
        ensure!(c < 0, "c = {c} at {}", vs[i].literal());
        ensure!((-c) as u64 * e == s, "fiber relation at {}: -c*e = {} but neighbours sum to {s}", vs[i].literal(), (-c) as u64 * e);
    }
    Ok(())
}

/// `e(w/v0) <= e(v/v0)` on the resolution of `v` with `v0`, with equality
/// only below `v`.
pub fn multiplicity_decreases<F: ValuedField>(v: &V<F>) -> Check {
    let g = minimal_regular_resolution(v).and_then(|g| g.adjoin_origin()).map_err(|e| e.to_string())?;
    dual_graph(&g)?;
    let ev = v.e_total();
    for w in g.vertices() {
        ensure!(w.e_total() <= ev, "e({}) > e({})", w.literal(), v.literal());
        if w.e_total() == ev {
            ensure!(
                matches!(w.compare(v), Comparison::Less | Comparison::Equal),
                "{} has the multiplicity of {} without lying below it",
                w.literal(),
                v.literal()
            );
        }
    }
    Ok(())
}

fn same_set<F: ValuedField>(a: &ModelGraph<F>, b: &ModelGraph<F>) -> bool {
    a.len() == b.len() && a.vertices().iter().all(|v| b.contains(v))
}

fn literals<F: ValuedField>(g: &ModelGraph<F>) -> String {
    g.vertices().iter().map(|v| v.literal()).collect::<Vec<_>>().join(" ")
}

/// Every structural identity for one corpus polynomial.
pub fn structural<F: ValuedField>(k: &F, f: &P<F>) -> Check {
    let err = |e: maclane_core::Error| e.to_string();
    let root = PseudoRoot::new(k, f).map_err(err)?;
    let vf = root.vf().clone();
    let n = vf.len();
    ensure!(n >= 1, "v_f is the Gauss valuation for deg f = {}", f.deg());

    // Every lambda_i lies outside the value group of v_{i-1}.
    for i in 1..=n {
        ensure!(vf.e_at(i) >= 2, "lambda_{i} lies in the value group of v_{}", i - 1);
        let want = (1..i).fold(1, |acc, j| lcm_u64(acc, denom_u64(vf.lambda(j))));
        ensure!(vf.big_n(i) == want, "deg phi_{i} = {} but lcm of earlier denominators is {want}", vf.big_n(i));
    }
    ensure!(vf.phi(1).deg() == 1, "phi_1 is not linear");

    // The phi_n-adic expansion of f.
    let phi = vf.phi(n).clone();
    let lam = vf.lambda(n).clone();
    let digits = f.phi_expand(k, &phi).map_err(err)?;
    let e = digits.len() - 1;
    ensure!(f.deg() == e * phi.deg(), "deg f is not a multiple of deg phi_n");
    ensure!(e as u64 == vf.e_at(n), "deg f / deg phi_n = {e} but e(v_n/v_(n-1)) = {}", vf.e_at(n));
    let top = &lam * qi(e as u64);
    ensure!(fin(vf.evaluate(&digits[0])) == top, "v_f(a_0) != e * lambda_n");
    ensure!(fin(vf.evaluate(&phi.pow(k, e))) == top, "v_f(phi_n^e) != e * lambda_n");
    for (j, a) in digits.iter().enumerate().take(e).skip(1) {
        let t = vf.evaluate(&a.mul(k, &phi.pow(k, j)));
        ensure!(t >= Rat::Finite(top.clone()), "term {j} of the expansion is below e * lambda_n");
    }

    // Successor and precursor.
    let big_n = vf.big_n(n);
    let nb = qi(big_n);
    let den_n = |x: &BigRational| denom_u64(&(x * &nb));
    let (vp, vpp) = successor_precursor_valuations(&vf).map_err(err)?;
    let lp = fin(vp.evaluate(&phi));
    let lpp = fin(vpp.evaluate(&phi));
    let (ee, ep, epp) = (den_n(&lam), den_n(&lp), den_n(&lpp));
    ensure!(&lam - &lp == BigRational::new(1.into(), (big_n * ee * ep).into()), "lambda_n - lambda' = {}", &lam - &lp);
    ensure!(&lpp - &lam == BigRational::new(1.into(), (big_n * ee * epp).into()), "lambda'' - lambda_n = {}", &lpp - &lam);
    let vn1 = vf.truncate(n - 1);
    let rel = |w: &V<F>| w.ramification(&vn1).map_err(err);
    ensure!(rel(&vf)? == ee && rel(&vp)? == ep && rel(&vpp)? == epp, "relative ramification indices disagree with denominators");

    for v in [&vf, &vp, &vpp] {
        multiplicity_decreases(v)?;
    }

    // Embedded resolution.
    let r = minimal_embedded_resolution(k, f).map_err(err)?;
    dual_graph(&r.model)?;
    ensure!(r.model.contains(&vp) != r.model.contains(&vpp), "model contains both or neither of v_f', v_f''");
    let other = match r.chosen {
        Chosen::Prime => &vpp,
        Chosen::Dprime => &vp,
    };
    let other_model = minimal_regular_resolution(other).and_then(|g| g.adjoin_origin()).map_err(err)?;
    ensure!(
        other_model.len() > r.model.len() && r.model.vertices().iter().all(|v| other_model.contains(v)),
        "the other candidate's model does not strictly contain the chosen one"
    );

    // The contraction chain.
    let fam = families(&vf).map_err(err)?;
    let chain = contraction_chain(&root).map_err(err)?;
    ensure!(chain[0].1 == ContractionType::Full, "chain does not start at the full resolution");
    let mut stage = 0;
    let mut last_regular = None;
    let mut was_regular = true;
    for (idx, (g, t)) in chain.iter().enumerate() {
        dual_graph(g)?;
        ensure!(classify_contraction(g, &root).map_err(err)? == *t, "classification changed on recomputation");
        let s = match t {
            ContractionType::Full => 0,
            ContractionType::TypeI => 1,
            ContractionType::TypeII => 2,
            ContractionType::TypeIII => 3,
            ContractionType::Other => return Err(format!("OTHER in chain: {}", literals(g))),
        };
        ensure!(s >= stage && (idx == 0 || s > 0), "chain out of order at {}", literals(g));
        stage = s;
        let regular = is_divisor_regular(g, &root).map_err(err)?;
        let has = g.contains(&vp) || g.contains(&vpp);
        ensure!(regular == has, "regularity {regular} but contains v_f' or v_f'': {has}");
        ensure!(was_regular || !regular, "regularity returns after failing");
        was_regular = regular;
        if regular {
            last_regular = Some(g);
        }

        let in_model = |u: &V<F>| g.contains(u);
        let lam_of = |u: &V<F>| fin(u.evaluate(&phi));
        let star = fam.w_n1.iter().filter(|u| in_model(u)).max_by(|a, b| lam_of(a).cmp(&lam_of(b)));
        let sstar = fam.v_n.iter().filter(|u| in_model(u)).min_by(|a, b| lam_of(a).cmp(&lam_of(b)));
        if matches!(t, ContractionType::TypeI | ContractionType::TypeII) {
            let vs = star.ok_or("type I/II model without a w-component")?;
            let ls = lam_of(vs);
            let es = den_n(&ls);
            let gap = &lam - &ls;
            let unit = BigRational::new(1.into(), (big_n * ee * es).into());
            ensure!(gap >= unit && ((gap == unit) == (ls == lp)), "lambda_n - lambda* = {gap}");
            if *t == ContractionType::TypeI {
                let vss = sstar.ok_or("type I model without a v_n-component")?;
                let lss = lam_of(vss);
                let ess = den_n(&lss);
                ensure!(
                    &lss - &ls == BigRational::new(1.into(), (big_n * es * ess).into()),
                    "lambda** - lambda* = {} on {}",
                    &lss - &ls,
                    literals(g)
                );
                let gap = &lss - &lam;
                let unit = BigRational::new(1.into(), (big_n * ee * ess).into());
                ensure!(gap >= unit && ((gap == unit) == (lss == lpp)), "lambda** - lambda_n = {gap}");
            } else {
                ensure!(vs.e_total() == vn1.e_total(), "value group of v_f* differs from that of v_(n-1)");
            }
        }
        if matches!(t, ContractionType::TypeII | ContractionType::TypeIII) {
            let root_phi = PseudoRoot::new(k, &phi).map_err(err)?;
            let a = specialize(g, &root).map_err(err)?;
            let b = specialize(g, &root_phi).map_err(err)?;
            ensure!(a.component.same(&b.component), "f and phi_n specialize apart on {}", literals(g));
        }
    }
    if n >= 2 {
        ensure!(chain.last().map(|c| c.1) == Some(ContractionType::TypeIII), "chain does not reach type III");
    }
    let last_regular = last_regular.ok_or("no regular model in the chain")?;
    ensure!(
        same_set(last_regular, &r.model),
        "last regular contraction {} differs from the embedded model {}",
        literals(last_regular),
        literals(&r.model)
    );
    Ok(())
}
