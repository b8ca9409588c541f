//! Normal models of the projective line, encoded as finite sets of Mac Lane
//! valuations, and their dual graphs.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::embedded::successor_precursor_valuations;
use crate::error::{Error, Result};
use crate::maclane::{diskoid_contains, literal_order, Comparison, InductiveValuation, PseudoRoot};
use crate::npath::shortest_npath;
use crate::rat::{ceil_q, floor_q, Rat};
use crate::valued_field::ValuedField;

type V<F> = InductiveValuation<F>;

/// A model given by its valuations, with the dual graph computed on
/// construction: an edge joins `w < w'` when nothing in the set lies strictly
/// between them.
#[derive(Clone, Debug)]
pub struct ModelGraph<F: ValuedField> {
    source: Option<V<F>>,
    vertices: Vec<V<F>>,
    edges: Vec<(usize, usize)>,
    mult: Vec<u64>,
    self_int: Vec<i64>,
}

impl<F: ValuedField> ModelGraph<F> {
    /// Deduplicates (as valuations), sorts deterministically and computes the
    /// dual graph. Fails when the fiber relation has no integral solution.
    pub fn new(vals: impl IntoIterator<Item = V<F>>) -> Result<Self> {
        Self::build(None, vals)
    }

    fn build(source: Option<V<F>>, vals: impl IntoIterator<Item = V<F>>) -> Result<Self> {
        let mut vertices: Vec<V<F>> = Vec::new();
        for v in vals {
            if !vertices.iter().any(|w| w.same(&v)) {
                vertices.push(v);
            }
        }
        vertices.sort_by(literal_order);
        let k = vertices.len();
        let mut less = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                less[i][j] = i != j && vertices[i].compare(&vertices[j]) == Comparison::Less;
            }
        }
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if less[i][j] && !(0..k).any(|m| less[i][m] && less[m][j]) {
                    edges.push((i, j));
                }
            }
        }
        let mult: Vec<u64> = vertices.iter().map(|v| v.e_total()).collect();
        let mut self_int = Vec::with_capacity(k);
        for i in 0..k {
            let s: u64 = edges
                .iter()
                .filter_map(|&(a, b)| match (a == i, b == i) {
                    (true, _) => Some(mult[b]),
                    (_, true) => Some(mult[a]),
                    _ => None,
                })
                .sum();
            if !s.is_multiple_of(mult[i]) {
                return Err(Error::FiberRelationViolated);
            }
            self_int.push(-((s / mult[i]) as i64));
        }
        Ok(ModelGraph { source, vertices, edges, mult, self_int })
    }

    /// The valuation this model was resolved from, if any.
    pub fn source(&self) -> Option<&V<F>> {
        self.source.as_ref()
    }

    pub fn vertices(&self) -> &[V<F>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(i, j)` with `vertices[i] < vertices[j]`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Multiplicity `e(w / v0)` of each component.
    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn self_intersections(&self) -> &[i64] {
        &self.self_int
    }

    pub fn index_of(&self, v: &V<F>) -> Option<usize> {
        self.vertices.iter().position(|w| w.same(v))
    }

    pub fn contains(&self, v: &V<F>) -> bool {
        self.index_of(v).is_some()
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect()
    }

    pub fn is_tree(&self) -> bool {
        let k = self.vertices.len();
        if k == 0 || self.edges.len() != k - 1 {
            return false;
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// The model with the given vertex removed (a blow-down when the vertex
    /// is a -1 component).
    pub fn without(&self, i: usize) -> Result<Self> {
        let vals = self.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone());
        Self::build(self.source.clone(), vals)
    }

    /// Includes `v0` and `[v0, phi_1 = l]` for `l = 1, ..., floor(lambda_1) - 1`.
    pub fn adjoin_origin(&self) -> Result<Self> {
        let Some(src) = self.source.as_ref().filter(|s| !s.is_gauss()) else {
            return Ok(self.clone());
        };
        let v0 = src.truncate(0);
        let phi = src.phi(1);
        let top = floor_q(src.lambda(1));
        let mut vals = self.vertices.clone();
        vals.push(v0.clone());
        let mut l = num_bigint::BigInt::from(1);
        while l < top {
            vals.push(v0.augment(phi, &BigRational::from_integer(l.clone()))?);
            l += 1;
        }
        Self::build(self.source.clone(), vals)
    }
}

/// Valuations `[base, phi = mu]` for the given values, merged into `base`
/// where `mu = base(phi)`.
fn along<F: ValuedField>(
    base: &V<F>,
    phi: &crate::maclane::P<F>,
    mus: &[BigRational],
) -> Result<Vec<V<F>>> {
    mus.iter().map(|mu| base.with_last(phi, mu)).collect()
}

/// `e(v_i / v_{i-1}) * lambda_i`, the value of `phi_{i+1}` under `v_i`, with
/// `i = 0` giving `lambda_0`.
fn lower_end<F: ValuedField>(v: &V<F>, i: usize, lambda0: &BigRational) -> BigRational {
    if i == 0 {
        lambda0.clone()
    } else {
        BigRational::from_integer(v.e_at(i).into()) * v.lambda(i)
    }
}

/// The two families along level `i` (1-based):
/// the `v_{i,l}` for `l` on the path from `beta_i` to `lambda_i`, and the interior of
/// the `w_{i-1,l}` path from `lambda_i` to the lower end.
struct Level<F: ValuedField> {
    v_family: Vec<V<F>>,
    w_family: Vec<V<F>>,
}

fn level<F: ValuedField>(v: &V<F>, i: usize, lambda0: &BigRational) -> Result<Level<F>> {
    let base = v.truncate(i - 1);
    let phi = v.phi(i);
    let lam = v.lambda(i);
    let n = v.big_n(i);
    let nb = BigRational::from_integer(n.into());
    let beta = BigRational::from_integer(ceil_q(&(lam * &nb))) / &nb;
    let v_mus = if beta > *lam { shortest_npath(&beta, lam, n)?.entries } else { vec![lam.clone()] };
    let low = lower_end(v, i - 1, lambda0);
    let w_mus = if *lam > low { shortest_npath(lam, &low, n)?.interior().to_vec() } else { Vec::new() };
    Ok(Level { v_family: along(&base, phi, &v_mus)?, w_family: along(&base, phi, &w_mus)? })
}

/// Minimal regular resolution of the `v`-model.
pub fn minimal_regular_resolution<F: ValuedField>(v: &V<F>) -> Result<ModelGraph<F>> {
    let n = v.len();
    if n == 0 {
        return ModelGraph::build(Some(v.clone()), [v.clone()]);
    }
    let lambda0 = BigRational::from_integer(floor_q(v.lambda(1)));
    let mut vals = Vec::new();
    for i in 1..=n {
        let lv = level(v, i, &lambda0)?;
        vals.extend(lv.v_family);
        vals.extend(lv.w_family);
    }
    let v0 = v.truncate(0);
    vals.push(v0.with_last(v.phi(1), &lambda0)?);
    ModelGraph::build(Some(v.clone()), vals)
}

/// Where a root specializes on a model: the largest component whose diskoid
/// contains it, and the neighbouring component when it lands on their node.
#[derive(Clone, Debug)]
pub struct SpecializationReport<F: ValuedField> {
    pub component: V<F>,
    pub at_node_with: Option<V<F>>,
}

pub fn specialize<F: ValuedField>(g: &ModelGraph<F>, root: &PseudoRoot<F>) -> Result<SpecializationReport<F>> {
    for v in g.vertices() {
        if v.steps().iter().any(|s| s.phi.deg() > root.degree()) {
            return Err(Error::DegreeMismatch);
        }
    }
    let k = root.vf().field();
    if !g.contains(&V::gauss(k)) {
        return Err(Error::NotASubset);
    }
    let mut best: Option<usize> = None;
    for (i, v) in g.vertices().iter().enumerate() {
        if !diskoid_contains(v, root)? {
            continue;
        }
        best = match best {
            Some(b) if g.vertices()[b].compare(v) != Comparison::Less => Some(b),
            _ => Some(i),
        };
    }
    let c = best.expect("v0 contains every integral root");
    let comp = &g.vertices()[c];
    let mut node = None;
    for j in g.neighbours(c) {
        let w = &g.vertices()[j];
        if comp.compare(w) != Comparison::Less || w.is_gauss() {
            continue;
        }
        let m = w.len();
        let base = w.truncate(m - 1);
        let phi = w.phi(m);
        let mu = comp.evaluate(phi);
        let Rat::Finite(mu_q) = &mu else { continue };
        match base.with_last(phi, mu_q) {
            Ok(u) if u.same(comp) => {}
            _ => continue,
        }
        let nu = root.evaluate(phi);
        if mu < nu && nu < Rat::Finite(w.lambda(m).clone()) {
            node = Some(w.clone());
            break;
        }
    }
    Ok(SpecializationReport { component: comp.clone(), at_node_with: node })
}

/// The canonical contraction types of the resolution of `v_f` (with `v0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionType {
    TypeI,
    TypeII,
    TypeIII,
    Full,
    Other,
}

impl fmt::Display for ContractionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContractionType::TypeI => "TYPE_I",
            ContractionType::TypeII => "TYPE_II",
            ContractionType::TypeIII => "TYPE_III",
            ContractionType::Full => "FULL",
            ContractionType::Other => "OTHER",
        })
    }
}

/// The resolution of `v_f` with `v0` adjoined, split into the families that
/// decide the contraction type.
pub struct Families<F: ValuedField> {
    pub full: ModelGraph<F>,
    /// The `v_{n,l}` other than `v_f`.
    pub v_n: Vec<V<F>>,
    /// The `w_{n-1,l}`, including `v_{n-1}` itself.
    pub w_n1: Vec<V<F>>,
    /// Everything else except `v_f`: the type III vertex set.
    pub type_iii: Vec<V<F>>,
}

pub fn families<F: ValuedField>(vf: &V<F>) -> Result<Families<F>> {
    let full = minimal_regular_resolution(vf)?.adjoin_origin()?;
    let n = vf.len();
    if n == 0 {
        return Ok(Families { full, v_n: Vec::new(), w_n1: Vec::new(), type_iii: Vec::new() });
    }
    // With v0 adjoined the lower end of the first level is 0.
    let lv = level(vf, n, &BigRational::zero())?;
    let v_n: Vec<V<F>> = lv.v_family.into_iter().filter(|w| !w.same(vf)).collect();
    let mut w_n1 = lv.w_family;
    w_n1.push(vf.truncate(n - 1));
    let type_iii = full
        .vertices()
        .iter()
        .filter(|w| !w.same(vf) && !v_n.iter().chain(&w_n1).any(|u| u.same(w)))
        .cloned()
        .collect();
    Ok(Families { full, v_n, w_n1, type_iii })
}

fn check_subset<F: ValuedField>(subset: &ModelGraph<F>, fam: &Families<F>, k: &F) -> Result<()> {
    if !subset.contains(&V::gauss(k)) || subset.vertices().iter().any(|w| !fam.full.contains(w)) {
        return Err(Error::NotASubset);
    }
    Ok(())
}

pub fn classify_contraction<F: ValuedField>(subset: &ModelGraph<F>, root: &PseudoRoot<F>) -> Result<ContractionType> {
    let vf = root.vf();
    let fam = families(vf)?;
    check_subset(subset, &fam, vf.field())?;
    if subset.contains(vf) {
        return Ok(ContractionType::Full);
    }
    let has_v = fam.v_n.iter().any(|w| subset.contains(w));
    let has_w = fam.w_n1.iter().any(|w| subset.contains(w));
    Ok(match (has_v, has_w) {
        (true, true) => ContractionType::TypeI,
        (false, true) => ContractionType::TypeII,
        (true, false) => ContractionType::Other,
        (false, false) => {
            let same_set = !fam.type_iii.is_empty()
                && subset.len() == fam.type_iii.len()
                && fam.type_iii.iter().all(|w| subset.contains(w));
            if same_set {
                ContractionType::TypeIII
            } else {
                ContractionType::Other
            }
        }
    })
}

/// Whether the closure of the root is regular on the given contraction.
pub fn is_divisor_regular<F: ValuedField>(subset: &ModelGraph<F>, root: &PseudoRoot<F>) -> Result<bool> {
    match classify_contraction(subset, root)? {
        ContractionType::Full => Ok(true),
        ContractionType::TypeI | ContractionType::TypeII => {
            let (p, pp) = successor_precursor_valuations(root.vf())?;
            Ok(subset.contains(&p) || subset.contains(&pp))
        }
        ContractionType::TypeIII => Ok(false),
        ContractionType::Other => Err(Error::UnsupportedContraction),
    }
}

/// Index of the unique -1 component other than `v0`, if there is exactly one.
pub fn blow_down_candidate<F: ValuedField>(g: &ModelGraph<F>) -> Result<Option<usize>> {
    let cands: Vec<usize> = (0..g.len())
        .filter(|&i| g.self_intersections()[i] == -1 && !g.vertices()[i].is_gauss())
        .collect();
    match cands.as_slice() {
        [] => Ok(None),
        [i] => Ok(Some(*i)),
        _ => Err(Error::UnsupportedContraction),
    }
}

/// The chain of regular contractions from the resolution of `v_f` (with `v0`),
/// blowing down the unique -1 component at each step, ending at the type III
/// model or when nothing can be blown down.
pub fn contraction_chain<F: ValuedField>(root: &PseudoRoot<F>) -> Result<Vec<(ModelGraph<F>, ContractionType)>> {
    let mut g = families(root.vf())?.full;
    let mut out = Vec::new();
    loop {
        let t = classify_contraction(&g, root)?;
        out.push((g.clone(), t));
        if t == ContractionType::TypeIII {
            return Ok(out);
        }
        match blow_down_candidate(&g)? {
            Some(i) => g = g.without(i)?,
            None => return Ok(out),
        }
    }
}
