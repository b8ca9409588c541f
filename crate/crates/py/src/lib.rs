//! Python bindings. Valuations and models carry their base field; every
//! rational crosses the boundary as a reduced `b/c` string.

use maclane_core::embedded::{minimal_embedded_resolution, successor_precursor_valuations};
use maclane_core::maclane::{compute_vf, Comparison, InductiveValuation, PseudoRoot};
use maclane_core::models::{
    classify_contraction, is_divisor_regular, minimal_regular_resolution, specialize, ModelGraph,
};
use maclane_core::npath;
use maclane_core::output;
use maclane_core::parse::parse_poly;
use maclane_core::rat::{fmt_q, parse_q};
use maclane_core::valued_field::{BaseField, Laurent, Padic, ValuedField};
use maclane_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(maclane, MaclaneError, PyValueError, "Raised with `Name: message` for every library error.");

fn err(e: Error) -> PyErr {
    MaclaneError::new_err(format!("{}: {}", e.name(), e))
}

type V<F> = InductiveValuation<F>;

#[derive(Clone)]
enum Val {
    Padic(V<Padic>),
    Laurent(V<Laurent>),
}

#[derive(Clone)]
enum Graph {
    Padic(ModelGraph<Padic>),
    Laurent(ModelGraph<Laurent>),
}

/// Ties a backend to its variants in the wrapper enums.
trait Backend: ValuedField {
    fn val(v: V<Self>) -> Val;
    fn graph(g: ModelGraph<Self>) -> Graph;
    fn get(v: &Val) -> Option<&V<Self>>;
}

impl Backend for Padic {
    fn val(v: V<Self>) -> Val {
        Val::Padic(v)
    }

    fn graph(g: ModelGraph<Self>) -> Graph {
        Graph::Padic(g)
    }

    fn get(v: &Val) -> Option<&V<Self>> {
        match v {
            Val::Padic(v) => Some(v),
            Val::Laurent(_) => None,
        }
    }
}

impl Backend for Laurent {
    fn val(v: V<Self>) -> Val {
        Val::Laurent(v)
    }

    fn graph(g: ModelGraph<Self>) -> Graph {
        Graph::Laurent(g)
    }

    fn get(v: &Val) -> Option<&V<Self>> {
        match v {
            Val::Laurent(v) => Some(v),
            Val::Padic(_) => None,
        }
    }
}

macro_rules! on_base {
    ($spec:expr, $k:ident => $body:expr) => {
        match $spec.parse::<BaseField>().map_err(err)? {
            BaseField::Padic($k) => $body,
            BaseField::Laurent($k) => $body,
        }
    };
}

macro_rules! on_val {
    ($val:expr, $v:ident => $body:expr) => {
        match $val {
            Val::Padic($v) => $body,
            Val::Laurent($v) => $body,
        }
    };
}

macro_rules! on_graph {
    ($graph:expr, $g:ident => $body:expr) => {
        match $graph {
            Graph::Padic($g) => $body,
            Graph::Laurent($g) => $body,
        }
    };
}

fn same_base<'a, F: Backend>(k: &F, v: &'a Valuation) -> PyResult<&'a V<F>> {
    F::get(&v.inner)
        .filter(|w| w.field().spec() == k.spec())
        .ok_or_else(|| err(Error::BaseMismatch(format!("{} against {}", v.base(), k.spec()))))
}

fn comparison_name(c: Comparison) -> &'static str {
    match c {
        Comparison::Less => "LESS",
        Comparison::Equal => "EQUAL",
        Comparison::Greater => "GREATER",
        Comparison::Incomparable => "INCOMPARABLE",
    }
}

/// A Mac Lane valuation over `padic:<p>` or `laurent:<p>^<m>`.
#[pyclass(module = "maclane", frozen, from_py_object)]
#[derive(Clone)]
struct Valuation {
    inner: Val,
}

#[pymethods]
impl Valuation {
    /// Parses a literal such as `[v0, (x)=1/2, (x^2-3)=5/4]`.
    #[new]
    fn new(base: &str, literal: &str) -> PyResult<Self> {
        on_base!(base, k => Ok(Valuation { inner: Backend::val(V::parse(&k, literal).map_err(err)?) }))
    }

    #[staticmethod]
    fn gauss(base: &str) -> PyResult<Self> {
        on_base!(base, k => Ok(Valuation { inner: Backend::val(V::gauss(&k)) }))
    }

    #[staticmethod]
    fn from_json(base: &str, text: &str) -> PyResult<Self> {
        let j: serde_json::Value =
            serde_json::from_str(text).map_err(|e| err(Error::Parse(e.to_string())))?;
        on_base!(base, k => Ok(Valuation { inner: Backend::val(V::from_json(&k, &j).map_err(err)?) }))
    }

    #[getter]
    fn base(&self) -> String {
        on_val!(&self.inner, v => v.field().spec())
    }

    #[getter]
    fn literal(&self) -> String {
        on_val!(&self.inner, v => v.literal())
    }

    fn __str__(&self) -> String {
        self.literal()
    }

    fn __repr__(&self) -> String {
        format!("Valuation({:?}, {:?})", self.base(), self.literal())
    }

    fn __len__(&self) -> usize {
        on_val!(&self.inner, v => v.len())
    }

    fn lambdas(&self) -> Vec<String> {
        on_val!(&self.inner, v => v.lambdas().iter().map(fmt_q).collect())
    }

    /// Key polynomials, one per augmentation step.
    fn keys(&self) -> Vec<String> {
        on_val!(&self.inner, v => v.steps().iter().map(|s| s.phi.fmt(v.field())).collect())
    }

    /// Ramification index over the Gauss valuation.
    fn ramification_index(&self) -> u64 {
        on_val!(&self.inner, v => v.e_total())
    }

    /// Value of a polynomial, as `b/c` or `inf`.
    fn evaluate(&self, poly: &str) -> PyResult<String> {
        on_val!(&self.inner, v => {
            let g = parse_poly(v.field(), poly).map_err(err)?;
            Ok(v.evaluate(&g).to_string())
        })
    }

    fn is_key(&self, poly: &str) -> PyResult<bool> {
        on_val!(&self.inner, v => v.is_key(&parse_poly(v.field(), poly).map_err(err)?).map_err(err))
    }

    fn augment(&self, phi: &str, value: &str) -> PyResult<Self> {
        on_val!(&self.inner, v => {
            let phi = parse_poly(v.field(), phi).map_err(err)?;
            let lam = parse_q(value).map_err(err)?;
            Ok(Valuation { inner: Backend::val(v.augment(&phi, &lam).map_err(err)?) })
        })
    }

    /// One of `LESS`, `EQUAL`, `GREATER`, `INCOMPARABLE`.
    fn compare(&self, other: &Valuation) -> PyResult<&'static str> {
        on_val!(&self.inner, v => Ok(comparison_name(v.compare(same_base(v.field(), other)?))))
    }

    fn __eq__(&self, other: &Valuation) -> bool {
        self.compare(other).is_ok_and(|c| c == "EQUAL")
    }

    fn to_json(&self) -> String {
        on_val!(&self.inner, v => v.to_json().to_string())
    }

    /// Successor and precursor valuations.
    fn neighbours(&self) -> PyResult<(Valuation, Valuation)> {
        on_val!(&self.inner, v => {
            let (a, b) = successor_precursor_valuations(v).map_err(err)?;
            Ok((Valuation { inner: Backend::val(a) }, Valuation { inner: Backend::val(b) }))
        })
    }

    /// Minimal regular resolution of the model of this valuation.
    #[pyo3(signature = (with_origin = false))]
    fn resolve(&self, with_origin: bool) -> PyResult<Model> {
        on_val!(&self.inner, v => {
            let mut g = minimal_regular_resolution(v).map_err(err)?;
            if with_origin {
                g = g.adjoin_origin().map_err(err)?;
            }
            Ok(Model { inner: Backend::graph(g) })
        })
    }
}

/// A normal model of the projective line with its dual graph.
#[pyclass(module = "maclane", frozen)]
struct Model {
    inner: Graph,
}

fn model_from<F: Backend>(k: &F, vals: &[Valuation]) -> PyResult<ModelGraph<F>> {
    let vs = vals.iter().map(|v| same_base(k, v).cloned()).collect::<PyResult<Vec<_>>>()?;
    ModelGraph::new(vs).map_err(err)
}

#[pymethods]
impl Model {
    #[new]
    fn new(valuations: Vec<Valuation>) -> PyResult<Self> {
        let first = valuations.first().ok_or_else(|| err(Error::Parse("empty model".into())))?;
        on_val!(&first.inner, v => Ok(Model { inner: Backend::graph(model_from(v.field(), &valuations)?) }))
    }

    fn __len__(&self) -> usize {
        on_graph!(&self.inner, g => g.len())
    }

    #[getter]
    fn vertices(&self) -> Vec<Valuation> {
        on_graph!(&self.inner, g => g.vertices().iter().map(|v| Valuation { inner: Backend::val(v.clone()) }).collect())
    }

    #[getter]
    fn multiplicities(&self) -> Vec<u64> {
        on_graph!(&self.inner, g => g.multiplicities().to_vec())
    }

    #[getter]
    fn self_intersections(&self) -> Vec<i64> {
        on_graph!(&self.inner, g => g.self_intersections().to_vec())
    }

    /// Edges as pairs of vertex indices.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        on_graph!(&self.inner, g => g.edges().to_vec())
    }

    fn contains(&self, v: &Valuation) -> PyResult<bool> {
        on_graph!(&self.inner, g => match g.vertices().first() {
            Some(w) => Ok(g.contains(same_base(w.field(), v)?)),
            None => Ok(false),
        })
    }

    fn to_json(&self) -> String {
        on_graph!(&self.inner, g => output::dual_graph_json(g).to_string())
    }

    fn to_dot(&self) -> String {
        on_graph!(&self.inner, g => output::model_dot(g))
    }

    fn __str__(&self) -> String {
        on_graph!(&self.inner, g => output::model_text(g))
    }
}

/// Minimal embedded resolution of the divisor of zeros of `f`.
#[pyclass(module = "maclane", frozen, get_all)]
struct EmbeddedResolution {
    vf: Valuation,
    vf_prime: Valuation,
    vf_dprime: Valuation,
    e_prime: u64,
    e_dprime: u64,
    chosen: String,
    model: Py<Model>,
    json: String,
}

/// The valuation `v_f` of a monic polynomial irreducible over the completion.
#[pyfunction]
fn vf(base: &str, poly: &str) -> PyResult<Valuation> {
    on_base!(base, k => {
        let f = parse_poly(&k, poly).map_err(err)?;
        Ok(Valuation { inner: Backend::val(compute_vf(&k, &f).map_err(err)?) })
    })
}

/// Valuation of `g(alpha)` for a root `alpha` of `poly`.
#[pyfunction]
fn eval_at_root(base: &str, poly: &str, g: &str) -> PyResult<String> {
    on_base!(base, k => {
        let root = PseudoRoot::new(&k, &parse_poly(&k, poly).map_err(err)?).map_err(err)?;
        Ok(root.evaluate(&parse_poly(&k, g).map_err(err)?).to_string())
    })
}

/// Shortest N-path from `start` down to `end`.
#[pyfunction]
#[pyo3(signature = (start, end, n = 1))]
fn shortest_npath(start: &str, end: &str, n: u64) -> PyResult<Vec<String>> {
    let a = parse_q(start).map_err(err)?;
    let b = parse_q(end).map_err(err)?;
    Ok(npath::shortest_npath(&a, &b, n).map_err(err)?.to_strings())
}

#[pyfunction]
fn successor_precursor(value: &str, n: u64, lower: &str, upper: &str) -> PyResult<(String, String)> {
    let q = |s: &str| parse_q(s).map_err(err);
    let (a, b) = npath::successor_precursor(&q(value)?, n, &q(lower)?, &q(upper)?).map_err(err)?;
    Ok((fmt_q(&a), fmt_q(&b)))
}

#[pyfunction]
fn embedded(py: Python<'_>, base: &str, poly: &str) -> PyResult<EmbeddedResolution> {
    on_base!(base, k => {
        let f = parse_poly(&k, poly).map_err(err)?;
        let r = minimal_embedded_resolution(&k, &f).map_err(err)?;
        let wrap = |v: &V<_>| Valuation { inner: Backend::val(v.clone()) };
        Ok(EmbeddedResolution {
            vf: wrap(&r.vf),
            vf_prime: wrap(&r.vf_prime),
            vf_dprime: wrap(&r.vf_dprime),
            e_prime: r.e_prime,
            e_dprime: r.e_dprime,
            chosen: r.chosen.to_string(),
            model: Py::new(py, Model { inner: Backend::graph(r.model.clone()) })?,
            json: output::embedded_json(&r).to_string(),
        })
    })
}

/// The component the root of `poly` specializes to, and the neighbour it
/// meets there if it specializes to a node.
#[pyfunction]
fn specialize_root(base: &str, poly: &str, valuations: Vec<Valuation>) -> PyResult<(Valuation, Option<Valuation>)> {
    on_base!(base, k => {
        let root = PseudoRoot::new(&k, &parse_poly(&k, poly).map_err(err)?).map_err(err)?;
        let s = specialize(&model_from(&k, &valuations)?, &root).map_err(err)?;
        let wrap = |v: V<_>| Valuation { inner: Backend::val(v) };
        Ok((wrap(s.component), s.at_node_with.map(wrap)))
    })
}

/// Contraction type of a model, and whether the divisor of `poly` is regular
/// on it (`None` outside the canonical types).
#[pyfunction]
fn classify(base: &str, poly: &str, valuations: Vec<Valuation>) -> PyResult<(String, Option<bool>)> {
    on_base!(base, k => {
        let root = PseudoRoot::new(&k, &parse_poly(&k, poly).map_err(err)?).map_err(err)?;
        let g = model_from(&k, &valuations)?;
        let t = classify_contraction(&g, &root).map_err(err)?;
        let regular = match is_divisor_regular(&g, &root) {
            Ok(b) => Some(b),
            Err(Error::UnsupportedContraction) => None,
            Err(e) => return Err(err(e)),
        };
        Ok((t.to_string(), regular))
    })
}

#[pymodule]
fn maclane(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MaclaneError", m.py().get_type::<MaclaneError>())?;
    m.add_class::<Valuation>()?;
    m.add_class::<Model>()?;
    m.add_class::<EmbeddedResolution>()?;
    m.add_function(wrap_pyfunction!(vf, m)?)?;
    m.add_function(wrap_pyfunction!(eval_at_root, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_npath, m)?)?;
    m.add_function(wrap_pyfunction!(successor_precursor, m)?)?;
    m.add_function(wrap_pyfunction!(embedded, m)?)?;
    m.add_function(wrap_pyfunction!(specialize_root, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
