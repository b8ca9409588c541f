//! Shared polynomial corpus for the integration suites.
#![allow(dead_code)]

pub mod checks;
pub mod gen;
pub mod npath_oracle;

use maclane_core::maclane::P;
use maclane_core::parse::parse_poly;
use maclane_core::valued_field::{BaseField, ValuedField};

/// `(base, f)`: monic, irreducible over the completion, residually split,
/// roots of positive valuation. Tame and wild, depths 1 to 3.
pub const CORPUS: &[(&str, &str)] = &[
    ("padic:2", "x^2+2*x+2"),
    ("padic:2", "x^4+2"),
    ("padic:2", "x^3+2"),
    ("padic:2", "x^4+4*x+2"),
    ("padic:2", "x^4-4*x^2-4"),
    ("padic:2", "x^6+2"),
    ("padic:2", "x^2-12"),
    ("padic:2", "x^2+4*x+8"),
    ("padic:2", "(x^2-2)^2-8*x"),
    ("padic:3", "x^3-9"),
    ("padic:3", "x^4-6*x^2-36*x-18"),
    ("padic:3", "x^3-3"),
    ("padic:3", "x^3+3*x+3"),
    ("padic:3", "x^6-3"),
    ("padic:3", "x^2-27"),
    ("padic:3", "x^5-9"),
    ("padic:3", "x^4-6*x^2-27*x+9"),
    ("padic:3", "(x^4-6*x^2-27*x+9)^2-6561*(x^2-3)"),
    ("padic:5", "x^2-5"),
    ("padic:5", "x^5-5"),
    ("padic:5", "x^4-125"),
    ("padic:5", "x^3-25"),
    ("padic:7", "x^8-7"),
    ("laurent:2", "x^2+t*x+t"),
    ("laurent:2", "x^3+t^2"),
    ("laurent:2", "x^4+t^3"),
    ("laurent:2", "x^4+t^3*x+t^2"),
    ("laurent:2", "x^2+t^3"),
    ("laurent:2", "(x^4+t^3*x+t^2)^2+t^8*(x^2+t)"),
    ("laurent:3", "x^2-t"),
    ("laurent:3", "x^3-t^2-t^3"),
    ("laurent:3", "x^3-t"),
    ("laurent:3", "x^6-t^5"),
    ("laurent:2^2", "x^2+u*t*x+t"),
    ("laurent:5", "x^4-t^2*x^2-t^3"),
];

/// Called once per corpus entry with the parsed field and polynomial.
pub trait Visit {
    fn visit<F: ValuedField>(&mut self, k: &F, f: &P<F>, label: &str);
}

pub fn visit_one(base: &str, poly: &str, v: &mut impl Visit) {
    let label = format!("{base} {poly}");
    match base.parse::<BaseField>().expect("corpus base") {
        BaseField::Padic(k) => v.visit(&k, &parse_poly(&k, poly).expect("corpus poly"), &label),
        BaseField::Laurent(k) => v.visit(&k, &parse_poly(&k, poly).expect("corpus poly"), &label),
    }
}

pub fn visit_corpus(v: &mut impl Visit) {
    for (base, poly) in CORPUS {
        visit_one(base, poly, v);
    }
}
