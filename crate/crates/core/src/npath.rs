//! Shortest N-paths between non-negative rationals.
//!
//! Writing `lcm(N, c) = N * den(N * b/c)` turns the N-path step condition into
//! the 1-path condition on `N * mu`, so an N-path is a 1-path scaled by `1/N`.
//! A shortest 1-path is built by splitting at the simplest fraction of each
//! open interval until the two ends are Farey neighbours.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{ceil_q, floor_q, fmt_q};

/// A decreasing sequence of rationals whose consecutive entries satisfy the
/// N-path step condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPath {
    pub n: u64,
    pub entries: Vec<BigRational>,
}

impl NPath {
    pub fn first(&self) -> &BigRational {
        &self.entries[0]
    }

    pub fn last(&self) -> &BigRational {
        self.entries.last().expect("paths are nonempty")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries strictly between the endpoints.
    pub fn interior(&self) -> &[BigRational] {
        let k = self.entries.len();
        if k <= 2 {
            &[]
        } else {
            &self.entries[1..k - 1]
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(fmt_q).collect()
    }
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Whether `a > b` is an admissible step of an N-path.
pub fn is_npath_step(a: &BigRational, b: &BigRational, n: u64) -> bool {
    let l = |q: &BigRational| -> BigInt {
        let c = q.denom();
        let n = BigInt::from(n);
        num_integer::Integer::lcm(&n, c)
    };
    a > b && a - b == BigRational::new(BigInt::from(n), l(a) * l(b))
}

pub fn is_npath(entries: &[BigRational], n: u64) -> bool {
    !entries.is_empty() && entries.windows(2).all(|w| is_npath_step(&w[0], &w[1], n))
}

/// Simplest fraction strictly between `lo < hi`, both in `[k, k + 1]` with no
/// integer strictly between them. Stern-Brocot descent from `k/1, (k+1)/1`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let k = floor_q(lo);
    let (mut ln, mut ld) = (k.clone(), BigInt::one());
    let (mut rn, mut rd) = (k + 1, BigInt::one());
    loop {
        let m = BigRational::new(&ln + &rn, &ld + &rd);
        if m <= *lo {
            // Step right as far as possible in one go: find the largest t with
            // (ln + t rn)/(ld + t rd) <= lo, then take that many steps.
            let t = steps_until(&ln, &ld, &rn, &rd, lo, true);
            ln += &rn * &t;
            ld += &rd * &t;
        } else if m >= *hi {
            let t = steps_until(&rn, &rd, &ln, &ld, hi, false);
            rn += &ln * &t;
            rd += &ld * &t;
        } else {
            return m;
        }
    }
}

// Number of consecutive mediant steps towards `(fn_, fd)` that keep the moving
// end on the far side of `bound`. At least one.
fn steps_until(
    mn: &BigInt,
    md: &BigInt,
    fn_: &BigInt,
    fd: &BigInt,
    bound: &BigRational,
    moving_left_end: bool,
) -> BigInt {
    // (mn + t fn)/(md + t fd) <= bound  <=>  t (fn - b fd) <= b md - mn  (left end)
    let (bn, bd) = (bound.numer(), bound.denom());
    let lhs = fn_ * bd - bn * fd;
    let rhs = bn * md - mn * bd;
    let t = if moving_left_end {
        // lhs > 0 here since the fixed right end exceeds the bound.
        num_integer::Integer::div_floor(&rhs, &lhs)
    } else {
        // (mn + t fn)/(md + t fd) >= bound  <=>  t (b fd - fn) <= mn - b md
        num_integer::Integer::div_floor(&(-rhs), &(-lhs))
    };
    t.max(BigInt::one())
}

fn farey_neighbours(a: &BigRational, b: &BigRational) -> bool {
    a - b == BigRational::new(BigInt::one(), a.denom() * b.denom())
}

/// Shortest 1-path from `a` down to `b`, `a > b`.
fn shortest_one_path(a: &BigRational, b: &BigRational) -> Vec<BigRational> {
    // Every integer in between lies on every 1-path.
    let mut marks = vec![a.clone()];
    let top = if a.denom().is_one() { a.to_integer() - 1 } else { floor_q(a) };
    let bottom = ceil_q(b);
    let mut k = top;
    while k >= bottom && BigRational::from_integer(k.clone()) > *b {
        marks.push(BigRational::from_integer(k.clone()));
        k -= 1;
    }
    marks.push(b.clone());
    marks.dedup();

    let mut out = vec![a.clone()];
    for w in marks.windows(2) {
        // Depth-first splitting, emitting the upper half first.
        let mut stack = vec![(w[0].clone(), w[1].clone())];
        while let Some((hi, lo)) = stack.pop() {
            if farey_neighbours(&hi, &lo) {
                out.push(lo);
            } else {
                let m = simplest_between(&lo, &hi);
                stack.push((m.clone(), lo));
                stack.push((hi, m));
            }
        }
    }
    out
}

/// The shortest N-path from `a` down to `b`.
pub fn shortest_npath(a: &BigRational, b: &BigRational, n: u64) -> Result<NPath> {
    if n == 0 || a <= b || *b < BigRational::zero() {
        return Err(Error::InvalidEndpoints);
    }
    let s = big(n);
    let entries = shortest_one_path(&(a * &s), &(b * &s)).into_iter().map(|x| x / &s).collect();
    Ok(NPath { n, entries })
}

/// `(lambda', lambda'')`: the entry after `lambda` on the shortest N-path from
/// `lambda` to `lower`, and the entry before it on the one from `upper` to
/// `lambda`.
pub fn successor_precursor(
    lambda: &BigRational,
    n: u64,
    lower: &BigRational,
    upper: &BigRational,
) -> Result<(BigRational, BigRational)> {
    if !(lower < lambda && lambda < upper) {
        return Err(Error::InvalidEndpoints);
    }
    let down = shortest_npath(lambda, lower, n)?;
    let up = shortest_npath(upper, lambda, n)?;
    Ok((down.entries[1].clone(), up.entries[up.len() - 2].clone()))
}
