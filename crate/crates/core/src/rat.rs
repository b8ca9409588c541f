//! Exact rationals extended by a top element, used for every valuation value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational number in lowest terms, or `Inf` (the value of zero).
///
/// `Inf` absorbs addition and compares greater than every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Finite(BigRational),
    Inf,
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Rat::Finite(BigRational::from_integer(n.into()))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Rat::Finite(BigRational::new(num.into(), den.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Rat::Inf)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Rat::Finite(q) => Some(q),
            Rat::Inf => None,
        }
    }

    /// Finite value; panics on `Inf`. Only for values known to be finite.
    pub fn expect_finite(&self) -> &BigRational {
        self.finite().expect("finite valuation value")
    }

    pub fn scale(&self, k: i64) -> Rat {
        match self {
            Rat::Finite(q) => Rat::Finite(q * BigRational::from_integer(k.into())),
            Rat::Inf if k == 0 => Rat::zero(),
            Rat::Inf => Rat::Inf,
        }
    }
}

impl From<BigRational> for Rat {
    fn from(q: BigRational) -> Self {
        Rat::Finite(q)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Inf, Rat::Inf) => Ordering::Equal,
            (Rat::Inf, _) => Ordering::Greater,
            (_, Rat::Inf) => Ordering::Less,
            (Rat::Finite(a), Rat::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Finite(a), Rat::Finite(b)) => Rat::Finite(a + b),
            _ => Rat::Inf,
        }
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        &self + &rhs
    }
}

impl Add<&BigRational> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &BigRational) -> Rat {
        match self {
            Rat::Finite(a) => Rat::Finite(a + rhs),
            Rat::Inf => Rat::Inf,
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Finite(q) => write!(f, "{}", fmt_q(q)),
            Rat::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Rat::Inf);
        }
        parse_q(s).map(Rat::Finite)
    }
}

/// Reduced `b/c` form; integers print without a denominator.
pub fn fmt_q(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_q(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn q_int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Positive denominator of a reduced rational, as a machine integer.
pub fn denom_u64(q: &BigRational) -> u64 {
    q.denom().to_u64().expect("denominator fits in u64")
}

pub fn floor_q(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_q(q: &BigRational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn abs_q(q: &BigRational) -> BigRational {
    q.abs()
}
