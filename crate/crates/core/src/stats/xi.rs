use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::stream::PointStream;

/// How `ε = 2^(-t)` is compared against the metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredicateMode {
    /// `x_[i,i+t) = y_[i,i+t)`, i.e. `d ≤ 2^(-t)`.
    #[default]
    Window,
    /// `d < 2^(-t)`, i.e. agreement on `t + 1` symbols.
    Strict,
}

impl FromStr for PredicateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "window" => Ok(PredicateMode::Window),
            "strict" => Ok(PredicateMode::Strict),
            _ => Err(Error::InvalidParameter(format!("unknown predicate {s:?}"))),
        }
    }
}

impl fmt::Display for PredicateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredicateMode::Window => "window",
            PredicateMode::Strict => "strict",
        })
    }
}

/// `ξ(x, y, 2^(-t), n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiQuery {
    pub window: u64,
    pub n: BigUint,
    pub mode: PredicateMode,
}

impl XiQuery {
    pub fn new(window: u64, n: impl Into<BigUint>) -> Self {
        XiQuery {
            window,
            n: n.into(),
            mode: PredicateMode::Window,
        }
    }

    pub fn strict(mut self) -> Self {
        self.mode = PredicateMode::Strict;
        self
    }

    /// Number of symbols that must agree from each counted index.
    pub fn agreement_len(&self) -> u64 {
        match self.mode {
            PredicateMode::Window => self.window,
            PredicateMode::Strict => self.window + 1,
        }
    }
}

/// Streaming count: one pass over the first `n + t - 1` symbols of each
/// stream, constant memory.
///
/// Panics if `n` does not fit in `u64`; such prefixes are out of reach for a
/// sequential scan anyway (see [`crate::stats::xi_count_runs`]).
pub fn xi_count(x: &PointStream, y: &PointStream, query: &XiQuery) -> BigUint {
    let n = query.n.to_u64().expect("streaming prefix length exceeds u64");
    let t = query.agreement_len();
    if t == 0 || n == 0 {
        return BigUint::from(n);
    }
    let mut run = 0u64;
    let mut count = 0u64;
    let len = n + t - 1;
    for (a, b) in x.cursor().zip(y.cursor()).take(len as usize) {
        if a == b {
            run += 1;
            if run >= t {
                count += 1;
            }
        } else {
            run = 0;
        }
    }
    BigUint::from(count)
}

/// `count / n` in lowest terms.
pub fn xi_ratio(count: &BigUint, n: &BigUint) -> Result<BigRational> {
    if n.is_zero() {
        return Err(Error::ZeroLength);
    }
    Ok(BigRational::new(BigInt::from(count.clone()), BigInt::from(n.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryPoint {
    pub n: u64,
    pub count: BigUint,
    pub ratio: BigRational,
}

/// `ξ` at each of the increasing lengths `ns`, in a single pass.
pub fn xi_trajectory(
    x: &PointStream,
    y: &PointStream,
    window: u64,
    mode: PredicateMode,
    ns: &[u64],
) -> Result<Vec<TrajectoryPoint>> {
    if ns.first() == Some(&0) || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("lengths must be positive and strictly increasing".into()));
    }
    let t = XiQuery { window, n: BigUint::zero(), mode }.agreement_len();
    let point = |n: u64, count: u64| TrajectoryPoint {
        n,
        count: BigUint::from(count),
        ratio: BigRational::new(BigInt::from(count), BigInt::from(n)),
    };
    if t == 0 {
        return Ok(ns.iter().map(|&n| point(n, n)).collect());
    }
    let Some(&last) = ns.last() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(ns.len());
    let mut next = ns.iter().copied().peekable();
    let (mut run, mut count) = (0u64, 0u64);
    // after reading symbol k, every window starting at or before k + 1 - t is counted
    for (k, (a, b)) in x.cursor().zip(y.cursor()).take((last + t - 1) as usize).enumerate() {
        if a == b {
            run += 1;
            if run >= t {
                count += 1;
            }
        } else {
            run = 0;
        }
        while let Some(&n) = next.peek() {
            if k as u64 + 2 == n + t {
                out.push(point(n, count));
                next.next();
            } else {
                break;
            }
        }
    }
    Ok(out)
}
