//! The block-length schedules `{s_j}`, `{m_j}` driving the constructions.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleVariant {
    /// `m_j = 1 + |w| + Σ s_n`, `s_{j+1} = 2^{j+1} m_j`.
    SftCylinder { prefix_len: u64 },
    /// `m_j = Σ s_n`, `s_{j+1} = 2^{j+1} m_j`.
    Dense,
    /// `m_j = Σ M s_n`, `s_{j+1} = 2^{j+1} M m_j`.
    Sbt { block_len: BigUint },
}

impl ScheduleVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleVariant::SftCylinder { .. } => "sft_cylinder",
            ScheduleVariant::Dense => "dense",
            ScheduleVariant::Sbt { .. } => "sbt",
        }
    }
}

#[derive(Debug, Default)]
struct Values {
    s: Vec<BigUint>,
    m: Vec<BigUint>,
}

struct Inner {
    variant: ScheduleVariant,
    /// `m_{-1}`: where segment 0 starts.
    origin: BigUint,
    /// 1, or `M` for the bounded-type schedule.
    factor: BigUint,
    values: RwLock<Values>,
}

/// Exact, lazily extended schedule. Clones share the cache.
#[derive(Clone)]
pub struct Schedule(Arc<Inner>);

impl fmt::Debug for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Schedule").field("variant", &self.0.variant).finish()
    }
}

impl Schedule {
    pub fn new(variant: ScheduleVariant) -> Result<Self> {
        let (origin, factor) = match &variant {
            ScheduleVariant::SftCylinder { prefix_len } => (BigUint::from(1 + prefix_len), BigUint::one()),
            ScheduleVariant::Dense => (BigUint::zero(), BigUint::one()),
            ScheduleVariant::Sbt { block_len } => {
                if block_len.is_zero() {
                    return Err(Error::InvalidParameter("block length M must be >= 1".into()));
                }
                (BigUint::zero(), block_len.clone())
            }
        };
        Ok(Schedule(Arc::new(Inner {
            variant,
            origin,
            factor,
            values: RwLock::new(Values::default()),
        })))
    }

    pub fn sft_cylinder(prefix_len: u64) -> Self {
        Schedule::new(ScheduleVariant::SftCylinder { prefix_len }).unwrap()
    }

    pub fn dense() -> Self {
        Schedule::new(ScheduleVariant::Dense).unwrap()
    }

    pub fn sbt(block_len: impl Into<BigUint>) -> Result<Self> {
        Schedule::new(ScheduleVariant::Sbt {
            block_len: block_len.into(),
        })
    }

    pub fn variant(&self) -> &ScheduleVariant {
        &self.0.variant
    }

    /// 1, or `M` for the bounded-type variant.
    pub fn factor(&self) -> &BigUint {
        &self.0.factor
    }

    fn ensure(&self, j: usize) {
        if self.0.values.read().unwrap().m.len() > j {
            return;
        }
        let mut v = self.0.values.write().unwrap();
        while v.m.len() <= j {
            let k = v.m.len();
            let s = if k == 0 {
                BigUint::one()
            } else {
                (&self.0.factor * &v.m[k - 1]) << k
            };
            let prev = if k == 0 { self.0.origin.clone() } else { v.m[k - 1].clone() };
            let m = prev + &self.0.factor * &s;
            v.s.push(s);
            v.m.push(m);
        }
    }

    pub fn s(&self, j: usize) -> BigUint {
        self.ensure(j);
        self.0.values.read().unwrap().s[j].clone()
    }

    pub fn m(&self, j: usize) -> BigUint {
        self.ensure(j);
        self.0.values.read().unwrap().m[j].clone()
    }

    /// `m_{j-1}`, with `m_{-1}` the segment origin.
    pub fn m_before(&self, j: usize) -> BigUint {
        if j == 0 {
            self.0.origin.clone()
        } else {
            self.m(j - 1)
        }
    }

    pub fn origin(&self) -> &BigUint {
        &self.0.origin
    }

    /// Number of symbols in segment `j`: `s_j`, or `M s_j`.
    pub fn segment_len(&self, j: usize) -> BigUint {
        &self.0.factor * self.s(j)
    }

    /// The segment holding offset `i`, i.e. the least `j` with `m_j > i`.
    /// `None` when `i` lies before the origin.
    pub fn segment_containing(&self, i: &BigUint) -> Option<usize> {
        if i < &self.0.origin {
            return None;
        }
        let mut hi = 1;
        while &self.m(hi) <= i {
            hi *= 2;
        }
        let v = self.0.values.read().unwrap();
        Some(v.m[..=hi].partition_point(|m| m <= i))
    }

    /// Same as [`Schedule::segment_containing`] for small offsets.
    pub fn segment_containing_u64(&self, i: u64) -> Option<usize> {
        self.segment_containing(&BigUint::from(i))
    }
}
