//! The proofs' checkpoint bounds, in exact rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::constructions::{Schedule, ScheduleVariant};
use crate::error::{Error, Result};

fn q(v: impl Into<BigUint>) -> BigRational {
    BigRational::from_integer(BigInt::from(v.into()))
}

fn pow2(k: usize) -> BigRational {
    q(BigUint::one() << k)
}

fn expect(sched: &Schedule, name: &'static str) -> Result<()> {
    let found = sched.variant().name();
    if found != name {
        return Err(Error::VariantMismatch { expected: name, found });
    }
    Ok(())
}

fn positive(k: usize, what: &str) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be >= 1")));
    }
    Ok(())
}

/// `2^ν / (2^ν + 1) − (q + 1) / m_ν`.
pub fn bound_sft_lower(nu: usize, window: u64, sched: &Schedule) -> Result<BigRational> {
    expect(sched, "sft_cylinder")?;
    positive(nu, "ν")?;
    let p = pow2(nu);
    Ok(&p / (&p + q(1u32)) - q(window + 1) / q(sched.m(nu)))
}

/// `1 / (1 + 2^μ) + (1 + |w|) / m_μ`.
pub fn bound_sft_upper(mu: usize, w_len: u64, sched: &Schedule) -> Result<BigRational> {
    expect(sched, "sft_cylinder")?;
    positive(mu, "μ")?;
    Ok(q(1u32) / (q(1u32) + pow2(mu)) + q(1 + w_len) / q(sched.m(mu)))
}

/// `2^ν / (1 + 2^ν + (p + 1) / m_{ν−1}) − (t + 1 + a) / (p + 1 + m_ν)`.
pub fn bound_dense_lower(nu: usize, window: u64, p: u64, a_shift: u64, sched: &Schedule) -> Result<BigRational> {
    expect(sched, "dense")?;
    positive(nu, "ν")?;
    let two = pow2(nu);
    let head = q(p + 1);
    let first = &two / (q(1u32) + &two + &head / q(sched.m(nu - 1)));
    Ok(first - q(window + 1 + a_shift) / (head + q(sched.m(nu))))
}

/// `1 / (1 + 2^μ + (p + 1) / m_{μ−1}) + (a + p + 1) / (p + 1 + m_μ)`.
pub fn bound_dense_upper(mu: usize, p: u64, a_shift: u64, sched: &Schedule) -> Result<BigRational> {
    expect(sched, "dense")?;
    positive(mu, "μ")?;
    let head = q(p + 1);
    let first = q(1u32) / (q(1u32) + pow2(mu) + &head / q(sched.m(mu - 1)));
    Ok(first + q(a_shift + p + 1) / (head + q(sched.m(mu))))
}

fn block_len(sched: &Schedule) -> Result<BigRational> {
    match sched.variant() {
        ScheduleVariant::Sbt { block_len } => Ok(q(block_len.clone())),
        other => Err(Error::VariantMismatch {
            expected: "sbt",
            found: other.name(),
        }),
    }
}

/// `2^ν M² / (1 + 2^ν M²) − (R + 1) / m_ν`.
pub fn bound_sbt_lower(nu: usize, window: u64, sched: &Schedule) -> Result<BigRational> {
    let m = block_len(sched)?;
    positive(nu, "ν")?;
    let top = pow2(nu) * &m * &m;
    Ok(&top / (q(1u32) + &top) - q(window + 1) / q(sched.m(nu)))
}

/// `1 / (1 + 2^μ) + M / m_μ`.
pub fn bound_sbt_upper(mu: usize, sched: &Schedule) -> Result<BigRational> {
    let m = block_len(sched)?;
    positive(mu, "μ")?;
    Ok(q(1u32) / (q(1u32) + pow2(mu)) + m / q(sched.m(mu)))
}
