use std::sync::Arc;

use num_bigint::BigUint;

use super::{certify_two_symbol, Fill, Schedule, Segmented};
use crate::error::{Error, Result};
use crate::stream::{hat_encode, PointStream};
use crate::subshift::SubshiftSpec;
use crate::symbol::{Symbol, Word};

/// How far a base is scanned for its second distinct symbol.
pub const CERTIFY_CAP: u64 = 4096;

/// `{r_g, r_g + p}` with `r_g = 2(K + g)`.
pub fn base_alphabet(k: Symbol, g: u64, p: u64) -> Result<(Symbol, Symbol)> {
    let r = k
        .0
        .checked_add(g)
        .and_then(|v| v.checked_mul(2))
        .ok_or(Error::SymbolOverflow)?;
    let hi = r.checked_add(p).ok_or(Error::SymbolOverflow)?;
    Ok((Symbol(r), Symbol(hi)))
}

/// A member `w^{p,g} K u(x̂_0,0) u(x̂_1,1) ...` of the dense family.
#[derive(Debug, Clone)]
pub struct DensePoint {
    p: usize,
    g: u64,
    word: Word,
    safe: Symbol,
    base: PointStream,
    schedule: Schedule,
    stream: PointStream,
}

impl DensePoint {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    /// `w^{p,g}`.
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn safe_symbol(&self) -> Symbol {
        self.safe
    }

    pub fn base(&self) -> &PointStream {
        &self.base
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn stream(&self) -> &PointStream {
        &self.stream
    }

    /// `p + 1`: the head before segment 0.
    pub fn overhead(&self) -> u64 {
        self.p as u64 + 1
    }

    /// Exclusive end of segment `j`: `p + 1 + m_j`.
    pub fn segment_end(&self, j: usize) -> BigUint {
        self.schedule.m(j) + self.overhead()
    }
}

/// Builds the family member for the `g`-th allowed word of length `p`.
/// The base must take values in [`base_alphabet`] and be certified
/// non-constant within [`CERTIFY_CAP`] symbols.
pub fn dense_family_point(spec: &SubshiftSpec, p: usize, g: u64, base: &PointStream) -> Result<DensePoint> {
    if p == 0 {
        return Err(Error::InvalidParameter("word length p must be >= 1".into()));
    }
    let safe = spec.safe_symbol();
    if safe.0 == 0 {
        return Err(Error::DegenerateSafeSymbol);
    }
    let (lo, hi) = base_alphabet(safe, g, p as u64)?;
    certify_two_symbol(base, lo, hi, CERTIFY_CAP)?;
    let word = spec.allowed_word(p, g);
    let mut head = word.symbols().to_vec();
    head.push(safe);
    let schedule = Schedule::dense();
    let stream = PointStream::from_source(Segmented {
        head: Arc::from(head),
        offset: BigUint::from(p + 1),
        schedule: schedule.clone(),
        fill: Fill::Hat(hat_encode(base, safe)),
    });
    Ok(DensePoint {
        p,
        g,
        word,
        safe,
        base: base.clone(),
        schedule,
        stream,
    })
}
