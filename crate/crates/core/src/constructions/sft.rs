use std::sync::Arc;

use num_bigint::BigUint;

use super::{Fill, Schedule, Segmented};
use crate::error::{Error, Result};
use crate::stream::{hat_encode, PointStream};
use crate::subshift::SubshiftSpec;
use crate::symbol::{Symbol, Word};

/// `x̃ = w K u(x̂_0,0) u(x̂_1,1) ...` inside the cylinder `[w]`.
#[derive(Debug, Clone)]
pub struct SftPoint {
    word: Word,
    safe: Symbol,
    base: PointStream,
    schedule: Schedule,
    stream: PointStream,
}

impl SftPoint {
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

    /// Exclusive end of segment `j`, which is `m_j`.
    pub fn segment_end(&self, j: usize) -> BigUint {
        self.schedule.m(j)
    }
}

/// Builds the cylinder-set scrambled point for `w` and base `x`, using the
/// spec's safe symbol. Any base is accepted; the uncountable family uses
/// bases in `{K, K+1}^ω`.
pub fn sft_scrambled_point(spec: &SubshiftSpec, w: &Word, x: &PointStream) -> Result<SftPoint> {
    if !spec.is_allowed(w) {
        return Err(Error::NotAllowed { word: w.to_string() });
    }
    let safe = spec.safe_symbol();
    let schedule = Schedule::sft_cylinder(w.len() as u64);
    let mut head = w.symbols().to_vec();
    head.push(safe);
    let stream = PointStream::from_source(Segmented {
        head: Arc::from(head),
        offset: BigUint::default(),
        schedule: schedule.clone(),
        fill: Fill::Hat(hat_encode(x, safe)),
    });
    Ok(SftPoint {
        word: w.clone(),
        safe,
        base: x.clone(),
        schedule,
        stream,
    })
}
