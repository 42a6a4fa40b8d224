//! The explicit scrambled-point generators.
//!
//! All three constructions share one layout: a fixed head followed by
//! segments `j = 0, 1, 2, ...`, where segment `j` occupies
//! `[offset + m_{j-1}, offset + m_j)` and repeats a single word. Random access
//! resolves the segment by binary search over the schedule, so indices far
//! beyond `u64` are fine.

mod dense;
mod sbt;
mod schedule;
mod sft;
mod witness;

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use dense::{base_alphabet, dense_family_point, DensePoint};
pub use sbt::{is_primitive, sbt_scrambled_point, sbt_seed, GlueEvidence, SbtPoint, SbtSeed, SeedConfig, SelectorSpec, SelectorStream};
pub use schedule::{Schedule, ScheduleVariant};
pub use sft::{sft_scrambled_point, SftPoint};
pub use witness::{checkpoint_indices, certify_two_symbol, disagreement_witness, Checkpoints};

use crate::hat;
use crate::stream::{Piece, Pieces, PointStream, StreamKind, SymbolSource};
use crate::symbol::Symbol;

/// What fills segment `j`.
#[derive(Debug)]
enum Fill {
    /// `u(x̂_j, j)`: the hat symbol `j`, repeated.
    Hat(PointStream),
    /// Slot pattern `[α0] a [α0 α1] a ...`: the word `a` on safe slots and
    /// `I_{α_k}` on selector slots.
    Slots {
        a: Arc<[Symbol]>,
        blocks: [Arc<[Symbol]>; 2],
        selector: PointStream,
    },
}

impl Fill {
    fn word(&self, j: usize) -> Arc<[Symbol]> {
        match self {
            Fill::Hat(h) => Arc::from(vec![h.symbol_at(j as u64)]),
            Fill::Slots { a, blocks, selector } => match hat::slot(j as u64) {
                hat::HatSlot::Safe => a.clone(),
                hat::HatSlot::Base(k) => blocks[(selector.symbol_at(k).0 & 1) as usize].clone(),
            },
        }
    }
}

#[derive(Debug)]
struct Segmented {
    head: Arc<[Symbol]>,
    offset: BigUint,
    schedule: Schedule,
    fill: Fill,
}

impl SymbolSource for Segmented {
    fn kind(&self) -> StreamKind {
        StreamKind::Scrambled
    }

    fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        if let Some(k) = i.to_usize().filter(|&k| k < self.head.len()) {
            return self.head[k];
        }
        let c = i - &self.offset;
        let j = self
            .schedule
            .segment_containing(&c)
            .expect("head covers everything before the first segment");
        let within = c - self.schedule.m_before(j);
        let word = self.fill.word(j);
        word[(within % word.len()).to_usize().unwrap()]
    }

    fn pieces(&self) -> Pieces<'_> {
        let head = (!self.head.is_empty()).then(|| Piece::once(&self.head));
        Box::new(
            head.into_iter()
                .chain((0usize..).map(move |j| Piece::repeat(self.fill.word(j), self.schedule.segment_len(j)))),
        )
    }
}

/// A point produced by one of the three constructions.
#[derive(Debug, Clone)]
pub enum ScrambledPoint {
    Sft(SftPoint),
    Dense(DensePoint),
    Sbt(SbtPoint),
}

impl ScrambledPoint {
    pub fn stream(&self) -> &PointStream {
        match self {
            ScrambledPoint::Sft(p) => p.stream(),
            ScrambledPoint::Dense(p) => p.stream(),
            ScrambledPoint::Sbt(p) => p.stream(),
        }
    }

    pub fn schedule(&self) -> &Schedule {
        match self {
            ScrambledPoint::Sft(p) => p.schedule(),
            ScrambledPoint::Dense(p) => p.schedule(),
            ScrambledPoint::Sbt(p) => p.schedule(),
        }
    }

    pub fn variant_name(&self) -> &'static str {
        self.schedule().variant().name()
    }
}

impl From<SftPoint> for ScrambledPoint {
    fn from(p: SftPoint) -> Self {
        ScrambledPoint::Sft(p)
    }
}

impl From<DensePoint> for ScrambledPoint {
    fn from(p: DensePoint) -> Self {
        ScrambledPoint::Dense(p)
    }
}

impl From<SbtPoint> for ScrambledPoint {
    fn from(p: SbtPoint) -> Self {
        ScrambledPoint::Sbt(p)
    }
}
