//! Exact `ξ` over prefixes far beyond any sequential scan.
//!
//! Both streams are consumed as periodic pieces. Wherever the current pieces
//! overlap, the equality indicator `e_i = [x_i = y_i]` is periodic with
//! period `lcm` of the two piece periods, so a chunk of length `ℓ` is one
//! pattern repeated `ℓ / L` times plus a remainder. `ξ` is then a sum over
//! maximal runs of ones in `e[0, n + t - 1)`: a run of length `r` holds
//! `max(0, r - t + 1)` agreeing windows. Runs are accumulated per pattern
//! without expanding repetitions, so the cost depends on the number of pieces
//! and their periods, not on `n`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::xi::XiQuery;
use crate::stream::{Pieces, PointStream};
use crate::symbol::Symbol;

/// The engine compared more symbols than its budget allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverBudget {
    pub reads: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunsOutcome {
    pub count: BigUint,
    /// Symbol comparisons actually performed.
    pub reads: u64,
}

struct Side<'a> {
    pieces: Pieces<'a>,
    word: Arc<[Symbol]>,
    phase: usize,
    left: BigUint,
}

impl<'a> Side<'a> {
    fn new(pieces: Pieces<'a>) -> Self {
        Side {
            pieces,
            word: Arc::from(Vec::new()),
            phase: 0,
            left: BigUint::zero(),
        }
    }

    fn fill(&mut self) {
        while self.left.is_zero() {
            let p = self.pieces.next().expect("streams are infinite");
            self.phase = p.phase % p.word.len();
            self.word = p.word;
            self.left = p.len;
        }
    }

    fn advance(&mut self, by: &BigUint) {
        let k = (by % self.word.len()).to_usize().unwrap();
        self.phase = (self.phase + k) % self.word.len();
        self.left -= by;
    }

    fn at(&self, k: usize) -> Symbol {
        self.word[(self.phase + k) % self.word.len()]
    }
}

/// Walks the two streams chunk by chunk, handing each chunk's equality
/// pattern and repetition count to `visit` until `total` symbols are covered
/// or `visit` returns `false`.
fn walk(
    x: &PointStream,
    y: &PointStream,
    total: &BigUint,
    budget: u64,
    mut visit: impl FnMut(&BigUint, &[bool], &BigUint, usize) -> bool,
) -> Result<u64, OverBudget> {
    let mut a = Side::new(x.pieces());
    let mut b = Side::new(y.pieces());
    let mut done = BigUint::zero();
    let mut reads = 0u64;
    let mut pattern = Vec::new();
    while &done < total {
        a.fill();
        b.fill();
        let remaining = total - &done;
        let len = a.left.clone().min(b.left.clone()).min(remaining);
        let period = a.word.len().lcm(&b.word.len());
        let plen = match len.to_usize() {
            Some(l) => l.min(period),
            None => period,
        };
        reads = reads.saturating_add(plen as u64);
        if reads > budget {
            return Err(OverBudget { reads });
        }
        pattern.clear();
        pattern.extend((0..plen).map(|k| a.at(k) == b.at(k)));
        let (reps, rem) = len.div_rem(&BigUint::from(plen));
        if !visit(&done, &pattern, &reps, rem.to_usize().unwrap()) {
            break;
        }
        a.advance(&len);
        b.advance(&len);
        done += len;
    }
    Ok(reads)
}

struct Runs {
    t: u64,
    open: BigUint,
    total: BigUint,
}

impl Runs {
    fn windows(&self, run: &BigUint) -> BigUint {
        if run >= &BigUint::from(self.t) {
            run + 1u32 - self.t
        } else {
            BigUint::zero()
        }
    }

    fn close(&mut self, extra: u64) {
        let run = std::mem::take(&mut self.open) + extra;
        self.total += self.windows(&run);
    }

    /// Feeds `e` repeated `reps` times.
    fn feed(&mut self, e: &[bool], reps: &BigUint) {
        if e.is_empty() || reps.is_zero() {
            return;
        }
        let Some(first_false) = e.iter().position(|&v| !v) else {
            self.open += reps * e.len();
            return;
        };
        let last_false = e.iter().rposition(|&v| !v).unwrap();
        let lead = first_false as u64;
        let trail = (e.len() - 1 - last_false) as u64;
        let mut interior = 0u64;
        let mut run = 0u64;
        for &v in &e[first_false..=last_false] {
            if v {
                run += 1;
            } else {
                interior += run.saturating_sub(self.t - 1);
                run = 0;
            }
        }
        self.close(lead);
        self.total += reps * interior;
        if reps > &BigUint::one() {
            let junction = self.windows(&BigUint::from(trail + lead));
            self.total += (reps - 1u32) * junction;
        }
        self.open = BigUint::from(trail);
    }
}

/// `ξ` computed from runs. Matches [`crate::stats::xi_count`] exactly.
pub fn xi_count_runs(x: &PointStream, y: &PointStream, query: &XiQuery, budget: u64) -> Result<RunsOutcome, OverBudget> {
    let t = query.agreement_len();
    if t == 0 || query.n.is_zero() {
        return Ok(RunsOutcome {
            count: query.n.clone(),
            reads: 0,
        });
    }
    let mut runs = Runs {
        t,
        open: BigUint::zero(),
        total: BigUint::zero(),
    };
    let span = &query.n + t - 1u32;
    let reads = walk(x, y, &span, budget, |_, e, reps, rem| {
        runs.feed(e, reps);
        runs.feed(&e[..rem], &BigUint::one());
        true
    })?;
    runs.close(0);
    Ok(RunsOutcome {
        count: runs.total,
        reads,
    })
}

/// Least index below `cap` where the streams differ.
pub fn first_disagreement_runs(
    x: &PointStream,
    y: &PointStream,
    cap: &BigUint,
    budget: u64,
) -> Result<Option<BigUint>, OverBudget> {
    let mut found = None;
    walk(x, y, cap, budget, |start, e, reps, rem| {
        let scan = if reps.is_zero() { &e[..rem] } else { e };
        match scan.iter().position(|&v| !v) {
            Some(k) => {
                found = Some(start + k);
                false
            }
            None => true,
        }
    })?;
    Ok(found)
}
