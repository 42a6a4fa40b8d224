//! Index arithmetic for the hat encoding `x0 K x0 x1 K x0 x1 x2 K ...`.
//!
//! Block `j` (0-based) is `x0 .. xj` followed by the safe symbol, so it has
//! length `j + 2` and starts at `j(j+3)/2`. The safe symbol of block `j` sits
//! at `(j+1)(j+4)/2 - 1`.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::ToPrimitive;

/// What a hat position carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HatSlot {
    /// The safe symbol closing a block.
    Safe,
    /// The base symbol with this index.
    Base(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HatSlotBig {
    Safe,
    Base(BigUint),
}

pub fn block_start(j: u64) -> u64 {
    j * (j + 3) / 2
}

pub fn safe_position(j: u64) -> u64 {
    (j + 1) * (j + 4) / 2 - 1
}

/// Block index containing hat position `n`.
pub fn block_of(n: u64) -> u64 {
    let disc = 9u128 + 8 * n as u128;
    let mut j = ((disc.sqrt() - 3) / 2) as u64;
    while block_start(j) > n {
        j -= 1;
    }
    while block_start(j + 1) <= n {
        j += 1;
    }
    j
}

pub fn slot(n: u64) -> HatSlot {
    let j = block_of(n);
    let offset = n - block_start(j);
    if offset == j + 1 {
        HatSlot::Safe
    } else {
        HatSlot::Base(offset)
    }
}

pub fn slot_big(n: &BigUint) -> HatSlotBig {
    if let Some(small) = n.to_u64().filter(|&v| v < u64::MAX / 16) {
        return match slot(small) {
            HatSlot::Safe => HatSlotBig::Safe,
            HatSlot::Base(k) => HatSlotBig::Base(BigUint::from(k)),
        };
    }
    let start = |j: &BigUint| j * (j + 3u32) / 2u32;
    let disc: BigUint = n * 8u32 + 9u32;
    let mut j: BigUint = (disc.sqrt() - 3u32) / 2u32;
    while &start(&j) > n {
        j -= 1u32;
    }
    while &start(&(&j + 1u32)) <= n {
        j += 1u32;
    }
    let offset = n - start(&j);
    if offset == &j + 1u32 {
        HatSlotBig::Safe
    } else {
        HatSlotBig::Base(offset)
    }
}

/// Iterator over hat positions in order.
pub fn slots() -> impl Iterator<Item = HatSlot> {
    (0u64..).flat_map(|j| (0..=j).map(HatSlot::Base).chain(std::iter::once(HatSlot::Safe)))
}
