pub mod constructions;
pub mod error;
pub mod hat;
pub mod stats;
pub mod stream;
pub mod subshift;
pub mod symbol;

pub use constructions::{Schedule, ScheduleVariant, ScrambledPoint};
pub use error::{Error, Result};
pub use stream::{hat_encode, DyadicDistance, Lcp, Piece, PointStream, StreamKind, SymbolSource};
pub use subshift::{ForbiddenBasis, GluingVerdict, SubshiftSpec};
pub use symbol::{Symbol, Word};

// Book chapters are compiled as doctests so their snippets stay in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/streams.md")]
    mod streams {}
    #[doc = include_str!("../../../book/src/subshifts.md")]
    mod subshifts {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/checkpoints.md")]
    mod checkpoints {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
