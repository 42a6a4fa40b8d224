//! Lazy infinite points of ω^ω.
//!
//! A [`PointStream`] is an immutable, cheaply clonable description of an
//! infinite sequence. Every stream supports random access by index and
//! decomposes into a sequence of periodic [`Piece`]s, which is what the
//! sequential cursor and the run-length statistics engine consume.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::hat::{self, HatSlotBig};
use crate::symbol::{Symbol, Word};

/// A stretch of a stream that repeats `word` starting at `phase`, for `len`
/// symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub word: Arc<[Symbol]>,
    pub phase: usize,
    pub len: BigUint,
}

impl Piece {
    pub fn constant(s: Symbol, len: impl Into<BigUint>) -> Piece {
        Piece {
            word: Arc::from(vec![s]),
            phase: 0,
            len: len.into(),
        }
    }

    pub fn repeat(word: Arc<[Symbol]>, len: impl Into<BigUint>) -> Piece {
        debug_assert!(!word.is_empty());
        Piece {
            word,
            phase: 0,
            len: len.into(),
        }
    }

    /// A single copy of `word`.
    pub fn once(word: &[Symbol]) -> Piece {
        Piece::repeat(Arc::from(word), word.len() as u64)
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn symbol(&self, k: usize) -> Symbol {
        self.word[(self.phase + k) % self.word.len()]
    }
}

/// Periodic tails are emitted as pieces of `period << TAIL_SHIFT` symbols, far
/// beyond any index the schedules can reach.
const TAIL_SHIFT: u32 = 4096;

pub type Pieces<'a> = Box<dyn Iterator<Item = Piece> + Send + 'a>;

/// The provenance of a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamKind {
    Constant,
    Periodic,
    FileBacked,
    Pseudorandom,
    HatEncoded,
    Shifted,
    Scrambled,
}

/// A total, deterministic map from indices to symbols.
pub trait SymbolSource: fmt::Debug + Send + Sync {
    fn kind(&self) -> StreamKind;

    fn symbol_at_big(&self, i: &BigUint) -> Symbol;

    fn symbol_at(&self, i: u64) -> Symbol {
        self.symbol_at_big(&BigUint::from(i))
    }

    /// The stream as consecutive pieces starting at index 0. Never ends.
    fn pieces(&self) -> Pieces<'_>;

    /// The primitive-or-not period word of a purely periodic stream.
    fn period_word(&self) -> Option<Word> {
        None
    }

    /// `(base, k)` when this stream is `σ^k(base)`.
    fn shift_parts(&self) -> Option<(&PointStream, &BigUint)> {
        None
    }
}

#[derive(Clone)]
pub struct PointStream(Arc<dyn SymbolSource>);

impl fmt::Debug for PointStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Result of a longest-common-prefix query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lcp {
    /// The first index where the streams differ.
    DiffersAt(u64),
    /// The streams agree on the whole capped prefix.
    AtLeastCap,
}

/// `2^-exponent`, or "at most `2^-cap`" when the prefixes agree up to the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyadicDistance {
    Exact { exponent: u64 },
    AtLeastCap { cap: u64 },
}

impl DyadicDistance {
    pub fn exponent(&self) -> u64 {
        match *self {
            DyadicDistance::Exact { exponent } => exponent,
            DyadicDistance::AtLeastCap { cap } => cap,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, DyadicDistance::AtLeastCap { .. })
    }
}

impl PointStream {
    pub fn from_source<S: SymbolSource + 'static>(source: S) -> Self {
        PointStream(Arc::new(source))
    }

    pub fn constant(s: impl Into<Symbol>) -> Self {
        PointStream::from_source(Constant(s.into()))
    }

    /// `word^∞`. Fails on the empty word.
    pub fn periodic(word: &Word) -> Result<Self> {
        Self::eventually_periodic(&Word::empty(), word, StreamKind::Periodic)
    }

    /// `prefix cycle^∞`.
    pub fn eventually_periodic(prefix: &Word, cycle: &Word, kind: StreamKind) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidParameter("periodic stream needs a nonempty cycle".into()));
        }
        Ok(PointStream::from_source(EventuallyPeriodic {
            prefix: Arc::from(prefix.symbols()),
            cycle: Arc::from(cycle.symbols()),
            kind,
        }))
    }

    /// A pseudorandom stream over `{zero, one}` drawn from the ChaCha8 stream
    /// `(seed, stream)`.
    pub fn random_binary(seed: u64, stream: u64, zero: Symbol, one: Symbol) -> Self {
        PointStream::from_source(RandomBinary {
            seed,
            stream,
            symbols: [zero, one],
        })
    }

    pub fn kind(&self) -> StreamKind {
        self.0.kind()
    }

    pub fn source(&self) -> &dyn SymbolSource {
        &*self.0
    }

    /// If this is a purely periodic stream, its period word.
    pub fn period_word(&self) -> Option<Word> {
        self.0.period_word()
    }

    #[doc(hidden)]
    pub fn shift_parts(&self) -> Option<(&PointStream, &BigUint)> {
        self.0.shift_parts()
    }

    pub fn symbol_at(&self, i: u64) -> Symbol {
        self.0.symbol_at(i)
    }

    pub fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        self.0.symbol_at_big(i)
    }

    pub fn pieces(&self) -> Pieces<'_> {
        self.0.pieces()
    }

    pub fn cursor(&self) -> Cursor<'_> {
        Cursor::new(self.pieces())
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.cursor().take(n).collect()
    }

    /// `σ^k`.
    pub fn shift(&self, k: u64) -> PointStream {
        self.shift_big(&BigUint::from(k))
    }

    pub fn shift_big(&self, k: &BigUint) -> PointStream {
        if k.is_zero() {
            return self.clone();
        }
        if let Some((base, by)) = self.0.shift_parts() {
            return PointStream::from_source(Shifted {
                base: base.clone(),
                by: by + k,
            });
        }
        PointStream::from_source(Shifted {
            base: self.clone(),
            by: k.clone(),
        })
    }

    /// First index below `cap` where the streams differ.
    pub fn lcp_length(&self, other: &PointStream, cap: u64) -> Lcp {
        let mut a = self.cursor();
        let mut b = other.cursor();
        for i in 0..cap {
            if a.next() != b.next() {
                return Lcp::DiffersAt(i);
            }
        }
        Lcp::AtLeastCap
    }

    pub fn metric_distance(&self, other: &PointStream, cap: u64) -> DyadicDistance {
        match self.lcp_length(other, cap) {
            Lcp::DiffersAt(exponent) => DyadicDistance::Exact { exponent },
            Lcp::AtLeastCap => DyadicDistance::AtLeastCap { cap },
        }
    }

    /// Whether this point lies in the cylinder `[w]`.
    pub fn cylinder_contains(&self, w: &Word) -> bool {
        self.cursor().zip(w.iter()).all(|(a, &b)| a == b)
    }
}

impl SymbolSource for PointStream {
    fn kind(&self) -> StreamKind {
        self.0.kind()
    }

    fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        self.0.symbol_at_big(i)
    }

    fn symbol_at(&self, i: u64) -> Symbol {
        self.0.symbol_at(i)
    }

    fn pieces(&self) -> Pieces<'_> {
        self.0.pieces()
    }

    fn period_word(&self) -> Option<Word> {
        self.0.period_word()
    }

    fn shift_parts(&self) -> Option<(&PointStream, &BigUint)> {
        self.0.shift_parts()
    }
}

/// Sequential reader over a stream's pieces.
pub struct Cursor<'a> {
    pieces: Pieces<'a>,
    word: Arc<[Symbol]>,
    idx: usize,
    left: u64,
}

impl<'a> Cursor<'a> {
    pub fn new(pieces: Pieces<'a>) -> Self {
        Cursor {
            pieces,
            word: Arc::from(Vec::new()),
            idx: 0,
            left: 0,
        }
    }
}

impl Iterator for Cursor<'_> {
    type Item = Symbol;

    #[inline]
    fn next(&mut self) -> Option<Symbol> {
        while self.left == 0 {
            let p = self.pieces.next()?;
            self.left = p.len.to_u64().unwrap_or(u64::MAX);
            self.idx = p.phase % p.word.len();
            self.word = p.word;
        }
        let s = self.word[self.idx];
        self.idx += 1;
        if self.idx == self.word.len() {
            self.idx = 0;
        }
        self.left -= 1;
        Some(s)
    }
}

#[derive(Debug)]
struct Constant(Symbol);

impl SymbolSource for Constant {
    fn kind(&self) -> StreamKind {
        StreamKind::Constant
    }

    fn symbol_at_big(&self, _: &BigUint) -> Symbol {
        self.0
    }

    fn symbol_at(&self, _: u64) -> Symbol {
        self.0
    }

    fn period_word(&self) -> Option<Word> {
        Some(Word::new(vec![self.0]))
    }

    fn pieces(&self) -> Pieces<'_> {
        let s = self.0;
        Box::new(std::iter::repeat_with(move || Piece::constant(s, BigUint::one() << TAIL_SHIFT)))
    }
}

#[derive(Debug)]
struct EventuallyPeriodic {
    prefix: Arc<[Symbol]>,
    cycle: Arc<[Symbol]>,
    kind: StreamKind,
}

impl SymbolSource for EventuallyPeriodic {
    fn kind(&self) -> StreamKind {
        self.kind
    }

    fn symbol_at(&self, i: u64) -> Symbol {
        let p = self.prefix.len() as u64;
        if i < p {
            self.prefix[i as usize]
        } else {
            self.cycle[((i - p) % self.cycle.len() as u64) as usize]
        }
    }

    fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        match i.to_u64() {
            Some(i) => self.symbol_at(i),
            None => {
                let off = (i - self.prefix.len()) % self.cycle.len();
                self.cycle[off.to_usize().unwrap()]
            }
        }
    }

    fn period_word(&self) -> Option<Word> {
        (self.kind == StreamKind::Periodic && self.prefix.is_empty())
            .then(|| Word::new(self.cycle.to_vec()))
    }

    fn pieces(&self) -> Pieces<'_> {
        let head = (!self.prefix.is_empty()).then(|| Piece::once(&self.prefix));
        let cycle = self.cycle.clone();
        let len = BigUint::from(cycle.len()) << TAIL_SHIFT;
        Box::new(
            head.into_iter()
                .chain(std::iter::repeat_with(move || Piece::repeat(cycle.clone(), len.clone()))),
        )
    }
}

/// Bits come from 32-bit ChaCha8 words; bit `i` is bit `i % 32` of word
/// `i / 32`. Word positions are taken modulo 2^128.
#[derive(Debug)]
struct RandomBinary {
    seed: u64,
    stream: u64,
    symbols: [Symbol; 2],
}

impl RandomBinary {
    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    fn word_at(&self, word_pos: u128) -> u32 {
        let mut rng = self.rng();
        // set_word_pos counts 32-bit words
        rng.set_word_pos(word_pos);
        rng.next_u32()
    }
}

impl SymbolSource for RandomBinary {
    fn kind(&self) -> StreamKind {
        StreamKind::Pseudorandom
    }

    fn symbol_at(&self, i: u64) -> Symbol {
        let w = self.word_at((i / 32) as u128);
        self.symbols[((w >> (i % 32)) & 1) as usize]
    }

    fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        if let Some(i) = i.to_u64() {
            return self.symbol_at(i);
        }
        let (word, bit) = i.div_rem(&BigUint::from(32u32));
        let word = (word % (BigUint::one() << 128u32)).to_u128().unwrap();
        let w = self.word_at(word);
        self.symbols[((w >> bit.to_u32().unwrap()) & 1) as usize]
    }

    fn pieces(&self) -> Pieces<'_> {
        let mut rng = self.rng();
        let symbols = self.symbols;
        Box::new(std::iter::repeat_with(move || {
            let w = rng.next_u32();
            let word: Vec<Symbol> = (0..32).map(|b| symbols[((w >> b) & 1) as usize]).collect();
            Piece::repeat(Arc::from(word), 32u32)
        }))
    }
}

#[derive(Debug)]
struct Shifted {
    base: PointStream,
    by: BigUint,
}

impl SymbolSource for Shifted {
    fn kind(&self) -> StreamKind {
        StreamKind::Shifted
    }

    fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        self.base.symbol_at_big(&(i + &self.by))
    }

    fn symbol_at(&self, i: u64) -> Symbol {
        match self.by.to_u64().and_then(|b| b.checked_add(i)) {
            Some(j) => self.base.symbol_at(j),
            None => self.symbol_at_big(&BigUint::from(i)),
        }
    }

    fn pieces(&self) -> Pieces<'_> {
        skip_pieces(self.base.pieces(), self.by.clone())
    }

    fn shift_parts(&self) -> Option<(&PointStream, &BigUint)> {
        Some((&self.base, &self.by))
    }
}

/// Drops the first `skip` symbols of a piece sequence.
pub fn skip_pieces<'a>(mut pieces: Pieces<'a>, mut skip: BigUint) -> Pieces<'a> {
    while !skip.is_zero() {
        let Some(mut p) = pieces.next() else { break };
        if p.len <= skip {
            skip -= &p.len;
            continue;
        }
        let advance = (&skip % p.word.len()).to_usize().unwrap();
        p.phase = (p.phase + advance) % p.word.len();
        p.len -= &skip;
        return Box::new(std::iter::once(p).chain(pieces));
    }
    pieces
}

/// `x0 K x0 x1 K x0 x1 x2 K ...`.
#[derive(Debug)]
pub struct HatEncoding {
    base: PointStream,
    safe: Symbol,
}

impl HatEncoding {
    pub fn base(&self) -> &PointStream {
        &self.base
    }

    pub fn safe_symbol(&self) -> Symbol {
        self.safe
    }
}

impl SymbolSource for HatEncoding {
    fn kind(&self) -> StreamKind {
        StreamKind::HatEncoded
    }

    fn symbol_at(&self, i: u64) -> Symbol {
        match hat::slot(i) {
            hat::HatSlot::Safe => self.safe,
            hat::HatSlot::Base(k) => self.base.symbol_at(k),
        }
    }

    fn symbol_at_big(&self, i: &BigUint) -> Symbol {
        match hat::slot_big(i) {
            HatSlotBig::Safe => self.safe,
            HatSlotBig::Base(k) => self.base.symbol_at_big(&k),
        }
    }

    fn pieces(&self) -> Pieces<'_> {
        let mut base = self.base.cursor();
        let mut seen: Vec<Symbol> = Vec::new();
        let safe = self.safe;
        Box::new(std::iter::from_fn(move || {
            seen.push(base.next()?);
            let mut block = seen.clone();
            block.push(safe);
            Some(Piece::once(&block))
        }))
    }
}

/// The hat encoding of `x` with safe symbol `k`.
pub fn hat_encode(x: &PointStream, k: Symbol) -> PointStream {
    PointStream::from_source(HatEncoding {
        base: x.clone(),
        safe: k,
    })
}

/// Parses a prefix dump: whitespace-separated decimal symbols, `#` comment
/// lines. A `# cycle N` directive marks the last `N` symbols as the repeating
/// tail; otherwise the whole dump repeats.
pub fn parse_prefix_dump(text: &str) -> Result<(Word, Option<usize>)> {
    let mut symbols = Vec::new();
    let mut cycle = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("cycle") {
                let n = parts.next().and_then(|t| t.parse::<usize>().ok()).ok_or_else(|| {
                    Error::Parse {
                        line: lineno + 1,
                        message: "expected `# cycle <length>`".into(),
                    }
                })?;
                cycle = Some(n);
            }
            continue;
        }
        for tok in line.split_whitespace() {
            let v = tok.parse::<u64>().map_err(|e| Error::Parse {
                line: lineno + 1,
                message: format!("bad symbol {tok:?}: {e}"),
            })?;
            symbols.push(Symbol(v));
        }
    }
    Ok((Word::new(symbols), cycle))
}

impl PointStream {
    /// Loads a stream from a prefix dump.
    pub fn from_prefix_dump(text: &str) -> Result<PointStream> {
        let (word, cycle) = parse_prefix_dump(text)?;
        if word.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "prefix dump has no symbols".into(),
            });
        }
        let c = cycle.unwrap_or(word.len());
        if c == 0 || c > word.len() {
            return Err(Error::Parse {
                line: 1,
                message: format!("cycle length {c} out of range 1..={}", word.len()),
            });
        }
        let split = word.len() - c;
        PointStream::eventually_periodic(
            &word.subword(0, split),
            &word.subword(split, word.len()),
            StreamKind::FileBacked,
        )
    }

    /// Writes the first `n` symbols as a prefix dump, 32 symbols per line.
    pub fn write_prefix_dump<W: std::io::Write>(&self, n: u64, mut out: W) -> Result<()> {
        let mut col = 0;
        for s in self.cursor().take(n as usize) {
            if col > 0 {
                out.write_all(b" ")?;
            }
            write!(out, "{s}")?;
            col += 1;
            if col == 32 {
                out.write_all(b"\n")?;
                col = 0;
            }
        }
        if col > 0 {
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[u64]) -> Word {
        Word::from(v)
    }

    fn p(v: &[u64]) -> PointStream {
        PointStream::periodic(&w(v)).unwrap()
    }

    #[test]
    fn symbol_at_examples() {
        assert_eq!(PointStream::constant(0u64).symbol_at(7), Symbol(0));
        assert_eq!(p(&[0, 1]).symbol_at(3), Symbol(1));
        let hat = hat_encode(&PointStream::constant(0u64), Symbol(2));
        assert_eq!(hat.symbol_at(1), Symbol(2));
        assert_eq!(hat.prefix(9), w(&[0, 2, 0, 0, 2, 0, 0, 0, 2]));
    }

    #[test]
    fn shift_examples() {
        let c = PointStream::constant(0u64);
        assert_eq!(c.shift(5).prefix(20), c.prefix(20));
        assert_eq!(p(&[0, 1]).shift(1).prefix(10), p(&[1, 0]).prefix(10));
        let x = p(&[3, 1, 4, 1, 5]);
        assert_eq!(x.shift(0).prefix(30), x.prefix(30));
        assert_eq!(x.shift(2).shift(5).prefix(30), x.shift(7).prefix(30));
    }

    #[test]
    fn lcp_and_distance() {
        let x = PointStream::eventually_periodic(&w(&[0, 1, 2]), &w(&[9]), StreamKind::Periodic)
            .unwrap();
        let y = PointStream::eventually_periodic(&w(&[0, 1, 3]), &w(&[9]), StreamKind::Periodic)
            .unwrap();
        assert_eq!(x.lcp_length(&y, 10), Lcp::DiffersAt(2));
        assert_eq!(x.metric_distance(&y, 10), DyadicDistance::Exact { exponent: 2 });
        assert_eq!(x.lcp_length(&x, 16), Lcp::AtLeastCap);
        assert_eq!(x.metric_distance(&x, 20), DyadicDistance::AtLeastCap { cap: 20 });
        let z = PointStream::constant(5u64);
        assert_eq!(x.lcp_length(&z, 10), Lcp::DiffersAt(0));
        assert_eq!(x.metric_distance(&z, 1), DyadicDistance::Exact { exponent: 0 });
    }

    #[test]
    fn cylinders() {
        let x = p(&[0, 1]);
        assert!(x.cylinder_contains(&Word::empty()));
        assert!(x.cylinder_contains(&w(&[0, 1])));
        assert!(!p(&[0, 2]).cylinder_contains(&w(&[0, 1])));
    }

    #[test]
    fn periodic_rejects_empty() {
        assert!(PointStream::periodic(&Word::empty()).is_err());
    }

    #[test]
    fn random_access_matches_cursor() {
        let r = PointStream::random_binary(42, 7, Symbol(2), Symbol(3));
        let pre = r.prefix(500);
        for (i, s) in pre.iter().enumerate() {
            assert_eq!(r.symbol_at(i as u64), *s);
            assert_eq!(r.symbol_at_big(&BigUint::from(i)), *s);
        }
        assert!(pre.contains(&Symbol(2)) && pre.contains(&Symbol(3)));
        let other = PointStream::random_binary(42, 8, Symbol(2), Symbol(3));
        assert_ne!(other.prefix(64), r.prefix(64));
    }

    #[test]
    fn big_index_shift() {
        let x = p(&[0, 1, 2]);
        let k = BigUint::one() << 100u32;
        let shifted = x.shift_big(&k);
        let r = (&k % 3u32).to_u64().unwrap();
        assert_eq!(shifted.prefix(6), x.shift(r).prefix(6));
        assert_eq!(shifted.symbol_at(4), x.symbol_at(r + 4));
    }

    #[test]
    fn prefix_dump_round_trip() {
        let x = p(&[4, 10, 7]);
        let mut buf = Vec::new();
        x.write_prefix_dump(6, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "4 10 7 4 10 7\n");
        let y = PointStream::from_prefix_dump(&format!("# header\n{text}")).unwrap();
        assert_eq!(y.kind(), StreamKind::FileBacked);
        assert_eq!(y.prefix(12), x.prefix(12));

        let z = PointStream::from_prefix_dump("1 2 3\n# cycle 1\n").unwrap();
        assert_eq!(z.prefix(6), w(&[1, 2, 3, 3, 3, 3]));
        assert!(PointStream::from_prefix_dump("1 2 x").is_err());
        assert!(PointStream::from_prefix_dump("# only comments").is_err());
    }

    #[test]
    fn period_word_only_for_periodic() {
        assert_eq!(p(&[0, 1]).period_word(), Some(w(&[0, 1])));
        assert_eq!(PointStream::constant(3u64).period_word(), Some(w(&[3])));
        assert_eq!(p(&[0, 1]).shift(1).period_word(), None);
    }

    fn arb_stream() -> impl Strategy<Value = PointStream> {
        prop_oneof![
            (0u64..4).prop_map(PointStream::constant),
            prop::collection::vec(0u64..4, 1..6).prop_map(|v| p(&v)),
            (any::<u64>(), 0u64..4).prop_map(|(s, k)| PointStream::random_binary(
                s,
                k,
                Symbol(0),
                Symbol(1)
            )),
        ]
    }

    proptest! {
        #[test]
        fn distance_is_symmetric(x in arb_stream(), y in arb_stream(), cap in 1u64..64) {
            prop_assert_eq!(x.metric_distance(&y, cap), y.metric_distance(&x, cap));
            prop_assert!(x.metric_distance(&x, cap).is_capped());
        }

        #[test]
        fn ultrametric(x in arb_stream(), y in arb_stream(), z in arb_stream(), cap in 1u64..64) {
            let dxy = x.metric_distance(&y, cap);
            let dyz = y.metric_distance(&z, cap);
            let dxz = x.metric_distance(&z, cap);
            if !dxy.is_capped() && !dyz.is_capped() && !dxz.is_capped() {
                prop_assert!(dxz.exponent() >= dxy.exponent().min(dyz.exponent()));
            }
        }

        #[test]
        fn shift_semigroup(x in arb_stream(), a in 0u64..50, b in 0u64..50) {
            prop_assert_eq!(x.shift(a).shift(b).prefix(40), x.shift(a + b).prefix(40));
            for i in 0..10u64 {
                prop_assert_eq!(x.shift(a).symbol_at(i), x.symbol_at(a + i));
            }
        }

        #[test]
        fn lcp_below_cap_means_distance_threshold(x in arb_stream(), y in arb_stream(), t in 0u64..20) {
            // d(x,y) < 2^-t  <=>  lcp > t
            if let Lcp::DiffersAt(l) = x.lcp_length(&y, 64) {
                let d = x.metric_distance(&y, 64);
                prop_assert_eq!(d.exponent() > t, l > t);
            }
        }
    }
}
