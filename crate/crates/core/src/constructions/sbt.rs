use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;

use super::{Fill, Schedule, Segmented};
use crate::error::{Error, Result};
use crate::hat;
use crate::stream::PointStream;
use crate::subshift::{Matcher, SubshiftSpec};
use crate::symbol::{Symbol, Word};

/// Largest block length `M` the generator will materialize.
pub const MAX_BLOCK_LEN: usize = 1 << 24;

/// How the glued words `aba`, `cab`, `cac` were established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlueEvidence {
    /// Checked directly against the finite basis.
    Verified,
    /// The spec carries an extra oracle; the words pass the basis check and
    /// the rest is taken from the gluing property.
    Asserted,
}

/// Validated periodic seeds and the words derived from them.
#[derive(Debug, Clone)]
pub struct SbtSeed {
    z: PointStream,
    x: PointStream,
    y: PointStream,
    periods: [usize; 3],
    a: Word,
    b: Word,
    c: Word,
    multipliers: [usize; 3],
    block_len: usize,
    k: usize,
    theta: usize,
    glue: GlueEvidence,
    i0: Arc<[Symbol]>,
    i1: Arc<[Symbol]>,
    schedule: Schedule,
}

impl SbtSeed {
    pub fn z(&self) -> &PointStream {
        &self.z
    }

    pub fn x(&self) -> &PointStream {
        &self.x
    }

    pub fn y(&self) -> &PointStream {
        &self.y
    }

    /// Prime periods `(p, q, r)` of `z`, `x`, `y`.
    pub fn periods(&self) -> (usize, usize, usize) {
        let [p, q, r] = self.periods;
        (p, q, r)
    }

    pub fn a(&self) -> &Word {
        &self.a
    }

    pub fn b(&self) -> &Word {
        &self.b
    }

    pub fn c(&self) -> &Word {
        &self.c
    }

    /// Minimal `(A, B, C)` with `A|a| = B|ba| = C|ca|`.
    pub fn multipliers(&self) -> (usize, usize, usize) {
        let [a, b, c] = self.multipliers;
        (a, b, c)
    }

    /// `M = A|a|`.
    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// `K = max{L, N}`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Least offset where `(ba)^B` and `(ca)^C` differ.
    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn glue(&self) -> GlueEvidence {
        self.glue
    }

    /// `I_0 = (ba)^B` for bit 0, `I_1 = (ca)^C` for bit 1.
    pub fn block(&self, bit: u8) -> &[Symbol] {
        if bit == 0 {
            &self.i0
        } else {
            &self.i1
        }
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSeed(msg.into())
}

/// A word is primitive iff it does not occur in `ww` at an interior offset.
pub fn is_primitive(w: &[Symbol]) -> bool {
    let n = w.len();
    if n <= 1 {
        return n == 1;
    }
    let ww: Vec<Symbol> = w.iter().chain(w).copied().collect();
    !Matcher::new([w]).occurs_in(&ww[1..2 * n - 1])
}

fn prime_period(name: &str, s: &PointStream) -> Result<Word> {
    let w = s
        .period_word()
        .ok_or_else(|| invalid(format!("{name} is not a purely periodic stream")))?;
    if !is_primitive(&w) {
        return Err(invalid(format!("{name}: period word {w} is not primitive")));
    }
    Ok(w)
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// Validates `z`, `x`, `y` and derives the bounded-type construction data.
pub fn sbt_seed(spec: &SubshiftSpec, z: &PointStream, x: &PointStream, y: &PointStream) -> Result<SbtSeed> {
    let k = spec.bounded_type_constant()?;
    let zw = prime_period("z", z)?;
    let xw = prime_period("x", x)?;
    let yw = prime_period("y", y)?;
    let (p, q, r) = (zw.len(), xw.len(), yw.len());
    if BigUint::from(p) <= factorial(k) {
        return Err(invalid(format!("prime period p = {p} must exceed K! for K = {k}")));
    }
    if q <= p || r <= q {
        return Err(invalid(format!("periods must satisfy r > q > p, got p = {p}, q = {q}, r = {r}")));
    }
    let a = z.prefix(p);
    if x.prefix(p) != a || y.prefix(p) != a {
        return Err(invalid("x and y must agree with z on the first p symbols"));
    }
    for (name, w) in [("z", &zw), ("x", &xw), ("y", &yw)] {
        // every window of length < L of w^∞ occurs in this prefix
        let reps = (w.len() + spec.length_bound()).div_ceil(w.len()) + 1;
        if !spec.is_allowed(&w.power(reps)) {
            return Err(invalid(format!("{name} is not a point of the subshift")));
        }
    }
    let b = x.prefix(p * q).subword(p, p * q);
    let c = y.prefix(p * r).subword(p, p * r);
    if b.len() <= k || c.len() <= k {
        return Err(invalid(format!("|b| and |c| must exceed K = {k}")));
    }

    let glue = if spec.has_oracle() {
        GlueEvidence::Asserted
    } else {
        GlueEvidence::Verified
    };
    for (name, w) in [
        ("aba", a.concat(&b).concat(&a)),
        ("cab", c.concat(&a).concat(&b)),
        ("cac", c.concat(&a).concat(&c)),
    ] {
        let ok = match glue {
            GlueEvidence::Verified => spec.is_allowed(&w),
            GlueEvidence::Asserted => !spec.matcher().occurs_in(&w),
        };
        if !ok {
            return Err(invalid(format!("glued word {name} is not allowed")));
        }
    }

    let ba = b.concat(&a);
    let ca = c.concat(&a);
    let m = a.len().lcm(&ba.len()).lcm(&ca.len());
    if m > MAX_BLOCK_LEN {
        return Err(invalid(format!("block length M = {m} exceeds {MAX_BLOCK_LEN}")));
    }
    let multipliers = [m / a.len(), m / ba.len(), m / ca.len()];
    let i0 = ba.power(multipliers[1]);
    let i1 = ca.power(multipliers[2]);
    let theta = i0
        .iter()
        .zip(i1.iter())
        .position(|(u, v)| u != v)
        .ok_or_else(|| invalid("(ba)^B equals (ca)^C"))?;

    Ok(SbtSeed {
        z: z.clone(),
        x: x.clone(),
        y: y.clone(),
        periods: [p, q, r],
        a,
        b,
        c,
        multipliers,
        block_len: m,
        k,
        theta,
        glue,
        i0: Arc::from(i0.into_symbols()),
        i1: Arc::from(i1.into_symbols()),
        schedule: Schedule::sbt(m)?,
    })
}

/// A selector `α ∈ 2^ω`.
#[derive(Debug, Clone)]
pub struct SelectorStream {
    bits: PointStream,
}

impl SelectorStream {
    /// `pattern^∞`; the pattern must be a nonempty 0/1 list.
    pub fn pattern(bits: &[u8]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("selector bits must be 0 or 1".into()));
        }
        let w: Word = bits.iter().map(|&b| Symbol(b as u64)).collect();
        Ok(SelectorStream {
            bits: PointStream::periodic(&w)?,
        })
    }

    pub fn constant(bit: u8) -> Result<Self> {
        Self::pattern(&[bit])
    }

    pub fn random(seed: u64, stream: u64) -> Self {
        SelectorStream {
            bits: PointStream::random_binary(seed, stream, Symbol(0), Symbol(1)),
        }
    }

    pub fn bit(&self, i: u64) -> u8 {
        (self.bits.symbol_at(i).0 & 1) as u8
    }

    pub fn stream(&self) -> &PointStream {
        &self.bits
    }
}

/// How a selector is described in a seed configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectorSpec {
    Pattern(Vec<u8>),
    Random(u64),
}

impl SelectorSpec {
    /// `stream` picks the generator stream for `Random`.
    pub fn build(&self, stream: u64) -> Result<SelectorStream> {
        match self {
            SelectorSpec::Pattern(bits) => SelectorStream::pattern(bits),
            SelectorSpec::Random(seed) => Ok(SelectorStream::random(*seed, stream)),
        }
    }
}

impl fmt::Display for SelectorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectorSpec::Pattern(bits) => {
                write!(f, "pattern")?;
                for b in bits {
                    write!(f, " {b}")?;
                }
                Ok(())
            }
            SelectorSpec::Random(seed) => write!(f, "random {seed}"),
        }
    }
}

/// Seed configuration file:
///
/// ```text
/// # periodic words, one cycle each
/// z 0 1
/// x 0 1 2
/// y 0 1 2 3 4
/// alpha pattern 0 1 1
/// beta random 42
/// ```
///
/// `alpha` and `beta` are optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedConfig {
    pub z: Word,
    pub x: Word,
    pub y: Word,
    pub alpha: Option<SelectorSpec>,
    pub beta: Option<SelectorSpec>,
}

impl SeedConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let (mut z, mut x, mut y, mut alpha, mut beta) = (None, None, None, None, None);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let mut toks = line.split_whitespace();
            let key = toks.next().unwrap();
            let rest: Vec<&str> = toks.collect();
            match key {
                "z" | "x" | "y" => {
                    let w: Word = rest
                        .iter()
                        .map(|t| t.parse::<u64>().map(Symbol))
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| err(format!("bad symbol: {e}")))?;
                    if w.is_empty() {
                        return Err(err(format!("{key} needs at least one symbol")));
                    }
                    let slot = match key {
                        "z" => &mut z,
                        "x" => &mut x,
                        _ => &mut y,
                    };
                    if slot.replace(w).is_some() {
                        return Err(err(format!("{key} given twice")));
                    }
                }
                "alpha" | "beta" => {
                    let sel = match rest.split_first() {
                        Some((&"pattern", bits)) if !bits.is_empty() => SelectorSpec::Pattern(
                            bits.iter()
                                .map(|t| match *t {
                                    "0" => Ok(0),
                                    "1" => Ok(1),
                                    _ => Err(err(format!("selector bit {t:?} is not 0 or 1"))),
                                })
                                .collect::<Result<_>>()?,
                        ),
                        Some((&"random", [seed])) => {
                            SelectorSpec::Random(seed.parse().map_err(|e| err(format!("bad seed {seed:?}: {e}")))?)
                        }
                        _ => return Err(err(format!("expected `{key} pattern <bits>` or `{key} random <u64>`"))),
                    };
                    let slot = if key == "alpha" { &mut alpha } else { &mut beta };
                    if slot.replace(sel).is_some() {
                        return Err(err(format!("{key} given twice")));
                    }
                }
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        let need = |w: Option<Word>, k: &str| {
            w.ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing `{k}` line"),
            })
        };
        Ok(SeedConfig {
            z: need(z, "z")?,
            x: need(x, "x")?,
            y: need(y, "y")?,
            alpha,
            beta,
        })
    }

    pub fn seed(&self, spec: &SubshiftSpec) -> Result<SbtSeed> {
        sbt_seed(
            spec,
            &PointStream::periodic(&self.z)?,
            &PointStream::periodic(&self.x)?,
            &PointStream::periodic(&self.y)?,
        )
    }
}

/// `φ(α)`.
#[derive(Debug, Clone)]
pub struct SbtPoint {
    seed: SbtSeed,
    selector: SelectorStream,
    stream: PointStream,
}

impl SbtPoint {
    pub fn seed(&self) -> &SbtSeed {
        &self.seed
    }

    pub fn selector(&self) -> &SelectorStream {
        &self.selector
    }

    pub fn schedule(&self) -> &Schedule {
        self.seed.schedule()
    }

    pub fn stream(&self) -> &PointStream {
        &self.stream
    }

    /// The word repeated in slot `n`.
    pub fn slot_word(&self, n: u64) -> &[Symbol] {
        match hat::slot(n) {
            hat::HatSlot::Safe => self.seed.a.symbols(),
            hat::HatSlot::Base(k) => self.seed.block(self.selector.bit(k)),
        }
    }

    /// First disagreement with `other`, predicted from the selectors: if `i`
    /// is the least index below `cap` with `α_i ≠ β_i`, selector index `i`
    /// first appears in slot `n = block_start(i) + i`, and the points first
    /// differ at `m_{n-1} + θ`.
    pub fn predicted_witness(&self, other: &SbtPoint, cap: u64) -> Option<BigUint> {
        let i = (0..cap).find(|&i| self.selector.bit(i) != other.selector.bit(i))?;
        let n = hat::block_start(i) + i;
        Some(self.schedule().m_before(n as usize) + self.seed.theta)
    }
}

/// Builds `φ(α)`: slot `n` repeats `a` on the hat's safe positions and
/// `I_{α_k}` on the position carrying selector index `k`; every slot spans
/// `M s_n` symbols.
pub fn sbt_scrambled_point(seed: &SbtSeed, alpha: &SelectorStream) -> SbtPoint {
    let stream = PointStream::from_source(Segmented {
        head: Arc::from(Vec::new()),
        offset: BigUint::default(),
        schedule: seed.schedule.clone(),
        fill: Fill::Slots {
            a: Arc::from(seed.a.symbols()),
            blocks: [seed.i0.clone(), seed.i1.clone()],
            selector: alpha.bits.clone(),
        },
    });
    SbtPoint {
        seed: seed.clone(),
        selector: alpha.clone(),
        stream,
    }
}
