//! Subshifts given by a basis of forbidden words.

mod enumerate;
pub mod matcher;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use enumerate::AllowedWords;
pub use matcher::{MatchState, Matcher};

use crate::error::{Error, Result};
use crate::stream::PointStream;
use crate::symbol::{Symbol, Word};

/// A finite set of nonempty forbidden words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenBasis {
    words: Vec<Word>,
    max_word_length: usize,
    max_symbol: Option<Symbol>,
}

impl ForbiddenBasis {
    pub fn empty() -> Self {
        ForbiddenBasis {
            words: Vec::new(),
            max_word_length: 0,
            max_symbol: None,
        }
    }

    /// Duplicates are dropped; redundant words (containing another basis
    /// word) are kept.
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for w in words {
            if w.is_empty() {
                return Err(Error::InvalidParameter("forbidden words must be nonempty".into()));
            }
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
        let max_word_length = out.iter().map(|w| w.len()).max().unwrap_or(0);
        let max_symbol = out.iter().filter_map(|w| w.max_symbol()).max();
        Ok(ForbiddenBasis {
            words: out,
            max_word_length,
            max_symbol,
        })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn max_symbol(&self) -> Option<Symbol> {
        self.max_symbol
    }

    /// `K = 1 + max symbol`, or 0 for the empty basis. No symbol `>= K`
    /// occurs in any basis word.
    pub fn safe_symbol(&self) -> Symbol {
        self.max_symbol.map_or(Symbol(0), |m| Symbol(m.0 + 1))
    }
}

/// Outcome of checking one instance of the gluing property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GluingVerdict {
    Holds,
    Violated,
    Inapplicable,
}

pub type AllowedOracle = Arc<dyn Fn(&[Symbol]) -> bool + Send + Sync>;

/// A subshift: a forbidden basis, an optional gluing constant `N`, and an
/// optional extra allowed-word oracle.
#[derive(Clone)]
pub struct SubshiftSpec {
    basis: ForbiddenBasis,
    gluing: Option<usize>,
    oracle: Option<AllowedOracle>,
    description: String,
    matcher: Arc<Matcher>,
}

impl fmt::Debug for SubshiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubshiftSpec")
            .field("basis", &self.basis)
            .field("gluing", &self.gluing)
            .field("oracle", &self.oracle.is_some())
            .field("description", &self.description)
            .finish()
    }
}

impl SubshiftSpec {
    pub fn new(basis: ForbiddenBasis) -> Self {
        let matcher = Arc::new(Matcher::new(basis.words().iter().map(|w| w.symbols())));
        SubshiftSpec {
            basis,
            gluing: None,
            oracle: None,
            description: String::new(),
            matcher,
        }
    }

    /// The full shift ω^ω.
    pub fn full_shift() -> Self {
        SubshiftSpec::new(ForbiddenBasis::empty()).with_description("full shift")
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Result<Self> {
        Ok(SubshiftSpec::new(ForbiddenBasis::new(words)?))
    }

    pub fn with_gluing_constant(mut self, n: usize) -> Self {
        self.gluing = Some(n);
        self
    }

    pub fn with_description(mut self, d: impl Into<String>) -> Self {
        self.description = d.into();
        self
    }

    /// Adds a membership oracle consulted after the basis check. Words the
    /// oracle rejects are forbidden.
    pub fn with_oracle(mut self, oracle: AllowedOracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn basis(&self) -> &ForbiddenBasis {
        &self.basis
    }

    pub fn gluing_constant(&self) -> Option<usize> {
        self.gluing
    }

    pub fn has_oracle(&self) -> bool {
        self.oracle.is_some()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn safe_symbol(&self) -> Symbol {
        self.basis.safe_symbol()
    }

    /// Least `L` with `|w| < L` for every basis word.
    pub fn length_bound(&self) -> usize {
        self.basis.max_word_length + 1
    }

    /// `max{L, N}`, the constant driving the bounded-type construction.
    pub fn bounded_type_constant(&self) -> Result<usize> {
        let n = self.gluing.ok_or(Error::MissingGluingConstant)?;
        Ok(self.length_bound().max(n))
    }

    pub fn matcher(&self) -> &Matcher {
        &self.matcher
    }

    pub fn is_allowed(&self, w: &[Symbol]) -> bool {
        if w.is_empty() {
            return true;
        }
        if self.matcher.occurs_in(w) {
            return false;
        }
        self.oracle.as_ref().is_none_or(|o| o(w))
    }

    /// Checks that no basis word starts before index `n` of `x`. Reads
    /// `n + L - 1` symbols, constant memory.
    pub fn prefix_in_shift(&self, x: &PointStream, n: u64) -> bool {
        if n == 0 || self.basis.is_empty() {
            return true;
        }
        let reach = n + self.basis.max_word_length as u64 - 1;
        let mut st = self.matcher.start();
        for (e, s) in x.cursor().take(reach as usize).enumerate() {
            let len = self.matcher.step(&mut st, s) as u64;
            if len > 0 && e as u64 + 1 - len < n {
                return false;
            }
        }
        true
    }

    pub fn verify_gluing_instance(&self, a: &Word, b: &Word, c: &Word) -> Result<GluingVerdict> {
        let n = self.gluing.ok_or(Error::MissingGluingConstant)?;
        if b.len() < n || !self.is_allowed(&a.concat(b)) || !self.is_allowed(&b.concat(c)) {
            return Ok(GluingVerdict::Inapplicable);
        }
        Ok(if self.is_allowed(&a.concat(b).concat(c)) {
            GluingVerdict::Holds
        } else {
            GluingVerdict::Violated
        })
    }

    /// Allowed words of length `p` in canonical order (maximum symbol, then
    /// lexicographic). Infinite.
    pub fn allowed_words(&self, p: usize) -> AllowedWords<'_> {
        AllowedWords::new(self, p)
    }

    /// The `g`-th allowed word of length `p`.
    pub fn allowed_word(&self, p: usize, g: u64) -> Word {
        self.allowed_words(p).nth(g as usize).expect("allowed words of each length are infinite")
    }

    /// Position of `w` in the canonical enumeration of its length, or `None`
    /// when `w` is not allowed.
    pub fn allowed_word_index(&self, w: &Word) -> Option<u64> {
        if w.is_empty() || !self.is_allowed(w) {
            return None;
        }
        self.allowed_words(w.len()).position(|v| &v == w).map(|i| i as u64)
    }

    /// Parses the basis file format: one forbidden word per line, decimal
    /// symbols separated by single spaces, `#` comments and blank lines
    /// ignored, optional header `N <natural>` before the first word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        let mut gluing = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            let line_no = lineno + 1;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("N ") {
                if !words.is_empty() || gluing.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "`N` header must precede all words and appear once".into(),
                    });
                }
                let n = rest.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad gluing constant {rest:?}: {e}"),
                })?;
                gluing = Some(n);
                continue;
            }
            let mut syms = Vec::new();
            for tok in line.split(' ') {
                let v = tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad symbol {tok:?} (symbols are decimal, single-space separated)"),
                })?;
                syms.push(Symbol(v));
            }
            words.push(Word::new(syms));
        }
        let mut spec = SubshiftSpec::new(ForbiddenBasis::new(words)?);
        spec.gluing = gluing;
        Ok(spec)
    }

    /// Writes the basis file format.
    pub fn to_basis_file(&self) -> String {
        let mut out = String::new();
        if let Some(n) = self.gluing {
            out.push_str(&format!("N {n}\n"));
        }
        for w in self.basis.words() {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}
