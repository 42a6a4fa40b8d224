use crate::subshift::SubshiftSpec;
use crate::symbol::{Symbol, Word};

/// Canonical enumeration of `B_p`: words are grouped by their maximum symbol
/// `k = 0, 1, 2, ...`; inside a group they appear in lexicographic order.
pub struct AllowedWords<'a> {
    spec: &'a SubshiftSpec,
    level: u64,
    digits: Vec<u64>,
    fresh: bool,
}

impl<'a> AllowedWords<'a> {
    pub(super) fn new(spec: &'a SubshiftSpec, len: usize) -> Self {
        assert!(len >= 1, "allowed words are enumerated for lengths >= 1");
        AllowedWords {
            spec,
            level: 0,
            digits: vec![0; len],
            fresh: true,
        }
    }

    /// Advances the odometer over {0..=level}^len; false on wrap-around.
    fn bump(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            if *d < self.level {
                *d += 1;
                return true;
            }
            *d = 0;
        }
        false
    }
}

impl Iterator for AllowedWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.fresh {
                self.fresh = false;
            } else if !self.bump() {
                self.level += 1;
                self.digits.iter_mut().for_each(|d| *d = 0);
            }
            if !self.digits.contains(&self.level) {
                continue;
            }
            let w: Word = self.digits.iter().map(|&d| Symbol(d)).collect();
            if self.spec.is_allowed(&w) {
                return Some(w);
            }
        }
    }
}
