//! Aho-Corasick automaton over `u64` symbols.
//!
//! Only occurrence detection is needed, so each state keeps the length of the
//! longest pattern ending there (following suffix links); `0` means no match.

use std::collections::{HashMap, VecDeque};

use crate::symbol::Symbol;

const ROOT: usize = 0;

#[derive(Debug, Clone)]
struct State {
    next: HashMap<Symbol, usize>,
    fail: usize,
    longest: usize,
}

impl State {
    fn new() -> Self {
        State {
            next: HashMap::new(),
            fail: ROOT,
            longest: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Matcher {
    states: Vec<State>,
    pattern_count: usize,
}

impl Matcher {
    /// Builds the automaton. Empty patterns are ignored.
    pub fn new<'a, I>(patterns: I) -> Self
    where
        I: IntoIterator<Item = &'a [Symbol]>,
    {
        let mut states = vec![State::new()];
        let mut pattern_count = 0;
        for pat in patterns {
            if pat.is_empty() {
                continue;
            }
            pattern_count += 1;
            let mut cur = ROOT;
            for &s in pat {
                cur = match states[cur].next.get(&s) {
                    Some(&n) => n,
                    None => {
                        states.push(State::new());
                        let n = states.len() - 1;
                        states[cur].next.insert(s, n);
                        n
                    }
                };
            }
            states[cur].longest = states[cur].longest.max(pat.len());
        }

        let mut queue: VecDeque<usize> = states[ROOT].next.values().copied().collect();
        while let Some(u) = queue.pop_front() {
            let edges: Vec<(Symbol, usize)> = states[u].next.iter().map(|(&s, &v)| (s, v)).collect();
            for (s, v) in edges {
                let mut f = states[u].fail;
                let target = loop {
                    if let Some(&t) = states[f].next.get(&s) {
                        break t;
                    }
                    if f == ROOT {
                        break ROOT;
                    }
                    f = states[f].fail;
                };
                states[v].fail = target;
                states[v].longest = states[v].longest.max(states[target].longest);
                queue.push_back(v);
            }
        }
        Matcher {
            states,
            pattern_count,
        }
    }

    pub fn pattern_count(&self) -> usize {
        self.pattern_count
    }

    pub fn start(&self) -> MatchState {
        MatchState(ROOT)
    }

    /// Advances by one symbol. Returns the length of the longest pattern
    /// ending at this symbol, or 0.
    #[inline]
    pub fn step(&self, state: &mut MatchState, s: Symbol) -> usize {
        let mut cur = state.0;
        loop {
            if let Some(&n) = self.states[cur].next.get(&s) {
                cur = n;
                break;
            }
            if cur == ROOT {
                break;
            }
            cur = self.states[cur].fail;
        }
        state.0 = cur;
        self.states[cur].longest
    }

    /// Whether any pattern occurs in `text`.
    pub fn occurs_in(&self, text: &[Symbol]) -> bool {
        self.find_first(text).is_some()
    }

    /// End position (exclusive) and length of the first occurrence found in
    /// a left-to-right scan.
    pub fn find_first(&self, text: &[Symbol]) -> Option<(usize, usize)> {
        if self.pattern_count == 0 {
            return None;
        }
        let mut st = self.start();
        for (i, &s) in text.iter().enumerate() {
            let len = self.step(&mut st, s);
            if len > 0 {
                return Some((i + 1, len));
            }
        }
        None
    }

    /// Start offsets of every occurrence of a single-pattern matcher's
    /// pattern, given its length.
    pub fn occurrence_starts(&self, text: &[Symbol], pattern_len: usize) -> Vec<usize> {
        let mut st = self.start();
        let mut out = Vec::new();
        for (i, &s) in text.iter().enumerate() {
            if self.step(&mut st, s) >= pattern_len {
                out.push(i + 1 - pattern_len);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchState(usize);
