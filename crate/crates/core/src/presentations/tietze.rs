//! Budgeted, deterministic Tietze simplification.
//!
//! Moves, tried in this order each round:
//! 1. drop relators that coincide up to rotation and inversion;
//! 2. eliminate a generator occurring exactly once in a relator, shortest relator first;
//! 3. replace a subword of a relator that matches more than half of another relator by the
//!    inverse of the remaining part (a length-decreasing consequence substitution).
//!
//! The total relator length of the result never exceeds that of the input.

use std::collections::HashSet;

use super::presentation::{Mark, Presentation};
use super::word::{Letter, Word};

#[derive(Debug, Clone)]
pub struct TietzeOptions {
    /// Maximum number of moves (eliminations plus substitutions).
    pub max_moves: usize,
    /// Generators with index below this are never eliminated.
    pub protected: usize,
    /// Only relators up to this length are used as substitution patterns.
    pub pattern_max_len: usize,
    /// Never rewrite relators that only involve protected generators.
    pub freeze_protected: bool,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions { max_moves: 10_000, protected: 0, pattern_max_len: 24, freeze_protected: false }
    }
}

impl TietzeOptions {
    pub fn with_budget(max_moves: usize) -> Self {
        TietzeOptions { max_moves, ..Default::default() }
    }
}

/// Result of a tracked simplification.
#[derive(Debug, Clone)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Image of every input generator as a word in the output generators.
    pub images: Vec<Word>,
    /// Input index of every output generator.
    pub kept: Vec<usize>,
    pub moves: usize,
}

struct State {
    names: Vec<String>,
    relators: Vec<Word>,
    marks: Vec<(Mark, Word)>,
    images: Vec<Word>,
    orig: Vec<usize>,
}

impl State {
    fn total(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    fn dedupe(&mut self) -> bool {
        let mut seen = HashSet::new();
        let before = self.relators.len();
        let rels = std::mem::take(&mut self.relators);
        for r in rels {
            let r = r.cyclically_reduced();
            if !r.is_empty() && seen.insert(r.cyclic_canonical()) {
                self.relators.push(r);
            }
        }
        self.relators.len() != before
    }

    /// Substitution that removes generator `g`, sending it to `expr` (already over the
    /// remaining generators, with indices above `g` not yet shifted).
    fn elimination_map(&self, g: usize, expr: &Word) -> Vec<Word> {
        let shift = |h: usize| if h > g { h - 1 } else { h };
        (0..self.names.len())
            .map(|h| {
                if h == g {
                    Word::from_letters(expr.letters().iter().map(|l| Letter::new(shift(l.gen), l.inverse)))
                } else {
                    Word::gen(shift(h))
                }
            })
            .collect()
    }

    /// `g` expressed from relator `r`, where `g` occurs exactly once.
    fn solve(r: &Word, g: usize) -> Word {
        let k = r.letters().iter().position(|l| l.gen == g).unwrap();
        let rot = r.rotated(k);
        let rest = Word::from_letters(rot.letters()[1..].iter().copied());
        if rot.letters()[0].inverse {
            rest
        } else {
            rest.inverse()
        }
    }

    fn eliminated_total(&self, ri: usize, map: &[Word]) -> usize {
        self.relators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, r)| r.map_gens(map).cyclically_reduced().len())
            .sum()
    }

    fn apply_elimination(&mut self, ri: usize, g: usize, map: &[Word]) {
        self.relators.remove(ri);
        for r in self.relators.iter_mut() {
            *r = r.map_gens(map).cyclically_reduced();
        }
        self.relators.retain(|r| !r.is_empty());
        for (_, w) in self.marks.iter_mut() {
            *w = w.map_gens(map);
        }
        for w in self.images.iter_mut() {
            *w = w.map_gens(map);
        }
        self.names.remove(g);
        self.orig.remove(g);
    }

    fn try_eliminate(&mut self, opts: &TietzeOptions, cap: usize) -> bool {
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&i| (self.relators[i].len(), i));
        let current = self.total();
        let mut tried = 0;
        for ri in order {
            let r = &self.relators[ri];
            // highest-index eliminable generator occurring once
            let mut cands: Vec<usize> = r
                .letters()
                .iter()
                .map(|l| l.gen)
                .filter(|&g| self.orig[g] >= opts.protected && r.occurrences(g) == 1)
                .collect();
            cands.sort_unstable();
            cands.dedup();
            let Some(&g) = cands.last() else { continue };
            let expr = State::solve(r, g);
            let map = self.elimination_map(g, &expr);
            let new_total = self.eliminated_total(ri, &map);
            if new_total <= cap.max(current) {
                self.apply_elimination(ri, g, &map);
                return true;
            }
            tried += 1;
            if tried >= 8 {
                break;
            }
        }
        false
    }

    fn try_substitute(&mut self, opts: &TietzeOptions) -> bool {
        let mut pattern_ids: Vec<usize> = (0..self.relators.len())
            .filter(|&i| self.relators[i].len() <= opts.pattern_max_len)
            .collect();
        pattern_ids.sort_by_key(|&i| (self.relators[i].len(), i));
        for &si in &pattern_ids {
            let s = &self.relators[si];
            let n = s.len();
            let mut conjugates: Vec<Vec<Letter>> = Vec::with_capacity(2 * n);
            for base in [s.clone(), s.inverse()] {
                for k in 0..n {
                    conjugates.push(base.rotated(k).letters().to_vec());
                }
            }
            for ri in 0..self.relators.len() {
                if ri == si
                    || (opts.freeze_protected
                        && self.relators[ri].letters().iter().all(|l| self.orig[l.gen] < opts.protected))
                {
                    continue;
                }
                let r = self.relators[ri].letters();
                let m = r.len();
                if m < n {
                    continue;
                }
                for i in 0..m {
                    for c in &conjugates {
                        let mut k = 0;
                        while k < n && k < m - 1 && r[(i + k) % m] == c[k] {
                            k += 1;
                        }
                        if 2 * k > n {
                            let rest = Word::from_letters((k..m).map(|t| r[(i + t) % m]));
                            let v = Word::from_letters(c[k..].iter().copied());
                            self.relators[ri] = v.inverse().mul(&rest).cyclically_reduced();
                            if self.relators[ri].is_empty() {
                                self.relators.remove(ri);
                            }
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Tracked simplification with explicit options.
pub fn tietze_simplify_with(p: &Presentation, opts: &TietzeOptions) -> Simplified {
    let n = p.ngens();
    let mut st = State {
        names: p.generators().to_vec(),
        relators: p.relators().to_vec(),
        marks: p.marks().iter().map(|(&m, w)| (m, w.clone())).collect(),
        images: (0..n).map(Word::gen).collect(),
        orig: (0..n).collect(),
    };
    let cap = p.total_length();
    st.dedupe();
    let mut moves = 0;
    while moves < opts.max_moves {
        if st.try_eliminate(opts, cap) || st.try_substitute(opts) {
            moves += 1;
            st.dedupe();
        } else {
            break;
        }
    }
    let marks = st.marks.into_iter().collect();
    Simplified {
        presentation: Presentation::from_parts_unchecked(st.names, st.relators, marks),
        images: st.images,
        kept: st.orig,
        moves,
    }
}

/// Simplifies with a move budget; returns the best presentation reached.
pub fn tietze_simplify(p: &Presentation, effort: usize) -> Presentation {
    tietze_simplify_with(p, &TietzeOptions::with_budget(effort)).presentation
}
