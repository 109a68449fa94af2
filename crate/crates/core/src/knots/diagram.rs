//! Oriented knot diagrams from planar diagram codes and braid closures.

use std::collections::BTreeMap;

use super::spec::PdCrossing;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    /// `+1` for a right-handed crossing.
    pub sign: i8,
}

/// A single-component diagram whose edges are numbered `0..n` in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedDiagram {
    pub edges: usize,
    pub crossings: Vec<Crossing>,
}

impl OrientedDiagram {
    pub fn unknot() -> Self {
        OrientedDiagram { edges: 1, crossings: Vec::new() }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                under_in: c.over_in,
                under_out: c.over_out,
                over_in: c.under_in,
                over_out: c.under_out,
                sign: -c.sign,
            })
            .collect();
        OrientedDiagram { edges: self.edges, crossings }
    }

    /// Checks the edge structure, counts components and renumbers edges along the
    /// traversal starting from edge `start`.
    fn normalized(edges: usize, crossings: Vec<Crossing>, start: usize) -> Result<Self> {
        let mut next = vec![usize::MAX; edges];
        let mut incoming = vec![0u8; edges];
        for c in &crossings {
            for (i, o) in [(c.under_in, c.under_out), (c.over_in, c.over_out)] {
                if i >= edges || o >= edges || next[i] != usize::MAX {
                    return Err(Error::InvalidKnot("inconsistent edge orientation".into()));
                }
                next[i] = o;
                incoming[o] += 1;
            }
        }
        if next.contains(&usize::MAX) || incoming.iter().any(|&k| k != 1) {
            return Err(Error::InvalidKnot("inconsistent edge orientation".into()));
        }
        let mut order = vec![usize::MAX; edges];
        let mut components = 0;
        let mut count = 0;
        for s in std::iter::once(start).chain(0..edges) {
            if order[s] != usize::MAX {
                continue;
            }
            components += 1;
            let mut e = s;
            while order[e] == usize::MAX {
                order[e] = count;
                count += 1;
                e = next[e];
            }
        }
        if components != 1 {
            return Err(Error::MultipleComponents(components));
        }
        let crossings = crossings
            .into_iter()
            .map(|c| Crossing {
                under_in: order[c.under_in],
                under_out: order[c.under_out],
                over_in: order[c.over_in],
                over_out: order[c.over_out],
                sign: c.sign,
            })
            .collect();
        Ok(OrientedDiagram { edges, crossings })
    }

    /// Orientation follows the edge labels: the under strand runs `a -> c` and the over
    /// strand towards the successor label.
    pub fn from_pd(code: &[PdCrossing]) -> Result<Self> {
        if code.is_empty() {
            return Ok(OrientedDiagram::unknot());
        }
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for x in code.iter().flatten() {
            *counts.entry(*x).or_default() += 1;
        }
        let lo = *counts.keys().next().unwrap();
        let hi = *counts.keys().last().unwrap();
        let n = 2 * code.len();
        if counts.len() != n || (hi - lo) as usize != n - 1 || counts.values().any(|&k| k != 2) {
            return Err(Error::InvalidKnot(format!(
                "a {}-crossing code needs labels {lo}..{} each used twice",
                code.len(),
                lo + n as i64 - 1
            )));
        }
        let idx = |x: i64| (x - lo) as usize;
        let succ = |x: usize| (x + 1) % n;
        let mut crossings = Vec::with_capacity(code.len());
        for &[a, b, c, d] in code {
            let (a, b, c, d) = (idx(a), idx(b), idx(c), idx(d));
            if c != succ(a) {
                return Err(Error::InvalidKnot(format!(
                    "under strand {} -> {} does not follow the labelling",
                    a as i64 + lo,
                    c as i64 + lo
                )));
            }
            let cr = if d == succ(b) {
                Crossing { under_in: a, under_out: c, over_in: b, over_out: d, sign: -1 }
            } else if b == succ(d) {
                Crossing { under_in: a, under_out: c, over_in: d, over_out: b, sign: 1 }
            } else {
                return Err(Error::InvalidKnot(format!(
                    "over strand {} / {} does not follow the labelling",
                    b as i64 + lo,
                    d as i64 + lo
                )));
            };
            crossings.push(cr);
        }
        OrientedDiagram::normalized(n, crossings, 0)
    }

    /// Closure of a braid word on `strands` strands; `i > 0` is `sigma_i` (left strand over),
    /// `i < 0` its inverse.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self> {
        if word.is_empty() {
            return if strands == 1 {
                Ok(OrientedDiagram::unknot())
            } else {
                Err(Error::MultipleComponents(strands))
            };
        }
        let mut cur: Vec<usize> = (0..strands).collect();
        let mut fresh = strands;
        let mut crossings = Vec::with_capacity(word.len());
        for &s in word {
            let i = s.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(Error::InvalidKnot(format!("braid generator {s} on {strands} strands")));
            }
            let (l, r) = (cur[i - 1], cur[i]);
            let (nl, nr) = (fresh, fresh + 1);
            fresh += 2;
            crossings.push(if s > 0 {
                Crossing { under_in: r, under_out: nl, over_in: l, over_out: nr, sign: 1 }
            } else {
                Crossing { under_in: l, under_out: nr, over_in: r, over_out: nl, sign: -1 }
            });
            cur[i - 1] = nl;
            cur[i] = nr;
        }
        // identify the top of each strand with its bottom
        let mut alias: Vec<usize> = (0..fresh).collect();
        for (j, &top) in cur.iter().enumerate() {
            if top == j {
                return Err(Error::MultipleComponents(strands));
            }
            alias[top] = j;
        }
        let mut compact = vec![usize::MAX; fresh];
        let mut n = 0;
        for e in 0..fresh {
            if alias[e] == e {
                compact[e] = n;
                n += 1;
            }
        }
        let map = |e: usize| compact[alias[e]];
        let crossings = crossings
            .into_iter()
            .map(|c| Crossing {
                under_in: map(c.under_in),
                under_out: map(c.under_out),
                over_in: map(c.over_in),
                over_out: map(c.over_out),
                sign: c.sign,
            })
            .collect();
        OrientedDiagram::normalized(n, crossings, 0)
    }

    /// The `(p,q)` torus knot as the closure of `(sigma_1 ... sigma_{k-1})^l`, `k = min(|p|,|q|)`.
    pub fn torus(p: i64, q: i64) -> Result<Self> {
        let (a, b) = (p.unsigned_abs() as usize, q.unsigned_abs() as usize);
        let (k, l) = (a.min(b), a.max(b));
        if k <= 1 {
            return Ok(OrientedDiagram::unknot());
        }
        let sign = if (p < 0) != (q < 0) { -1 } else { 1 };
        let word: Vec<i32> =
            (0..l).flat_map(|_| (1..k as i32).map(move |i| sign * i)).collect();
        OrientedDiagram::from_braid(k, &word)
    }
}
