//! HLT coset enumeration with lookahead.

use crate::error::{Error, Result};
use crate::presentations::{Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

/// A coset table: right action of every generator and inverse on the cosets of a subgroup.
/// Coset `0` is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    table: Vec<u32>,
    complete: bool,
}

/// Outcome of an enumeration. Running out of budget is not an error and never a wrong count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    Indeterminate { max_cosets: usize },
}

impl Enumeration {
    pub fn table(&self) -> Option<&CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Indeterminate { .. } => None,
        }
    }

    pub fn into_table(self) -> Option<CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Indeterminate { .. } => None,
        }
    }

    /// Index of the subgroup when the enumeration completed.
    pub fn index(&self) -> Option<usize> {
        self.table().map(CosetTable::len)
    }

    pub fn require(self, context: &str) -> Result<CosetTable> {
        match self {
            Enumeration::Complete(t) => Ok(t),
            Enumeration::Indeterminate { max_cosets } => {
                Err(Error::Indeterminate { max_cosets, context: context.to_string() })
            }
        }
    }
}

impl CosetTable {
    /// Table of a transitive permutation action given as images `perms[g][c]`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let ngens = perms.len();
        let n = perms.first().map_or(1, Vec::len);
        let mut table = vec![NONE; n * 2 * ngens];
        for (g, perm) in perms.iter().enumerate() {
            if perm.len() != n {
                return Err(Error::InvalidArgument("permutations of unequal degree".into()));
            }
            for (c, &img) in perm.iter().enumerate() {
                if img >= n || table[img * 2 * ngens + 2 * g + 1] != NONE {
                    return Err(Error::InvalidArgument(format!("generator {g} is not a permutation")));
                }
                table[c * 2 * ngens + 2 * g] = img as u32;
                table[img * 2 * ngens + 2 * g + 1] = c as u32;
            }
        }
        Ok(CosetTable { ngens, table, complete: true })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Number of cosets.
    pub fn len(&self) -> usize {
        let cols = 2 * self.ngens;
        if cols == 0 {
            1
        } else {
            self.table.len() / cols
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `coset . letter`.
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.table[coset * 2 * self.ngens + l.column()] as usize
    }

    /// `coset . word`.
    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Every entry defined, every relator closes at every coset and the subgroup
    /// generators fix coset `0`.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        if self.ngens != p.ngens() || self.table.contains(&NONE) {
            return false;
        }
        let n = self.len();
        let inverse_ok = (0..n).all(|c| {
            (0..self.ngens).all(|g| {
                let d = self.act(c, Letter::pos(g));
                self.act(d, Letter::neg(g)) == c
            })
        });
        inverse_ok
            && (0..n).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
            && subgroup.iter().all(|h| self.trace(0, h) == 0)
    }

    /// Words `T_c` with `0 . T_c = c`, from a breadth-first spanning tree in column order.
    pub fn transversal(&self) -> Vec<Word> {
        let n = self.len();
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Word::identity());
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let c = queue[i];
            i += 1;
            for col in 0..2 * self.ngens {
                let l = Letter::new(col / 2, col % 2 == 1);
                let d = self.act(c, l);
                if words[d].is_none() {
                    let w = words[c].as_ref().unwrap().mul(&Word::from_letters([l]));
                    words[d] = Some(w);
                    queue.push(d);
                }
            }
        }
        words.into_iter().map(|w| w.unwrap_or_default()).collect()
    }
}

struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: Vec<u32>,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn nrows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Full> {
        if self.nrows() >= self.max_cosets {
            return Err(Full);
        }
        let n = self.nrows() as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.parent.push(n);
        self.live += 1;
        self.set(c, x, n);
        self.set(n, inv_col(x), c);
        Ok(())
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut r = k;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = k;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, inv_col(x), NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, inv_col(x));
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, inv_col(x), mu);
                    }
                }
            }
        }
    }

    /// Scans `w` at `alpha`; with `fill`, defines cosets to close the scan.
    fn scan(&mut self, alpha: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, inv_col(w[j as usize])) != NONE {
                b = self.get(b, inv_col(w[j as usize]));
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if i as isize == j {
                self.set(f, w[i], b);
                self.set(b, inv_col(w[i]), f);
                return Ok(());
            } else if fill {
                self.define(f, w[i])?;
            } else {
                return Ok(());
            }
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.nrows() {
            for w in rels {
                if !self.is_live(c as u32) {
                    break;
                }
                let _ = self.scan(c as u32, w, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets in order; returns the new position of `cursor`.
    fn compact(&mut self, cursor: usize) -> usize {
        let n = self.nrows();
        let mut newidx = vec![NONE; n];
        let mut next = 0u32;
        let mut new_cursor = None;
        for c in 0..n {
            if c >= cursor && new_cursor.is_none() {
                new_cursor = Some(next as usize);
            }
            if self.parent[c] == c as u32 {
                newidx[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if newidx[c] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.table[c * self.ncols + x];
                table.push(if v == NONE { NONE } else { newidx[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_cursor.unwrap_or(next as usize)
    }

    /// Breadth-first renumbering from coset 0 so the output depends only on the group.
    fn standardize(&self) -> Vec<u32> {
        let n = self.nrows();
        let mut order = vec![NONE; n];
        let mut seq = vec![0u32];
        order[0] = 0;
        let mut i = 0;
        while i < seq.len() {
            let c = seq[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(c, x);
                if order[d as usize] == NONE {
                    order[d as usize] = seq.len() as u32;
                    seq.push(d);
                }
            }
        }
        let mut table = vec![NONE; seq.len() * self.ncols];
        for (new, &old) in seq.iter().enumerate() {
            for x in 0..self.ncols {
                table[new * self.ncols + x] = order[self.get(old, x) as usize];
            }
        }
        table
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of `<subgroup>` in the group presented by `p`, defining at most
/// `max_cosets` cosets at a time.
pub fn enumerate(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<Enumeration> {
    for h in subgroup {
        if let Some(g) = h.max_gen().filter(|&g| g >= p.ngens()) {
            return Err(Error::GeneratorOutOfRange { index: g, count: p.ngens() });
        }
    }
    let ncols = 2 * p.ngens();
    if ncols == 0 {
        return Ok(Enumeration::Complete(CosetTable { ngens: 0, table: Vec::new(), complete: true }));
    }
    let rels: Vec<Vec<usize>> = p.relators().iter().map(columns).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(columns).collect();
    let max_cosets = max_cosets.max(1);
    let mut e = Enumerator {
        ncols,
        table: vec![NONE; ncols],
        parent: vec![0],
        live: 1,
        max_cosets,
        queue: Vec::new(),
    };

    let mut subgroup_done = false;
    let mut alpha = 0usize;
    loop {
        let step: Result<(), Full> = (|| {
            if !subgroup_done {
                for w in &subs {
                    e.scan(0, w, true)?;
                }
                subgroup_done = true;
            }
            while alpha < e.nrows() {
                let a = alpha as u32;
                if e.is_live(a) {
                    for w in &rels {
                        e.scan(a, w, true)?;
                        if !e.is_live(a) {
                            break;
                        }
                    }
                    if e.is_live(a) {
                        for x in 0..ncols {
                            if e.get(a, x) == NONE {
                                e.define(a, x)?;
                            }
                        }
                    }
                }
                alpha += 1;
            }
            Ok(())
        })();
        match step {
            Ok(()) => break,
            Err(Full) => {
                let before = e.nrows();
                e.lookahead(&rels);
                alpha = e.compact(alpha);
                // give up unless lookahead freed a useful share of the table
                if e.nrows() + (before / 64).max(1) > max_cosets {
                    return Ok(Enumeration::Indeterminate { max_cosets });
                }
            }
        }
    }
    e.compact(0);
    let table = e.standardize();
    Ok(Enumeration::Complete(CosetTable { ngens: p.ngens(), table, complete: true }))
}

/// Order of the presented group, `None` when the budget runs out.
pub fn group_order(p: &Presentation, max_cosets: usize) -> Result<Option<usize>> {
    Ok(enumerate(p, &[], max_cosets)?.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{parse_presentation, parse_word};

    fn order(src: &str) -> usize {
        let p = parse_presentation(src).unwrap();
        let t = enumerate(&p, &[], 100_000).unwrap().into_table().unwrap();
        assert!(t.verify(&p, &[]));
        t.len()
    }

    #[test]
    fn cyclic_group() {
        assert_eq!(order("<a | a^5>"), 5);
    }

    #[test]
    fn dihedral_ten() {
        assert_eq!(order("<a,b | a^2, b^5, (a*b)^2>"), 10);
    }

    /// Order of the permutation group generated by `gens`, by closure.
    fn closure_order(gens: &[Vec<usize>]) -> usize {
        let n = gens[0].len();
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn dihedral_matches_permutation_oracle() {
        // reflection and rotation of a pentagon
        let a = vec![0, 4, 3, 2, 1];
        let b = vec![1, 2, 3, 4, 0];
        assert_eq!(closure_order(&[a, b]), order("<a,b | a^2, b^5, (a*b)^2>"));
    }

    #[test]
    fn classical_small_groups() {
        assert_eq!(order("<a,b | a^4, b^2*a^-2, b^-1*a*b*a>"), 8); // Q8
        assert_eq!(order("<a,b | a^2, b^3, (a*b)^5>"), 60); // A5
        assert_eq!(order("<r,s,t | r^2 = s^3, s^3 = t^5, t^5 = r*s*t>"), 120); // binary icosahedral
        // x^2 = y^3 = (x*y)^5 is central of order 38 over A5: H1 = Z/19
        assert_eq!(order("<x,y | x^2 = y^3, x^2 = (x*y)^5>"), 2280);
    }

    #[test]
    fn trivial_and_generatorless() {
        assert_eq!(order("<a,b | a, b>"), 1);
        assert_eq!(order("< | >"), 1);
    }

    #[test]
    fn subgroup_index() {
        let p = parse_presentation("<a,b | a^2, b^5, (a*b)^2>").unwrap();
        let b = parse_word("b", p.generators()).unwrap();
        let e = enumerate(&p, std::slice::from_ref(&b), 1000).unwrap();
        let t = e.table().unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.verify(&p, &[b]));
    }

    #[test]
    fn budget_exhaustion_is_indeterminate() {
        let p = parse_presentation("<a,b | [a,b]>").unwrap();
        assert_eq!(enumerate(&p, &[], 500).unwrap(), Enumeration::Indeterminate { max_cosets: 500 });
    }

    #[test]
    fn small_budget_uses_lookahead() {
        // A5 needs more than 60 defined cosets under HLT; lookahead recovers the space.
        let p = parse_presentation("<a,b | a^2, b^3, (a*b)^5>").unwrap();
        let e = enumerate(&p, &[], 80).unwrap();
        if let Some(t) = e.table() {
            assert_eq!(t.len(), 60);
        }
    }

    #[test]
    fn deterministic_output() {
        let p = parse_presentation("<x,y | x^3*y^-5, x^2 = (x*y)^2>").unwrap();
        let a = enumerate(&p, &[], 10_000).unwrap();
        let b = enumerate(&p, &[], 10_000).unwrap();
        assert_eq!(a, b);
    }
}
