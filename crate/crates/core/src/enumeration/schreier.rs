//! Reidemeister–Schreier presentations of finite-index subgroups, and cyclic-cover kernels.

use super::coset::CosetTable;
use crate::error::{Error, Result};
use crate::presentations::{
    tietze_simplify_with, Letter, Mark, Presentation, TietzeOptions, Word,
};

/// A presentation of a finite-index subgroup with the data needed to rewrite into it.
#[derive(Debug, Clone)]
pub struct SubgroupPresentation {
    /// Presentation on the Schreier generators, one per non-tree table edge.
    pub raw: Presentation,
    /// `raw` after Tietze simplification.
    pub presentation: Presentation,
    /// Image of every raw generator in the simplified generators.
    pub images: Vec<Word>,
    /// Raw generator index of every simplified generator.
    pub kept: Vec<usize>,
    /// `(coset, ambient generator)` of every raw generator.
    pub schreier_gens: Vec<(usize, usize)>,
    /// Raw generator for the edge `(coset, ambient generator)`, `None` on tree edges.
    index: Vec<Option<usize>>,
    pub table: CosetTable,
    pub transversal: Vec<Word>,
    /// Transversal generator for cyclic quotients.
    pub t: Option<usize>,
    pub d: Option<u64>,
}

impl SubgroupPresentation {
    /// Builds the subgroup presentation from a complete table and a prefix-closed transversal.
    pub fn from_table(
        p: &Presentation,
        table: CosetTable,
        transversal: Vec<Word>,
        opts: &TietzeOptions,
    ) -> Result<Self> {
        if !table.is_complete() {
            return Err(Error::IncompleteTable);
        }
        let n = table.len();
        let ng = p.ngens();
        let mut index = vec![None; n * ng];
        let mut schreier_gens = Vec::new();
        let mut names = Vec::new();
        for c in 0..n {
            for g in 0..ng {
                let d = table.act(c, Letter::pos(g));
                let s = transversal[c].mul(&Word::gen(g)).mul(&transversal[d].inverse());
                if !s.is_empty() {
                    index[c * ng + g] = Some(schreier_gens.len());
                    schreier_gens.push((c, g));
                    names.push(format!("{}_{}", p.generators()[g], c));
                }
            }
        }
        let mut sp = SubgroupPresentation {
            raw: Presentation::free(names),
            presentation: Presentation::free(Vec::new()),
            images: Vec::new(),
            kept: Vec::new(),
            schreier_gens,
            index,
            table,
            transversal,
            t: None,
            d: None,
        };
        let mut rels = Vec::new();
        for c in 0..n {
            for r in p.relators() {
                rels.push(sp.trace_rewrite(c, r).0);
            }
        }
        for r in rels {
            sp.raw.push_relator(r)?;
        }
        let s = tietze_simplify_with(&sp.raw, opts);
        sp.presentation = s.presentation;
        sp.images = s.images;
        sp.kept = s.kept;
        Ok(sp)
    }

    fn trace_rewrite(&self, start: usize, w: &Word) -> (Word, usize) {
        let ng = self.table.ngens();
        let mut c = start;
        let mut out = Vec::new();
        for &l in w.letters() {
            if l.inverse {
                let prev = self.table.act(c, l);
                if let Some(s) = self.index[prev * ng + l.gen] {
                    out.push(Letter::neg(s));
                }
                c = prev;
            } else {
                if let Some(s) = self.index[c * ng + l.gen] {
                    out.push(Letter::pos(s));
                }
                c = self.table.act(c, l);
            }
        }
        (Word::from_letters(out), c)
    }

    pub fn index(&self) -> usize {
        self.table.len()
    }

    /// Rewrites an ambient word lying in the subgroup into raw Schreier generators.
    pub fn rewrite_raw(&self, w: &Word) -> Result<Word> {
        let (out, end) = self.trace_rewrite(0, w);
        if end != 0 {
            return Err(Error::NotInSubgroup);
        }
        Ok(out)
    }

    /// Rewrites an ambient word lying in the subgroup into the simplified generators.
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        Ok(self.rewrite_raw(w)?.map_gens(&self.images))
    }

    /// The ambient element represented by a raw Schreier generator.
    pub fn raw_generator_word(&self, s: usize) -> Word {
        let (c, g) = self.schreier_gens[s];
        let d = self.table.act(c, Letter::pos(g));
        self.transversal[c].mul(&Word::gen(g)).mul(&self.transversal[d].inverse())
    }

    /// Ambient word of a word in the simplified generators.
    pub fn lift(&self, h: &Word) -> Word {
        let lifts: Vec<Word> = self.kept.iter().map(|&s| self.raw_generator_word(s)).collect();
        h.map_gens(&lifts)
    }

    /// Deck action on the simplified generators: `h -> rewrite(t^-1 h t)`, or
    /// `h -> rewrite(t h t^-1)` when `inverse` is set.
    pub fn deck_action(&self, inverse: bool) -> Result<Vec<Word>> {
        let t = Word::gen(self.t.ok_or_else(|| {
            Error::InvalidArgument("deck action needs a cyclic-quotient subgroup".into())
        })?);
        let c = if inverse { t.inverse() } else { t };
        (0..self.presentation.ngens())
            .map(|j| self.rewrite(&self.lift(&Word::gen(j)).conjugate_by(&c)))
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn inverse_mod(a: u64, d: u64) -> Option<u64> {
    (0..d).find(|&k| (a * k) % d == 1 % d)
}

/// Kernel of the epimorphism `generator g -> epimorphism[g] mod d`, with transversal
/// `t^0, ..., t^(d-1)`. The meridian generator is preferred for `t`.
pub fn reidemeister_schreier(
    p: &Presentation,
    d: u64,
    epimorphism: &[i64],
    opts: &TietzeOptions,
) -> Result<SubgroupPresentation> {
    if d == 0 {
        return Err(Error::InvalidArgument("cyclic quotient of order 0".into()));
    }
    if epimorphism.len() != p.ngens() {
        return Err(Error::InvalidArgument(format!(
            "epimorphism has {} images for {} generators",
            epimorphism.len(),
            p.ngens()
        )));
    }
    let img: Vec<u64> = epimorphism.iter().map(|&e| e.rem_euclid(d as i64) as u64).collect();
    for (i, r) in p.relators().iter().enumerate() {
        let s = r.degree(epimorphism).rem_euclid(d as i64);
        if s != 0 {
            return Err(Error::NotHomomorphism { index: i, image: s, modulus: d });
        }
    }
    let coprime = |g: usize| gcd(img[g], d) == 1;
    let meridian = p
        .mark(Mark::Meridian)
        .filter(|m| m.len() == 1 && !m.letters()[0].inverse)
        .map(|m| m.letters()[0].gen)
        .filter(|&g| coprime(g));
    let t = meridian
        .or_else(|| (0..p.ngens()).find(|&g| coprime(g)))
        .ok_or(Error::NoTransversalGenerator(d))?;
    let perms: Vec<Vec<usize>> = img
        .iter()
        .map(|&a| (0..d).map(|c| ((c + a) % d) as usize).collect())
        .collect();
    let table = CosetTable::from_permutations(&perms)?;
    let u = inverse_mod(img[t], d).unwrap_or(0);
    let transversal = (0..d).map(|c| Word::gen(t).pow(((c * u) % d) as i64)).collect();
    let mut sp = SubgroupPresentation::from_table(p, table, transversal, opts)?;
    sp.t = Some(t);
    sp.d = Some(d);
    Ok(sp)
}
