use std::collections::BTreeMap;
use std::fmt;

use super::word::Word;
use crate::error::{Error, Result};

/// Distinguished elements carried alongside a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Meridian,
    Pushoff,
    Gamma,
    Longitude,
}

impl Mark {
    pub fn name(self) -> &'static str {
        match self {
            Mark::Meridian => "meridian",
            Mark::Pushoff => "pushoff",
            Mark::Gamma => "gamma",
            Mark::Longitude => "longitude",
        }
    }
}

/// A finite presentation `<gens | relators>` with marked elements.
///
/// Relators are kept cyclically reduced and nonempty. Marks are only freely reduced, so a
/// meridian keeps its basepoint and not just its conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    marks: BTreeMap<Mark, Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut p = Presentation { generators, relators: Vec::new(), marks: BTreeMap::new() };
        for r in relators {
            p.push_relator(r)?;
        }
        Ok(p)
    }

    /// Free group on the named generators.
    pub fn free(generators: Vec<String>) -> Self {
        Presentation { generators, relators: Vec::new(), marks: BTreeMap::new() }
    }

    /// `<names[0], ... | >` with generator names `prefix0, prefix1, ...`.
    pub fn free_on(n: usize, prefix: &str) -> Self {
        Presentation::free((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn cyclic(name: &str, order: u64) -> Self {
        let mut p = Presentation::free(vec![name.to_string()]);
        if order > 0 {
            p.relators.push(Word::from_powers(&[(0, order as i64)]));
        }
        p
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn marks(&self) -> &BTreeMap<Mark, Word> {
        &self.marks
    }

    pub fn mark(&self, m: Mark) -> Option<&Word> {
        self.marks.get(&m)
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_gen() {
            Some(g) if g >= self.ngens() => {
                Err(Error::GeneratorOutOfRange { index: g, count: self.ngens() })
            }
            _ => Ok(()),
        }
    }

    /// Appends a relator after cyclic reduction; the identity is dropped.
    pub fn push_relator(&mut self, r: Word) -> Result<()> {
        self.check_word(&r)?;
        let r = r.cyclically_reduced();
        if !r.is_empty() {
            self.relators.push(r);
        }
        Ok(())
    }

    pub fn set_mark(&mut self, m: Mark, w: Word) -> Result<()> {
        self.check_word(&w)?;
        self.marks.insert(m, w);
        Ok(())
    }

    pub fn with_mark(mut self, m: Mark, w: Word) -> Result<Self> {
        self.set_mark(m, w)?;
        Ok(self)
    }

    pub fn clear_mark(&mut self, m: Mark) {
        self.marks.remove(&m);
    }

    pub(crate) fn from_parts_unchecked(
        generators: Vec<String>,
        relators: Vec<Word>,
        marks: BTreeMap<Mark, Word>,
    ) -> Self {
        Presentation { generators, relators, marks }
    }

    /// Adds the kill words as relators. Marks are untouched.
    pub fn quotient_by_normal_closure(&self, kills: &[Word]) -> Result<Presentation> {
        let mut p = self.clone();
        for k in kills {
            p.push_relator(k.clone())?;
        }
        Ok(p)
    }

    /// Appends the generators and relators of `other`, shifting its indices. Marks of `other`
    /// are dropped; returns the index offset of `other`'s generators.
    pub fn free_product_in_place(&mut self, other: &Presentation) -> usize {
        let offset = self.ngens();
        self.generators.extend(other.generators.iter().cloned());
        let shift: Vec<Word> = (0..other.ngens()).map(|g| Word::gen(g + offset)).collect();
        for r in &other.relators {
            self.relators.push(r.map_gens(&shift));
        }
        offset
    }

    /// Relator multiset up to rotation and inversion, sorted.
    pub fn canonical_relators(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.relators.iter().map(Word::cyclic_canonical).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }
}

impl fmt::Display for Presentation {
    /// Prints in the grammar accepted by [`crate::parse_presentation`]; marks are not printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(","))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "{}>", rels.join(", "))
    }
}
