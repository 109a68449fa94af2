//! Freely reduced words in a free group.

use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub const fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    #[must_use]
    pub const fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Column of this letter in a coset table: `2 * gen + inverse`.
    pub const fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn gen(g: usize) -> Self {
        Word { letters: vec![Letter::pos(g)] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Builds a word from signed generator powers, e.g. `[(0, 2), (1, -1)]` is `a^2 b^-1`.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Word::from_letters(powers.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    /// [`Word::from_letters`] with a range check against `ngens`.
    pub fn checked(letters: Vec<Letter>, ngens: usize) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.gen >= ngens) {
            return Err(Error::GeneratorOutOfRange { index: l.gen, count: ngens });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// `c^-1 self c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        Word::from_letters(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }

    /// Strips matching inverse letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Word { letters: l[i..j].to_vec() }
    }

    /// Rotation starting at position `k` (for cyclically reduced words).
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::identity();
        }
        let k = k % n;
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Least representative among all rotations of the cyclic reduction and its inverse.
    /// Two relators generate the same normal closure trivially when these agree.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        let wi = w.inverse();
        let mut best = w.clone();
        for cand in [&w, &wi] {
            for k in 0..cand.len() {
                let r = cand.rotated(k);
                if r < best {
                    best = r;
                }
            }
        }
        best
    }

    /// Replaces every generator by its image; fails when an occurring generator has no image.
    pub fn substitute(&self, images: &[Option<Word>]) -> Result<Word> {
        let mut out = Vec::new();
        for l in &self.letters {
            let img = images
                .get(l.gen)
                .and_then(|w| w.as_ref())
                .ok_or(Error::MissingAssignment(l.gen))?;
            if l.inverse {
                out.extend(img.inverse().letters);
            } else {
                out.extend_from_slice(&img.letters);
            }
        }
        Ok(Word::from_letters(out))
    }

    /// [`Word::substitute`] with a total assignment.
    pub fn map_gens(&self, images: &[Word]) -> Word {
        Word::from_letters(self.letters.iter().flat_map(|l| {
            let img = &images[l.gen];
            if l.inverse {
                img.inverse().letters
            } else {
                img.letters.clone()
            }
        }))
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.gen == g).map(|l| l.sign()).sum()
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == g).count()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Image under a homomorphism to the integers given by per-generator degrees.
    pub fn degree(&self, degrees: &[i64]) -> i64 {
        self.letters.iter().map(|l| l.sign() * degrees[l.gen]).sum()
    }

    /// Renders as `a^2*b^-1*a` using the given generator names; `1` for the identity.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.sign();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = self.names.get(l.gen).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;

    #[test]
    fn free_reduction_examples() {
        let w = Word::from_letters([Letter::pos(A), Letter::neg(A), Letter::pos(B)]);
        assert_eq!(w, Word::gen(B));
        assert_eq!(Word::from_letters([]), Word::identity());
        let w = Word::from_letters([Letter::pos(A), Letter::pos(B), Letter::neg(B), Letter::pos(A)]);
        assert_eq!(w, Word::from_powers(&[(A, 2)]));
    }

    #[test]
    fn out_of_range_generator_rejected() {
        let err = Word::checked(vec![Letter::pos(3)], 2).unwrap_err();
        assert_eq!(err, Error::GeneratorOutOfRange { index: 3, count: 2 });
    }

    #[test]
    fn substitution_examples() {
        let (x, y) = (0, 1);
        let comm = Word::commutator(&Word::gen(A), &Word::gen(B));
        let images = vec![Some(Word::gen(x)), Some(Word::gen(y))];
        assert_eq!(comm.substitute(&images).unwrap(), Word::commutator(&Word::gen(x), &Word::gen(y)));

        let a2 = Word::from_powers(&[(A, 2)]);
        let images = vec![Some(Word::gen(B).inverse()), None];
        assert_eq!(a2.substitute(&images).unwrap(), Word::from_powers(&[(B, -2)]));

        // a b with a -> x y, b -> y^-1 gives x y y^-1 = x.
        let ab = Word::from_powers(&[(A, 1), (B, 1)]);
        let images = vec![Some(Word::from_powers(&[(x, 1), (y, 1)])), Some(Word::from_powers(&[(y, -1)]))];
        assert_eq!(ab.substitute(&images).unwrap(), Word::gen(x));
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let w = Word::from_powers(&[(A, 1), (B, 1)]);
        assert_eq!(w.substitute(&[Some(Word::gen(0))]), Err(Error::MissingAssignment(B)));
    }

    #[test]
    fn cyclic_reduction_and_canonical_form() {
        let w = Word::from_powers(&[(B, 1), (A, 3), (B, -1)]);
        assert_eq!(w.cyclically_reduced(), Word::from_powers(&[(A, 3)]));
        let r1 = Word::from_powers(&[(A, 1), (B, 1), (A, -1)]).mul(&Word::from_powers(&[(B, -1)]));
        let r2 = r1.rotated(2).inverse();
        assert_eq!(r1.cyclic_canonical(), r2.cyclic_canonical());
    }

    #[test]
    fn display_groups_powers() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let w = Word::from_powers(&[(A, 2), (B, -1), (A, 1)]);
        assert_eq!(w.display(&names).to_string(), "a^2*b^-1*a");
        assert_eq!(Word::identity().display(&names).to_string(), "1");
    }
}
