//! Permutation representation of a complete coset table.

use super::coset::CosetTable;
use crate::error::{Error, Result};
use crate::presentations::Word;

/// A permutation of `0..n` acting on the right: `point -> perm[point]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The coset action of every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRep {
    gens: Vec<Perm>,
}

impl PermutationRep {
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn degree(&self) -> usize {
        self.gens.first().map_or(1, Perm::degree)
    }

    pub fn evaluate(&self, w: &Word) -> Perm {
        let n = self.degree();
        let mut img: Vec<u32> = (0..n as u32).collect();
        for l in w.letters() {
            let g = &self.gens[l.gen];
            if l.inverse {
                let inv = g.inverse();
                img.iter_mut().for_each(|x| *x = inv.0[*x as usize]);
            } else {
                img.iter_mut().for_each(|x| *x = g.0[*x as usize]);
            }
        }
        Perm(img)
    }

    /// Order of the image of `w`. For a regular representation this is the element order.
    pub fn element_order(&self, w: &Word) -> u64 {
        self.evaluate(w).order()
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.evaluate(w).is_identity()
    }
}

pub fn permutation_representation(t: &CosetTable) -> Result<PermutationRep> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable);
    }
    let n = t.len();
    let gens = (0..t.ngens())
        .map(|g| Perm((0..n).map(|c| t.act(c, crate::presentations::Letter::pos(g)) as u32).collect()))
        .collect();
    Ok(PermutationRep { gens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate;
    use crate::presentations::{parse_presentation, parse_word};

    #[test]
    fn cyclic_three_is_a_three_cycle() {
        let p = parse_presentation("<a | a^3>").unwrap();
        let t = enumerate(&p, &[], 100).unwrap().into_table().unwrap();
        let rep = permutation_representation(&t).unwrap();
        assert_eq!(rep.generators()[0].order(), 3);
        assert_eq!(rep.generators()[0].0.len(), 3);
    }

    #[test]
    fn dihedral_product_is_an_involution() {
        let p = parse_presentation("<a,b | a^2, b^5, (a*b)^2>").unwrap();
        let t = enumerate(&p, &[], 100).unwrap().into_table().unwrap();
        let rep = permutation_representation(&t).unwrap();
        let ab = parse_word("a*b", p.generators()).unwrap();
        assert_eq!(rep.element_order(&ab), 2);
        assert_eq!(rep.element_order(&parse_word("b", p.generators()).unwrap()), 5);
        for r in p.relators() {
            assert!(rep.is_trivial(r));
        }
    }

    #[test]
    fn composition_and_inverse() {
        let a = Perm(vec![1, 2, 0]);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.then(&a).then(&a), Perm::identity(3));
    }
}
