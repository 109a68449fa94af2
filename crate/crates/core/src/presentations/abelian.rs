//! Abelianization via Smith normal form of the relator exponent matrix.

use std::fmt;

use super::presentation::Presentation;

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }

    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => AbelianInvariants { free_rank: 1, torsion: Vec::new() },
            1 => AbelianInvariants::trivial(),
            _ => AbelianInvariants { free_rank: 0, torsion: vec![d] },
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&d| d as u128).product()
    }

    /// `Some(n)` when the group is finite of order `n`.
    pub fn order(&self) -> Option<u128> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    /// `Some(d)` when the group is finite cyclic `Z/d` (`d = 1` for trivial).
    pub fn finite_cyclic_order(&self) -> Option<u64> {
        match (self.free_rank, self.torsion.as_slice()) {
            (0, []) => Some(1),
            (0, [d]) => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
///
/// Pivots on the entry of least absolute value in the remaining block.
pub fn smith_invariant_factors(matrix: &[Vec<i64>], ncols: usize) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> =
        matrix.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < nrows.min(ncols) {
        // least nonzero |entry| in the block a[k.., k..]
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let p = a[k][k];
            let mut done = true;
            for i in k + 1..nrows {
                let q = a[i][k] / p;
                if q != 0 {
                    for j in k..ncols {
                        a[i][j] -= q * a[k][j];
                    }
                }
                if a[i][k] != 0 {
                    done = false;
                }
            }
            for j in k + 1..ncols {
                let q = a[k][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(k) {
                        row[j] -= q * row[k];
                    }
                }
                if a[k][j] != 0 {
                    done = false;
                }
            }
            if done {
                // the pivot must also divide the rest of the block
                let bad = (k + 1..nrows)
                    .flat_map(|i| (k + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in k..ncols {
                            a[k][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column k to the pivot
            let mut best = (k, k);
            for i in k..nrows {
                if a[i][k] != 0 && a[i][k].abs() < a[best.0][best.1].abs() {
                    best = (i, k);
                }
            }
            for j in k..ncols {
                if a[k][j] != 0 && a[k][j].abs() < a[best.0][best.1].abs() {
                    best = (k, j);
                }
            }
            a.swap(k, best.0);
            for row in a.iter_mut() {
                row.swap(k, best.1);
            }
        }
        diag.push(a[k][k].abs());
        k += 1;
    }
    // pairwise gcd/lcm sweep restores divisibility order
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(diag[i], diag[j]);
            if g != 0 {
                let l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag.into_iter().map(|d| d as u64).collect()
}

/// Exponent-sum matrix, one row per relator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; p.ngens()];
            for l in r.letters() {
                row[l.gen] += l.sign();
            }
            row
        })
        .collect()
}

/// `H_1` of the presented group.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let factors = smith_invariant_factors(&relation_matrix(p), p.ngens());
    AbelianInvariants {
        free_rank: p.ngens() - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
    }
}
