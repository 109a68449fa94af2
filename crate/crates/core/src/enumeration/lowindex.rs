//! Abelian invariants of the kernels of all epimorphisms onto small cyclic groups.

use std::collections::BTreeSet;

use super::schreier::reidemeister_schreier;
use crate::error::Result;
use crate::presentations::{abelianization, AbelianInvariants, Presentation, TietzeOptions};

/// Search cap on `k^ngens` assignments per modulus.
pub const MAX_ASSIGNMENTS: u64 = 50_000;

/// Kernel invariants of the epimorphisms onto `Z/k` for one modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotientInvariants {
    pub k: u64,
    /// `None` when the assignment space exceeded [`MAX_ASSIGNMENTS`].
    pub kernels: Option<Vec<AbelianInvariants>>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// For every `2 <= k <= max_k`, the sorted multiset of kernel abelianizations, one entry per
/// kernel (epimorphisms differing by an automorphism of `Z/k` are identified).
pub fn cyclic_quotient_invariants(
    p: &Presentation,
    max_k: u64,
    opts: &TietzeOptions,
) -> Result<Vec<CyclicQuotientInvariants>> {
    let n = p.ngens() as u32;
    let mut out = Vec::new();
    for k in 2..=max_k {
        let Some(total) = k.checked_pow(n).filter(|&t| t <= MAX_ASSIGNMENTS) else {
            out.push(CyclicQuotientInvariants { k, kernels: None });
            continue;
        };
        let units: Vec<u64> = (1..k).filter(|&u| gcd(u, k) == 1).collect();
        let mut seen = BTreeSet::new();
        let mut kernels = Vec::new();
        for code in 0..total {
            let mut c = code;
            let img: Vec<u64> = (0..n)
                .map(|_| {
                    let x = c % k;
                    c /= k;
                    x
                })
                .collect();
            if img.iter().fold(0, |g, &x| gcd(g, x)) % k == 0 && img.iter().all(|&x| x == 0) {
                continue;
            }
            if img.iter().fold(k, |g, &x| gcd(g, x)) != 1 {
                continue;
            }
            let signed: Vec<i64> = img.iter().map(|&x| x as i64).collect();
            if p.relators().iter().any(|r| r.degree(&signed).rem_euclid(k as i64) != 0) {
                continue;
            }
            let canon = units
                .iter()
                .map(|&u| img.iter().map(|&x| x * u % k).collect::<Vec<_>>())
                .min()
                .unwrap();
            if !seen.insert(canon) {
                continue;
            }
            let sp = reidemeister_schreier(p, k, &signed, opts)?;
            kernels.push(abelianization(&sp.presentation));
        }
        kernels.sort();
        out.push(CyclicQuotientInvariants { k, kernels: Some(kernels) });
    }
    Ok(out)
}
