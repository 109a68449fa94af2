//! Branched-cover homology orders via integer resultants.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::fox::alexander_polynomial;
use super::poly::LaurentPoly;
use crate::error::{Error, Result};
use crate::knots::KnotSpec;

/// Order of `H_1` of a branched cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum HomologyOrder {
    Finite(BigUint),
    Infinite,
}

impl HomologyOrder {
    pub fn as_u128(&self) -> Option<u128> {
        match self {
            HomologyOrder::Finite(n) => u128::try_from(n).ok(),
            HomologyOrder::Infinite => None,
        }
    }
}

impl fmt::Display for HomologyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyOrder::Finite(n) => write!(f, "{n}"),
            HomologyOrder::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn bigint_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of two integer polynomials given by coefficients from degree `0` upwards,
/// via the Sylvester matrix.
pub fn resultant(a: &[i128], b: &[i128]) -> BigInt {
    let trim = |v: &[i128]| {
        let end = v.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        v[..end].to_vec()
    };
    let (a, b) = (trim(a), trim(b));
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, &c) in a.iter().rev().enumerate() {
            row[i + k] = BigInt::from(c);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, &c) in b.iter().rev().enumerate() {
            row[i + k] = BigInt::from(c);
        }
        rows.push(row);
    }
    bigint_determinant(rows)
}

/// `|prod_{j=1}^{d-1} Delta(zeta^j)| = |Res(Delta, 1 + t + ... + t^(d-1))|`; zero means the
/// cover has infinite homology.
pub fn cover_order_from_polynomial(delta: &LaurentPoly, d: u64) -> HomologyOrder {
    let cyclo = vec![1i128; d as usize];
    let r = resultant(&delta.normalized().dense(), &cyclo).abs();
    if r.is_zero() {
        HomologyOrder::Infinite
    } else {
        HomologyOrder::Finite(r.to_biguint().unwrap())
    }
}

/// Order of `H_1` of the `d`-fold cyclic branched cover of `k`.
pub fn cyclic_cover_homology_order(k: &KnotSpec, d: u64) -> Result<HomologyOrder> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("cover degree must be at least 2, got {d}")));
    }
    Ok(cover_order_from_polynomial(&alexander_polynomial(k)?.poly, d))
}
