//! Exact integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;

/// Integer Laurent polynomial; zero coefficients are never stored.
///
/// Arithmetic panics on `i128` overflow rather than wrapping.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    /// `c * t^e`.
    pub fn monomial(c: i128, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// From coefficients of `t^0, t^1, ...`.
    pub fn from_coeffs(cs: &[i128]) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, &c) in cs.iter().enumerate() {
            p.add_term(e as i64, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> i128 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`; zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> i128 {
        self.coeffs.values().next_back().copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: i64, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = slot.checked_add(c).expect("Laurent coefficient overflow");
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in other.terms() {
            r.add_term(e, c);
        }
        r
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(other).expect("Laurent coefficient overflow")
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        let mut acc: BTreeMap<i64, i128> = BTreeMap::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let slot = acc.entry(ea + eb).or_insert(0);
                *slot = slot.checked_add(ca.checked_mul(cb)?)?;
            }
        }
        acc.retain(|_, c| *c != 0);
        Some(LaurentPoly { coeffs: acc })
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        (0..n).fold(LaurentPoly::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// `p(t^-1)`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Exact quotient, `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        let (lo_b, hi_b) = (other.min_exp()?, other.max_exp()?);
        let lead = other.coeff(hi_b);
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        let lo_a = self.min_exp().unwrap_or(0);
        while let Some(hi) = rem.max_exp() {
            if hi - hi_b < lo_a - lo_b {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let m = LaurentPoly::monomial(c / lead, hi - hi_b);
            rem = rem.sub(&m.checked_mul(other)?);
            q = q.add(&m);
        }
        Some(q)
    }

    pub fn eval(&self, x: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for (e, c) in self.terms() {
            let pw = if e >= 0 {
                x.checked_pow(e as u32)?
            } else {
                match x {
                    1 => 1,
                    -1 => x.checked_pow(e.unsigned_abs() as u32)?,
                    _ => return None,
                }
            };
            acc = acc.checked_add(c.checked_mul(pw)?)?;
        }
        Some(acc)
    }

    /// Coefficients of `t^lo .. t^hi` as a dense vector from the lowest exponent.
    pub fn dense(&self) -> Vec<i128> {
        let Some(lo) = self.min_exp() else { return Vec::new() };
        (lo..=self.max_exp().unwrap()).map(|e| self.coeff(e)).collect()
    }

    /// Unit normal form: lowest exponent `0`, positive leading coefficient.
    pub fn normalized(&self) -> LaurentPoly {
        let Some(lo) = self.min_exp() else { return LaurentPoly::zero() };
        let p = self.shift(-lo);
        if p.leading_coeff() < 0 {
            p.neg()
        } else {
            p
        }
    }

    /// Symmetric under `t -> t^-1` up to a unit.
    pub fn is_palindromic(&self) -> bool {
        let d = self.dense();
        let r: Vec<i128> = d.iter().rev().copied().collect();
        d == r || d == r.iter().map(|c| -c).collect::<Vec<_>>()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (_, 1) => {}
                (_, m) => write!(f, "{m}*")?,
            }
            match e {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
