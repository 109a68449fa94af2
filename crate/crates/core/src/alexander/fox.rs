//! Fox calculus and the Alexander polynomial of a knot group.

use super::poly::LaurentPoly;
use crate::error::{Error, Result};
use crate::knots::{wirtinger, KnotSpec, MarkedGroup};
use crate::presentations::{tietze_simplify_with, Presentation, TietzeOptions, Word};

/// `d w / d g` pushed to `Z[t, t^-1]` by `generator h -> t^degrees[h]`.
pub fn fox_derivative(w: &Word, g: usize, degrees: &[i64]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut prefix = 0i64;
    for l in w.letters() {
        let deg = degrees[l.gen];
        if l.inverse {
            prefix -= deg;
            if l.gen == g {
                out.add_term(prefix, -1);
            }
        } else {
            if l.gen == g {
                out.add_term(prefix, 1);
            }
            prefix += deg;
        }
    }
    out
}

/// Rows are relators, columns generators.
pub fn alexander_matrix(p: &Presentation, degrees: &[i64]) -> Vec<Vec<LaurentPoly>> {
    p.relators()
        .iter()
        .map(|r| (0..p.ngens()).map(|g| fox_derivative(r, g, degrees)).collect())
        .collect()
}

/// Fraction-free determinant of a square matrix over `Z[t, t^-1]`; `None` on overflow.
pub fn bareiss_determinant(mut m: Vec<Vec<LaurentPoly>>) -> Option<LaurentPoly> {
    let n = m.len();
    if n == 0 {
        return Some(LaurentPoly::one());
    }
    let mut sign = 1;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Some(LaurentPoly::zero());
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(&m[k][k])?;
                let b = m[i][k].checked_mul(&m[k][j])?;
                m[i][j] = a.sub(&b).checked_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Some(if sign < 0 { det.neg() } else { det })
}

/// Alexander polynomial in unit normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlexNormalForm {
    pub poly: LaurentPoly,
    pub palindromic: bool,
}

impl AlexNormalForm {
    pub fn new(p: &LaurentPoly) -> Self {
        let poly = p.normalized();
        let palindromic = poly.is_palindromic();
        AlexNormalForm { poly, palindromic }
    }

    /// `|Delta(-1)|`.
    pub fn determinant(&self) -> u128 {
        self.poly.eval(-1).expect("determinant overflow").unsigned_abs()
    }

    /// Sorted multiset of nonzero coefficients.
    pub fn coefficient_multiset(&self) -> Vec<i128> {
        let mut v: Vec<i128> = self.poly.terms().map(|(_, c)| c).collect();
        v.sort_unstable();
        v
    }
}

impl std::fmt::Display for AlexNormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

fn square_determinant(p: &Presentation, degrees: &[i64]) -> Result<Option<LaurentPoly>> {
    if p.ngens() == 0 || p.relators().len() + 1 != p.ngens() {
        return Ok(None);
    }
    let drop = (0..p.ngens())
        .find(|&g| degrees[g].abs() == 1)
        .ok_or_else(|| Error::Degenerate("no generator of degree one".into()))?;
    let m: Vec<Vec<LaurentPoly>> = alexander_matrix(p, degrees)
        .into_iter()
        .map(|row| row.into_iter().enumerate().filter(|&(g, _)| g != drop).map(|(_, x)| x).collect())
        .collect();
    bareiss_determinant(m)
        .map(Some)
        .ok_or_else(|| Error::Degenerate("coefficient overflow in the Alexander matrix".into()))
}

/// Alexander polynomial of a knot group given with generator degrees.
pub fn alexander_polynomial_of(p: &Presentation, degrees: &[i64]) -> Result<AlexNormalForm> {
    if p.mark(crate::presentations::Mark::Meridian).is_none() {
        return Err(Error::Unmarked("meridian"));
    }
    // eliminations only substitute words in the surviving generators, whose degrees stay put
    let s = tietze_simplify_with(p, &TietzeOptions::default());
    let kept_degrees: Vec<i64> = s.kept.iter().map(|&g| degrees[g]).collect();
    let det = match square_determinant(&s.presentation, &kept_degrees)? {
        Some(d) => d,
        None => square_determinant(p, degrees)?
            .ok_or_else(|| Error::Degenerate("presentation is not of deficiency one".into()))?,
    };
    if det.is_zero() {
        return Err(Error::Degenerate("Alexander matrix has zero determinant".into()));
    }
    let nf = AlexNormalForm::new(&det);
    let at_one = nf.poly.eval(1).unwrap_or(0);
    if at_one.abs() != 1 {
        return Err(Error::Degenerate(format!("Delta(1) = {at_one}, not a knot polynomial")));
    }
    Ok(nf)
}

pub fn alexander_polynomial_group(g: &MarkedGroup) -> Result<AlexNormalForm> {
    alexander_polynomial_of(&g.presentation, &g.degrees())
}

/// Alexander polynomial of a knot, from its group.
pub fn alexander_polynomial(k: &KnotSpec) -> Result<AlexNormalForm> {
    alexander_polynomial_group(&wirtinger(k)?)
}

/// `|Delta(-1)|`.
pub fn determinant(k: &KnotSpec) -> Result<u128> {
    Ok(alexander_polynomial(k)?.determinant())
}
