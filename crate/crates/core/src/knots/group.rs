//! Knot groups with a marked meridian: Wirtinger, two-bridge and connected-sum presentations.

use super::diagram::OrientedDiagram;
use super::spec::KnotSpec;
use crate::error::{Error, Result};
use crate::presentations::{Letter, Mark, Presentation, Word};

/// A knot group presentation with a meridian mark. Every generator is a meridian, so each
/// maps to `t` under abelianization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGroup {
    pub presentation: Presentation,
}

impl MarkedGroup {
    pub fn meridian(&self) -> &Word {
        self.presentation.mark(Mark::Meridian).expect("knot groups carry a meridian")
    }

    pub fn longitude(&self) -> Option<&Word> {
        self.presentation.mark(Mark::Longitude)
    }

    /// Degree of every generator under `G -> H_1 = Z`.
    pub fn degrees(&self) -> Vec<i64> {
        vec![1; self.presentation.ngens()]
    }

    fn unknot() -> Self {
        let p = Presentation::free(vec!["x0".into()])
            .with_mark(Mark::Meridian, Word::gen(0))
            .and_then(|p| p.with_mark(Mark::Longitude, Word::identity()))
            .unwrap();
        MarkedGroup { presentation: p }
    }
}

/// Wirtinger presentation of an oriented diagram: one generator per arc, numbered in
/// traversal order, one relator per crossing with the last dropped. Marks the meridian
/// `x0` and the zero-framed longitude based at the start of edge `0`.
pub fn diagram_group(d: &OrientedDiagram) -> MarkedGroup {
    if d.crossings.is_empty() {
        return MarkedGroup::unknot();
    }
    // an arc runs from an under_out edge to the next under_in edge; arcs are numbered from
    // edge 0, and the arc that edge 0 sits in absorbs the edges wrapping around to it
    let mut starts_arc = vec![false; d.edges];
    for c in &d.crossings {
        starts_arc[c.under_out] = true;
    }
    let mut arc_of = vec![0usize; d.edges];
    let mut arc = 0;
    for e in 1..d.edges {
        if starts_arc[e] {
            arc += 1;
        }
        arc_of[e] = arc;
    }
    let mut narcs = arc + 1;
    if !starts_arc[0] {
        arc_of.iter_mut().filter(|a| **a == arc).for_each(|a| *a = 0);
        narcs -= 1;
    }
    let mut rels = Vec::with_capacity(d.crossings.len());
    for c in &d.crossings {
        let o = Word::gen(arc_of[c.over_in]);
        let i = Word::gen(arc_of[c.under_in]);
        let out = Word::gen(arc_of[c.under_out]);
        let s = c.sign as i64;
        rels.push(o.pow(s).mul(&i).mul(&o.pow(-s)).mul(&out.inverse()));
    }
    // any one crossing relator is a consequence of the others
    rels.pop();

    let mut under_at: Vec<Option<usize>> = vec![None; d.edges];
    for (k, c) in d.crossings.iter().enumerate() {
        under_at[c.under_in] = Some(k);
    }
    let mut lon = Vec::new();
    for e in 0..d.edges {
        if let Some(k) = under_at[e] {
            let c = &d.crossings[k];
            lon.push(Letter::new(arc_of[c.over_in], c.sign > 0));
        }
    }
    let lon = Word::from_letters(lon).mul(&Word::gen(0).pow(d.writhe()));

    let names = (0..narcs).map(|a| format!("x{a}")).collect();
    let p = Presentation::new(names, rels)
        .and_then(|p| p.with_mark(Mark::Meridian, Word::gen(0)))
        .and_then(|p| p.with_mark(Mark::Longitude, lon))
        .expect("arc indices are in range");
    MarkedGroup { presentation: p }
}

/// `<u,v | w u = v w>` with `w = u^e1 v^e2 u^e3 ...` of length `p - 1`,
/// `e_i = (-1)^floor(i q' / p)` and `q'` the odd representative of `q` in `(-p, p)`.
pub fn two_bridge_presentation(p: u64, q: u64) -> Result<MarkedGroup> {
    let spec = KnotSpec::two_bridge(p as i64, q as i64)?;
    let KnotSpec::TwoBridge { p, q } = spec else { unreachable!() };
    if p == 1 {
        let g = Presentation::free(vec!["u".into()]).with_mark(Mark::Meridian, Word::gen(0))?;
        return Ok(MarkedGroup { presentation: g });
    }
    let (p, q) = (p as i64, q as i64);
    let q_odd = if q % 2 == 1 { q } else { q - p };
    let letters = (1..p).map(|i| {
        let e = (i * q_odd).div_euclid(p);
        Letter::new(((i - 1) % 2) as usize, e.rem_euclid(2) == 1)
    });
    let w = Word::from_letters(letters);
    let (u, v) = (Word::gen(0), Word::gen(1));
    let rel = w.mul(&u).mul(&w.inverse()).mul(&v.inverse());
    let g = Presentation::new(vec!["u".into(), "v".into()], vec![rel])?
        .with_mark(Mark::Meridian, Word::gen(0))?;
    Ok(MarkedGroup { presentation: g })
}

fn sum_group(a: &MarkedGroup, b: &MarkedGroup) -> MarkedGroup {
    let mut p = a.presentation.clone();
    let offset = p.free_product_in_place(&b.presentation);
    let shift: Vec<Word> = (0..b.presentation.ngens()).map(|g| Word::gen(g + offset)).collect();
    let mb = b.meridian().map_gens(&shift);
    let names: Vec<String> = (0..p.ngens()).map(|g| format!("x{g}")).collect();
    let mut rels = p.relators().to_vec();
    rels.push(a.meridian().mul(&mb.inverse()));
    let mut out = Presentation::new(names, rels)
        .and_then(|q| q.with_mark(Mark::Meridian, a.meridian().clone()))
        .expect("indices are in range");
    if let (Some(la), Some(lb)) = (a.longitude(), b.longitude()) {
        out.set_mark(Mark::Longitude, la.mul(&lb.map_gens(&shift))).unwrap();
    }
    MarkedGroup { presentation: out }
}

/// Knot group with marked meridian (and longitude for diagram inputs).
pub fn wirtinger(k: &KnotSpec) -> Result<MarkedGroup> {
    fn go(k: &KnotSpec, flip: bool) -> Result<MarkedGroup> {
        match k {
            KnotSpec::Mirror(inner) => go(inner, !flip),
            KnotSpec::Sum(a, b) => Ok(sum_group(&go(a, flip)?, &go(b, flip)?)),
            KnotSpec::TwoBridge { p, q } => {
                let q = if flip { (p - q) % p } else { *q };
                two_bridge_presentation(*p, q)
            }
            KnotSpec::Torus { p, q } => {
                let q = if flip { -q } else { *q };
                Ok(diagram_group(&OrientedDiagram::torus(*p, q)?))
            }
            KnotSpec::Diagram(code) => {
                let d = OrientedDiagram::from_pd(code)?;
                Ok(diagram_group(&if flip { d.mirror() } else { d }))
            }
        }
    }
    go(k, false)
}

/// Parameters of a torus spec must describe a knot.
pub fn check_knot(k: &KnotSpec) -> Result<()> {
    match k {
        KnotSpec::Torus { p, q } => KnotSpec::torus(*p, *q).map(|_| ()),
        KnotSpec::TwoBridge { p, q } => KnotSpec::two_bridge(*p as i64, *q as i64).map(|_| ()),
        KnotSpec::Diagram(code) => OrientedDiagram::from_pd(code).map(|_| ()),
        KnotSpec::Sum(a, b) => check_knot(a).and_then(|_| check_knot(b)),
        KnotSpec::Mirror(a) => check_knot(a),
    }
    .map_err(|e| match e {
        Error::InvalidKnot(m) => Error::InvalidKnot(format!("{k}: {m}")),
        e => e,
    })
}
