//! Structural knot descriptions and their text grammar.
//!
//! ```text
//! knot := "twobridge(" int "," int ")" | "torus(" int "," int ")" | "mirror(" knot ")"
//!       | "sum(" knot "," knot ")" | "jn(" knot "," int ")" | "pd[" quad ("," quad)* "]"
//!       | name
//! quad := "(" int "," int "," int "," int ")"
//! ```
//!
//! Case- and whitespace-insensitive. Names: `unknot`, `trefoil`, `figure8`, and the shipped
//! diagrams `3_1`, `4_1`, `5_1`, `5_2`, `6_1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::presentations::parse::Cursor;

/// A planar diagram crossing `(a, b, c, d)`: labels counterclockwise from the incoming
/// under-edge `a`.
pub type PdCrossing = [i64; 4];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotSpec {
    /// Two-bridge knot `K(p,q)`, stored with `0 <= q < p`.
    TwoBridge { p: u64, q: u64 },
    /// Torus knot; a negative parameter product denotes the mirror image.
    Torus { p: i64, q: i64 },
    Diagram(Vec<PdCrossing>),
    Sum(Box<KnotSpec>, Box<KnotSpec>),
    Mirror(Box<KnotSpec>),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Shipped planar diagram codes.
pub fn named_diagram(name: &str) -> Option<Vec<PdCrossing>> {
    let code: &[PdCrossing] = match name {
        "3_1" => &[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]],
        "4_1" => &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
        "5_1" => &[[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]],
        "5_2" => &[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]],
        "6_1" => &[
            [1, 4, 2, 5],
            [7, 10, 8, 11],
            [3, 9, 4, 8],
            [9, 3, 10, 2],
            [5, 12, 6, 1],
            [11, 6, 12, 7],
        ],
        _ => return None,
    };
    Some(code.to_vec())
}

impl KnotSpec {
    pub fn unknot() -> Self {
        KnotSpec::TwoBridge { p: 1, q: 0 }
    }

    pub fn trefoil() -> Self {
        KnotSpec::TwoBridge { p: 3, q: 1 }
    }

    pub fn figure_eight() -> Self {
        KnotSpec::TwoBridge { p: 5, q: 3 }
    }

    /// Two-bridge knot with `q` normalized into `0 <= q < p`.
    pub fn two_bridge(p: i64, q: i64) -> Result<Self> {
        if p < 1 || p % 2 == 0 {
            return Err(Error::InvalidKnot(format!("two-bridge p must be odd and positive, got {p}")));
        }
        let p = p as u64;
        let q = q.rem_euclid(p as i64) as u64;
        if gcd(p, q) != 1 {
            return Err(Error::InvalidKnot(format!("two-bridge parameters ({p},{q}) are not coprime")));
        }
        Ok(KnotSpec::TwoBridge { p, q })
    }

    pub fn torus(p: i64, q: i64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidKnot("torus knot parameters must be nonzero".into()));
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(Error::InvalidKnot(format!("torus parameters ({p},{q}) are not coprime")));
        }
        Ok(KnotSpec::Torus { p, q })
    }

    pub fn diagram(code: Vec<PdCrossing>) -> Result<Self> {
        super::diagram::OrientedDiagram::from_pd(&code)?;
        Ok(KnotSpec::Diagram(code))
    }

    pub fn sum(a: KnotSpec, b: KnotSpec) -> Self {
        KnotSpec::Sum(Box::new(a), Box::new(b))
    }

    pub fn mirror(k: KnotSpec) -> Self {
        KnotSpec::Mirror(Box::new(k))
    }

    /// `n`-fold sum of `J # -J`; the unknot for `n = 0`.
    pub fn jn(j: &KnotSpec, n: usize) -> Self {
        let unit = KnotSpec::sum(j.clone(), KnotSpec::mirror(j.clone()));
        (1..n).fold(if n == 0 { KnotSpec::unknot() } else { unit.clone() }, |acc, _| {
            KnotSpec::sum(acc, unit.clone())
        })
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "unknot" => Some(KnotSpec::unknot()),
            "trefoil" => Some(KnotSpec::trefoil()),
            "figure8" | "figureeight" => Some(KnotSpec::figure_eight()),
            _ => named_diagram(name).map(KnotSpec::Diagram),
        }
    }

    /// Pushes mirrors down to the leaves.
    pub fn mirror_normalized(&self) -> KnotSpec {
        fn go(k: &KnotSpec, flip: bool) -> KnotSpec {
            match k {
                KnotSpec::Mirror(inner) => go(inner, !flip),
                KnotSpec::Sum(a, b) => KnotSpec::sum(go(a, flip), go(b, flip)),
                KnotSpec::TwoBridge { p, q } if flip => {
                    KnotSpec::TwoBridge { p: *p, q: (*p - *q) % *p }
                }
                KnotSpec::Torus { p, q } if flip => KnotSpec::Torus { p: *p, q: -*q },
                KnotSpec::Diagram(code) if flip => KnotSpec::mirror(KnotSpec::Diagram(code.clone())),
                other => other.clone(),
            }
        }
        go(self, false)
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::TwoBridge { p, q } => write!(f, "twobridge({p},{q})"),
            KnotSpec::Torus { p, q } => write!(f, "torus({p},{q})"),
            KnotSpec::Diagram(code) => {
                f.write_str("pd[")?;
                for (i, [a, b, c, d]) in code.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({a},{b},{c},{d})")?;
                }
                f.write_str("]")
            }
            KnotSpec::Sum(a, b) => write!(f, "sum({a},{b})"),
            KnotSpec::Mirror(k) => write!(f, "mirror({k})"),
        }
    }
}

fn name_token(cur: &mut Cursor<'_>) -> Result<String> {
    let mut s = String::new();
    while let Some(c) = cur.peek() {
        if c.is_ascii_alphanumeric() || c == '_' {
            s.push(c);
            cur.bump();
        } else {
            break;
        }
    }
    if s.is_empty() {
        return cur.error("expected knot");
    }
    Ok(s)
}

fn parse_knot_at(cur: &mut Cursor<'_>) -> Result<KnotSpec> {
    let pos = cur.offset();
    let name = name_token(cur)?;
    let at = |e: Error| match e {
        Error::InvalidKnot(msg) => Error::Parse { pos, msg },
        other => other,
    };
    match name.as_str() {
        "twobridge" | "torus" => {
            cur.expect('(')?;
            let p = cur.integer()?;
            cur.expect(',')?;
            let q = cur.integer()?;
            cur.expect(')')?;
            if name == "torus" {
                KnotSpec::torus(p, q).map_err(at)
            } else {
                KnotSpec::two_bridge(p, q).map_err(at)
            }
        }
        "mirror" => {
            cur.expect('(')?;
            let k = parse_knot_at(cur)?;
            cur.expect(')')?;
            Ok(KnotSpec::mirror(k))
        }
        "sum" => {
            cur.expect('(')?;
            let a = parse_knot_at(cur)?;
            cur.expect(',')?;
            let b = parse_knot_at(cur)?;
            cur.expect(')')?;
            Ok(KnotSpec::sum(a, b))
        }
        "jn" => {
            cur.expect('(')?;
            let j = parse_knot_at(cur)?;
            cur.expect(',')?;
            let npos = cur.offset();
            let n = cur.integer()?;
            cur.expect(')')?;
            if n < 0 {
                return Err(Error::Parse { pos: npos, msg: "jn count must be nonnegative".into() });
            }
            Ok(KnotSpec::jn(&j, n as usize))
        }
        "pd" => {
            cur.expect('[')?;
            let mut code = Vec::new();
            if cur.peek() != Some(']') {
                loop {
                    cur.expect('(')?;
                    let mut quad = [0i64; 4];
                    for (i, x) in quad.iter_mut().enumerate() {
                        if i > 0 {
                            cur.expect(',')?;
                        }
                        *x = cur.integer()?;
                    }
                    cur.expect(')')?;
                    code.push(quad);
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            cur.expect(']')?;
            KnotSpec::diagram(code).map_err(at)
        }
        other => KnotSpec::named(other)
            .ok_or_else(|| Error::Parse { pos, msg: format!("unknown knot `{other}`") }),
    }
}

/// Parses a knot spec such as `sum(torus(3,5), mirror(torus(3,5)))`.
pub fn parse_knot(src: &str) -> Result<KnotSpec> {
    let lower = src.to_ascii_lowercase();
    let mut cur = Cursor::new(&lower);
    let k = parse_knot_at(&mut cur)?;
    if !cur.at_end() {
        return cur.error("trailing input after knot");
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_compound_specs() {
        let k = parse_knot("Sum( Torus(3,5), MIRROR(torus(3,5)) )").unwrap();
        assert_eq!(k.to_string(), "sum(torus(3,5),mirror(torus(3,5)))");
        assert_eq!(parse_knot(&k.to_string()).unwrap(), k);
        assert_eq!(parse_knot("twobridge(5,-2)").unwrap(), KnotSpec::TwoBridge { p: 5, q: 3 });
        assert_eq!(parse_knot("trefoil").unwrap(), KnotSpec::trefoil());
    }

    #[test]
    fn pd_round_trip() {
        let k = parse_knot("pd[(1,5,2,4),(3,1,4,6),(5,3,6,2)]").unwrap();
        assert_eq!(k, KnotSpec::named("3_1").unwrap());
        assert_eq!(parse_knot(&k.to_string()).unwrap(), k);
    }

    #[test]
    fn jn_structure() {
        assert_eq!(KnotSpec::jn(&KnotSpec::trefoil(), 0), KnotSpec::unknot());
        let j2 = parse_knot("jn(trefoil,2)").unwrap();
        let unit = KnotSpec::sum(KnotSpec::trefoil(), KnotSpec::mirror(KnotSpec::trefoil()));
        assert_eq!(j2, KnotSpec::sum(unit.clone(), unit));
    }

    #[test]
    fn invalid_parameters_are_rejected_with_positions() {
        assert!(matches!(parse_knot("twobridge(4,1)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_knot("sum(trefoil, torus(2,4))"), Err(Error::Parse { pos: 13, .. })));
        assert!(parse_knot("twobridge(9,3)").is_err());
        assert!(parse_knot("pd[(1,2,3,4)]").is_err());
        assert!(matches!(parse_knot("knot"), Err(Error::Parse { .. })));
    }

    #[test]
    fn mirror_normalization() {
        let k = KnotSpec::mirror(KnotSpec::sum(KnotSpec::TwoBridge { p: 5, q: 2 }, KnotSpec::Torus { p: 2, q: 3 }));
        assert_eq!(
            k.mirror_normalized(),
            KnotSpec::sum(KnotSpec::TwoBridge { p: 5, q: 3 }, KnotSpec::Torus { p: 2, q: -3 })
        );
        let twice = KnotSpec::mirror(KnotSpec::mirror(KnotSpec::trefoil()));
        assert_eq!(twice.mirror_normalized(), KnotSpec::trefoil());
    }
}
