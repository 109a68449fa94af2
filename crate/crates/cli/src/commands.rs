//! One function per subcommand; each fills a [`Report`].

use rimforge::{
    abelianization, alexander_polynomial, build_symplectic_pipeline, branched_cover_group, check_kd,
    cyclic_cover_homology_order, enumerate, find_commutator_witnesses, fs_distinguish, iterated_surgery,
    parse_knot, parse_presentation, parse_word, permutation_representation, reidemeister_schreier,
    tietze_simplify_with, wirtinger, AbelianInvariants, Budget, Certificate, Enumeration, Error, KdStatus,
    KdWitness, KnotSpec, Mark, Presentation, SurfaceKnotGroup, Tier, WitnessSearch, Word,
};
use serde_json::{json, Value};

use crate::report::{Report, Status};

pub type CmdResult = std::result::Result<(), Error>;

/// Default cap on group multiplications in the witness search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

fn abelian_json(a: &AbelianInvariants) -> Value {
    json!({ "text": a.to_string(), "free_rank": a.free_rank, "torsion": a.torsion })
}

fn certificate_json(c: &Certificate) -> Value {
    let mut v = json!({ "tier": c.tier.to_string(), "against": c.against });
    if let Some(inv) = &c.invariants {
        v["order"] = json!(inv.order);
        v["abelianization"] = json!(inv.abelianization.to_string());
    }
    v
}

fn words_json(p: &Presentation, names: &[String], ws: &[Word]) -> Value {
    Value::Object(
        names
            .iter()
            .zip(ws)
            .map(|(n, w)| (n.clone(), Value::String(p.word_to_string(w))))
            .collect(),
    )
}

/// Group order by enumeration; marks the report INDETERMINATE when the budget runs out.
fn order_into(r: &mut Report, key: &str, p: &Presentation, budget: &Budget) -> Result<Option<usize>, Error> {
    let s = tietze_simplify_with(p, &budget.tietze()).presentation;
    match enumerate(&s, &[], budget.max_cosets)? {
        Enumeration::Complete(t) => {
            r.result(key, t.len());
            Ok(Some(t.len()))
        }
        Enumeration::Indeterminate { max_cosets } => {
            r.result(key, format!("INDETERMINATE (more than {max_cosets} cosets)"));
            r.degrade(Status::Indeterminate);
            Ok(None)
        }
    }
}

pub fn normalize(r: &mut Report, group: Option<&str>, knot: Option<&str>) -> CmdResult {
    if let Some(g) = group {
        let p = parse_presentation(g)?;
        r.input("group", p.to_string());
        r.result("presentation", p.to_string());
    }
    if let Some(k) = knot {
        let k = parse_knot(k)?;
        r.input("knot", k.to_string());
        r.result("knot", k.to_string());
    }
    if group.is_none() && knot.is_none() {
        return Err(Error::InvalidArgument("give --group or --knot".into()));
    }
    Ok(())
}

pub fn enumerate_cmd(r: &mut Report, group: &str, subgroup: &[String], budget: &Budget) -> CmdResult {
    let p = parse_presentation(group)?;
    r.input("group", p.to_string());
    let h: Vec<Word> = subgroup.iter().map(|w| parse_word(w, p.generators())).collect::<Result<_, _>>()?;
    if !h.is_empty() {
        r.input("subgroup", h.iter().map(|w| p.word_to_string(w)).collect::<Vec<_>>());
    }
    match enumerate(&p, &h, budget.max_cosets)? {
        Enumeration::Complete(t) => {
            r.result(if h.is_empty() { "order" } else { "index" }, t.len());
            if h.is_empty() {
                let rep = permutation_representation(&t)?;
                let orders: Vec<u64> = rep.generators().iter().map(|g| g.order()).collect();
                r.result("generator_orders", words_orders(&p, &orders));
            }
        }
        Enumeration::Indeterminate { max_cosets } => {
            r.result("order", format!("INDETERMINATE (more than {max_cosets} cosets)"));
            r.degrade(Status::Indeterminate);
        }
    }
    r.result("abelianization", abelian_json(&abelianization(&p)));
    Ok(())
}

fn words_orders(p: &Presentation, orders: &[u64]) -> Value {
    Value::Object(p.generators().iter().zip(orders).map(|(n, o)| (n.clone(), json!(o))).collect())
}

pub fn simplify(r: &mut Report, group: &str, protect: usize, budget: &Budget) -> CmdResult {
    let p = parse_presentation(group)?;
    r.input("group", p.to_string());
    r.input("protect", protect);
    let opts = if protect > 0 { budget.tietze_protecting(protect) } else { budget.tietze() };
    let s = tietze_simplify_with(&p, &opts);
    r.result("presentation", s.presentation.to_string());
    r.result("generators", s.presentation.ngens());
    r.result("relators", s.presentation.relators().len());
    r.result("length", s.presentation.total_length());
    r.result("abelianization", abelian_json(&abelianization(&s.presentation)));
    Ok(())
}

pub fn branched_cover(r: &mut Report, knot: &str, d: u64, budget: &Budget) -> CmdResult {
    let k = parse_knot(knot)?;
    r.input("knot", k.to_string());
    r.input("d", d);
    let bc = branched_cover_group(&k, d, budget)?;
    order_into(r, "order", &bc.presentation, budget)?;
    r.result("abelianization", abelian_json(&abelianization(&bc.presentation)));
    r.result("presentation", bc.presentation.to_string());
    let names = bc.presentation.generators();
    r.result(
        "deck_action",
        json!({
            "t": words_json(&bc.presentation, names, &bc.deck),
            "t_inverse": words_json(&bc.presentation, names, &bc.deck_inverse),
        }),
    );
    Ok(())
}

pub fn cover_homology(r: &mut Report, knot: &str, d: u64, budget: &Budget) -> CmdResult {
    let k = parse_knot(knot)?;
    r.input("knot", k.to_string());
    r.input("d", d);
    let by_resultant = cyclic_cover_homology_order(&k, d)?;
    r.result("order", by_resultant.to_string());
    let g = wirtinger(&k)?;
    let kernel = reidemeister_schreier(&g.presentation, d, &g.degrees(), &budget.tietze())?;
    let ab = abelianization(&kernel.presentation);
    r.result("unbranched_cover_homology", abelian_json(&ab));
    r.result("homology_is_z", ab.free_rank == 1 && ab.torsion.is_empty());
    Ok(())
}

/// Splits `[(K1,m1),(K2,m2)]` at top-level commas.
pub fn parse_steps(src: &str) -> Result<Vec<(KnotSpec, i64)>, Error> {
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("steps: {msg}") };
    let s = src.trim();
    let inner = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| bad("expected [..]"))?;
    let mut items = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !inner[start..].trim().is_empty() {
        items.push(&inner[start..]);
    }
    items
        .into_iter()
        .map(|it| {
            let it = it.trim();
            let body = it.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| bad("expected (knot,m)"))?;
            let comma = body.rfind(',').ok_or_else(|| bad("missing twist count"))?;
            let m: i64 = body[comma + 1..].trim().parse().map_err(|_| bad("twist count is not an integer"))?;
            Ok((parse_knot(&body[..comma])?, m))
        })
        .collect()
}

pub fn rim_surgery(r: &mut Report, base: &str, meridian: &str, steps: &str, budget: &Budget) -> CmdResult {
    let p = parse_presentation(base)?;
    let mu = parse_word(meridian, p.generators())?;
    let steps = parse_steps(steps)?;
    r.input("base", p.to_string());
    r.input("meridian", p.word_to_string(&mu));
    r.input(
        "steps",
        format!("[{}]", steps.iter().map(|(k, m)| format!("({k},{m})")).collect::<Vec<_>>().join(",")),
    );
    let base = SurfaceKnotGroup::new(p.with_mark(Mark::Meridian, mu)?, "base")?.with_trivial_pushoff();
    r.result("assumptions", json!(["pushoff of the rim torus is nullhomotopic in the complement"]));
    let out = iterated_surgery(&base, &steps, budget)?;
    r.result("d", out.d);
    let trace: Vec<Value> = out
        .provenance
        .steps
        .iter()
        .map(|s| {
            let mut v = json!({ "knot": s.knot.to_string(), "m": s.m, "path": s.path.to_string() });
            v["certificate"] = match &s.certificate {
                Some(c) => certificate_json(c),
                None => json!({ "tier": Tier::Asserted.to_string() }),
            };
            v
        })
        .collect();
    r.result("steps", trace);
    if order_into(r, "order", &out.presentation, budget)?.is_some() {
        r.result("meridian_order", json!(out.meridian_order(budget)?));
    }
    r.result("abelianization", abelian_json(&abelianization(&out.presentation)));
    r.result("presentation", out.simplified(&budget.tietze()).to_string());
    Ok(())
}

pub fn alexander(r: &mut Report, knot: &str) -> CmdResult {
    let k = parse_knot(knot)?;
    r.input("knot", k.to_string());
    let nf = alexander_polynomial(&k)?;
    r.result("polynomial", nf.to_string());
    r.result("determinant", nf.determinant().to_string());
    r.result("palindromic", nf.palindromic);
    r.result("coefficients", nf.poly.dense().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(())
}

pub fn distinguish(r: &mut Report, knots: &str) -> CmdResult {
    let ks: Vec<KnotSpec> = knots.split(';').map(parse_knot).collect::<Result<_, _>>()?;
    r.input("knots", ks.iter().map(|k| k.to_string()).collect::<Vec<_>>());
    let polys = ks.iter().map(alexander_polynomial).collect::<Result<Vec<_>, _>>()?;
    let classes = fs_distinguish(&polys);
    r.result("polynomials", polys.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    r.result("classes", json!(classes));
    r.result("class_count", classes.len());
    r.result("assumptions", json!(["the geometric pairing hypothesis on the ambient pair is assumed"]));
    Ok(())
}

fn parse_witnesses(p: &Presentation, src: &str) -> Result<Vec<(Word, Word)>, Error> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (v, w) = pair.split_once(',').ok_or_else(|| Error::Parse { pos: 0, msg: format!("witness `{pair}` needs v,w") })?;
            Ok((parse_word(v, p.generators())?, parse_word(w, p.generators())?))
        })
        .collect()
}

fn pairs_json(p: &Presentation, pairs: &[(Word, Word)]) -> Value {
    json!(pairs.iter().map(|(v, w)| format!("[{}, {}]", p.word_to_string(v), p.word_to_string(w))).collect::<Vec<_>>())
}

/// Runs (K_d) and, when it holds, the witness search; returns the verified witness.
fn kd_common(r: &mut Report, group: &str, gamma: &str, witnesses: Option<&str>, search: u64, budget: &Budget) -> Result<Option<KdWitness>, Error> {
    let p = parse_presentation(group)?;
    let g = parse_word(gamma, p.generators())?;
    r.input("group", p.to_string());
    r.input("gamma", p.word_to_string(&g));
    let status = check_kd(&p, &g, budget)?;
    r.result("kd", status.to_string());
    let d = match status {
        KdStatus::Holds(d) => d,
        KdStatus::Fails(_) => return Ok(None),
        KdStatus::Indeterminate => {
            r.degrade(Status::Indeterminate);
            return Ok(None);
        }
    };
    let pairs = match witnesses {
        Some(src) => {
            let pairs = parse_witnesses(&p, src)?;
            r.input("witnesses", pairs_json(&p, &pairs));
            pairs
        }
        None => match find_commutator_witnesses(&p, &g, d, search, budget)? {
            WitnessSearch::Found(pairs) => pairs,
            WitnessSearch::Indeterminate(why) => {
                r.result("witnesses", format!("INDETERMINATE ({why})"));
                r.degrade(Status::Indeterminate);
                return Ok(None);
            }
        },
    };
    let kd = KdWitness::verify(p.clone(), g, pairs, budget)?;
    r.result("witnesses", pairs_json(&p, &kd.witnesses));
    r.result("commutator_count", kd.witnesses.len());
    r.result("identity_tier", kd.identity_tier.to_string());
    Ok(Some(kd))
}

pub fn kd(r: &mut Report, group: &str, gamma: &str, witnesses: Option<&str>, search: u64, budget: &Budget) -> CmdResult {
    kd_common(r, group, gamma, witnesses, search, budget).map(|_| ())
}

pub fn symplectic(r: &mut Report, group: &str, gamma: &str, witnesses: Option<&str>, search: u64, budget: &Budget) -> CmdResult {
    let Some(kd) = kd_common(r, group, gamma, witnesses, search, budget)? else {
        if r.status == Status::Ok {
            return Err(Error::WitnessFailed("condition (K_d) fails".into()));
        }
        return Ok(());
    };
    let out = build_symplectic_pipeline(&kd, budget)?;
    r.result("xd", out.xd.to_string());
    r.result("md", out.md.to_string());
    r.result("m", out.m.to_string());
    r.result("md_certificate", certificate_json(&out.md_certificate));
    r.result("m_certificate", certificate_json(&out.m_certificate));
    r.result("reduced_relation_tier", out.reduced_relation.to_string());
    r.result("tier", out.tier().to_string());
    r.result("notes", json!(out.notes));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_split_at_top_level() {
        let s = parse_steps("[(twobridge(5,3),2),(sum(torus(3,5),mirror(torus(3,5))),3)]").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], (KnotSpec::two_bridge(5, 3).unwrap(), 2));
        assert_eq!(s[1].1, 3);
        assert!(parse_steps("[]").unwrap().is_empty());
        assert!(parse_steps("(trefoil,2)").is_err());
        assert!(parse_steps("[(trefoil)]").is_err());
    }
}
