//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness so the
//! lines always reach the terminal.

use std::process::Command;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rimforge::*;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn knot(s: &str) -> KnotSpec {
    parse_knot(s).expect("corpus knots parse")
}

fn within(limit: Duration, start: Instant, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn exact_order(p: &Presentation, budget: &Budget) -> Result<usize, String> {
    let s = tietze_simplify_with(p, &budget.tietze()).presentation;
    enumerate(&s, &[], budget.max_cosets)
        .map_err(e)?
        .index()
        .ok_or_else(|| "enumeration did not complete".to_string())
}

fn quaternionic() -> Check {
    let b = Budget::default();
    let start = Instant::now();
    let bc = branched_cover_group(&KnotSpec::trefoil(), 3, &b).map_err(e)?;
    let h = exact_order(&bc.presentation, &b)?;
    ensure(h == 8, || format!("cover order {h}, expected 8"))?;
    let ab = abelianization(&bc.presentation);
    ensure(ab.free_rank == 0 && ab.torsion == [2, 2], || format!("cover abelianization {ab}"))?;
    let g = d_twist_group(&SurfaceKnotGroup::cyclic(3), &KnotSpec::trefoil(), &b).map_err(e)?;
    let n = g.order(&b).map_err(e)?;
    ensure(n == Some(24), || format!("twisted group order {n:?}, expected 24"))?;
    let mo = g.meridian_order(&b).map_err(e)?;
    ensure(mo == Some(3), || format!("meridian order {mo:?}, expected 3"))?;
    within(Duration::from_secs(5), start, "criterion")
}

fn dihedral() -> Check {
    let b = Budget::default();
    for (p, q) in [(3i64, 1i64), (5, 3), (7, 3)] {
        let start = Instant::now();
        let k = KnotSpec::two_bridge(p, q).map_err(e)?;
        let g = d_twist_group(&SurfaceKnotGroup::cyclic(2), &k, &b).map_err(e)?;
        let n = exact_order(&g.presentation, &b)?;
        ensure(n == 2 * p as usize, || format!("K({p},{q}): order {n}, expected {}", 2 * p))?;
        let ab = abelianization(&g.presentation);
        ensure(ab == AbelianInvariants::cyclic(2), || format!("K({p},{q}): abelianization {ab}"))?;
        within(Duration::from_secs(5), start, &format!("K({p},{q})"))?;
    }
    Ok(())
}

fn poincare() -> Check {
    let b = Budget::default();
    for (src, d) in [("torus(2,3)", 5u64), ("torus(2,5)", 3), ("torus(3,5)", 2)] {
        let start = Instant::now();
        let bc = branched_cover_group(&knot(src), d, &b).map_err(e)?;
        let n = exact_order(&bc.presentation, &b)?;
        ensure(n == 120, || format!("{src} d={d}: order {n}, expected 120"))?;
        within(Duration::from_secs(30), start, &format!("{src} d={d}"))?;
    }
    Ok(())
}

fn d10_base() -> SurfaceKnotGroup {
    let p = parse_presentation("<a,b | a^2, b^5, (a*b)^2>").unwrap();
    let mu = Word::gen(0);
    SurfaceKnotGroup::new(p.with_mark(Mark::Meridian, mu).unwrap(), "D10").unwrap().with_trivial_pushoff()
}

fn preservation() -> Check {
    let b = Budget::default();
    let base = d10_base();
    for src in ["trefoil", "figure8", "jn(torus(3,5),1)"] {
        let start = Instant::now();
        let k = knot(src);
        let three = surgery_step(&base, &k, 3, &b).map_err(e)?;
        let n = exact_order(&three.presentation, &b)?;
        ensure(n == 10, || format!("{src} m=3: order {n}, expected 10"))?;
        let ab = abelianization(&three.presentation);
        ensure(ab == AbelianInvariants::cyclic(2), || format!("{src} m=3: abelianization {ab}"))?;
        let cert = three.provenance.steps.last().and_then(|s| s.certificate.clone());
        ensure(cert.is_some_and(|c| c.tier <= Tier::T2), || format!("{src} m=3: not certified"))?;
        let one = m_twist_group(&base, &k, 1, &b).map_err(e)?;
        ensure(tietze_reduces_to(&one.presentation, &base.presentation, &b), || {
            format!("{src} m=1: no Tietze reduction to the base")
        })?;
        within(Duration::from_secs(30), start, src)?;
    }
    Ok(())
}

fn harness() -> Check {
    let b = Budget::default();
    let start = Instant::now();
    let j = knot("torus(3,5)");
    let family: Vec<KnotSpec> = (1..=5).map(|n| KnotSpec::jn(&j, n)).collect();
    let polys: Vec<AlexNormalForm> = family.iter().map(alexander_polynomial).collect::<Result<_>>().map_err(e)?;
    for (n, p) in polys.iter().enumerate() {
        ensure(p.determinant() == 1, || format!("J_{}: determinant {}", n + 1, p.determinant()))?;
    }
    let classes = fs_distinguish(&polys);
    ensure(classes.len() == 5, || format!("coefficient multisets give {} classes", classes.len()))?;
    let base = SurfaceKnotGroup::cyclic(2);
    let k53 = KnotSpec::two_bridge(5, 3).map_err(e)?;
    for (n, jn) in family.iter().enumerate() {
        let g = iterated_surgery(&base, &[(k53.clone(), 2), (jn.clone(), 3)], &b).map_err(e)?;
        let order = exact_order(&g.presentation, &b)?;
        ensure(order == 10, || format!("J_{}: order {order}, expected 10", n + 1))?;
        ensure(g.provenance.steps.iter().all(|s| s.certificate.is_some()), || format!("J_{}: uncertified step", n + 1))?;
    }
    within(Duration::from_secs(120), start, "harness")
}

const CORPUS: [&str; 7] = ["unknot", "trefoil", "figure8", "twobridge(5,1)", "twobridge(7,3)", "torus(2,5)", "torus(3,5)"];

fn oracle_equivalence() -> Check {
    let b = Budget::default();
    let start = Instant::now();
    for src in CORPUS {
        let k = knot(src);
        let g = wirtinger(&k).map_err(e)?;
        for d in 2..=6u64 {
            let by_resultant = cyclic_cover_homology_order(&k, d).map_err(e)?;
            let kernel = reidemeister_schreier(&g.presentation, d, &g.degrees(), &b.tietze()).map_err(e)?;
            let ab = abelianization(&kernel.presentation);
            ensure(ab.free_rank >= 1, || format!("{src} d={d}: kernel abelianization {ab} lacks a free summand"))?;
            let by_rs = if ab.free_rank == 1 {
                HomologyOrder::Finite(ab.torsion_order().into())
            } else {
                HomologyOrder::Infinite
            };
            ensure(by_rs == by_resultant, || format!("{src} d={d}: resultant {by_resultant}, Reidemeister-Schreier {by_rs}"))?;
            let is_z = ab.free_rank == 1 && ab.torsion.is_empty();
            ensure(is_z == (by_resultant.as_u128() == Some(1)), || format!("{src} d={d}: Z test disagrees"))?;
        }
    }
    within(Duration::from_secs(120), start, "oracle sweep")
}

fn symplectic_pipeline() -> Check {
    let b = Budget::default();
    for (src, gamma, order) in [("<x | x^2>", "x", 2usize), ("<x | x^6>", "x", 6), ("<a,b | a^2, b^5, (a*b)^2>", "a", 10)] {
        let start = Instant::now();
        let g = parse_presentation(src).map_err(e)?;
        let w = parse_word(gamma, g.generators()).map_err(e)?;
        let kd = KdWitness::verify(g.clone(), w, Vec::new(), &b).map_err(e)?;
        let out = build_symplectic_pipeline(&kd, &b).map_err(e)?;
        let md = &out.md_certificate;
        ensure(md.tier <= Tier::T2, || format!("{src}: M_d certified only at {}", md.tier))?;
        let inv = md.invariants.as_ref().ok_or_else(|| format!("{src}: no invariants for M_d"))?;
        ensure(inv.order == Some(order), || format!("{src}: M_d order {:?}", inv.order))?;
        ensure(inv.abelianization == abelianization(&g), || format!("{src}: M_d abelianization {}", inv.abelianization))?;
        ensure(out.m_certificate.tier <= Tier::T2, || format!("{src}: M certified only at {}", out.m_certificate.tier))?;
        let m = exact_order(&out.m, &b)?;
        ensure(m == 1, || format!("{src}: pi_1(M) has order {m}"))?;
        within(Duration::from_secs(60), start, src)?;
    }
    Ok(())
}

fn perturbed(p: &Presentation, runner: &mut TestRunner) -> Presentation {
    let moves = proptest::collection::vec(
        (0u8..4, proptest::collection::vec((0usize..8, proptest::bool::ANY), 0..5), 0usize..1000),
        1..8,
    );
    let ms = moves.new_tree(runner).expect("strategy never rejects").current();
    let mut names = p.generators().to_vec();
    let mut rels = p.relators().to_vec();
    for (kind, raw, k) in ms {
        let n = names.len();
        let w = Word::from_letters(raw.iter().map(|&(g, inv)| Letter::new(g % n, inv)));
        match kind {
            0 => {
                names.push(format!("n{n}"));
                rels.push(Word::gen(n).inverse().mul(&w));
            }
            1 if !rels.is_empty() => {
                let a = rels[k % rels.len()].clone();
                let b = rels[(k / 7) % rels.len()].clone();
                rels.push(a.mul(&b.conjugate_by(&w)));
            }
            2 if !rels.is_empty() => {
                let i = k % rels.len();
                rels[i] = rels[i].rotated(k % rels[i].len().max(1)).inverse();
            }
            _ => {
                let to: Vec<Word> = (0..n).map(|g| Word::gen((g + k) % n)).collect();
                rels = rels.iter().map(|r| r.map_gens(&to)).collect();
                let mut moved = names.clone();
                for g in 0..n {
                    moved[(g + k) % n] = names[g].clone();
                }
                names = moved;
            }
        }
    }
    Presentation::new(names, rels).expect("indices stay in range")
}

fn properties() -> Check {
    let b = Budget::default();
    for src in CORPUS {
        let nf = alexander_polynomial(&knot(src)).map_err(e)?;
        let at_one = nf.poly.eval(1).unwrap_or(0);
        ensure(at_one.abs() == 1, || format!("{src}: Delta(1) = {at_one}"))?;
        let flipped = AlexNormalForm::new(&nf.poly.invert_variable());
        ensure(flipped.coefficient_multiset() == nf.coefficient_multiset() && nf.palindromic, || {
            format!("{src}: coefficients are not symmetric")
        })?;
    }
    let mut pairs = 0;
    for src in CORPUS {
        for d in 2..=6u64 {
            let bc = branched_cover_group(&knot(src), d, &b).map_err(e)?;
            let Some(h) = group_order(&bc.presentation, 200_000).map_err(e)? else { continue };
            let g = d_twist_group(&SurfaceKnotGroup::cyclic(d), &knot(src), &b).map_err(e)?;
            let n = exact_order(&g.presentation, &b)?;
            ensure(n == d as usize * h, || format!("{src} d={d}: |G| = {n}, d|H| = {}", d as usize * h))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 16, || format!("only {pairs} (knot, d) pairs completed"))?;
    let bases: Vec<Presentation> = [
        "<a | a^5>",
        "<a,b | a^2, b^5, (a*b)^2>",
        "<i,j | i^4, i^2 = j^2, j^-1*i*j = i^-1>",
        "<x,y | x*y*x = y*x*y, x^3>",
        "<a,b | [a,b]>",
        "<x,y | x*y*x = y*x*y>",
    ]
    .iter()
    .map(|s| parse_presentation(s).unwrap())
    .collect();
    let mut runner = TestRunner::deterministic();
    let exe = env!("CARGO_BIN_EXE_rimforge");
    for i in 0..100 {
        let p = &bases[i % bases.len()];
        let q = perturbed(p, &mut runner);
        let expected = abelianization(p);
        ensure(abelianization(&q) == expected, || format!("perturbation {i}: abelianization changed"))?;
        let s = tietze_simplify_with(&q, &b.tietze()).presentation;
        ensure(abelianization(&s) == expected, || format!("perturbation {i}: simplification changed abelianization"))?;
        if i % 10 == 0 {
            let printed = q.to_string();
            let out = Command::new(exe)
                .args(["normalize", "--group", &printed, "--format", "json"])
                .output()
                .map_err(|err| err.to_string())?;
            let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|err| err.to_string())?;
            let back = report["results"]["presentation"].as_str().unwrap_or_default();
            ensure(back == printed, || format!("round trip changed `{printed}` to `{back}`"))?;
            ensure(parse_presentation(back).ok().as_ref() == Some(&q), || format!("`{back}` parses differently"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 quaternionic cover and order-24 twist", quaternionic),
        ("2 dihedral family", dihedral),
        ("3 order-120 covers", poincare),
        ("4 group preservation over D10", preservation),
        ("5 determinant-one family harness", harness),
        ("6 resultant against Reidemeister-Schreier", oracle_equivalence),
        ("7 symplectic pipeline", symplectic_pipeline),
        ("8 property suites", properties),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
