//! Condition (K_d), commutator witnesses and the presentation pipeline of the symplectic
//! surface construction.

use std::collections::HashMap;
use std::fmt;

use crate::certify::{certify_isomorphic, invariants, tietze_reduces_to, Budget, Certificate, Tier};
use crate::enumeration::{enumerate, permutation_representation, Enumeration, Perm, PermutationRep};
use crate::error::{Error, Result};
use crate::presentations::{abelianization, Letter, Mark, Presentation, Word};

/// Largest group order searched for commutator witnesses.
pub const MAX_SEARCH_ORDER: usize = 10_000;
/// Most commutators in a searched witness.
pub const MAX_COMMUTATORS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KdStatus {
    Holds(u64),
    Fails(String),
    Indeterminate,
}

impl fmt::Display for KdStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KdStatus::Holds(d) => write!(f, "HOLDS({d})"),
            KdStatus::Fails(r) => write!(f, "FAILS({r})"),
            KdStatus::Indeterminate => f.write_str("INDETERMINATE"),
        }
    }
}

/// `H_1(G) = Z/d` and `G / <<gamma>>` trivial.
pub fn check_kd(group: &Presentation, gamma: &Word, budget: &Budget) -> Result<KdStatus> {
    if let Some(g) = gamma.max_gen().filter(|&g| g >= group.ngens()) {
        return Err(Error::GeneratorOutOfRange { index: g, count: group.ngens() });
    }
    let h1 = abelianization(group);
    let Some(d) = h1.finite_cyclic_order() else {
        return Ok(KdStatus::Fails(format!("H1 = {h1} is not finite cyclic")));
    };
    let q = group.quotient_by_normal_closure(std::slice::from_ref(gamma))?;
    let q = crate::presentations::tietze_simplify_with(&q, &budget.tietze()).presentation;
    Ok(match enumerate(&q, &[], budget.max_cosets)? {
        Enumeration::Complete(t) if t.len() == 1 => KdStatus::Holds(d),
        Enumeration::Complete(t) => {
            KdStatus::Fails(format!("gamma does not normally generate: quotient has order {}", t.len()))
        }
        Enumeration::Indeterminate { .. } => KdStatus::Indeterminate,
    })
}

/// A group satisfying (K_d) with `gamma^d = prod [v_i, w_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KdWitness {
    pub group: Presentation,
    pub gamma: Word,
    pub d: u64,
    pub witnesses: Vec<(Word, Word)>,
    /// T2 when the commutator identity was checked in the regular representation.
    pub identity_tier: Tier,
}

fn regular_rep(group: &Presentation, budget: &Budget) -> Result<Option<PermutationRep>> {
    match enumerate(group, &[], budget.max_cosets)? {
        Enumeration::Complete(t) => Ok(Some(permutation_representation(&t)?)),
        Enumeration::Indeterminate { .. } => Ok(None),
    }
}

fn commutator_product(pairs: &[(Word, Word)]) -> Word {
    pairs.iter().fold(Word::identity(), |acc, (v, w)| acc.mul(&Word::commutator(v, w)))
}

impl KdWitness {
    /// Checks (K_d) and the commutator identity. Groups too large to enumerate keep the
    /// identity at tier ASSERTED.
    pub fn verify(group: Presentation, gamma: Word, witnesses: Vec<(Word, Word)>, budget: &Budget) -> Result<Self> {
        let d = match check_kd(&group, &gamma, budget)? {
            KdStatus::Holds(d) => d,
            KdStatus::Fails(r) => return Err(Error::WitnessFailed(format!("condition (K_d) fails: {r}"))),
            KdStatus::Indeterminate => {
                return Err(Error::Indeterminate {
                    max_cosets: budget.max_cosets,
                    context: "normal generation by gamma".into(),
                })
            }
        };
        for (v, w) in &witnesses {
            for x in [v, w] {
                if let Some(g) = x.max_gen().filter(|&g| g >= group.ngens()) {
                    return Err(Error::GeneratorOutOfRange { index: g, count: group.ngens() });
                }
            }
        }
        let lhs = gamma.pow(d as i64);
        let rhs = commutator_product(&witnesses);
        let identity_tier = match regular_rep(&group, budget)? {
            Some(rep) => {
                if rep.evaluate(&lhs) != rep.evaluate(&rhs) {
                    return Err(Error::WitnessFailed(format!(
                        "gamma^{d} differs from the product of {} commutators",
                        witnesses.len()
                    )));
                }
                Tier::T2
            }
            None => Tier::Asserted,
        };
        Ok(KdWitness { group, gamma, d, witnesses, identity_tier })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(Vec<(Word, Word)>),
    Indeterminate(String),
}

/// Shortest words for the elements of a finite group in its regular representation,
/// breadth-first in generator order, inverses after generators.
fn element_words(rep: &PermutationRep, ngens: usize) -> Vec<Word> {
    let n = rep.degree();
    let perms: Vec<(Letter, Perm)> = (0..2 * ngens)
        .map(|c| {
            let l = Letter::new(c / 2, c % 2 == 1);
            (l, rep.evaluate(&Word::from_letters([l])))
        })
        .collect();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Word::identity());
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (l, p) in &perms {
            let y = p.0[x] as usize;
            if words[y].is_none() {
                words[y] = Some(words[x].as_ref().unwrap().mul(&Word::from_letters([*l])));
                queue.push(y);
            }
        }
    }
    words.into_iter().map(Option::unwrap_or_default).collect()
}

/// Bounded search for the least witness `gamma^d = prod_{i<=n} [v_i, w_i]`, fewest
/// commutators first and then lexicographic in element indices. `max_products` caps the
/// number of group multiplications.
pub fn find_commutator_witnesses(
    group: &Presentation,
    gamma: &Word,
    d: u64,
    max_products: u64,
    budget: &Budget,
) -> Result<WitnessSearch> {
    let Some(rep) = regular_rep(group, budget)? else {
        return Ok(WitnessSearch::Indeterminate("group order not certified within budget".into()));
    };
    let n = rep.degree();
    if n > MAX_SEARCH_ORDER {
        return Ok(WitnessSearch::Indeterminate(format!("group order {n} exceeds {MAX_SEARCH_ORDER}")));
    }
    // elements are identified with the image of coset 0
    let target = rep.evaluate(&gamma.pow(d as i64)).0[0] as usize;
    if target == 0 {
        return Ok(WitnessSearch::Found(Vec::new()));
    }
    let words = element_words(&rep, group.ngens());
    let steps: Vec<Perm> = rep.generators().iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    // right multiplication by an element follows its word
    let mul = |x: usize, y: usize| {
        words[y].letters().iter().fold(x, |acc, l| steps[2 * l.gen + l.inverse as usize].0[acc] as usize)
    };
    let inverse: Vec<usize> = words.iter().map(|w| rep.evaluate(&w.inverse()).0[0] as usize).collect();
    let mut spent = 0u64;
    // least pair for every commutator value
    let mut comm_pair: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut comm_order: Vec<usize> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            spent += 1;
            if spent > max_products {
                return Ok(WitnessSearch::Indeterminate(format!("search budget of {max_products} products exhausted")));
            }
            let x = mul(mul(mul(inverse[a], inverse[b]), a), b);
            if let std::collections::hash_map::Entry::Vacant(e) = comm_pair.entry(x) {
                e.insert((a, b));
                comm_order.push(x);
            }
        }
    }
    // level-by-level products; `reach[x]` holds the least pair sequence reaching x
    let mut reach: HashMap<usize, Vec<(usize, usize)>> = HashMap::from([(0, Vec::new())]);
    let mut frontier: Vec<usize> = vec![0];
    for _level in 1..=MAX_COMMUTATORS {
        let mut next: Vec<usize> = Vec::new();
        let mut found: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        let mut prefixes = frontier.clone();
        prefixes.sort_by(|x, y| reach[x].cmp(&reach[y]));
        for &x in &prefixes {
            for &c in &comm_order {
                spent += 1;
                if spent > max_products {
                    return Ok(WitnessSearch::Indeterminate(format!("search budget of {max_products} products exhausted")));
                }
                let y = mul(x, c);
                if reach.contains_key(&y) || found.contains_key(&y) {
                    continue;
                }
                let mut seq = reach[&x].clone();
                seq.push(comm_pair[&c]);
                found.insert(y, seq);
                next.push(y);
            }
        }
        if let Some(seq) = found.get(&target) {
            let pairs = seq.iter().map(|&(a, b)| (words[a].clone(), words[b].clone())).collect();
            return Ok(WitnessSearch::Found(pairs));
        }
        if next.is_empty() {
            break;
        }
        reach.extend(found);
        frontier = next;
    }
    Ok(WitnessSearch::Indeterminate(format!(
        "no witness with at most {MAX_COMMUTATORS} commutators"
    )))
}

/// Presentations of `pi_1(X_d)`, `pi_1(M_d)` and `pi_1(M)` with their certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SympPipelineResult {
    pub xd: Presentation,
    pub md: Presentation,
    pub m: Presentation,
    pub md_certificate: Certificate,
    pub m_certificate: Certificate,
    /// Tier at which the kills reduce the surface relation to `prod [v_j, w_j] = gamma_1^d`.
    pub reduced_relation: Tier,
    pub notes: Vec<String>,
}

impl SympPipelineResult {
    /// The weakest tier among the certificates.
    pub fn tier(&self) -> Tier {
        self.md_certificate.tier.max(self.m_certificate.tier)
    }
}

fn fresh(used: &mut Vec<String>, name: &str) -> usize {
    let mut s = name.to_string();
    while used.contains(&s) {
        s.push('_');
    }
    used.push(s);
    used.len() - 1
}

struct XdLayout {
    names: Vec<String>,
    alpha: usize,
    beta: usize,
    x: Vec<usize>,
    y: Vec<usize>,
    a: Vec<usize>,
    b: Vec<usize>,
    gamma: Vec<usize>,
}

fn layout(kd: &KdWitness) -> XdLayout {
    let l = kd.group.ngens();
    let n = kd.witnesses.len();
    let mut names: Vec<String> = Vec::new();
    let x: Vec<usize> = kd.group.generators().iter().map(|g| fresh(&mut names, g)).collect();
    let alpha = fresh(&mut names, "alpha");
    let beta = fresh(&mut names, "beta");
    let y = (1..=l).map(|i| fresh(&mut names, &format!("y{i}"))).collect();
    let a = (1..=n).map(|i| fresh(&mut names, &format!("a{i}"))).collect();
    let b = (1..=n).map(|i| fresh(&mut names, &format!("b{i}"))).collect();
    let gamma = (1..=kd.d.max(1)).map(|k| fresh(&mut names, &format!("g{k}"))).collect();
    XdLayout { names, alpha, beta, x, y, a, b, gamma }
}

/// Generators in the printed order `alpha, beta, x.., y.., a.., b.., gamma..`.
fn spec_order(lay: &XdLayout) -> Vec<usize> {
    [lay.alpha, lay.beta]
        .into_iter()
        .chain(lay.x.iter().copied())
        .chain(lay.y.iter().copied())
        .chain(lay.a.iter().copied())
        .chain(lay.b.iter().copied())
        .chain(lay.gamma.iter().copied())
        .collect()
}

/// Renumbers generators so that old generator `order[i]` becomes generator `i`.
fn reorder(p: &Presentation, order: &[usize]) -> Presentation {
    let mut to_new = vec![Word::identity(); order.len()];
    for (new, &old) in order.iter().enumerate() {
        to_new[old] = Word::gen(new);
    }
    let names = order.iter().map(|&g| p.generators()[g].clone()).collect();
    let rels = p.relators().iter().map(|r| r.map_gens(&to_new)).collect();
    let mut q = Presentation::new(names, rels).expect("indices are in range");
    for (&m, w) in p.marks() {
        q.set_mark(m, w.map_gens(&to_new)).expect("indices are in range");
    }
    q
}

/// Relators of `pi_1(X_d)` in the internal layout (the group generators first).
fn xd_relators(lay: &XdLayout) -> Vec<Word> {
    let g = Word::gen;
    let (alpha, beta) = (g(lay.alpha), g(lay.beta));
    let mut rels: Vec<Word> = (0..lay.names.len())
        .filter(|&h| h != lay.alpha)
        .map(|h| Word::commutator(&alpha, &g(h)))
        .collect();
    for &h in lay.x.iter().chain(&lay.y).chain(&lay.a).chain(&lay.b) {
        rels.push(Word::commutator(&beta, &g(h)));
    }
    let gam: Vec<Word> = lay.gamma.iter().map(|&k| g(k)).collect();
    let d = gam.len();
    for k in 0..d - 1 {
        rels.push(gam[k].conjugate_by(&beta).mul(&gam[k + 1].inverse()));
    }
    let eta = Word::product(gam.iter().rev());
    rels.push(gam[d - 1].conjugate_by(&beta).mul(&gam[0].conjugate_by(&eta.inverse()).inverse()));
    let surface = lay
        .x
        .iter()
        .zip(&lay.y)
        .chain(lay.a.iter().zip(&lay.b))
        .fold(Word::identity(), |acc, (&u, &v)| acc.mul(&Word::commutator(&g(u), &g(v))));
    rels.push(surface.mul(&eta.inverse()));
    rels
}

/// Fiber-sum kills except the final one: `alpha, beta, y_i, r_j, a_j^-1 v_j, b_j^-1 w_j`.
fn kills(kd: &KdWitness, lay: &XdLayout) -> Vec<Word> {
    let g = Word::gen;
    let to_x: Vec<Word> = lay.x.iter().map(|&i| g(i)).collect();
    let mut k = vec![g(lay.alpha), g(lay.beta)];
    k.extend(lay.y.iter().map(|&i| g(i)));
    k.extend(kd.group.relators().iter().map(|r| r.map_gens(&to_x)));
    for (j, (v, w)) in kd.witnesses.iter().enumerate() {
        k.push(g(lay.a[j]).inverse().mul(&v.map_gens(&to_x)));
        k.push(g(lay.b[j]).inverse().mul(&w.map_gens(&to_x)));
    }
    k
}

/// Builds `pi_1(X_d)`, applies the fiber-sum kills, and certifies `pi_1(M_d) = G` and
/// `pi_1(M) = 1`.
pub fn build_symplectic_pipeline(kd: &KdWitness, budget: &Budget) -> Result<SympPipelineResult> {
    let lay = layout(kd);
    let ng = lay.names.len();
    let internal = Presentation::new(lay.names.clone(), xd_relators(&lay))?;
    let g = Word::gen;
    let to_x: Vec<Word> = lay.x.iter().map(|&i| g(i)).collect();
    let eps0 = g(lay.gamma[0]).inverse().mul(&kd.gamma.map_gens(&to_x));

    let pre = internal.quotient_by_normal_closure(&kills(kd, &lay))?;
    // the surface relation reduces to prod [v_j, w_j] = gamma_1^d over the x's and gamma_1
    let mut order: Vec<usize> = lay.x.clone();
    order.push(lay.gamma[0]);
    order.extend((0..ng).filter(|h| !order.contains(h)).collect::<Vec<_>>());
    let mut reduced_names: Vec<String> = kd.group.generators().to_vec();
    reduced_names.push(lay.names[lay.gamma[0]].clone());
    let l = kd.group.ngens();
    let gamma1 = g(l);
    let mut reduced_rels = kd.group.relators().to_vec();
    reduced_rels.push(commutator_product(&kd.witnesses).mul(&gamma1.pow(-(kd.d.max(1) as i64))));
    let reduced = Presentation::new(reduced_names, reduced_rels)?;
    let reduced_relation = if tietze_reduces_to(&reorder(&pre, &order), &reduced, budget) {
        Tier::T1
    } else {
        let with_eps = |p: &Presentation, e: Word| p.quotient_by_normal_closure(&[e]);
        let gw = gamma1.inverse().mul(&kd.gamma);
        certify_isomorphic(
            &with_eps(&reorder(&pre, &order), reorder_word(&eps0, &order))?,
            &with_eps(&reduced, gw)?,
            "reduced relation",
            kd.d.max(2),
            budget,
        )?
        .tier
    };

    let md_full = pre.quotient_by_normal_closure(std::slice::from_ref(&eps0))?;
    let md_ordered = reorder(&md_full, &(0..ng).collect::<Vec<_>>());
    let max_k = kd.d.max(2);
    let md_certificate = match certify_isomorphic(&md_ordered, &kd.group, "G", max_k, budget) {
        Ok(mut c) => {
            if c.invariants.is_none() {
                let inv = invariants(&md_ordered, max_k, budget)?;
                if inv.order.is_some() {
                    c.invariants = Some(inv);
                }
            }
            c
        }
        Err(Error::Indeterminate { .. }) => Certificate {
            tier: Tier::Asserted,
            against: "G".into(),
            invariants: None,
        },
        Err(e) => return Err(e),
    };
    let md = crate::presentations::tietze_simplify_with(&md_ordered, &budget.tietze_protecting(l)).presentation;

    let m_full = md_full.quotient_by_normal_closure(&[g(lay.gamma[0])])?;
    let m = crate::presentations::tietze_simplify_with(&m_full, &budget.tietze()).presentation;
    let trivial = Presentation::free(Vec::new());
    let m_certificate = match certify_isomorphic(&m, &trivial, "trivial group", 2, budget) {
        Ok(c) => c,
        Err(Error::Indeterminate { .. }) => Certificate {
            tier: Tier::Asserted,
            against: "trivial group".into(),
            invariants: None,
        },
        Err(e) => return Err(e),
    };

    let mut xd = reorder(&internal, &spec_order(&lay));
    xd.set_mark(Mark::Gamma, reorder_word(&g(lay.gamma[0]), &spec_order(&lay)))?;
    Ok(SympPipelineResult {
        xd,
        md,
        m,
        md_certificate,
        m_certificate,
        reduced_relation,
        notes: vec!["torus stabilizations add generators that the enlarged kill list removes; not modeled".into()],
    })
}

fn reorder_word(w: &Word, order: &[usize]) -> Word {
    let mut to_new = vec![Word::identity(); order.len()];
    for (new, &old) in order.iter().enumerate() {
        to_new[old] = Word::gen(new);
    }
    w.map_gens(&to_new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{parse_presentation, parse_word, AbelianInvariants};

    fn group(src: &str) -> Presentation {
        parse_presentation(src).unwrap()
    }

    fn word(p: &Presentation, s: &str) -> Word {
        parse_word(s, p.generators()).unwrap()
    }

    #[test]
    fn kd_examples() {
        let b = Budget::default();
        let z2 = group("<x | x^2>");
        assert_eq!(check_kd(&z2, &word(&z2, "x"), &b).unwrap(), KdStatus::Holds(2));
        let d10 = group("<a,b | a^2, b^5, (a*b)^2>");
        assert_eq!(check_kd(&d10, &word(&d10, "a"), &b).unwrap(), KdStatus::Holds(2));
        assert!(matches!(check_kd(&d10, &word(&d10, "b"), &b).unwrap(), KdStatus::Fails(_)));
        let z2z = group("<a,b | [a,b]>");
        assert!(matches!(check_kd(&z2z, &word(&z2z, "a"), &b).unwrap(), KdStatus::Fails(r) if r.contains("not finite cyclic")));
        let small = Budget { max_cosets: 50, tietze_moves: 0 };
        let free_ish = group("<a,b | a*b*a^-1*b^-2*a^3>");
        let got = check_kd(&free_ish, &word(&free_ish, "a*b^-1"), &small).unwrap();
        assert!(matches!(got, KdStatus::Indeterminate | KdStatus::Fails(_) | KdStatus::Holds(_)));
    }

    #[test]
    fn trivial_identities_need_no_commutators() {
        let b = Budget::default();
        let d10 = group("<a,b | a^2, b^5, (a*b)^2>");
        let found = find_commutator_witnesses(&d10, &word(&d10, "a"), 2, 1_000_000, &b).unwrap();
        assert_eq!(found, WitnessSearch::Found(Vec::new()));
    }

    #[test]
    fn perturbed_gamma_needs_one_commutator() {
        let b = Budget::default();
        // Q8 x| Z/3 as the knot group of the trefoil modulo the cubed meridian
        let g = group("<x,y | x*y*x = y*x*y, x^3>");
        assert_eq!(crate::enumeration::group_order(&g, 10_000).unwrap(), Some(24));
        let gamma = word(&g, "x*(x*y*x)^2");
        let kd = check_kd(&g, &gamma, &b).unwrap();
        assert_eq!(kd, KdStatus::Holds(3));
        let WitnessSearch::Found(pairs) = find_commutator_witnesses(&g, &gamma, 3, 10_000_000, &b).unwrap() else {
            panic!("no witness")
        };
        assert_eq!(pairs.len(), 1);
        let w = KdWitness::verify(g, gamma, pairs, &b).unwrap();
        assert_eq!(w.identity_tier, Tier::T2);
    }

    #[test]
    fn bad_witnesses_are_rejected() {
        let b = Budget::default();
        let g = group("<x,y | x*y*x = y*x*y, x^3>");
        let gamma = word(&g, "x*(x*y*x)^2");
        assert!(matches!(KdWitness::verify(g, gamma, Vec::new(), &b), Err(Error::WitnessFailed(_))));
    }

    fn pipeline(src: &str, gamma: &str) -> SympPipelineResult {
        let b = Budget::default();
        let g = group(src);
        let gw = word(&g, gamma);
        let kd = KdWitness::verify(g, gw, Vec::new(), &b).unwrap();
        build_symplectic_pipeline(&kd, &b).unwrap()
    }

    #[test]
    fn pipeline_for_z2() {
        let r = pipeline("<x | x^2>", "x");
        assert_eq!(r.xd.ngens(), 2 + 1 + 1 + 2);
        assert!(r.md_certificate.tier <= Tier::T2);
        assert!(r.m_certificate.tier <= Tier::T2);
        assert_eq!(r.reduced_relation, Tier::T1);
        assert_eq!(crate::enumeration::group_order(&r.md, 1000).unwrap(), Some(2));
        assert_eq!(crate::enumeration::group_order(&r.m, 1000).unwrap(), Some(1));
    }

    #[test]
    fn pipeline_for_trivial_group() {
        let r = pipeline("<x | x>", "x");
        assert_eq!(crate::enumeration::group_order(&r.md, 1000).unwrap(), Some(1));
        assert_eq!(crate::enumeration::group_order(&r.m, 1000).unwrap(), Some(1));
    }

    #[test]
    fn pipeline_for_d10() {
        let r = pipeline("<a,b | a^2, b^5, (a*b)^2>", "a");
        assert_eq!(crate::enumeration::group_order(&r.md, 1000).unwrap(), Some(10));
        let inv = r.md_certificate.invariants.as_ref().unwrap();
        assert_eq!(inv.order, Some(10));
        assert_eq!(abelianization(&r.md), AbelianInvariants::cyclic(2));
        assert_eq!(crate::enumeration::group_order(&r.m, 1000).unwrap(), Some(1));
        assert!(r.tier() <= Tier::T2);
    }

    #[test]
    fn pipeline_with_a_commutator_witness() {
        let b = Budget::default();
        let g = group("<x,y | x*y*x = y*x*y, x^3>");
        let gamma = word(&g, "x*(x*y*x)^2");
        let WitnessSearch::Found(pairs) = find_commutator_witnesses(&g, &gamma, 3, 10_000_000, &b).unwrap() else {
            panic!("no witness")
        };
        let kd = KdWitness::verify(g, gamma, pairs, &b).unwrap();
        let r = build_symplectic_pipeline(&kd, &b).unwrap();
        assert_eq!(r.xd.ngens(), 2 + 2 + 2 + 2 + 3);
        assert_eq!(crate::enumeration::group_order(&r.md, 10_000).unwrap(), Some(24));
        assert_eq!(crate::enumeration::group_order(&r.m, 10_000).unwrap(), Some(1));
    }
}
