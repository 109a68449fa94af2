//! Knot groups of surfaces after twisted rim surgery.

use std::fmt;

use crate::certify::{certify_isomorphic, Budget, Certificate};
use crate::enumeration::{enumerate, permutation_representation, reidemeister_schreier, SubgroupPresentation};
use crate::error::{Error, Result};
use crate::knots::{wirtinger, KnotSpec, MarkedGroup};
use crate::presentations::{
    abelianization, tietze_simplify_with, Mark, Presentation, TietzeOptions, Word,
};

/// Which construction produced a surgery step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssemblyPath {
    /// Semidirect product of the branched-cover group with `Z/d`.
    Semidirect,
    /// Free product with the knot group, meridians identified, `[mu^m, beta]` relators.
    General,
}

impl fmt::Display for AssemblyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssemblyPath::Semidirect => "semidirect",
            AssemblyPath::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryStep {
    pub knot: KnotSpec,
    pub m: i64,
    pub path: AssemblyPath,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub base: String,
    pub steps: Vec<SurgeryStep>,
}

/// `pi_1` of a surface complement: meridian and pushoff marks plus the divisibility `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceKnotGroup {
    pub presentation: Presentation,
    pub d: u64,
    pub provenance: Provenance,
}

impl SurfaceKnotGroup {
    /// `<u | u^d>` with meridian `u` and trivial pushoff.
    pub fn cyclic(d: u64) -> Self {
        let p = Presentation::cyclic("u", d)
            .with_mark(Mark::Meridian, Word::gen(0))
            .and_then(|p| p.with_mark(Mark::Pushoff, Word::identity()))
            .expect("u is in range");
        SurfaceKnotGroup { presentation: p, d, provenance: Provenance { base: format!("Z/{d}"), steps: Vec::new() } }
    }

    /// Validates that `H_1` is finite cyclic and generated by the meridian.
    pub fn new(presentation: Presentation, base: &str) -> Result<Self> {
        let mu = presentation.mark(Mark::Meridian).ok_or(Error::Unmarked("meridian"))?;
        let h1 = abelianization(&presentation);
        let d = h1.finite_cyclic_order().ok_or_else(|| {
            Error::Degenerate(format!("first homology {h1} is not finite cyclic"))
        })?;
        let killed = presentation.quotient_by_normal_closure(std::slice::from_ref(mu))?;
        if abelianization(&killed).finite_cyclic_order() != Some(1) {
            return Err(Error::Degenerate("meridian does not generate first homology".into()));
        }
        Ok(SurfaceKnotGroup { presentation, d, provenance: Provenance { base: base.to_string(), steps: Vec::new() } })
    }

    /// Asserts the nullhomotopic pushoff hypothesis.
    pub fn with_trivial_pushoff(mut self) -> Self {
        self.presentation.set_mark(Mark::Pushoff, Word::identity()).expect("identity is in range");
        self
    }

    pub fn meridian(&self) -> Result<&Word> {
        self.presentation.mark(Mark::Meridian).ok_or(Error::Unmarked("meridian"))
    }

    /// Simplified presentation keeping marks; `protected` generators survive.
    pub fn simplified(&self, opts: &TietzeOptions) -> Presentation {
        tietze_simplify_with(&self.presentation, opts).presentation
    }

    /// Group order by coset enumeration, `None` when the budget runs out.
    pub fn order(&self, budget: &Budget) -> Result<Option<usize>> {
        let s = self.simplified(&budget.tietze());
        Ok(enumerate(&s, &[], budget.max_cosets)?.index())
    }

    /// Order of the meridian, `None` when the group could not be enumerated.
    pub fn meridian_order(&self, budget: &Budget) -> Result<Option<u64>> {
        let s = self.simplified(&budget.tietze());
        let Some(t) = enumerate(&s, &[], budget.max_cosets)?.into_table() else {
            return Ok(None);
        };
        let mu = s.mark(Mark::Meridian).ok_or(Error::Unmarked("meridian"))?;
        Ok(Some(permutation_representation(&t)?.element_order(mu)))
    }
}

/// `pi_1` of the `d`-fold cyclic branched cover with the covering-transformation action.
#[derive(Debug, Clone)]
pub struct BranchedCoverGroup {
    pub presentation: Presentation,
    /// `h -> t^-1 h t` on the generators, `t` the meridian.
    pub deck: Vec<Word>,
    /// `h -> t h t^-1`.
    pub deck_inverse: Vec<Word>,
    pub d: u64,
    /// The unbranched-cover kernel this group is a quotient of.
    pub kernel: SubgroupPresentation,
}

/// The knot group simplified with its meridian generator kept.
fn knot_group(k: &KnotSpec, budget: &Budget) -> Result<MarkedGroup> {
    let g = wirtinger(k)?;
    let opts = TietzeOptions { protected: 1, ..budget.tietze() };
    Ok(MarkedGroup { presentation: tietze_simplify_with(&g.presentation, &opts).presentation })
}

fn branched_cover_of(g: &MarkedGroup, d: u64, budget: &Budget) -> Result<BranchedCoverGroup> {
    let p = &g.presentation;
    let kernel = reidemeister_schreier(p, d, &g.degrees(), &budget.tietze())?;
    let lifted = kernel.rewrite(&g.meridian().pow(d as i64))?;
    let q = kernel.presentation.quotient_by_normal_closure(&[lifted])?;
    let deck = kernel.deck_action(false)?;
    let deck_inverse = kernel.deck_action(true)?;
    let s = tietze_simplify_with(&q, &budget.tietze());
    let lift = |phi: &[Word]| -> Vec<Word> {
        s.kept.iter().map(|&j| phi[j].map_gens(&s.images)).collect()
    };
    Ok(BranchedCoverGroup {
        deck: lift(&deck),
        deck_inverse: lift(&deck_inverse),
        presentation: s.presentation,
        d,
        kernel,
    })
}

/// `pi_1((S^3, K)^d)`: the cover kernel with the lifted meridian killed.
pub fn branched_cover_group(k: &KnotSpec, d: u64, budget: &Budget) -> Result<BranchedCoverGroup> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("cover degree must be at least 2, got {d}")));
    }
    branched_cover_of(&knot_group(k, budget)?, d, budget)
}

/// Checks that `base` presents `Z/d` with the meridian of order `d`.
fn check_cyclic_base(base: &SurfaceKnotGroup, budget: &Budget) -> Result<()> {
    let d = base.d;
    let not_cyclic = |reason: String| Error::BaseNotCyclic { d, reason };
    match base.order(budget)? {
        Some(n) if n as u64 == d => {}
        Some(n) => return Err(not_cyclic(format!("group has order {n}"))),
        None => return Err(not_cyclic("coset enumeration did not complete".into())),
    }
    match base.meridian_order(budget)? {
        Some(o) if o == d => Ok(()),
        other => Err(not_cyclic(format!("meridian has order {other:?}"))),
    }
}

fn semidirect(bc: &BranchedCoverGroup) -> Presentation {
    let h = &bc.presentation;
    let n = h.ngens();
    let mut names = h.generators().to_vec();
    let mut uname = "u".to_string();
    while names.contains(&uname) {
        uname.push('_');
    }
    names.push(uname);
    let u = Word::gen(n);
    let mut rels = h.relators().to_vec();
    rels.push(u.pow(bc.d as i64));
    for (j, phi) in bc.deck.iter().enumerate() {
        rels.push(Word::gen(j).conjugate_by(&u).mul(&phi.inverse()));
    }
    Presentation::new(names, rels)
        .and_then(|p| p.with_mark(Mark::Meridian, u))
        .and_then(|p| p.with_mark(Mark::Pushoff, Word::identity()))
        .expect("indices are in range")
}

/// Semidirect product `H x| Z/d` for a base with cyclic group `Z/d`.
pub fn d_twist_group(base: &SurfaceKnotGroup, k: &KnotSpec, budget: &Budget) -> Result<SurfaceKnotGroup> {
    check_cyclic_base(base, budget)?;
    let bc = branched_cover_of(&knot_group(k, budget)?, base.d, budget)?;
    let mut provenance = base.provenance.clone();
    provenance.steps.push(SurgeryStep { knot: k.clone(), m: base.d as i64, path: AssemblyPath::Semidirect, certificate: None });
    Ok(SurfaceKnotGroup { presentation: semidirect(&bc), d: base.d, provenance })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Base generators, then the knot generators; relators of both, `mu_K = mu_Sigma` and
/// `[mu_K^m, beta]` for every knot generator `beta`. Requires the trivial-pushoff hypothesis.
pub fn m_twist_group(base: &SurfaceKnotGroup, k: &KnotSpec, m: i64, budget: &Budget) -> Result<SurfaceKnotGroup> {
    match base.presentation.mark(Mark::Pushoff) {
        Some(w) if w.is_empty() => {}
        _ => return Err(Error::PushoffNotTrivial),
    }
    let mu_sigma = base.meridian()?.clone();
    let g = knot_group(k, budget)?;
    let mut p = base.presentation.clone();
    let mut prefix = "k".to_string();
    while g.presentation.generators().iter().any(|x| p.generators().contains(&format!("{prefix}_{x}"))) {
        prefix.push('k');
    }
    let offset = p.ngens();
    let names: Vec<String> = p
        .generators()
        .iter()
        .cloned()
        .chain(g.presentation.generators().iter().map(|x| format!("{prefix}_{x}")))
        .collect();
    let shift: Vec<Word> = (0..g.presentation.ngens()).map(|j| Word::gen(j + offset)).collect();
    let mu_k = g.meridian().map_gens(&shift);
    let mut rels = p.relators().to_vec();
    rels.extend(g.presentation.relators().iter().map(|r| r.map_gens(&shift)));
    rels.push(mu_k.mul(&mu_sigma.inverse()));
    let mu_m = mu_k.pow(m);
    rels.extend(shift.iter().map(|beta| Word::commutator(&mu_m, beta)));
    p = Presentation::new(names, rels)?
        .with_mark(Mark::Meridian, mu_k)?
        .with_mark(Mark::Pushoff, Word::identity())?;
    let mut provenance = base.provenance.clone();
    provenance.steps.push(SurgeryStep { knot: k.clone(), m, path: AssemblyPath::General, certificate: None });
    Ok(SurfaceKnotGroup { presentation: p, d: base.d, provenance })
}

/// One surgery step, certified where a known isomorphism applies: against the semidirect
/// path when `m = 0 mod d` on a cyclic base, against the base when `gcd(m, d) = 1`.
pub fn surgery_step(base: &SurfaceKnotGroup, k: &KnotSpec, m: i64, budget: &Budget) -> Result<SurfaceKnotGroup> {
    let d = base.d;
    let max_k = d.max(2);
    let general = m_twist_group(base, k, m, budget)?;
    let cyclic_base = check_cyclic_base(base, budget).is_ok();
    if m.rem_euclid(d as i64) == 0 && cyclic_base {
        let mut out = d_twist_group(base, k, budget)?;
        let cert = certify_isomorphic(&general.presentation, &out.presentation, "general assembly", max_k, budget)?;
        let step = out.provenance.steps.last_mut().unwrap();
        step.m = m;
        step.certificate = Some(cert);
        return Ok(out);
    }
    let mut out = general;
    if gcd(m.unsigned_abs(), d) == 1 {
        let cert = certify_isomorphic(&out.presentation, &base.presentation, "base", max_k, budget)?;
        out.provenance.steps.last_mut().unwrap().certificate = Some(cert);
    }
    Ok(out)
}

/// Left fold of [`surgery_step`] over `steps`.
pub fn iterated_surgery(base: &SurfaceKnotGroup, steps: &[(KnotSpec, i64)], budget: &Budget) -> Result<SurfaceKnotGroup> {
    steps.iter().try_fold(base.clone(), |g, (k, m)| surgery_step(&g, k, *m, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Tier;
    use crate::knots::parse_knot;
    use crate::presentations::AbelianInvariants;

    fn knot(s: &str) -> KnotSpec {
        parse_knot(s).unwrap()
    }

    fn order(p: &Presentation) -> usize {
        let s = tietze_simplify_with(p, &TietzeOptions::default()).presentation;
        enumerate(&s, &[], 1_000_000).unwrap().index().unwrap()
    }

    #[test]
    fn unknot_covers_are_trivial() {
        let b = Budget::default();
        for d in 2..5 {
            let bc = branched_cover_group(&KnotSpec::unknot(), d, &b).unwrap();
            assert_eq!(order(&bc.presentation), 1);
        }
        assert!(branched_cover_group(&KnotSpec::unknot(), 1, &b).is_err());
    }

    #[test]
    fn quaternion_cover_and_its_extension() {
        let b = Budget::default();
        let bc = branched_cover_group(&KnotSpec::trefoil(), 3, &b).unwrap();
        assert_eq!(order(&bc.presentation), 8);
        assert_eq!(abelianization(&bc.presentation).torsion, vec![2, 2]);
        let g = d_twist_group(&SurfaceKnotGroup::cyclic(3), &KnotSpec::trefoil(), &b).unwrap();
        assert_eq!(g.order(&b).unwrap(), Some(24));
        assert_eq!(g.meridian_order(&b).unwrap(), Some(3));
    }

    fn regular_rep(p: &Presentation) -> crate::enumeration::PermutationRep {
        permutation_representation(&enumerate(p, &[], 100_000).unwrap().into_table().unwrap()).unwrap()
    }

    #[test]
    fn deck_action_negates_double_cover_homology() {
        let bc = branched_cover_group(&KnotSpec::trefoil(), 2, &Budget::default()).unwrap();
        let rep = regular_rep(&bc.presentation);
        assert_eq!(rep.degree(), 3);
        for (j, phi) in bc.deck.iter().enumerate() {
            assert_eq!(rep.evaluate(phi), rep.evaluate(&Word::gen(j).inverse()));
        }
    }

    #[test]
    fn deck_action_rotates_quaternion_classes() {
        let bc = branched_cover_group(&KnotSpec::trefoil(), 3, &Budget::default()).unwrap();
        let h = &bc.presentation;
        let n = h.ngens();
        let comms: Vec<Word> = (0..n)
            .flat_map(|i| (0..n).map(move |j| Word::commutator(&Word::gen(i), &Word::gen(j))))
            .collect();
        let ab = regular_rep(&h.quotient_by_normal_closure(&comms).unwrap());
        assert_eq!(ab.degree(), 4);
        // not the identity on H1, but of order three on H
        assert!((0..n).any(|j| ab.evaluate(&bc.deck[j]) != ab.evaluate(&Word::gen(j))));
        let rep = regular_rep(h);
        for j in 0..n {
            let cubed = Word::gen(j).map_gens(&bc.deck).map_gens(&bc.deck).map_gens(&bc.deck);
            assert_eq!(rep.evaluate(&cubed), rep.evaluate(&Word::gen(j)));
            let back = Word::gen(j).map_gens(&bc.deck).map_gens(&bc.deck_inverse);
            assert_eq!(rep.evaluate(&back), rep.evaluate(&Word::gen(j)));
        }
    }

    /// The semidirect product is the knot group modulo the d-th power of the meridian.
    #[test]
    fn semidirect_matches_meridian_power_quotient() {
        let b = Budget::default();
        for (k, d) in [("trefoil", 2u64), ("trefoil", 3), ("figure8", 2), ("5_2", 2), ("torus(2,5)", 3)] {
            let g = wirtinger(&knot(k)).unwrap();
            let q = g.presentation.quotient_by_normal_closure(&[g.meridian().pow(d as i64)]).unwrap();
            let dt = d_twist_group(&SurfaceKnotGroup::cyclic(d), &knot(k), &b).unwrap();
            assert_eq!(dt.order(&b).unwrap(), Some(order(&q)), "{k} d={d}");
        }
    }

    #[test]
    fn dihedral_extensions() {
        let b = Budget::default();
        for (p, q) in [(3, 1), (5, 3), (7, 3)] {
            let g = d_twist_group(&SurfaceKnotGroup::cyclic(2), &KnotSpec::two_bridge(p, q).unwrap(), &b).unwrap();
            assert_eq!(g.order(&b).unwrap(), Some(2 * p as usize));
            assert_eq!(abelianization(&g.presentation), AbelianInvariants::cyclic(2));
        }
    }

    #[test]
    fn non_cyclic_base_is_rejected() {
        let b = Budget::default();
        let d10 = d_twist_group(&SurfaceKnotGroup::cyclic(2), &KnotSpec::figure_eight(), &b).unwrap();
        assert!(matches!(d_twist_group(&d10, &KnotSpec::trefoil(), &b), Err(Error::BaseNotCyclic { d: 2, .. })));
    }

    #[test]
    fn pushoff_hypothesis_is_required() {
        let b = Budget::default();
        let mut base = SurfaceKnotGroup::cyclic(2);
        base.presentation.clear_mark(Mark::Pushoff);
        assert_eq!(m_twist_group(&base, &KnotSpec::trefoil(), 1, &b), Err(Error::PushoffNotTrivial));
    }

    #[test]
    fn one_twist_reduces_to_the_base() {
        let b = Budget::default();
        let base = d_twist_group(&SurfaceKnotGroup::cyclic(2), &KnotSpec::figure_eight(), &b).unwrap();
        for k in ["trefoil", "figure8", "unknot", "5_2"] {
            let g = surgery_step(&base, &knot(k), 1, &b).unwrap();
            let cert = g.provenance.steps.last().unwrap().certificate.clone().unwrap();
            assert_eq!(cert.tier, Tier::T1, "{k}");
        }
    }

    #[test]
    fn coprime_twist_preserves_the_group() {
        let b = Budget::default();
        let base = d_twist_group(&SurfaceKnotGroup::cyclic(2), &KnotSpec::figure_eight(), &b).unwrap();
        let g = surgery_step(&base, &KnotSpec::trefoil(), 3, &b).unwrap();
        assert_eq!(g.order(&b).unwrap(), Some(10));
        assert!(g.provenance.steps.last().unwrap().certificate.is_some());
    }

    #[test]
    fn m_equal_d_agrees_with_semidirect_path() {
        let b = Budget::default();
        let g = m_twist_group(&SurfaceKnotGroup::cyclic(2), &KnotSpec::trefoil(), 2, &b).unwrap();
        assert_eq!(g.order(&b).unwrap(), Some(6));
        let s = surgery_step(&SurfaceKnotGroup::cyclic(2), &KnotSpec::trefoil(), 4, &b).unwrap();
        assert_eq!(s.provenance.steps[0].path, AssemblyPath::Semidirect);
        assert_eq!(s.order(&b).unwrap(), Some(6));
    }

    #[test]
    fn iterated_surgery_on_cyclic_base() {
        let b = Budget::default();
        let base = SurfaceKnotGroup::cyclic(3);
        assert_eq!(iterated_surgery(&base, &[], &b).unwrap(), base);
        let steps = [(KnotSpec::trefoil(), 3), (KnotSpec::trefoil(), 1)];
        let once = iterated_surgery(&base, &steps[..1], &b).unwrap();
        let twice = iterated_surgery(&base, &steps, &b).unwrap();
        assert_eq!(once.order(&b).unwrap(), Some(24));
        assert_eq!(twice.order(&b).unwrap(), Some(24));
        assert_eq!(twice.provenance.steps.len(), 2);
    }
}
