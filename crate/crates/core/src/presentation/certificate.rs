use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::derive::{
    check_generators, conjugation_free_with, derive_commuting_pairs, replay, rotations_connected, Fact, Knowledge,
    ProvedFact,
};
use super::relation::{cyclic_key, recognize, Presentation};
use super::sweep::randell_presentation;
use crate::arrangement::{decone, essentialize, Arrangement, Flat, FlatFamily, FlatKind};
use crate::error::{Error, Result};
use crate::topology::IncidenceGraph;
use crate::words::{RhoModel, Word};

/// How condition (ii) is met for a family member `S` and a hyperplane `H` outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// `H` commutes with every generator of `S`.
    FullCommutation,
    /// `H` lies in `partner`, which meets `S` exactly in `shared`; all cross pairs commute and
    /// the member `split` (`S` or the partner) is an established flat, so its local group splits
    /// off the cyclic product.
    Split { partner: usize, shared: usize, split: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteRecord {
    /// Index into the certificate's family.
    pub member: usize,
    pub hyperplane: usize,
    pub route: Route,
}

/// Replayable evidence that the map into the product of local groups is injective.
/// Checking it needs only the relator words it embeds, never the geometry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityCertificate {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Sorted generator sets.
    pub family: Vec<Vec<usize>>,
    /// In derivation order; later derivations may cite earlier facts.
    pub facts: Vec<ProvedFact>,
    /// Pairs not contained in a common member (condition (i)).
    pub transverse_pairs: Vec<(usize, usize)>,
    pub routes: Vec<RouteRecord>,
    pub covers: bool,
    pub incomparable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InjectivityOutcome {
    Certified(Box<InjectivityCertificate>),
    Inconclusive(Vec<String>),
}

impl InjectivityOutcome {
    pub fn certificate(&self) -> Option<&InjectivityCertificate> {
        match self {
            InjectivityOutcome::Certified(c) => Some(c),
            InjectivityOutcome::Inconclusive(_) => None,
        }
    }
}

fn pair_label(labels: &[String], a: usize, b: usize) -> String {
    format!("{{{},{}}}", labels[a], labels[b])
}

fn set_label(labels: &[String], s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(|&i| labels[i].as_str()).join(","))
}

fn covers(n: usize, family: &[Vec<usize>]) -> bool {
    (0..n).all(|h| family.iter().any(|m| m.contains(&h)))
}

fn incomparable(family: &[Vec<usize>]) -> bool {
    family.iter().tuple_combinations().all(|(s, t)| !is_subset(s, t) && !is_subset(t, s))
}

fn is_subset(s: &[usize], t: &[usize]) -> bool {
    s.iter().all(|h| t.contains(h))
}

fn transverse_pairs(n: usize, family: &[Vec<usize>]) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().filter(|&(a, b)| !family.iter().any(|m| m.contains(&a) && m.contains(&b))).collect()
}

/// A route for `(family[s], h)`, preferring full commutation.
fn find_route(family: &[Vec<usize>], s: usize, h: usize, known: &Knowledge) -> Option<Route> {
    let sm = &family[s];
    if sm.iter().all(|&t| known.commute(h, t)) {
        return Some(Route::FullCommutation);
    }
    for (ti, tm) in family.iter().enumerate() {
        if ti == s || !tm.contains(&h) {
            continue;
        }
        let shared: Vec<usize> = sm.iter().copied().filter(|x| tm.contains(x)).collect();
        let [x0] = shared[..] else { continue };
        let cross = tm.iter().filter(|&&y| y != x0).cartesian_product(sm.iter().filter(|&&x| x != x0));
        if !cross.into_iter().all(|(&y, &x)| known.commute(y, x)) {
            continue;
        }
        for split in [s, ti] {
            if known.flat_order(&family[split]).is_some() {
                return Some(Route::Split { partner: ti, shared: x0, split });
            }
        }
    }
    None
}

fn check_route(family: &[Vec<usize>], r: &RouteRecord, known: &Knowledge) -> std::result::Result<(), String> {
    let sm = family.get(r.member).ok_or("route names a missing member")?;
    let h = r.hyperplane;
    match &r.route {
        Route::FullCommutation => {
            if let Some(&t) = sm.iter().find(|&&t| !known.commute(h, t)) {
                return Err(format!("route for member {} and {h}: pair ({h},{t}) not proved", r.member));
            }
        }
        Route::Split { partner, shared, split } => {
            let tm = family.get(*partner).ok_or("route names a missing partner")?;
            if !tm.contains(&h) {
                return Err(format!("partner {partner} does not contain {h}"));
            }
            let meet: Vec<usize> = sm.iter().copied().filter(|x| tm.contains(x)).collect();
            if meet != [*shared] {
                return Err(format!("members {} and {partner} do not meet exactly in {shared}", r.member));
            }
            for &y in tm.iter().filter(|&&y| y != *shared) {
                for &x in sm.iter().filter(|&&x| x != *shared) {
                    if !known.commute(x, y) {
                        return Err(format!("cross pair ({x},{y}) not proved"));
                    }
                }
            }
            if *split != r.member && split != partner {
                return Err("split member is neither S nor its partner".into());
            }
            if known.flat_order(&family[*split]).is_none() {
                return Err(format!("member {split} is not an established flat"));
            }
        }
    }
    Ok(())
}

/// Checks the hypotheses of the injectivity criterion for an affine line arrangement and
/// a presentation of its group.
pub fn injectivity_test(a: &Arrangement, x: &FlatFamily, p: &Presentation) -> Result<InjectivityOutcome> {
    check_generators(p, a)?;
    let labels = p.generators();
    let n = labels.len();
    let family: Vec<Vec<usize>> = x.members().iter().map(|m| m.hyperplanes.clone()).collect();
    if let Some(&h) = family.iter().flatten().find(|&&h| h >= n) {
        return Err(Error::InvalidFlat(format!("family member names hyperplane {h} outside the arrangement")));
    }
    let mut reasons = Vec::new();
    let covers = covers(n, &family);
    if !covers {
        reasons.push("the family does not cover the arrangement".to_string());
    }
    let incomparable = incomparable(&family);
    if !incomparable {
        reasons.push("two family members are comparable".to_string());
    }
    let log = derive_commuting_pairs(p);
    let cf = conjugation_free_with(p, a, x, &log)?;
    for &i in &cf.unresolved {
        reasons.push(format!("relator {} ({}) could not be made conjugation-free", i + 1, p.relators()[i].format(labels)));
    }
    for f in &cf.missing {
        reasons.push(format!("local relation at {} not established", set_label(labels, f)));
    }
    let known = &log.knowledge;
    let transverse = transverse_pairs(n, &family);
    for &(s, t) in &transverse {
        if !known.commute(s, t) {
            reasons.push(format!("condition (i): {} not proved to commute", pair_label(labels, s, t)));
        }
    }
    let mut routes = Vec::new();
    for (s, sm) in family.iter().enumerate() {
        for h in (0..n).filter(|h| !sm.contains(h)) {
            match find_route(&family, s, h, known) {
                Some(route) => routes.push(RouteRecord { member: s, hyperplane: h, route }),
                None => reasons.push(format!("condition (ii): no route for S = {}, H = {}", set_label(labels, sm), labels[h])),
            }
        }
    }
    if !reasons.is_empty() {
        return Ok(InjectivityOutcome::Inconclusive(reasons));
    }
    Ok(InjectivityOutcome::Certified(Box::new(InjectivityCertificate {
        generators: labels.to_vec(),
        relators: p.relators().to_vec(),
        family,
        facts: log.facts,
        transverse_pairs: transverse,
        routes,
        covers,
        incomparable,
    })))
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::CertificateMismatch(msg.into())
}

/// Re-checks a certificate from its own data: replays every derivation against the embedded
/// relators, then coverage, incomparability and both conditions.
pub fn verify_certificate(c: &InjectivityCertificate) -> Result<()> {
    let n = c.generators.len();
    if c.relators.iter().flat_map(Word::support).any(|g| g >= n) {
        return Err(mismatch("relator uses an unknown generator"));
    }
    for m in &c.family {
        if m.len() < 2 || m.windows(2).any(|w| w[0] >= w[1]) || m.iter().any(|&h| h >= n) {
            return Err(mismatch(format!("malformed family member {m:?}")));
        }
    }
    if !covers(n, &c.family) || !c.covers {
        return Err(mismatch("the family does not cover the generators"));
    }
    if !incomparable(&c.family) || !c.incomparable {
        return Err(mismatch("two family members are comparable"));
    }
    let mut known = Knowledge::default();
    for pf in &c.facts {
        if pf.derivations.is_empty() {
            return Err(mismatch(format!("fact {:?} has no derivation", pf.fact)));
        }
        let mut rotations = Vec::new();
        for d in &pf.derivations {
            let rel = replay(d, &c.relators, &known).map_err(mismatch)?;
            match &pf.fact {
                Fact::Pair(a, b) => {
                    if rel.support() != [*a, *b] || pf.derivations.len() != 1 {
                        return Err(mismatch(format!("derivation does not prove pair ({a},{b})")));
                    }
                }
                Fact::Flat(order) => {
                    let k = order.len();
                    let p = rel.order().iter().position(|g| *g == order[0]).ok_or_else(|| mismatch("flat support differs"))?;
                    let mut rotated = rel.order();
                    rotated.rotate_left(p);
                    if &rotated != order {
                        return Err(mismatch(format!("derivation does not follow cyclic order {order:?}")));
                    }
                    rotations.push(((rel.rotations.0 + k - p) % k, (rel.rotations.1 + k - p) % k));
                }
            }
        }
        if let Fact::Flat(order) = &pf.fact {
            if order.len() < 3 || !rotations_connected(order.len(), &rotations) {
                return Err(mismatch(format!("rotations of {order:?} are not all related")));
            }
            if order.iter().min() != order.first() {
                return Err(mismatch(format!("flat order {order:?} is not canonical")));
            }
        }
        known.insert(&pf.fact);
    }
    let transverse = transverse_pairs(n, &c.family);
    if transverse != c.transverse_pairs {
        return Err(mismatch("transverse pair list differs from the family"));
    }
    if let Some(&(a, b)) = transverse.iter().find(|&&(a, b)| !known.commute(a, b)) {
        return Err(mismatch(format!("transverse pair ({a},{b}) not proved")));
    }
    let mut seen = BTreeSet::new();
    for r in &c.routes {
        check_route(&c.family, r, &known).map_err(mismatch)?;
        if c.family[r.member].contains(&r.hyperplane) || !seen.insert((r.member, r.hyperplane)) {
            return Err(mismatch(format!("unexpected route for member {} and {}", r.member, r.hyperplane)));
        }
    }
    for (s, m) in c.family.iter().enumerate() {
        if let Some(h) = (0..n).find(|h| !m.contains(h) && !seen.contains(&(s, *h))) {
            return Err(mismatch(format!("no route for member {s} and hyperplane {h}")));
        }
    }
    Ok(())
}

/// Verifies a certificate and checks that it speaks about this presentation.
pub fn verify_certificate_for(p: &Presentation, c: &InjectivityCertificate) -> Result<()> {
    if p.generators() != c.generators.as_slice() {
        return Err(mismatch("generators differ"));
    }
    let keys = |ws: &[Word]| ws.iter().map(cyclic_key).collect::<Vec<_>>();
    if keys(p.relators()) != keys(&c.relators) {
        return Err(mismatch("relators differ"));
    }
    verify_certificate(c)
}

/// Outcome for the projectivized map.
#[derive(Clone, Debug)]
pub struct ProjectivizedReport {
    pub cone_hyperplane: String,
    pub decone: Arrangement,
    pub family: FlatFamily,
    pub outcome: InjectivityOutcome,
    /// The incidence graph is connected, so the kernel of the projectivized map is the
    /// isomorphic image of the affine kernel.
    pub kernel_transfer: bool,
}

impl ProjectivizedReport {
    /// `Some(true)` when certified, `None` when inconclusive.
    pub fn rho_bar_injective(&self) -> Option<bool> {
        self.outcome.certificate().map(|_| true)
    }
}

/// Decones a central rank-three arrangement at the last hyperplane missing from some member
/// and runs the injectivity test on the affine picture.
pub fn projectivized_injectivity(a: &Arrangement, x: &FlatFamily, p: Option<&Presentation>) -> Result<ProjectivizedReport> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    if a.rank() != 3 {
        return Err(Error::Dimension(format!("projectivized test needs rank 3, got {}", a.rank())));
    }
    let h = (0..a.len()).rev().find(|&h| x.members().iter().any(|m| !m.contains(h))).ok_or(Error::NoAdmissibleHyperplane)?;
    let ess = if a.ambient_dim() > 3 { essentialize(a)? } else { a.clone() };
    let d = decone(&ess, a.label(h))?;
    let shift = |i: usize| if i > h { i - 1 } else { i };
    let mut members = Vec::new();
    for m in x.members() {
        if m.contains(h) {
            let rest: Vec<usize> = m.hyperplanes.iter().filter(|&&i| i != h).map(|&i| shift(i)).collect();
            if rest.len() >= 2 {
                members.push(Flat::new(rest, 1, FlatKind::ParallelClass));
            }
        } else {
            members.push(Flat::new(m.hyperplanes.iter().map(|&i| shift(i)).collect(), 2, FlatKind::Interior));
        }
    }
    let family = FlatFamily::new(members)?;
    let sweep;
    let p = match p {
        Some(p) => p,
        None => {
            sweep = randell_presentation(&d)?;
            &sweep
        }
    };
    let outcome = injectivity_test(&d, &family, p)?;
    let kernel_transfer = IncidenceGraph::new(a, x).is_connected();
    Ok(ProjectivizedReport { cone_hyperplane: a.label(h).to_string(), decone: d, family, outcome, kernel_transfer })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordVerdict {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Cyclic orders of the interior members with three or more lines, read from the relators
/// retracted onto each member.
pub fn local_orders(p: &Presentation, x: &FlatFamily) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut out = BTreeMap::new();
    for m in x.members().iter().filter(|m| m.kind == FlatKind::Interior && m.len() >= 3) {
        let mut by_order: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for r in p.relators() {
            let w = r.retain(|g| m.contains(g));
            if w.support().len() != m.len() {
                continue;
            }
            let Some(rel) = recognize(&w).filter(|r| r.is_unconjugated()) else { continue };
            let order = rel.order();
            let q = order.iter().enumerate().min_by_key(|(_, &g)| g).map(|(i, _)| i).unwrap_or(0);
            let k = order.len();
            let mut canon = order.clone();
            canon.rotate_left(q);
            by_order.entry(canon).or_default().push(((rel.rotations.0 + k - q) % k, (rel.rotations.1 + k - q) % k));
        }
        let found: Vec<&Vec<usize>> = by_order.iter().filter(|(o, rs)| rotations_connected(o.len(), rs)).map(|(o, _)| o).collect();
        if let [o] = found[..] {
            out.insert(m.hyperplanes.clone(), o.clone());
        }
    }
    out
}

/// Decides `w = 1` in the arrangement group when the image under `rho` is nontrivial, or
/// when it is trivial and an injectivity certificate for `(a, x)` is supplied.
pub fn word_problem(w: &Word, a: &Arrangement, x: &FlatFamily, cert: Option<&InjectivityCertificate>) -> Result<WordVerdict> {
    let n = a.len();
    if let Some(g) = w.support().into_iter().find(|&g| g >= n) {
        return Err(Error::UnknownLabel(format!("generator index {g}")));
    }
    if (0..n).any(|g| w.exponent_sum(g) != 0) {
        return Ok(WordVerdict::Nontrivial);
    }
    let family: Vec<Vec<usize>> = x.members().iter().map(|m| m.hyperplanes.clone()).collect();
    let orders = match cert {
        Some(c) => {
            if c.generators != a.labels() {
                return Err(mismatch("certificate generators do not match the arrangement"));
            }
            if c.family.iter().collect::<BTreeSet<_>>() != family.iter().collect::<BTreeSet<_>>() {
                return Err(mismatch("certificate family does not match"));
            }
            verify_certificate(c)?;
            let mut k = Knowledge::default();
            c.facts.iter().for_each(|f| k.insert(&f.fact));
            family.iter().filter_map(|m| k.flat_order(m).map(|o| (m.clone(), o.clone()))).collect()
        }
        None if a.ambient_dim() == 2 => local_orders(&randell_presentation(a)?, x),
        None => BTreeMap::new(),
    };
    let model = RhoModel::with_orders(x, &orders)?;
    let image = model.rho(w, false);
    let mut all_known = true;
    for (m, part) in x.members().iter().zip(&image.parts) {
        let known = m.kind == FlatKind::ParallelClass || m.len() == 2 || orders.contains_key(&m.hyperplanes);
        if !known {
            all_known = false;
        } else if !part.is_identity() {
            return Ok(WordVerdict::Nontrivial);
        }
    }
    Ok(if all_known && cert.is_some() { WordVerdict::Trivial } else { WordVerdict::Unknown })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{auto_family, rank_two_flats};
    use crate::corpus;
    use crate::presentation::Step;

    fn certify(a: &Arrangement) -> InjectivityCertificate {
        let p = randell_presentation(a).unwrap();
        match injectivity_test(a, &auto_family(a), &p).unwrap() {
            InjectivityOutcome::Certified(c) => *c,
            InjectivityOutcome::Inconclusive(r) => panic!("{}: {r:?}", a.name()),
        }
    }

    #[test]
    fn x3_routes() {
        let a = corpus::x3_affine();
        let c = certify(&a);
        verify_certificate(&c).unwrap();
        let s = c.family.iter().position(|m| m == &vec![0, 1]).unwrap();
        let t = c.family.iter().position(|m| m == &vec![0, 2, 4]).unwrap();
        let r = c.routes.iter().find(|r| r.member == s && r.hyperplane == 2).unwrap();
        // {a1,a2} is a parallel class, so the split comes from the triple
        assert_eq!(r.route, Route::Split { partner: t, shared: 0, split: t });
    }

    #[test]
    fn kohno_needs_derived_pairs() {
        let c = certify(&corpus::kohno_affine());
        verify_certificate(&c).unwrap();
        // {a1,a4} and {a1,a6} go through the flat (a2,a4,a6)
        for pair in [Fact::Pair(0, 3), Fact::Pair(0, 5)] {
            let pf = c.facts.iter().find(|f| f.fact == pair).unwrap();
            assert!(pf.derivations[0].steps.contains(&Step::Substitute { factor: 0, flat: vec![1, 3, 5] }), "{pair:?}");
        }
        assert!(c.facts.iter().any(|f| f.fact == Fact::Pair(3, 4) && f.derivations[0].steps.is_empty()));
    }

    #[test]
    fn tampering_is_detected() {
        let c = certify(&corpus::kohno_affine());
        let json = serde_json::to_string(&c).unwrap();
        let back: InjectivityCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let mut dropped = c.clone();
        dropped.facts.remove(0);
        assert!(verify_certificate(&dropped).is_err());
        let mut swapped = c.clone();
        swapped.relators.swap(0, 1);
        assert!(verify_certificate(&swapped).is_err());
        let mut routes = c.clone();
        routes.routes.pop();
        assert!(verify_certificate(&routes).is_err());
        let p = randell_presentation(&corpus::kohno_affine()).unwrap();
        verify_certificate_for(&p, &c).unwrap();
        assert!(verify_certificate_for(&randell_presentation(&corpus::x3_affine()).unwrap(), &c).is_err());
    }

    #[test]
    fn projectivized_examples() {
        for a in [corpus::x3_cone(), corpus::kohno_cone(), corpus::acm_arrangement(&[2, 2, 2], 0).unwrap()] {
            let x = FlatFamily::new(rank_two_flats(&a, 3)).unwrap();
            let r = projectivized_injectivity(&a, &x, None).unwrap();
            assert_eq!(r.rho_bar_injective(), Some(true), "{}: {:?}", a.name(), r.outcome);
            assert!(r.kernel_transfer);
        }
    }

    #[test]
    fn braid4_is_inconclusive() {
        let a = corpus::braid(4);
        let x = FlatFamily::new(rank_two_flats(&a, 3)).unwrap();
        let r = projectivized_injectivity(&a, &x, None).unwrap();
        let InjectivityOutcome::Inconclusive(reasons) = &r.outcome else { panic!("certified braid-4") };
        assert!(reasons.iter().any(|s| s.starts_with("condition (ii)")), "{reasons:?}");
        assert!(!reasons.iter().any(|s| s.contains("cover") || s.contains("comparable")), "{reasons:?}");
        assert_eq!(r.rho_bar_injective(), None);
    }

    #[test]
    fn projectivized_errors() {
        assert!(matches!(projectivized_injectivity(&corpus::x3_affine(), &auto_family(&corpus::x3_affine()), None), Err(Error::NotCentral)));
        let a = corpus::x3_cone();
        let all = FlatFamily::new(vec![Flat::new((0..a.len()).collect(), 2, FlatKind::Interior)]).unwrap();
        assert!(matches!(projectivized_injectivity(&a, &all, None), Err(Error::NoAdmissibleHyperplane)));
    }

    #[test]
    fn word_problem_examples() {
        let a = corpus::x3_affine();
        let x = auto_family(&a);
        let c = certify(&a);
        assert_eq!(word_problem(&Word::gen(0), &a, &x, None).unwrap(), WordVerdict::Nontrivial);
        let r = Word::commutator(&Word::gen(0), &Word::gen(3));
        assert_eq!(word_problem(&r, &a, &x, Some(&c)).unwrap(), WordVerdict::Trivial);
        assert_eq!(word_problem(&r, &a, &x, None).unwrap(), WordVerdict::Unknown);
        // a1 and a3 lie on the triple point and do not commute
        let q = Word::commutator(&Word::gen(0), &Word::gen(2));
        assert_eq!(word_problem(&q, &a, &x, Some(&c)).unwrap(), WordVerdict::Nontrivial);
        let other = certify(&corpus::kohno_affine());
        assert!(word_problem(&r, &a, &x, Some(&other)).is_err());
        let b = corpus::braid(4);
        let bx = FlatFamily::new(rank_two_flats(&b, 3)).unwrap();
        let g = |l: &str| Word::gen(b.index_of(l).unwrap());
        let brunnian = Word::commutator(&g("A14"), &Word::commutator(&g("A24"), &g("A34")));
        assert_eq!(word_problem(&brunnian, &b, &bx, None).unwrap(), WordVerdict::Unknown);
    }
}
