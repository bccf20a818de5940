use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap, BTreeSet, HashMap, };

use serde::{Deserialize, Serialize};

use super::relation::{cyclic_key, CyclicRelation, Factor, Presentation};
use crate::arrangement::{rank_two_flats, Arrangement, FlatFamily, FlatKind};
use crate::error::{Error, Result};
use crate::words::{gen_of, Letter, Word};

/// A consequence of the relators: two generators commute, or the rotations of the
/// product over a flat in the given cyclic order all agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fact {
    /// Sorted pair.
    Pair(usize, usize),
    /// Cyclic order rotated to start at its smallest generator.
    Flat(Vec<usize>),
}

impl Fact {
    pub fn pair(a: usize, b: usize) -> Self {
        Fact::Pair(a.min(b), a.max(b))
    }

    pub fn support(&self) -> Vec<usize> {
        match self {
            Fact::Pair(a, b) => vec![*a, *b],
            Fact::Flat(o) => {
                let mut s = o.clone();
                s.sort_unstable();
                s
            }
        }
    }
}

/// One rewriting move on the conjugators of a relation; each preserves the relation up to
/// global conjugation, given the facts it cites.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    /// Drop the first letter of a conjugator: it is the factor's own generator, or commutes with it.
    StripLeft { factor: usize },
    /// Replace the first letter `x^e` of a conjugator by `C^-e`, where `x C` is the product over
    /// an established flat containing `x` and the factor's generator, rotated to start at `x`.
    Substitute { factor: usize, flat: Vec<usize> },
    /// Conjugate every factor by `letter`.
    ConjugateAll { letter: Letter },
    /// Exchange the conjugator letters at `at` and `at + 1`, whose generators commute.
    Swap { factor: usize, at: usize },
}

/// Rewrites one relator, read as `relation`, into an unconjugated relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub relator: usize,
    pub relation: CyclicRelation,
    pub steps: Vec<Step>,
}

/// Facts in the order they were established, each with the derivations proving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvedFact {
    pub fact: Fact,
    pub derivations: Vec<Derivation>,
}

/// Established facts with fast lookup.
#[derive(Clone, Debug, Default)]
pub struct Knowledge {
    pairs: BTreeSet<(usize, usize)>,
    flats: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl Knowledge {
    pub fn commute(&self, a: usize, b: usize) -> bool {
        a == b || self.pairs.contains(&(a.min(b), a.max(b)))
    }

    pub fn holds(&self, f: &Fact) -> bool {
        match f {
            Fact::Pair(a, b) => self.commute(*a, *b),
            Fact::Flat(o) => self.flats.get(&f.support()) == Some(o),
        }
    }

    /// Cyclic order of an established flat with this sorted support.
    pub fn flat_order(&self, support: &[usize]) -> Option<&Vec<usize>> {
        self.flats.get(support)
    }

    pub fn insert(&mut self, f: &Fact) {
        match f {
            Fact::Pair(a, b) => {
                self.pairs.insert((*a.min(b), *a.max(b)));
            }
            Fact::Flat(o) => {
                self.flats.insert(f.support(), o.clone());
            }
        }
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn flats(&self) -> &BTreeMap<Vec<usize>, Vec<usize>> {
        &self.flats
    }
}

/// Outcome of the closure: proved facts in order and the relators left unresolved.
#[derive(Clone, Debug, Default)]
pub struct DerivationLog {
    pub facts: Vec<ProvedFact>,
    pub knowledge: Knowledge,
    /// Recognized relators whose conjugations could not be removed, and unrecognized ones.
    pub unresolved: Vec<usize>,
    pub unrecognized: Vec<usize>,
}

impl DerivationLog {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.knowledge.pairs.iter().copied().collect()
    }
}

/// State budgets for the search on one relator; a larger budget is tried only when a
/// whole round with the smaller one proves nothing new.
const BUDGETS: [usize; 3] = [300, 3_000, 20_000];
const EXTRA_LENGTH: usize = 8;

fn rotate_to_min(order: &[usize]) -> (Vec<usize>, usize) {
    let p = order.iter().enumerate().min_by_key(|(_, &g)| g).map(|(i, _)| i).unwrap_or(0);
    let mut o = order.to_vec();
    o.rotate_left(p);
    (o, p)
}

/// `C` with `x C` the product over the flat in cyclic `order`, rotated to start at `x`.
fn cofactor(order: &[usize], x: usize) -> Option<Word> {
    let p = order.iter().position(|&g| g == x)?;
    let k = order.len();
    Some(Word::new((1..k).map(|t| order[(p + t) % k] as Letter + 1)))
}

/// Applies one step, returning the new conjugators or why the step is invalid.
pub fn apply_step(
    letters: &[Letter],
    conjs: &[Word],
    step: &Step,
    known: &Knowledge,
) -> std::result::Result<Vec<Word>, String> {
    let mut out = conjs.to_vec();
    match step {
        Step::StripLeft { factor } => {
            let c = conjs.get(*factor).ok_or("no such factor")?;
            let x = *c.letters().first().ok_or("empty conjugator")?;
            let a = gen_of(letters[*factor]);
            if !known.commute(gen_of(x), a) {
                return Err(format!("letter {x} is not known to commute with generator {a}"));
            }
            out[*factor] = Word::new(c.letters()[1..].iter().copied());
        }
        Step::Substitute { factor, flat } => {
            let c = conjs.get(*factor).ok_or("no such factor")?;
            let x = *c.letters().first().ok_or("empty conjugator")?;
            let a = gen_of(letters[*factor]);
            let mut support = flat.clone();
            support.sort_unstable();
            if known.flat_order(&support) != Some(flat) {
                return Err(format!("flat {flat:?} is not established"));
            }
            if !flat.contains(&a) {
                return Err(format!("generator {a} is not in flat {flat:?}"));
            }
            let cof = cofactor(flat, gen_of(x)).ok_or("letter outside the flat")?;
            let rep = if x > 0 { cof.inverse() } else { cof };
            out[*factor] = rep.mul(&Word::new(c.letters()[1..].iter().copied()));
        }
        Step::ConjugateAll { letter } => {
            if *letter == 0 {
                return Err("letter 0".into());
            }
            for c in &mut out {
                c.push(*letter);
            }
        }
        Step::Swap { factor, at } => {
            let c = conjs.get(*factor).ok_or("no such factor")?;
            let (&x, &y) = c.letters().get(*at).zip(c.letters().get(at + 1)).ok_or("swap past the end")?;
            if !known.commute(gen_of(x), gen_of(y)) {
                return Err(format!("letters {x} and {y} are not known to commute"));
            }
            let mut l = c.letters().to_vec();
            l.swap(*at, at + 1);
            out[*factor] = Word::new(l);
        }
    }
    Ok(out)
}

/// Best-first search, shortest total conjugator length first, for a step sequence making
/// every conjugator trivial.
fn search(rel: &CyclicRelation, known: &Knowledge, budget: usize) -> Option<Vec<Step>> {
    let letters: Vec<Letter> = rel.factors.iter().map(|f| f.letter).collect();
    let start: Vec<Word> = rel.factors.iter().map(|f| f.conj.clone()).collect();
    let weight = |s: &[Word]| s.iter().map(Word::len).sum::<usize>();
    let limit = weight(&start) + EXTRA_LENGTH;
    let mut parent: HashMap<Vec<Word>, Option<(Vec<Word>, Step)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = BinaryHeap::from([Reverse((weight(&start), 0usize, start))]);
    let own: Vec<usize> = rel.support();
    let mut tick = 0usize;
    while let Some(Reverse((_, _, state))) = queue.pop() {
        if state.iter().all(Word::is_identity) {
            let mut steps = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, step))) = parent.get(&cur).cloned() {
                steps.push(step);
                cur = prev;
            }
            steps.reverse();
            return Some(steps);
        }
        let mut moves = Vec::new();
        for (i, c) in state.iter().enumerate() {
            let Some(&x) = c.letters().first() else { continue };
            moves.push(Step::StripLeft { factor: i });
            let a = gen_of(letters[i]);
            for (support, order) in known.flats() {
                if support != &own && support.contains(&a) && support.contains(&gen_of(x)) && gen_of(x) != a {
                    moves.push(Step::Substitute { factor: i, flat: order.clone() });
                }
            }
            if let Some(&last) = c.letters().last() {
                moves.push(Step::ConjugateAll { letter: -last });
            }
            for (at, w) in c.letters().windows(2).enumerate() {
                if gen_of(w[0]) != gen_of(w[1]) && known.commute(gen_of(w[0]), gen_of(w[1])) {
                    moves.push(Step::Swap { factor: i, at });
                }
            }
        }
        for step in moves {
            let Ok(next) = apply_step(&letters, &state, &step, known) else { continue };
            let w = weight(&next);
            if w > limit || parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return None;
            }
            parent.insert(next.clone(), Some((state.clone(), step)));
            // FIFO among equal weights
            tick += 1;
            queue.push(Reverse((w, tick, next)));
        }
    }
    None
}

/// Replays a derivation against the relator word it cites; returns the fact-contributing
/// unconjugated relation.
pub fn replay(d: &Derivation, relators: &[Word], known: &Knowledge) -> std::result::Result<CyclicRelation, String> {
    let w = relators.get(d.relator).ok_or_else(|| format!("no relator {}", d.relator))?;
    if cyclic_key(&d.relation.relator()) != cyclic_key(w) {
        return Err(format!("relation does not spell relator {}", d.relator));
    }
    let k = d.relation.factors.len();
    let (i, j) = d.relation.rotations;
    if k < 2 || i >= k || j >= k || i == j {
        return Err("bad rotation pair".into());
    }
    let gens: BTreeSet<usize> = d.relation.factors.iter().map(Factor::gen).collect();
    if gens.len() != k {
        return Err("repeated generator in a relation".into());
    }
    if k > 2 && d.relation.factors.iter().any(|f| f.letter < 0) {
        return Err("inverted generator in a local relation".into());
    }
    let letters: Vec<Letter> = d.relation.factors.iter().map(|f| f.letter).collect();
    let mut conjs: Vec<Word> = d.relation.factors.iter().map(|f| f.conj.clone()).collect();
    for s in &d.steps {
        conjs = apply_step(&letters, &conjs, s, known)?;
    }
    if !conjs.iter().all(Word::is_identity) {
        return Err(format!("relator {} still conjugated after its steps", d.relator));
    }
    Ok(CyclicRelation { factors: letters.iter().map(|&l| Factor { letter: l, conj: Word::identity() }).collect(), rotations: d.relation.rotations })
}

/// Rotation pairs of unconjugated relations, grouped by canonical cyclic order.
#[derive(Default)]
struct FlatProgress {
    pending: BTreeMap<Vec<usize>, (Vec<(usize, usize)>, Vec<Derivation>)>,
}

impl FlatProgress {
    /// Records a rotation pair; returns the fact and its derivations once all rotations are joined.
    fn add(&mut self, rel: &CyclicRelation, d: Derivation) -> Option<ProvedFact> {
        let (order, p) = rotate_to_min(&rel.order());
        let k = order.len();
        let shift = |i: usize| (i + k - p) % k;
        let entry = self.pending.entry(order.clone()).or_default();
        entry.0.push((shift(rel.rotations.0), shift(rel.rotations.1)));
        entry.1.push(d);
        if rotations_connected(k, &entry.0) {
            let (_, ds) = self.pending.remove(&order).expect("entry exists");
            return Some(ProvedFact { fact: Fact::Flat(order), derivations: ds });
        }
        None
    }
}

pub(crate) fn rotations_connected(k: usize, pairs: &[(usize, usize)]) -> bool {
    let mut root: Vec<usize> = (0..k).collect();
    fn find(root: &mut [usize], mut i: usize) -> usize {
        while root[i] != i {
            root[i] = root[root[i]];
            i = root[i];
        }
        i
    }
    for &(i, j) in pairs {
        let (a, b) = (find(&mut root, i), find(&mut root, j));
        root[a] = b;
    }
    let r = find(&mut root, 0);
    (0..k).all(|i| find(&mut root, i) == r)
}

/// Closure of the relators under the rewriting moves: every relator that can be made
/// unconjugated contributes a commuting pair or a rotation pair of a flat.
pub fn derive_commuting_pairs(p: &Presentation) -> DerivationLog {
    let mut log = DerivationLog::default();
    let mut progress = FlatProgress::default();
    let mut open: Vec<usize> = Vec::new();
    for (i, r) in p.relations().iter().enumerate() {
        match r {
            Some(_) => open.push(i),
            None => log.unrecognized.push(i),
        }
    }
    let mut level = 0;
    loop {
        let mut changed = false;
        let mut still = Vec::new();
        for &i in &open {
            let rel = p.relations()[i].as_ref().expect("recognized");
            let Some(steps) = search(rel, &log.knowledge, BUDGETS[level]) else {
                still.push(i);
                continue;
            };
            let d = Derivation { relator: i, relation: rel.clone(), steps };
            let proved = if rel.factors.len() == 2 {
                let f = Fact::pair(rel.factors[0].gen(), rel.factors[1].gen());
                Some(ProvedFact { fact: f, derivations: vec![d] })
            } else {
                progress.add(rel, d)
            };
            if let Some(pf) = proved {
                if !log.knowledge.holds(&pf.fact) {
                    log.knowledge.insert(&pf.fact);
                    log.facts.push(pf);
                }
            }
            changed = true;
        }
        open = still;
        if changed {
            level = 0;
        } else if level + 1 < BUDGETS.len() {
            level += 1;
        } else {
            break;
        }
    }
    log.unresolved = open;
    log.unresolved.extend(progress.pending.values().flat_map(|(_, ds)| ds.iter().map(|d| d.relator)));
    log.unresolved.sort_unstable();
    log
}

/// Result of the conjugation-free check, before and after normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationFreeReport {
    /// Every relator is already an unconjugated local relation and every flat is fully related.
    pub raw: bool,
    /// The same after the derivation closure.
    pub normalized: bool,
    /// Relators blocking the raw property.
    pub conjugated: Vec<usize>,
    /// Relators left conjugated after normalization.
    pub unresolved: Vec<usize>,
    /// Rank-two flats whose local relation is not established after normalization.
    pub missing: Vec<Vec<usize>>,
}

/// Compares the relators with the unconjugated local relations at the rank-two flats of `a`.
pub fn conjugation_free_check(p: &Presentation, a: &Arrangement, x: &FlatFamily) -> Result<ConjugationFreeReport> {
    conjugation_free_with(p, a, x, &derive_commuting_pairs(p))
}

pub(crate) fn conjugation_free_with(
    p: &Presentation,
    a: &Arrangement,
    x: &FlatFamily,
    log: &DerivationLog,
) -> Result<ConjugationFreeReport> {
    check_generators(p, a)?;
    let flats = rank_two_flats(a, 2);
    if let Some(m) = x.members().iter().find(|m| m.kind == FlatKind::Interior && !flats.iter().any(|f| f.hyperplanes == m.hyperplanes)) {
        return Err(Error::InvalidFlat(format!("{} is not a rank-two flat", m.display(a))));
    }
    let flat_sets: BTreeSet<&Vec<usize>> = flats.iter().map(|f| &f.hyperplanes).collect();
    let mut conjugated = Vec::new();
    let mut raw = Knowledge::default();
    let mut progress = FlatProgress::default();
    for (i, r) in p.relations().iter().enumerate() {
        let local = r.as_ref().filter(|r| r.is_unconjugated() && flat_sets.contains(&r.support()));
        let Some(rel) = local else {
            conjugated.push(i);
            continue;
        };
        let d = Derivation { relator: i, relation: rel.clone(), steps: Vec::new() };
        if rel.factors.len() == 2 {
            raw.insert(&Fact::pair(rel.factors[0].gen(), rel.factors[1].gen()));
        } else if let Some(pf) = progress.add(rel, d) {
            raw.insert(&pf.fact);
        }
    }
    let covered = |k: &Knowledge, f: &Vec<usize>| {
        if f.len() == 2 {
            k.commute(f[0], f[1])
        } else {
            k.flat_order(f).is_some()
        }
    };
    let raw_ok = conjugated.is_empty() && flats.iter().all(|f| covered(&raw, &f.hyperplanes));
    let missing: Vec<Vec<usize>> =
        flats.iter().filter(|f| !covered(&log.knowledge, &f.hyperplanes)).map(|f| f.hyperplanes.clone()).collect();
    let mut unresolved = log.unresolved.clone();
    unresolved.extend(&log.unrecognized);
    unresolved.sort_unstable();
    Ok(ConjugationFreeReport { raw: raw_ok, normalized: missing.is_empty() && unresolved.is_empty(), conjugated, unresolved, missing })
}

pub(crate) fn check_generators(p: &Presentation, a: &Arrangement) -> Result<()> {
    if p.generators() != a.labels().as_slice() {
        return Err(Error::CertificateMismatch(format!(
            "presentation generators {:?} do not match the lines {:?}",
            p.generators(),
            a.labels()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn plain_commutator_gives_pair() {
        let log = derive_commuting_pairs(&pres("gen a1 a2 a3 a4\nrel a1 a4 a1^-1 a4^-1"));
        assert_eq!(log.pairs(), vec![(0, 3)]);
        assert!(log.facts[0].derivations[0].steps.is_empty());
    }

    #[test]
    fn conjugated_commutator_needs_premise() {
        // [a4, a5^a1] with [a1, a4]
        let p = pres("gen a1 a2 a3 a4 a5\nrel a4^-1 a1^-1 a5^-1 a1 a4 a1^-1 a5 a1\nrel a1^-1 a4^-1 a1 a4");
        let log = derive_commuting_pairs(&p);
        assert_eq!(log.pairs(), vec![(0, 3), (3, 4)]);
        assert!(log.unresolved.is_empty());
        let alone = pres("gen a1 a2 a3 a4 a5\nrel a4^-1 a1^-1 a5^-1 a1 a4 a1^-1 a5 a1");
        let log = derive_commuting_pairs(&alone);
        assert!(log.pairs().is_empty());
        assert_eq!(log.unresolved, vec![0]);
    }

    #[test]
    fn flat_substitution() {
        // [a2 a4, a6], [a2, a4 a6], [a1, a6^a2], [a1, a4]
        let p = pres(
            "gen a1 a2 a3 a4 a5 a6
             rel a4^-1 a2^-1 a6^-1 a2 a4 a6
             rel a2^-1 a6^-1 a4^-1 a2 a4 a6
             rel a1^-1 a2^-1 a6^-1 a2 a1 a2^-1 a6 a2
             rel a1^-1 a4^-1 a1 a4",
        );
        let log = derive_commuting_pairs(&p);
        assert_eq!(log.pairs(), vec![(0, 3), (0, 5)]);
        assert!(log.knowledge.holds(&Fact::Flat(vec![1, 3, 5])));
        let d = &log.facts.iter().find(|f| f.fact == Fact::Pair(0, 5)).unwrap().derivations[0];
        assert!(d.steps.iter().any(|s| matches!(s, Step::Substitute { .. })));
    }

    #[test]
    fn replay_checks_premises() {
        let p = pres("gen a1 a2 a3 a4 a5\nrel a4^-1 a1^-1 a5^-1 a1 a4 a1^-1 a5 a1\nrel a1^-1 a4^-1 a1 a4");
        let log = derive_commuting_pairs(&p);
        let d = &log.facts[1].derivations[0];
        assert!(replay(d, p.relators(), &Knowledge::default()).is_err());
        let mut k = Knowledge::default();
        k.insert(&Fact::Pair(0, 3));
        assert!(replay(d, p.relators(), &k).is_ok());
        assert!(replay(d, &p.relators()[1..], &k).is_err());
    }

    #[test]
    fn rotation_connectivity() {
        assert!(rotations_connected(3, &[(0, 1), (1, 2)]));
        assert!(rotations_connected(3, &[(0, 2), (2, 1)]));
        assert!(!rotations_connected(3, &[(0, 2), (2, 0)]));
        assert!(!rotations_connected(4, &[(0, 1), (2, 3)]));
    }

    #[test]
    fn swap_reorders_commuting_conjugator_letters() {
        // [b1^(d2 b2 d1), b3] with [b2,d1] and the flat (d1,b1,d2)
        let p = pres(
            "gen d1 d2 b1 b2 b3
             rel d1 b1 d2 d1^-1 d2^-1 b1^-1
             rel b1 d2 d1 b1^-1 d1^-1 d2^-1
             rel b2 d1 b2^-1 d1^-1
             rel b2 b3 b2^-1 b3^-1
             rel d1^-1 b2^-1 d2^-1 b1 d2 b2 d1 b3 d1^-1 b2^-1 d2^-1 b1^-1 d2 b2 d1 b3^-1",
        );
        let log = derive_commuting_pairs(&p);
        assert!(log.unresolved.is_empty());
        let pf = log.facts.iter().find(|f| f.fact == Fact::Pair(2, 4)).unwrap();
        assert!(pf.derivations[0].steps.iter().any(|s| matches!(s, Step::Swap { .. })));
        let conj = [Word::new([2, 4, 1]), Word::identity()];
        let swap = Step::Swap { factor: 0, at: 1 };
        assert!(apply_step(&[3, 5], &conj, &swap, &Knowledge::default()).is_err());
        assert_eq!(apply_step(&[3, 5], &conj, &swap, &log.knowledge).unwrap()[0], Word::new([2, 1, 4]));
    }
}
