//! Sweep presentations and invariants of the named examples compared with reference values.

use std::collections::BTreeSet;

use arrgroup::arrangement::{auto_family, Arrangement};
use arrgroup::corpus;
use arrgroup::presentation::{
    conjugation_free_check, derive_commuting_pairs, injectivity_test, randell_presentation, verify_certificate_for,
    DerivationLog, Presentation,
};
use arrgroup::topology::{poincare_polynomial, Polynomial};
use arrgroup::words::Word;

fn g(i: usize) -> Word {
    Word::gen(i - 1)
}

fn comm(x: &Word, y: &Word) -> Word {
    Word::commutator(x, y)
}

/// `x^y = y^-1 x y`.
fn conj(x: &Word, y: &Word) -> Word {
    x.conj(y)
}

fn pairs(v: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    v.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
}

fn order(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i - 1).collect()
}

fn presentation(a: &Arrangement, relators: Vec<Word>) -> Presentation {
    Presentation::new(a.labels(), relators).unwrap()
}

fn flat_orders(log: &DerivationLog) -> Vec<Vec<usize>> {
    log.knowledge.flats().values().cloned().collect()
}

/// Reference relators for X3.
fn x3_reference() -> Vec<Word> {
    vec![
        comm(&g(1), &g(4)),
        comm(&g(2), &g(4)),
        comm(&g(2), &g(5)),
        comm(&g(2), &g(3)),
        comm(&g(1).mul(&g(3)), &g(5)),
        comm(&g(1), &g(3).mul(&g(5))),
    ]
}

/// Reference relators for the Kohno arrangement, before any derivation.
fn kohno_reference() -> Vec<Word> {
    vec![
        comm(&g(1).mul(&g(3)), &g(5)),
        comm(&g(1), &g(3).mul(&g(5))),
        comm(&g(2), &g(5)),
        comm(&g(2), &g(3)),
        comm(&g(6), &g(3)),
        comm(&g(4), &conj(&g(5), &g(1))),
        comm(&g(1), &g(4)),
        comm(&g(2).mul(&g(4)), &g(6)),
        comm(&g(2), &g(4).mul(&g(6))),
        comm(&g(1), &conj(&g(6), &g(2))),
    ]
}

#[test]
fn kohno_sweep_matches_reference_list() {
    let a = corpus::kohno_affine();
    let reference = derive_commuting_pairs(&presentation(&a, kohno_reference()));
    let swept = derive_commuting_pairs(&randell_presentation(&a).unwrap());
    let want = pairs(&[(1, 4), (1, 6), (2, 3), (2, 5), (3, 6), (4, 5)]);
    assert_eq!(reference.knowledge.pairs(), &want);
    assert_eq!(swept.knowledge.pairs(), &want);
    let flats = vec![order(&[1, 3, 5]), order(&[2, 4, 6])];
    assert_eq!(flat_orders(&reference), flats);
    assert_eq!(flat_orders(&swept), flats);
    assert!(reference.unresolved.is_empty() && swept.unresolved.is_empty());
}

#[test]
fn kohno_reference_relators_need_the_derivations() {
    let a = corpus::kohno_affine();
    let p = presentation(&a, kohno_reference());
    let cf = conjugation_free_check(&p, &a, &auto_family(&a)).unwrap();
    assert!(!cf.raw);
    assert!(cf.normalized);
    assert_eq!(cf.conjugated, vec![5, 9]);
}

#[test]
fn x3_sweep_against_reference_list() {
    let a = corpus::x3_affine();
    let reference = derive_commuting_pairs(&presentation(&a, x3_reference()));
    let swept = derive_commuting_pairs(&randell_presentation(&a).unwrap());
    assert_eq!(reference.knowledge.pairs(), &pairs(&[(1, 4), (2, 3), (2, 4), (2, 5)]));
    assert_eq!(flat_orders(&reference), vec![order(&[1, 3, 5])]);
    // five double points: a4 and a5 meet at (2,-1), absent from the reference list
    let mut want = pairs(&[(1, 4), (2, 3), (2, 4), (2, 5)]);
    want.insert((3, 4));
    assert_eq!(swept.knowledge.pairs(), &want);
    // opposite orientation of the triple point
    assert_eq!(flat_orders(&swept), vec![order(&[1, 5, 3])]);
}

#[test]
fn x3_reference_list_misses_a_transverse_pair() {
    let a = corpus::x3_affine();
    let x = auto_family(&a);
    let p = presentation(&a, x3_reference());
    // the reference list lacks [a4,a5]: every relator is plain, but that double point has no relation
    let cf = conjugation_free_check(&p, &a, &x).unwrap();
    assert!(cf.conjugated.is_empty());
    assert_eq!(cf.missing, vec![vec![3, 4]]);
    assert!(!cf.raw);
    // condition (i) needs the same pair
    assert!(injectivity_test(&a, &x, &p).unwrap().certificate().is_none());
    let swept = randell_presentation(&a).unwrap();
    let outcome = injectivity_test(&a, &x, &swept).unwrap();
    verify_certificate_for(&swept, outcome.certificate().unwrap()).unwrap();
}

#[test]
fn kohno_cone_family() {
    let a = corpus::kohno_cone();
    let shown: BTreeSet<String> = auto_family(&a).display(&a).into_iter().collect();
    let want: BTreeSet<String> =
        ["{a1,a3,a5}", "{a2,a4,a6}", "{a1,a2,a7}", "{a3,a4,a7}", "{a5,a6,a7}"].iter().map(|s| s.to_string()).collect();
    assert_eq!(shown, want);
}

#[test]
fn braid_poincare_polynomials() {
    // prod (1 + i t), i < l
    for l in 2..=5 {
        let want = (1..l as i64).fold(Polynomial::one(), |p, i| p.mul(&Polynomial::linear(i)));
        assert_eq!(poincare_polynomial(&corpus::braid(l)), want, "braid{l}");
    }
}
