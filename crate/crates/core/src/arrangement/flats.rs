use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{full_matrix, intersection_nonempty, linear_matrix, proportional, Arrangement, Flat, FlatFamily, FlatKind};
use num_traits::Zero;

use crate::linalg::Rational;

/// A nonempty intersection of hyperplanes, as the closed set of hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntersectionFlat {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
}

/// All hyperplanes whose functional lies in the span of those in `idx`
/// (equivalently, containing their common intersection, which must be nonempty).
pub(crate) fn closure(a: &Arrangement, idx: &[usize]) -> Vec<usize> {
    // the row space is the annihilator of the nullspace
    let null = full_matrix(a, idx).nullspace();
    let on = |k: usize| {
        let c = &a.hyperplane(k).coeffs;
        null.iter().all(|v| c.iter().zip(v).map(|(x, y)| x * y).sum::<Rational>().is_zero())
    };
    (0..a.len()).filter(|&k| idx.contains(&k) || on(k)).collect()
}

pub fn rank_two_flats(a: &Arrangement, min_multiplicity: usize) -> Vec<Flat> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, j) in (0..a.len()).tuple_combinations() {
        // a pair spans exactly one rank-two flat
        if covered.contains(&(i, j)) || linear_matrix(a, &[i, j]).rank() < 2 {
            continue;
        }
        let c = closure(a, &[i, j]);
        covered.extend(c.iter().copied().tuple_combinations::<(usize, usize)>());
        seen.insert(c);
    }
    seen.into_iter()
        .filter(|s| s.len() >= min_multiplicity.max(2))
        .map(|s| Flat::new(s, 2, FlatKind::Interior))
        .collect()
}

pub fn parallel_classes(a: &Arrangement) -> Vec<Flat> {
    let n = a.len();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let mut class = vec![i];
        for j in i + 1..n {
            if class_of[j].is_none() && proportional(a.hyperplane(i).linear(), a.hyperplane(j).linear()) {
                class.push(j);
            }
        }
        for &k in &class {
            class_of[k] = Some(classes.len());
        }
        classes.push(class);
    }
    classes
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| Flat::new(c, 1, FlatKind::ParallelClass))
        .sorted()
        .collect()
}

/// Rank-two flats of multiplicity at least 3 together with all maximal parallel classes.
pub fn auto_family(a: &Arrangement) -> FlatFamily {
    let mut members = rank_two_flats(a, 3);
    members.extend(parallel_classes(a));
    FlatFamily::new(members).expect("flats of a valid arrangement are distinct")
}

/// The full intersection poset, including the ambient space (empty set, rank 0),
/// sorted by rank and then by hyperplane set.
pub fn all_flats(a: &Arrangement) -> Vec<IntersectionFlat> {
    let mut by_set: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    by_set.insert(Vec::new(), 0);
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for f in &frontier {
            for h in 0..a.len() {
                if f.contains(&h) {
                    continue;
                }
                let mut s = f.clone();
                s.push(h);
                s.sort_unstable();
                if !intersection_nonempty(a, &s) {
                    continue;
                }
                let c = closure(a, &s);
                if !by_set.contains_key(&c) {
                    let r = linear_matrix(a, &c).rank();
                    by_set.insert(c.clone(), r);
                    next.insert(c);
                }
            }
        }
        frontier = next.into_iter().collect();
    }
    by_set
        .into_iter()
        .map(|(hyperplanes, rank)| IntersectionFlat { hyperplanes, rank })
        .sorted_by(|x, y| x.rank.cmp(&y.rank).then(x.hyperplanes.cmp(&y.hyperplanes)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;

    fn arr(ls: &[(&str, &[i64])]) -> Arrangement {
        let d = ls[0].1.len() - 1;
        Arrangement::new("t", d, ls.iter().map(|(l, c)| Hyperplane::from_ints(*l, c)).collect()).unwrap()
    }

    #[test]
    fn generic_lines_have_no_triple_points() {
        let a = arr(&[("a", &[0, 1, 0]), ("b", &[0, 0, 1]), ("c", &[-1, 1, 1])]);
        assert!(rank_two_flats(&a, 3).is_empty());
        assert_eq!(rank_two_flats(&a, 2).len(), 3);
        assert!(parallel_classes(&a).is_empty());
    }

    #[test]
    fn pencil_poset() {
        let a = arr(&[("a", &[0, 1, 0]), ("b", &[0, 0, 1]), ("c", &[0, 1, 1])]);
        let fl = all_flats(&a);
        assert_eq!(fl.len(), 5);
        assert_eq!(fl.last().unwrap().hyperplanes, vec![0, 1, 2]);
    }

    #[test]
    fn parallel_grouping() {
        let a = arr(&[("a", &[0, 1, 0]), ("b", &[1, 1, 0]), ("c", &[0, 0, 1]), ("d", &[2, 1, 0])]);
        let p = parallel_classes(&a);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].hyperplanes, vec![0, 1, 3]);
    }
}
