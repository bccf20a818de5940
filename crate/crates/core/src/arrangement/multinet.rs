use std::collections::BTreeMap;

use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;

use super::{rank_two_flats, Arrangement, Flat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultinetSpec {
    pub blocks: Vec<Vec<usize>>,
    /// Indexed by hyperplane.
    pub multiplicity: Vec<u64>,
}

impl MultinetSpec {
    pub fn from_labels<S: AsRef<str>>(a: &Arrangement, blocks: &[Vec<S>], multiplicity: &BTreeMap<String, u64>) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|l| a.index_of(l.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut m = vec![1; a.len()];
        for (l, &v) in multiplicity {
            m[a.index_of(l)?] = v;
        }
        Ok(Self { blocks, multiplicity: m })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultinetReport {
    pub k: usize,
    pub d: Option<u64>,
    pub base_locus: Vec<Vec<String>>,
    pub block_degree: AxiomCheck,
    pub base_point_balance: AxiomCheck,
    pub connectivity: AxiomCheck,
    pub is_multinet: bool,
}

pub fn multinet_verify(a: &Arrangement, spec: &MultinetSpec) -> Result<MultinetReport> {
    if !a.is_central() || !(2..=3).contains(&a.rank()) {
        return Err(Error::InvalidMultinet("expected a central arrangement of rank at most 3".into()));
    }
    let n = a.len();
    let k = spec.blocks.len();
    if k < 3 {
        return Err(Error::InvalidMultinet(format!("{k} blocks, need at least 3")));
    }
    if spec.multiplicity.len() != n || spec.multiplicity.contains(&0) {
        return Err(Error::InvalidMultinet("multiplicities must be positive, one per hyperplane".into()));
    }
    if spec.multiplicity.iter().fold(0u64, |g, &m| g.gcd(&m)) != 1 {
        return Err(Error::InvalidMultinet("multiplicity is not primitive".into()));
    }
    let mut block_of = vec![None; n];
    for (b, block) in spec.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidMultinet("empty block".into()));
        }
        for &h in block {
            if block_of[h].replace(b).is_some() {
                return Err(Error::InvalidMultinet(format!("`{}` lies in two blocks", a.label(h))));
            }
        }
    }
    if let Some(h) = block_of.iter().position(|b| b.is_none()) {
        return Err(Error::InvalidMultinet(format!("`{}` lies in no block", a.label(h))));
    }
    let block_of: Vec<usize> = block_of.into_iter().map(Option::unwrap).collect();
    let m = &spec.multiplicity;

    let points = rank_two_flats(a, 2);
    let base: Vec<&Flat> = points
        .iter()
        .filter(|p| p.hyperplanes.iter().map(|&h| block_of[h]).unique().count() >= 2)
        .collect();

    let degrees: Vec<u64> = spec.blocks.iter().map(|b| b.iter().map(|&h| m[h]).sum()).collect();
    let equal_degree = degrees.iter().all_equal();
    let block_degree = AxiomCheck {
        pass: equal_degree,
        detail: format!("block degrees {degrees:?}"),
    };

    let mut unbalanced = Vec::new();
    for p in &base {
        let mut per = vec![0u64; k];
        for &h in &p.hyperplanes {
            per[block_of[h]] += m[h];
        }
        if !per.iter().all_equal() {
            unbalanced.push(format!("{} {per:?}", p.display(a)));
        }
    }
    let base_point_balance = AxiomCheck {
        pass: unbalanced.is_empty(),
        detail: if unbalanced.is_empty() {
            format!("{} base points balanced", base.len())
        } else {
            format!("unbalanced: {}", unbalanced.join("; "))
        },
    };

    let mut point_of_pair = BTreeMap::new();
    for (pi, p) in points.iter().enumerate() {
        for (x, y) in p.hyperplanes.iter().tuple_combinations() {
            point_of_pair.insert((*x, *y), pi);
        }
    }
    let in_base: Vec<bool> = points.iter().map(|p| base.iter().any(|b| b == &p)).collect();
    let mut disconnected = Vec::new();
    for (b, block) in spec.blocks.iter().enumerate() {
        let mut parent: Vec<usize> = (0..block.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (i, j) in (0..block.len()).tuple_combinations() {
            let key = (block[i].min(block[j]), block[i].max(block[j]));
            if let Some(&pi) = point_of_pair.get(&key) {
                if !in_base[pi] {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let roots = (0..block.len()).map(|i| find(&mut parent, i)).unique().count();
        if roots > 1 {
            disconnected.push(b + 1);
        }
    }
    let connectivity = AxiomCheck {
        pass: disconnected.is_empty(),
        detail: if disconnected.is_empty() {
            "every block connected away from the base locus".into()
        } else {
            format!("disconnected blocks {disconnected:?}")
        },
    };

    let is_multinet = block_degree.pass && base_point_balance.pass && connectivity.pass;
    Ok(MultinetReport {
        k,
        d: equal_degree.then(|| degrees[0]),
        base_locus: base.iter().map(|p| p.labels(a)).collect(),
        block_degree,
        base_point_balance,
        connectivity,
        is_multinet,
    })
}
