use std::collections::HashSet;
use std::rc::Rc;

use super::commutator::MonicCommutator;
use super::local::RhoModel;
use super::word::{letter, Word};
use crate::arrangement::{Arrangement, FlatFamily};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_WEIGHT: usize = 4;
const TREE_CAP: usize = 2_000_000;

/// True iff `t` lies in no member of the family.
pub fn is_transverse(t: &[usize], family: &FlatFamily) -> bool {
    family.is_transverse(t)
}

/// Monic commutators of weight `2..=max_weight` with transverse support, one per expansion,
/// sorted by weight and then expansion. Each is checked to die under `rho`.
pub fn enumerate_kernel_generators(a: &Arrangement, family: &FlatFamily, max_weight: usize) -> Result<Vec<MonicCommutator>> {
    if max_weight < 2 {
        return Err(Error::InvalidArgument("max weight must be at least 2".into()));
    }
    if let Some(h) = family.uncovered(a.len()) {
        return Err(Error::Coverage(a.label(h).to_string()));
    }
    let model = RhoModel::canonical(family);
    let mut seen: HashSet<Word> = HashSet::new();
    // levels[w] holds trees of weight w, distinct by expansion
    let mut levels: Vec<Vec<(Rc<MonicCommutator>, Word)>> = vec![Vec::new(); max_weight + 1];
    for g in 0..a.len() {
        for inv in [false, true] {
            let l = letter(g, inv);
            levels[1].push((Rc::new(MonicCommutator::leaf(l)), Word::new([l])));
        }
    }
    let mut out: Vec<(usize, Word, MonicCommutator)> = Vec::new();
    let mut total = 0usize;
    for w in 2..=max_weight {
        let mut level = Vec::new();
        for i in 1..w {
            for (x, xe) in &levels[i] {
                for (y, ye) in &levels[w - i] {
                    let e = Word::commutator(xe, ye);
                    if e.is_identity() || !seen.insert(e.clone()) {
                        continue;
                    }
                    total += 1;
                    if total > TREE_CAP {
                        return Err(Error::ResourceLimit(format!("more than {TREE_CAP} commutator trees")));
                    }
                    level.push((Rc::new(MonicCommutator::bracket_unchecked(x.clone(), y.clone())), e));
                }
            }
        }
        for (t, e) in &level {
            let support: Vec<usize> = e.support().into_iter().collect();
            if !family.is_transverse(&support) {
                continue;
            }
            if !model.rho(e, false).is_identity() {
                return Err(Error::Internal(format!("transverse commutator {} survives rho", t.format(&a.labels()))));
            }
            out.push((w, e.clone(), (**t).clone()));
        }
        levels[w] = level;
    }
    out.sort_by(|p, q| (p.0, &p.1).cmp(&(q.0, &q.1)));
    Ok(out.into_iter().map(|(_, _, t)| t).collect())
}
