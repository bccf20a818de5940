use std::collections::HashMap;
use std::rc::Rc;

use super::commutator::MonicCommutator;
use super::word::Word;
use crate::error::{Error, Result};

pub const DEFAULT_COMMUTATOR_CAP: usize = 1_000_000;

/// Commutators `q` of one block, all with support exactly `support` (generator indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StanfordBlock {
    pub support: Vec<usize>,
    pub factors: Vec<MonicCommutator>,
}

struct Factor {
    tree: Rc<MonicCommutator>,
    mask: u64,
}

/// Subsets ordered by size, then lexicographically by position in the generator list.
pub fn size_then_lex(positions: &[usize]) -> (usize, Vec<usize>) {
    (positions.len(), positions.to_vec())
}

/// Decomposes `w` with the size-then-lex subset order. Only nonempty blocks are returned.
pub fn stanford_decompose(w: &Word, gens: &[usize], cap: usize) -> Result<Vec<StanfordBlock>> {
    stanford_decompose_by(w, gens, size_then_lex, cap)
}

/// `key` maps a sorted list of positions in `gens` to its rank; it must refine inclusion.
pub fn stanford_decompose_by<K: Ord>(
    w: &Word,
    gens: &[usize],
    key: impl Fn(&[usize]) -> K,
    cap: usize,
) -> Result<Vec<StanfordBlock>> {
    let letters: Vec<MonicCommutator> = w.letters().iter().map(|&l| MonicCommutator::leaf(l)).collect();
    stanford_decompose_factors(&letters, gens, key, cap)
}

/// Decomposes a product of monic commutators, given as its factor list.
pub fn stanford_decompose_factors<K: Ord>(
    factors: &[MonicCommutator],
    gens: &[usize],
    key: impl Fn(&[usize]) -> K,
    cap: usize,
) -> Result<Vec<StanfordBlock>> {
    if gens.len() > 64 {
        return Err(Error::ResourceLimit("at most 64 generators".into()));
    }
    let mut s: Vec<Factor> = Vec::with_capacity(factors.len());
    for f in factors {
        let mut mask = 0u64;
        for g in f.support() {
            let p = gens.iter().position(|&x| x == g).ok_or_else(|| Error::UnknownLabel(format!("generator {g} not in Y")))?;
            mask |= 1 << p;
        }
        s.push(Factor { tree: Rc::new(f.clone()), mask });
    }
    let positions = |mask: u64| -> Vec<usize> { (0..64).filter(|i| mask >> i & 1 == 1).collect() };
    let mut total = s.len();
    let mut blocks = Vec::new();
    while let Some(t) = s.iter().map(|f| f.mask).min_by_key(|&m| key(&positions(m))) {
        let mut q = Vec::new();
        // `done` holds x_1 .. x_t; factors after the last extracted y never have mask t, so one pass suffices
        let mut rest: Vec<Factor> = s.drain(..).rev().collect();
        let mut done: Vec<Factor> = Vec::with_capacity(rest.len());
        while let Some(f) = rest.pop() {
            if f.mask != t {
                done.push(f);
                continue;
            }
            // s = x_1 .. x_t y z  ->  y x_1 [x_1,y] .. x_t [x_t,y] z, y moves into the block
            total += done.len();
            if total > cap {
                return Err(Error::ResourceLimit(format!("more than {cap} commutators")));
            }
            let mut next = Vec::with_capacity(2 * done.len());
            for x in done.drain(..) {
                let c = Factor { tree: Rc::new(MonicCommutator::bracket_unchecked(x.tree.clone(), f.tree.clone())), mask: x.mask | f.mask };
                next.push(x);
                next.push(c);
            }
            done = next;
            q.push((*f.tree).clone());
        }
        s = done;
        blocks.push(StanfordBlock { support: positions(t).into_iter().map(|i| gens[i]).collect(), factors: q });
    }
    Ok(blocks)
}

/// Concatenated expansion of all blocks.
pub fn reassemble(blocks: &[StanfordBlock]) -> Word {
    let mut cache = HashMap::new();
    let words: Vec<Word> = blocks.iter().flat_map(|b| b.factors.iter()).map(|c| c.expand_cached(&mut cache)).collect();
    Word::product(&words)
}
