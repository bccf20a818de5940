use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::word::{gen_of, Letter, Word};

/// Iterated commutator of signed generators, `[x, y] = x^-1 y^-1 x y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonicCommutator {
    Leaf(Letter),
    Bracket(Rc<MonicCommutator>, Rc<MonicCommutator>),
}

impl MonicCommutator {
    pub fn leaf(l: Letter) -> Self {
        MonicCommutator::Leaf(l)
    }

    /// `None` when the bracket expands to the identity.
    pub fn bracket(x: Rc<MonicCommutator>, y: Rc<MonicCommutator>) -> Option<Self> {
        let c = MonicCommutator::Bracket(x, y);
        (!c.expand().is_identity()).then_some(c)
    }

    /// Bracket without the triviality check; callers guarantee `x` and `y` do not commute.
    pub(crate) fn bracket_unchecked(x: Rc<MonicCommutator>, y: Rc<MonicCommutator>) -> Self {
        MonicCommutator::Bracket(x, y)
    }

    /// Number of leaves.
    pub fn weight(&self) -> usize {
        match self {
            MonicCommutator::Leaf(_) => 1,
            MonicCommutator::Bracket(x, y) => x.weight() + y.weight(),
        }
    }

    pub fn expand(&self) -> Word {
        match self {
            MonicCommutator::Leaf(l) => Word::new([*l]),
            MonicCommutator::Bracket(x, y) => Word::commutator(&x.expand(), &y.expand()),
        }
    }

    /// Expansion with shared subtrees expanded once; the cache is keyed by node address.
    pub fn expand_cached(&self, cache: &mut HashMap<*const MonicCommutator, Word>) -> Word {
        match self {
            MonicCommutator::Leaf(l) => Word::new([*l]),
            MonicCommutator::Bracket(x, y) => {
                let mut get = |c: &Rc<MonicCommutator>| {
                    if let Some(w) = cache.get(&Rc::as_ptr(c)) {
                        return w.clone();
                    }
                    let w = c.expand_cached(cache);
                    cache.insert(Rc::as_ptr(c), w.clone());
                    w
                };
                let (xw, yw) = (get(x), get(y));
                Word::commutator(&xw, &yw)
            }
        }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        self.collect_support(&mut s);
        s
    }

    fn collect_support(&self, s: &mut BTreeSet<usize>) {
        match self {
            MonicCommutator::Leaf(l) => {
                s.insert(gen_of(*l));
            }
            MonicCommutator::Bracket(x, y) => {
                x.collect_support(s);
                y.collect_support(s);
            }
        }
    }

    pub fn format(&self, labels: &[String]) -> String {
        match self {
            MonicCommutator::Leaf(l) if *l < 0 => format!("{}^-1", labels[gen_of(*l)]),
            MonicCommutator::Leaf(l) => labels[gen_of(*l)].clone(),
            MonicCommutator::Bracket(x, y) => format!("[{},{}]", x.format(labels), y.format(labels)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(l: Letter) -> Rc<MonicCommutator> {
        Rc::new(MonicCommutator::leaf(l))
    }

    #[test]
    fn expansion_follows_convention() {
        let c = MonicCommutator::bracket(leaf(1), leaf(2)).unwrap();
        assert_eq!(c.expand().letters(), &[-1, -2, 1, 2]);
        assert_eq!(c.weight(), 2);
        let labels: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        assert_eq!(c.format(&labels), "[x,y]");
        assert!(MonicCommutator::bracket(leaf(1), leaf(-1)).is_none());
        assert!(MonicCommutator::bracket(leaf(2), leaf(2)).is_none());
    }

    #[test]
    fn nested_support() {
        let inner = Rc::new(MonicCommutator::bracket(leaf(2), leaf(3)).unwrap());
        let c = MonicCommutator::bracket(leaf(1), inner).unwrap();
        assert_eq!(c.support(), BTreeSet::from([0, 1, 2]));
        assert_eq!(c.weight(), 3);
        assert_eq!(c.expand().len(), 10);
    }
}
