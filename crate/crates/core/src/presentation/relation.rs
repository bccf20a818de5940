use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::words::{gen_of, letter, Letter, Word};

/// The element `conj^-1 letter conj`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub letter: Letter,
    pub conj: Word,
}

impl Factor {
    pub fn plain(g: usize) -> Self {
        Self { letter: letter(g, false), conj: Word::identity() }
    }

    pub fn gen(&self) -> usize {
        gen_of(self.letter)
    }

    pub fn word(&self) -> Word {
        Word::new([self.letter]).conj(&self.conj)
    }
}

/// `rot_i(P) = rot_j(P)` for `P` the product of the factors; the relator is `rot_i(P) rot_j(P)^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicRelation {
    pub factors: Vec<Factor>,
    pub rotations: (usize, usize),
}

impl CyclicRelation {
    pub fn rotated_product(&self, i: usize) -> Word {
        let k = self.factors.len();
        let words: Vec<Word> = (0..k).map(|t| self.factors[(i + t) % k].word()).collect();
        Word::product(&words)
    }

    pub fn relator(&self) -> Word {
        self.rotated_product(self.rotations.0).mul(&self.rotated_product(self.rotations.1).inverse())
    }

    /// Sorted generator set.
    pub fn support(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::gen).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn is_unconjugated(&self) -> bool {
        self.factors.iter().all(|f| f.conj.is_identity())
    }

    /// Generator order of the product.
    pub fn order(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::gen).collect()
    }
}

/// Smallest rotation of the cyclic reduction of `w` or of `w^-1`; equal keys mean equal relators.
pub fn cyclic_key(w: &Word) -> Word {
    let r = w.cyclically_reduced();
    let inv = r.inverse();
    r.rotations().into_iter().chain(inv.rotations()).min().unwrap_or_default()
}

/// Largest support tried when matching rotation differences of unconjugated products.
const MAX_RECOGNIZED_SUPPORT: usize = 6;

/// Reads a relator as a cyclic relation: a commutator `[x, y^c]` of two letters, or a rotation
/// difference of an unconjugated product of distinct generators.
pub fn recognize(w: &Word) -> Option<CyclicRelation> {
    if let Some(r) = recognize_commutator(w) {
        return Some(r);
    }
    let support = w.support();
    if support.len() < 2 || support.len() > MAX_RECOGNIZED_SUPPORT {
        return None;
    }
    let key = cyclic_key(w);
    let gens: Vec<usize> = support.into_iter().collect();
    let (first, rest) = gens.split_first()?;
    for perm in rest.iter().copied().permutations(rest.len()) {
        let order: Vec<usize> = std::iter::once(*first).chain(perm).collect();
        let k = order.len();
        let factors: Vec<Factor> = order.iter().map(|&g| Factor::plain(g)).collect();
        for (i, j) in (0..k).tuple_combinations() {
            let rel = CyclicRelation { factors: factors.clone(), rotations: (i, j) };
            if cyclic_key(&rel.relator()) == key {
                return Some(rel);
            }
        }
    }
    None
}

/// `x^-1 B^-1 x B` with `B = c^-1 y c`, up to rotation and inversion.
fn recognize_commutator(w: &Word) -> Option<CyclicRelation> {
    let r = w.cyclically_reduced();
    let n = r.len();
    if n < 4 || !n.is_multiple_of(2) {
        return None;
    }
    let m = (n - 2) / 2;
    for cand in r.rotations().into_iter().chain(r.inverse().rotations()) {
        let v = cand.letters();
        let x = -v[0];
        if v[1 + m] != x {
            continue;
        }
        let b = &v[2 + m..];
        if (0..m).any(|i| v[1 + i] != -b[m - 1 - i]) || m.is_multiple_of(2) {
            continue;
        }
        let mid = m / 2;
        if (0..mid).any(|i| b[i] != -b[m - 1 - i]) || gen_of(b[mid]) == gen_of(x) {
            continue;
        }
        // [x, Y] = rot_0 rot_1^-1 for the product x^-1 Y^-1
        let conj = Word::new(b[mid + 1..].iter().copied());
        let rel = CyclicRelation {
            factors: vec![
                Factor { letter: -x, conj: Word::identity() },
                Factor { letter: -b[mid], conj },
            ],
            rotations: (0, 1),
        };
        debug_assert_eq!(cyclic_key(&rel.relator()), cyclic_key(w));
        return Some(rel);
    }
    None
}

/// Where a relator came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// A sweep vertex: the lines through it and its coordinates.
    Vertex { lines: Vec<usize>, point: (Rational, Rational) },
    /// Read from text.
    Input,
}

/// Finitely presented group with one generator per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    origins: Vec<Origin>,
    relations: Vec<Option<CyclicRelation>>,
}

impl Presentation {
    /// Relators are recognized as cyclic relations where possible.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        if let Some(g) = relators.iter().flat_map(|r| r.support()).find(|&g| g >= n) {
            return Err(Error::UnknownLabel(format!("generator index {g}")));
        }
        let origins = vec![Origin::Input; relators.len()];
        let relations = relators.iter().map(recognize).collect();
        Ok(Self { generators, relators, origins, relations })
    }

    /// Relators are the relations' words, freely reduced.
    pub fn from_relations(generators: Vec<String>, relations: Vec<(CyclicRelation, Origin)>) -> Self {
        let relators = relations.iter().map(|(r, _)| r.relator()).collect();
        let (relations, origins) = relations.into_iter().map(|(r, o)| (Some(r), o)).unzip();
        Self { generators, relators, origins, relations }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    /// Structure of each relator, `None` when it was not recognized.
    pub fn relations(&self) -> &[Option<CyclicRelation>] {
        &self.relations
    }

    /// `gen` line, then one `rel` line per relator; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "gen" => {
                    let gens = generators.get_or_insert_with(Vec::new);
                    gens.extend(rest.split_whitespace().map(str::to_string));
                }
                "rel" => {
                    let gens = generators
                        .as_ref()
                        .ok_or_else(|| Error::Parse(format!("line {}: `rel` before `gen`", no + 1)))?;
                    relators.push(Word::parse(rest, gens)?);
                }
                _ => return Err(Error::Parse(format!("line {}: unknown keyword `{kw}`", no + 1))),
            }
        }
        let generators = generators.ok_or_else(|| Error::Parse("no `gen` line".into()))?;
        if generators.iter().collect::<BTreeSet<_>>().len() != generators.len() {
            return Err(Error::Parse("duplicate generator".into()));
        }
        Self::new(generators, relators)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gen {}\n", self.generators.join(" "));
        for r in &self.relators {
            s.push_str("rel ");
            s.push_str(&r.format(&self.generators));
            s.push('\n');
        }
        s
    }

    /// Each relator has zero exponent sum in every generator.
    pub fn abelianizes_freely(&self) -> bool {
        self.relators.iter().all(|r| (0..self.generators.len()).all(|g| r.exponent_sum(g) == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("a{i}")).collect()
    }

    #[test]
    fn recognizes_conjugated_commutator() {
        // [a4, a5^a1]
        let w = Word::commutator(&Word::gen(3), &Word::gen(4).conj(&Word::gen(0)));
        let r = recognize(&w).unwrap();
        assert_eq!(r.support(), vec![3, 4]);
        assert_eq!(cyclic_key(&r.relator()), cyclic_key(&w));
        assert!(!r.is_unconjugated());
    }

    #[test]
    fn recognizes_rotation_difference() {
        // [a1 a3, a5]
        let w = Word::commutator(&Word::new([1, 3]), &Word::gen(4));
        let r = recognize(&w).unwrap();
        assert!(r.is_unconjugated());
        assert_eq!(r.order(), vec![0, 2, 4]);
        let inv = recognize(&w.inverse()).unwrap();
        assert_eq!(cyclic_key(&inv.relator()), cyclic_key(&w));
    }

    #[test]
    fn rejects_non_relations() {
        assert!(recognize(&Word::new([1, 2, 1, -2])).is_none());
        assert!(recognize(&Word::new([1, 1, -2, -2])).is_none());
        assert!(recognize(&Word::gen(0)).is_none());
    }

    #[test]
    fn text_round_trip() {
        let text = "# two lines\ngen a1 a2 a3\nrel a1 a2 a1^-1 a2^-1\nrel a3 a1 a3^-1 a1^-1 # comment\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.relators().len(), 2);
        assert!(p.relations().iter().all(Option::is_some));
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        assert_eq!(p.generators(), &labels(3)[..]);
    }

    #[test]
    fn text_errors() {
        assert!(Presentation::parse("rel a1").is_err());
        assert!(Presentation::parse("gen a1\nrel a2").is_err());
        assert!(Presentation::parse("gen a1 a1").is_err());
        assert!(Presentation::parse("gens a1").is_err());
    }
}
