use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter is `±(g + 1)` for generator index `g`; the sign is the exponent.
pub type Letter = i32;

pub fn letter(g: usize, inverse: bool) -> Letter {
    let l = g as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn gen_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Freely reduced word over generator indices. Serialized as its letter list.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Letter>", try_from = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Parse("letter 0 in a word".into()));
        }
        Ok(Word::new(letters))
    }
}

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn gen(g: usize) -> Self {
        Self(vec![letter(g, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one.
    pub fn push(&mut self, l: Letter) {
        debug_assert!(l != 0);
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut w = Word::identity();
        for x in words {
            for &l in &x.0 {
                w.push(l);
            }
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `self^by = by^-1 self by`.
    pub fn conj(&self, by: &Word) -> Word {
        Word::product([&by.inverse(), self, by])
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        Word::product([&x.inverse(), &y.inverse(), x, y])
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().map(|&l| gen_of(l)).collect()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|&&l| gen_of(l) == g).map(|&l| l.signum() as i64).sum()
    }

    /// Deletes every letter whose generator fails `keep`, then reduces.
    pub fn retain(&self, keep: impl Fn(usize) -> bool) -> Word {
        Word::new(self.0.iter().copied().filter(|&l| keep(gen_of(l))))
    }

    /// Conjugates away matching ends: the result is cyclically reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j > i + 1 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// All cyclic rotations of a cyclically reduced word.
    pub fn rotations(&self) -> Vec<Word> {
        let n = self.0.len();
        (0..n.max(1))
            .map(|k| Word(self.0[k..].iter().chain(&self.0[..k]).copied().collect()))
            .collect()
    }

    pub fn parse(text: &str, labels: &[String]) -> Result<Word> {
        let mut w = Word::identity();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            let g = labels.iter().position(|l| l == name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
            w = w.mul(&Word::gen(g).pow(exp));
        }
        Ok(w)
    }

    pub fn format(&self, labels: &[String]) -> String {
        let mut s = String::new();
        for (i, &l) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&labels[gen_of(l)]);
            if l < 0 {
                s.push_str("^-1");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Compact form with exponents collected, e.g. `a1^2 a3^-1`.
    pub fn format_compact(&self, labels: &[String]) -> String {
        let mut s = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.signum() as i64;
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str(&labels[gen_of(l)]);
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
            i = j;
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("a{i}")).collect()
    }

    #[test]
    fn parse_and_format() {
        let l = labels(3);
        let w = Word::parse("a1 a3^-1 a1^-1 a3", &l).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.format(&l), "a1 a3^-1 a1^-1 a3");
        assert_eq!(Word::parse("a1 a1^-1", &l).unwrap(), Word::identity());
        assert_eq!(Word::parse("a2^3", &l).unwrap().format_compact(&l), "a2^3");
        assert!(Word::parse("a9", &l).is_err());
        assert!(Word::parse("a1^x", &l).is_err());
    }

    #[test]
    fn support_and_commutator() {
        let w = Word::new([1, 2, -1]);
        assert_eq!(w.support(), BTreeSet::from([0, 1]));
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(c.letters(), &[-1, -2, 1, 2]);
        assert_eq!(Word::gen(0).conj(&Word::gen(1)).letters(), &[-2, 1, 2]);
        assert_eq!(c.cyclically_reduced(), c);
        assert_eq!(Word::new([2, 1, -2]).cyclically_reduced().letters(), &[1]);
    }

    fn arb_word() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((1..=4i32, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..16)
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(u in arb_word(), v in arb_word()) {
            let whole = Word::new(u.iter().chain(&v).copied());
            let parts = Word::new(u.clone()).mul(&Word::new(v.clone()));
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn inverse_cancels(u in arb_word()) {
            let w = Word::new(u);
            prop_assert!(w.mul(&w.inverse()).is_identity());
            prop_assert!(w.letters().windows(2).all(|p| p[0] != -p[1]));
        }
    }
}
