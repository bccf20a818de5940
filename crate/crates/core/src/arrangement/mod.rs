//! Arrangement data model and its combinatorics.

mod cone;
mod flats;
mod generating;
pub mod io;
mod multinet;

pub use cone::{cone, decone, essentialize, localization, restriction, CONE_LABEL};
pub use flats::{all_flats, auto_family, parallel_classes, rank_two_flats, IntersectionFlat};
pub use generating::{linear_support, rank2_generating_set};
pub use multinet::{multinet_verify, AxiomCheck, MultinetReport, MultinetSpec};

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

/// Affine functional `c_0 + sum c_i z_i`, stored as `(c_0, c_1, ..., c_l)`.
pub type Functional = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub label: String,
    pub coeffs: Functional,
}

impl Hyperplane {
    pub fn new(label: impl Into<String>, coeffs: Functional) -> Self {
        Self { label: label.into(), coeffs }
    }

    pub fn from_ints(label: impl Into<String>, coeffs: &[i64]) -> Self {
        Self::new(label, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn linear(&self) -> &[Rational] {
        &self.coeffs[1..]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    name: String,
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
    index: BTreeMap<String, usize>,
}

impl Arrangement {
    pub fn new(name: impl Into<String>, ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.label.is_empty() || h.label.chars().any(|c| c.is_whitespace() || c == '^') {
                return Err(Error::InvalidArrangement(format!("label `{}` is not a word token", h.label)));
            }
            if h.coeffs.len() != ambient_dim + 1 {
                return Err(Error::InvalidArrangement(format!(
                    "`{}` has {} coefficients, expected {}",
                    h.label,
                    h.coeffs.len(),
                    ambient_dim + 1
                )));
            }
            if h.linear().iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidArrangement(format!("`{}` has zero linear part", h.label)));
            }
            if index.insert(h.label.clone(), i).is_some() {
                return Err(Error::InvalidArrangement(format!("duplicate label `{}`", h.label)));
            }
        }
        for (i, j) in (0..hyperplanes.len()).tuple_combinations() {
            if proportional(&hyperplanes[i].coeffs, &hyperplanes[j].coeffs) {
                return Err(Error::InvalidArrangement(format!(
                    "`{}` and `{}` define the same hyperplane",
                    hyperplanes[i].label, hyperplanes[j].label
                )));
            }
        }
        Ok(Self { name: name.into(), ambient_dim, hyperplanes, index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.hyperplanes[i].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.hyperplanes.iter().map(|h| h.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Indices of the given labels, sorted.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = labels.iter().map(|l| self.index_of(l.as_ref())).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Rank of the linear parts, which is the maximal codimension of a nonempty flat.
    pub fn rank(&self) -> usize {
        linear_matrix(self, &(0..self.len()).collect::<Vec<_>>()).rank()
    }

    /// True when all hyperplanes share a common point.
    pub fn is_central(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        intersection_nonempty(self, &all)
    }

    /// True when every functional has zero constant term.
    pub fn is_homogeneous(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.constant().is_zero())
    }

    pub fn sub_arrangement(&self, indices: &[usize]) -> Arrangement {
        let hs = indices.iter().map(|&i| self.hyperplanes[i].clone()).collect();
        Arrangement::new(self.name.clone(), self.ambient_dim, hs).expect("subset of a valid arrangement")
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Arrangement> {
        let i = self.index_of(from)?;
        let mut hs = self.hyperplanes.clone();
        hs[i].label = to.to_string();
        Arrangement::new(self.name.clone(), self.ambient_dim, hs)
    }
}

pub(crate) fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    RatMatrix::from_rows(&[a.to_vec(), b.to_vec()], a.len()).expect("equal lengths").rank() < 2
}

pub(crate) fn full_matrix(a: &Arrangement, idx: &[usize]) -> RatMatrix {
    let rows: Vec<Functional> = idx.iter().map(|&i| a.hyperplanes[i].coeffs.clone()).collect();
    RatMatrix::from_rows(&rows, a.ambient_dim + 1).expect("uniform width")
}

pub(crate) fn linear_matrix(a: &Arrangement, idx: &[usize]) -> RatMatrix {
    let rows: Vec<Functional> = idx.iter().map(|&i| a.hyperplanes[i].linear().to_vec()).collect();
    RatMatrix::from_rows(&rows, a.ambient_dim).expect("uniform width")
}

/// Whether the hyperplanes `idx` have a common point.
pub(crate) fn intersection_nonempty(a: &Arrangement, idx: &[usize]) -> bool {
    linear_matrix(a, idx).rank() == full_matrix(a, idx).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FlatKind {
    Interior,
    ParallelClass,
}

/// A set of hyperplanes, stored as sorted indices into the ambient arrangement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
    pub kind: FlatKind,
}

impl Flat {
    pub fn new(mut hyperplanes: Vec<usize>, rank: usize, kind: FlatKind) -> Self {
        hyperplanes.sort_unstable();
        hyperplanes.dedup();
        Self { hyperplanes, rank, kind }
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.hyperplanes.binary_search(&h).is_ok()
    }

    pub fn is_subset_of(&self, other: &Flat) -> bool {
        self.hyperplanes.iter().all(|&h| other.contains(h))
    }

    pub fn labels(&self, a: &Arrangement) -> Vec<String> {
        self.hyperplanes.iter().map(|&i| a.label(i).to_string()).collect()
    }

    pub fn display(&self, a: &Arrangement) -> String {
        format!("{{{}}}", self.labels(a).join(","))
    }
}

/// A chosen family of interior rank-two flats and parallel classes, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatFamily {
    members: Vec<Flat>,
}

impl FlatFamily {
    pub fn new(mut members: Vec<Flat>) -> Result<Self> {
        members.sort_by(|a, b| a.hyperplanes.cmp(&b.hyperplanes));
        for m in &members {
            if m.len() < 2 {
                return Err(Error::InvalidFlat(format!("member {:?} has fewer than 2 hyperplanes", m.hyperplanes)));
            }
        }
        if members.windows(2).any(|w| w[0].hyperplanes == w[1].hyperplanes) {
            return Err(Error::InvalidFlat("repeated family member".into()));
        }
        Ok(Self { members })
    }

    /// Builds a family from label lists, classifying each member against the arrangement.
    pub fn from_labels<S: AsRef<str>>(a: &Arrangement, sets: &[Vec<S>]) -> Result<Self> {
        let mut members = Vec::new();
        for s in sets {
            let idx = a.indices_of(s)?;
            members.push(classify(a, idx)?);
        }
        Self::new(members)
    }

    pub fn members(&self) -> &[Flat] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn x0(&self) -> impl Iterator<Item = &Flat> {
        self.members.iter().filter(|m| m.kind == FlatKind::Interior)
    }

    pub fn x_inf(&self) -> impl Iterator<Item = &Flat> {
        self.members.iter().filter(|m| m.kind == FlatKind::ParallelClass)
    }

    /// First hyperplane not in any member.
    pub fn uncovered(&self, n: usize) -> Option<usize> {
        (0..n).find(|&h| !self.members.iter().any(|m| m.contains(h)))
    }

    pub fn covers(&self, n: usize) -> bool {
        self.uncovered(n).is_none()
    }

    /// A pair of members with one contained in the other, if any.
    pub fn comparable_pair(&self) -> Option<(usize, usize)> {
        for (i, j) in (0..self.members.len()).tuple_combinations() {
            if self.members[i].is_subset_of(&self.members[j]) || self.members[j].is_subset_of(&self.members[i]) {
                return Some((i, j));
            }
        }
        None
    }

    /// True iff `t` is contained in no member.
    pub fn is_transverse(&self, t: &[usize]) -> bool {
        !self.members.iter().any(|m| t.iter().all(|&h| m.contains(h)))
    }

    pub fn display(&self, a: &Arrangement) -> Vec<String> {
        self.members.iter().map(|m| m.display(a)).collect()
    }
}

/// Classifies a hyperplane set as a closed rank-two flat or a maximal parallel class.
pub fn classify(a: &Arrangement, idx: Vec<usize>) -> Result<Flat> {
    if idx.len() < 2 {
        return Err(Error::InvalidFlat("fewer than 2 hyperplanes".into()));
    }
    let lin = linear_matrix(a, &idx).rank();
    if intersection_nonempty(a, &idx) {
        if lin != 2 {
            return Err(Error::InvalidFlat(format!("{:?} has rank {lin}, not 2", labels_of(a, &idx))));
        }
        Ok(Flat::new(idx, 2, FlatKind::Interior))
    } else if lin == 1 {
        Ok(Flat::new(idx, 1, FlatKind::ParallelClass))
    } else {
        Err(Error::InvalidFlat(format!("{:?} is neither a rank-two flat nor a parallel class", labels_of(a, &idx))))
    }
}

fn labels_of(a: &Arrangement, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| a.label(i).to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        let h = |l: &str, c: &[i64]| Hyperplane::from_ints(l, c);
        assert!(Arrangement::new("", 2, vec![h("a", &[0, 1, 0]), h("a", &[0, 0, 1])]).is_err());
        assert!(Arrangement::new("", 2, vec![h("a", &[1, 1, 0]), h("b", &[2, 2, 0])]).is_err());
        assert!(Arrangement::new("", 2, vec![h("a", &[1, 0, 0])]).is_err());
        assert!(Arrangement::new("", 2, vec![h("a b", &[0, 1, 0])]).is_err());
        let ok = Arrangement::new("", 2, vec![h("a", &[0, 1, 0]), h("b", &[1, 1, 0])]).unwrap();
        assert!(!ok.is_central());
        assert_eq!(ok.rank(), 1);
    }
}
