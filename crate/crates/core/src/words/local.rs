use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::word::{gen_of, letter, Word};
use crate::arrangement::{Arrangement, FlatFamily, FlatKind};
use crate::error::{Error, Result};
use crate::linalg::{lattice_membership, Membership};
use crate::topology::IncidenceGraph;

/// Normal-form data for one family member: its cyclic order and eliminated generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalModel {
    /// Interior flats: cyclic order rotated to start at the smallest index. Parallel classes: sorted.
    pub order: Vec<usize>,
    /// `None` for parallel classes, whose local group is free on all members.
    pub eliminated: Option<usize>,
}

/// Element of `F_{r-1} x Z` (or of a free group for a parallel class).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalElement {
    pub free_part: Word,
    pub z_exp: i64,
}

impl LocalElement {
    pub fn is_identity(&self) -> bool {
        self.free_part.is_identity() && self.z_exp == 0
    }
}

/// One local element per family member, in family order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductElement {
    pub parts: Vec<LocalElement>,
}

impl ProductElement {
    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(LocalElement::is_identity)
    }
}

fn canonical_rotation(mut order: Vec<usize>) -> Vec<usize> {
    if let Some(p) = order.iter().enumerate().min_by_key(|(_, &h)| h).map(|(i, _)| i) {
        order.rotate_left(p);
    }
    order
}

impl LocalModel {
    /// Free basis of the projectivized local group.
    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied().filter(move |&h| Some(h) != self.eliminated)
    }

    /// Normal form of a word already restricted to this member's letters.
    pub fn encode(&self, w: &Word) -> LocalElement {
        let Some(e) = self.eliminated else {
            return LocalElement { free_part: w.clone(), z_exp: 0 };
        };
        let k = self.order.iter().position(|&h| h == e).expect("eliminated generator is a member");
        let head = Word::new(self.order[..k].iter().map(|&h| letter(h, false)));
        let tail = Word::new(self.order[k + 1..].iter().map(|&h| letter(h, false)));
        // c_k = head^-1 tail^-1 z
        let sub = Word::product([&head.inverse(), &tail.inverse()]);
        let sub_inv = sub.inverse();
        let mut free = Word::identity();
        let mut z = 0;
        for &l in w.letters() {
            if gen_of(l) == e {
                if l > 0 {
                    free = free.mul(&sub);
                    z += 1;
                } else {
                    free = free.mul(&sub_inv);
                    z -= 1;
                }
            } else {
                free.push(l);
            }
        }
        LocalElement { free_part: free, z_exp: z }
    }

    /// A word representing the element: `free_part * z^z_exp`.
    pub fn decode(&self, x: &LocalElement) -> Word {
        let z = Word::new(self.order.iter().map(|&h| letter(h, false)));
        x.free_part.mul(&z.pow(x.z_exp))
    }

    /// Abelianized exponents on this member's hyperplanes, in sorted hyperplane order.
    pub fn abelianize(&self, x: &LocalElement) -> Vec<i64> {
        let mut hs = self.order.clone();
        hs.sort_unstable();
        let z = if self.eliminated.is_some() { x.z_exp } else { 0 };
        hs.iter().map(|&h| x.free_part.exponent_sum(h) + z).collect()
    }
}

/// Cyclic orders and eliminations for every member of a family; defines `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoModel {
    family: FlatFamily,
    locals: Vec<LocalModel>,
}

impl RhoModel {
    /// Sorted cyclic orders and the largest index eliminated in each interior flat.
    pub fn canonical(family: &FlatFamily) -> Self {
        Self::with_orders(family, &BTreeMap::new()).expect("empty override map")
    }

    /// `orders` maps a member's sorted hyperplane set to its cyclic order; missing members use sorted order.
    pub fn with_orders(family: &FlatFamily, orders: &BTreeMap<Vec<usize>, Vec<usize>>) -> Result<Self> {
        let mut locals = Vec::new();
        for m in family.members() {
            let order = match orders.get(&m.hyperplanes) {
                Some(o) => {
                    let mut s = o.clone();
                    s.sort_unstable();
                    if s != m.hyperplanes {
                        return Err(Error::InvalidFlat(format!("cyclic order {o:?} is not a permutation of {:?}", m.hyperplanes)));
                    }
                    canonical_rotation(o.clone())
                }
                None => m.hyperplanes.clone(),
            };
            let eliminated = (m.kind == FlatKind::Interior).then(|| *m.hyperplanes.last().expect("nonempty member"));
            locals.push(LocalModel { order, eliminated });
        }
        Ok(Self { family: family.clone(), locals })
    }

    pub fn family(&self) -> &FlatFamily {
        &self.family
    }

    pub fn locals(&self) -> &[LocalModel] {
        &self.locals
    }

    pub fn set_eliminated(&mut self, member: usize, h: usize) -> Result<()> {
        let local = self.locals.get_mut(member).ok_or_else(|| Error::InvalidFlat(format!("no member {member}")))?;
        if local.eliminated.is_none() || !local.order.contains(&h) {
            return Err(Error::InvalidFlat(format!("cannot eliminate {h} in member {member}")));
        }
        local.eliminated = Some(h);
        Ok(())
    }

    /// `rho(w)`: delete letters outside each member, then normalize; `projectivized` drops `z`.
    pub fn rho(&self, w: &Word, projectivized: bool) -> ProductElement {
        let parts = self
            .family
            .members()
            .iter()
            .zip(&self.locals)
            .map(|(m, local)| {
                let mut x = local.encode(&w.retain(|g| m.contains(g)));
                if projectivized {
                    x.z_exp = 0;
                }
                x
            })
            .collect();
        ProductElement { parts }
    }

    /// Abelianized edge labeling, edges ordered member-major as in [`IncidenceGraph`].
    pub fn edge_vector(&self, e: &ProductElement) -> Vec<BigInt> {
        self.locals.iter().zip(&e.parts).flat_map(|(l, x)| l.abelianize(x)).map(BigInt::from).collect()
    }

    /// Membership of `e` in `rho(G)`, decided on abelianizations against the hyperplane rows of R.
    pub fn image_membership(&self, a: &Arrangement, e: &ProductElement) -> Result<Membership> {
        if e.parts.len() != self.locals.len() {
            return Err(Error::Dimension("product element does not match the family".into()));
        }
        let g = IncidenceGraph::new(a, &self.family);
        lattice_membership(&self.edge_vector(e), &g.hyperplane_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{rank_two_flats, Flat};
    use crate::corpus;
    use proptest::prelude::*;

    fn triple_model() -> LocalModel {
        LocalModel { order: vec![0, 2, 4], eliminated: Some(4) }
    }

    #[test]
    fn full_product_is_z() {
        let m = triple_model();
        let x = m.encode(&Word::new([1, 3, 5]));
        assert!(x.free_part.is_identity());
        assert_eq!(x.z_exp, 1);
        let rotated = m.encode(&Word::new([3, 5, 1]));
        assert_eq!(rotated, x);
    }

    #[test]
    fn outside_letters_vanish() {
        let fam = FlatFamily::new(vec![Flat::new(vec![0, 2, 4], 2, FlatKind::Interior)]).unwrap();
        let model = RhoModel::canonical(&fam);
        assert!(model.rho(&Word::gen(1), false).is_identity());
        assert!(!model.rho(&Word::gen(0), false).is_identity());
    }

    #[test]
    fn single_edge_unit_not_in_image() {
        let a = corpus::x3_cone();
        let fam = FlatFamily::new(rank_two_flats(&a, 3)).unwrap();
        let model = RhoModel::canonical(&fam);
        // the generator a1 of the flat {a1,a2,a6}, alone
        let k = fam.members().iter().position(|m| m.hyperplanes == vec![0, 1, 5]).unwrap();
        let mut parts = vec![LocalElement::default(); fam.len()];
        parts[k] = LocalElement { free_part: Word::gen(0), z_exp: 0 };
        let e = ProductElement { parts };
        assert_eq!(model.image_membership(&a, &e).unwrap(), Membership::No);
        let id = ProductElement { parts: vec![LocalElement::default(); fam.len()] };
        assert!(model.image_membership(&a, &id).unwrap().is_yes());
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(
            letters in prop::collection::vec(prop::sample::select(vec![1, 3, 5, -1, -3, -5]), 0..12),
            elim in prop::sample::select(vec![0usize, 2, 4]),
        ) {
            let m = LocalModel { order: vec![0, 2, 4], eliminated: Some(elim) };
            let w = Word::new(letters);
            let x = m.encode(&w);
            prop_assert!(!x.free_part.support().contains(&elim));
            prop_assert_eq!(x.z_exp, w.exponent_sum(elim));
            prop_assert_eq!(m.encode(&m.decode(&x)), x);
        }

        #[test]
        fn images_are_members(letters in prop::collection::vec((1..=6i32, any::<bool>()), 0..14)) {
            let a = corpus::x3_cone();
            let fam = FlatFamily::new(rank_two_flats(&a, 3)).unwrap();
            let model = RhoModel::canonical(&fam);
            let w = Word::new(letters.into_iter().map(|(g, s)| if s { g } else { -g }));
            prop_assert!(model.image_membership(&a, &model.rho(&w, false)).unwrap().is_yes());
        }
    }
}
