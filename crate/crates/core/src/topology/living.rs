use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::cokernel::cokernel_with_smith;
use super::IncidenceGraph;
use crate::arrangement::{Arrangement, FlatFamily, FlatKind};
use crate::error::{Error, Result};
use crate::linalg::lattice_membership;
use crate::words::{gen_of, Word};

/// Which generator of each member is dropped to get a free basis of its projectivized local group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// The largest hyperplane index of every member.
    Last,
    /// A choice maximizing the number of living vertices.
    Auto,
    /// One hyperplane index per member, in family order.
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexStatus {
    pub member: String,
    pub hyperplane: String,
    pub living: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LivingReport {
    pub members: Vec<String>,
    pub eliminated: Vec<String>,
    #[serde(skip)]
    pub eliminated_index: Vec<usize>,
    pub vertices: Vec<VertexStatus>,
    /// Living vertices per member.
    pub living_counts: Vec<usize>,
    pub all_living: bool,
}

fn require_interior(family: &FlatFamily) -> Result<()> {
    if family.members().iter().any(|m| m.kind != FlatKind::Interior) {
        return Err(Error::InvalidFlat("living-vertex analysis needs a family of interior flats; cone the arrangement".into()));
    }
    Ok(())
}

/// Living status of every edge of the incidence graph: its unit vector is outside the row lattice of R.
pub fn living_edges(g: &IncidenceGraph) -> Result<Vec<bool>> {
    let r = g.matrix();
    (0..g.edges().len())
        .map(|e| {
            let mut v = vec![BigInt::zero(); g.edges().len()];
            v[e] = BigInt::one();
            Ok(!lattice_membership(&v, &r)?.is_yes())
        })
        .collect()
}

pub fn living_vertices(a: &Arrangement, family: &FlatFamily, choice: &Elimination) -> Result<LivingReport> {
    require_interior(family)?;
    let g = IncidenceGraph::new(a, family);
    let living = living_edges(&g)?;
    let members = family.members();
    let eliminated: Vec<usize> = match choice {
        Elimination::Last => members.iter().map(|m| *m.hyperplanes.last().expect("nonempty")).collect(),
        Elimination::Explicit(e) => {
            if e.len() != members.len() || members.iter().zip(e).any(|(m, h)| !m.contains(*h)) {
                return Err(Error::InvalidFlat("explicit elimination must pick one hyperplane of each member".into()));
            }
            e.clone()
        }
        // Living status is per edge, so the search splits over members: drop a dead edge when there is one.
        Elimination::Auto => members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let dead = m.hyperplanes.iter().rev().find(|&&h| !living[g.edge_index(i, h).expect("edge")]);
                *dead.unwrap_or_else(|| m.hyperplanes.last().expect("nonempty"))
            })
            .collect(),
    };
    let mut vertices = Vec::new();
    let mut living_counts = Vec::new();
    for (i, m) in members.iter().enumerate() {
        let mut count = 0;
        for &h in m.hyperplanes.iter().filter(|&&h| h != eliminated[i]) {
            let alive = living[g.edge_index(i, h).expect("edge")];
            count += usize::from(alive);
            vertices.push(VertexStatus { member: m.display(a), hyperplane: a.label(h).to_string(), living: alive });
        }
        living_counts.push(count);
    }
    Ok(LivingReport {
        members: family.display(a),
        eliminated: eliminated.iter().map(|&h| a.label(h).to_string()).collect(),
        eliminated_index: eliminated,
        all_living: vertices.iter().all(|v| v.living),
        vertices,
        living_counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorBasis {
    pub member: String,
    pub eliminated: String,
    /// The generator with image +-1 used to shift the others.
    pub pivot: String,
    pub reoriented: bool,
    /// Basis words in the member's generators.
    pub basis: Vec<String>,
    pub images: Vec<i64>,
    /// Nielsen moves producing the basis from the standard generators.
    pub moves: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BestvinaBradyBasis {
    Applicable {
        /// Image of every edge generator under the cokernel projection, in edge order.
        projection: Vec<i64>,
        factors: Vec<FactorBasis>,
    },
    NotApplicable {
        reason: String,
    },
}

/// Free bases of the projectivized local groups whose elements all map to 1 in a rank-one cokernel.
pub fn bestvina_brady_basis(a: &Arrangement, family: &FlatFamily, choice: &Elimination) -> Result<BestvinaBradyBasis> {
    require_interior(family)?;
    let g = IncidenceGraph::new(a, family);
    let (report, smith) = cokernel_with_smith(&g)?;
    if report.rank != 1 || !report.torsion_free {
        return Ok(BestvinaBradyBasis::NotApplicable {
            reason: format!("cokernel rank {} (torsion-free: {})", report.rank, report.torsion_free),
        });
    }
    // coordinates x V; the zero invariant factor sits in the last column
    let k = smith.nonzero_count();
    let projection: Vec<i64> = (0..g.edges().len())
        .map(|e| smith.v.get(e, k).to_i64().ok_or_else(|| Error::Internal("projection entry overflow".into())))
        .collect::<Result<_>>()?;
    let living = living_vertices(a, family, choice)?;
    let mut factors = Vec::new();
    for (i, m) in family.members().iter().enumerate() {
        let mut elim = living.eliminated_index[i];
        let image = |h: usize| projection[g.edge_index(i, h).expect("edge")];
        let Some(pivot) = m.hyperplanes.iter().copied().find(|&h| h != elim && image(h).abs() == 1).or_else(|| {
            // every kept generator maps to 0 or beyond +-1: try eliminating elsewhere
            let p = m.hyperplanes.iter().copied().find(|&h| image(h).abs() == 1)?;
            elim = m.hyperplanes.iter().copied().find(|&h| h != p)?;
            Some(p)
        }) else {
            return Ok(BestvinaBradyBasis::NotApplicable {
                reason: format!("no generator of {} maps to +-1", m.display(a)),
            });
        };
        let reoriented = image(pivot) == -1;
        let piv = if reoriented { Word::gen(pivot).inverse() } else { Word::gen(pivot) };
        let labels = a.labels();
        let word_image = |w: &Word| -> i64 { w.letters().iter().map(|&l| l.signum() as i64 * image(gen_of(l))).sum() };
        let mut basis = Vec::new();
        let mut images = Vec::new();
        let mut moves = Vec::new();
        if reoriented {
            moves.push(format!("{0} -> {0}^-1", a.label(pivot)));
        }
        for h in m.hyperplanes.iter().copied().filter(|&h| h != elim) {
            let w = if h == pivot { piv.clone() } else { piv.pow(1 - image(h)).mul(&Word::gen(h)) };
            if h != pivot && image(h) != 1 {
                moves.push(format!("{} -> {}", a.label(h), w.format_compact(&labels)));
            }
            images.push(word_image(&w));
            basis.push(w.format_compact(&labels));
        }
        factors.push(FactorBasis {
            member: m.display(a),
            eliminated: a.label(elim).to_string(),
            pivot: a.label(pivot).to_string(),
            reoriented,
            basis,
            images,
            moves,
        });
    }
    Ok(BestvinaBradyBasis::Applicable { projection, factors })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FinitenessRoute {
    AllLiving,
    BestvinaBrady,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub m: usize,
    pub route: FinitenessRoute,
    /// e.g. `F_2, not F_3`; `PARTIAL` when no exact verdict is issued.
    pub verdict: String,
    /// Exact type k (`F_k`, not `F_{k+1}`) when known.
    pub exact_type: Option<usize>,
    pub living: LivingReport,
    /// Connectivity lower bound of the living subcomplex (join of the nonempty parts).
    pub living_connectivity: i64,
}

impl FinitenessReport {
    pub fn is_definite(&self) -> bool {
        self.route != FinitenessRoute::Partial
    }
}

fn exact(k: usize) -> String {
    format!("F_{k}, not F_{}", k + 1)
}

pub fn finiteness_type(a: &Arrangement, family: &FlatFamily) -> Result<FinitenessReport> {
    let living = living_vertices(a, family, &Elimination::Auto)?;
    let m = family.len();
    let nonempty = living.living_counts.iter().filter(|&&d| d > 0).count() as i64;
    let living_connectivity = nonempty - 2;
    if living.all_living && m >= 1 {
        return Ok(FinitenessReport {
            m,
            route: FinitenessRoute::AllLiving,
            verdict: exact(m - 1),
            exact_type: Some(m - 1),
            living,
            living_connectivity,
        });
    }
    if let BestvinaBradyBasis::Applicable { .. } = bestvina_brady_basis(a, family, &Elimination::Auto)? {
        // flag complex of a complete multipartite graph: a join of discrete parts of size |S| - 1
        if family.members().iter().all(|s| s.len() >= 3) {
            return Ok(FinitenessReport {
                m,
                route: FinitenessRoute::BestvinaBrady,
                verdict: exact(m - 1),
                exact_type: Some(m - 1),
                living,
                living_connectivity,
            });
        }
    }
    Ok(FinitenessReport {
        m,
        route: FinitenessRoute::Partial,
        verdict: "PARTIAL".into(),
        exact_type: None,
        living,
        living_connectivity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::rank_two_flats;
    use crate::corpus;
    use itertools::Itertools;

    fn images_of(p: &[i64], g: &IncidenceGraph, i: usize, hs: &[usize]) -> Vec<i64> {
        hs.iter().map(|&h| p[g.edge_index(i, h).unwrap()]).collect()
    }

    fn family(a: &Arrangement) -> FlatFamily {
        FlatFamily::new(rank_two_flats(a, 3)).unwrap()
    }

    #[test]
    fn x3_chosen_eliminations_all_living() {
        let a = corpus::x3_cone();
        let f = family(&a);
        // keep a1,a6 | a1,a3 | a3,a6: eliminate a2, a5, a4
        let e = ["a2", "a5", "a4"].iter().map(|l| a.index_of(l).unwrap()).collect();
        let r = living_vertices(&a, &f, &Elimination::Explicit(e)).unwrap();
        assert!(r.all_living);
        assert_eq!(r.vertices.len(), 6);
        let r = finiteness_type(&a, &f).unwrap();
        assert_eq!(r.verdict, "F_2, not F_3");
        assert_eq!(r.route, FinitenessRoute::AllLiving);
    }

    #[test]
    fn degree_one_edges_are_dead() {
        let a = corpus::x3_cone();
        let f = family(&a);
        let g = IncidenceGraph::new(&a, &f);
        let living = living_edges(&g).unwrap();
        for (e, &(_, h)) in g.edges().iter().enumerate() {
            if g.degree(h) >= 2 {
                assert!(living[e]);
            }
        }
        let r = living_vertices(&a, &f, &Elimination::Last).unwrap();
        assert!(!r.all_living);
    }

    /// Exhaustive search over all elimination choices agrees with the per-member AUTO choice.
    #[test]
    fn auto_matches_exhaustive() {
        for a in [corpus::x3_cone(), corpus::kohno_cone(), corpus::acm_arrangement(&[3, 2, 2], 0).unwrap()] {
            let f = family(&a);
            let best = f
                .members()
                .iter()
                .map(|m| m.hyperplanes.clone())
                .multi_cartesian_product()
                .map(|e| living_vertices(&a, &f, &Elimination::Explicit(e)).unwrap().vertices.iter().filter(|v| v.living).count())
                .max()
                .unwrap();
            let auto = living_vertices(&a, &f, &Elimination::Auto).unwrap();
            assert_eq!(auto.vertices.iter().filter(|v| v.living).count(), best);
        }
    }

    #[test]
    fn x3_basis_maps_to_one() {
        let a = corpus::x3_cone();
        let f = family(&a);
        let BestvinaBradyBasis::Applicable { projection, factors } = bestvina_brady_basis(&a, &f, &Elimination::Auto).unwrap() else {
            panic!("rank one cokernel");
        };
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|b| b.images == vec![1, 1]));
        let g = IncidenceGraph::new(&a, &f);
        for (i, m) in f.members().iter().enumerate() {
            assert_eq!(images_of(&projection, &g, i, &m.hyperplanes).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn kohno_not_applicable() {
        let a = corpus::kohno_cone();
        let f = family(&a);
        assert!(matches!(bestvina_brady_basis(&a, &f, &Elimination::Auto).unwrap(), BestvinaBradyBasis::NotApplicable { .. }));
        assert_eq!(finiteness_type(&a, &f).unwrap().verdict, "F_4, not F_5");
    }

    #[test]
    fn acm_bestvina_brady_route() {
        let a = corpus::acm_arrangement(&[3, 2, 2], 0).unwrap();
        let r = finiteness_type(&a, &family(&a)).unwrap();
        assert_eq!(r.verdict, "F_2, not F_3");
        assert_eq!(r.route, FinitenessRoute::BestvinaBrady);
    }
}
