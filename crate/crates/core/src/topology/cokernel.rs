use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::IncidenceGraph;
use crate::arrangement::{Arrangement, FlatFamily};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Smith};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelReport {
    pub rank: usize,
    pub torsion_free: bool,
    pub components: usize,
    /// `sum |S| - n - m + c`.
    pub formula: usize,
    /// `#edges - rank_Q(R)`.
    pub nullity: usize,
    /// `#edges - #nonzero invariant factors`.
    pub snf_zero_count: usize,
    pub invariant_factors: Vec<String>,
}

/// Rank of the cokernel of the projectivized map, by three independent routes that must agree.
pub fn cokernel_rank(a: &Arrangement, family: &FlatFamily) -> Result<CokernelReport> {
    let g = IncidenceGraph::new(a, family);
    let (report, _) = cokernel_with_smith(&g)?;
    Ok(report)
}

pub(crate) fn cokernel_with_smith(g: &IncidenceGraph) -> Result<(CokernelReport, Smith)> {
    let r = g.matrix();
    let edges = g.edges().len();
    let c = g.components();
    let formula = (edges + c)
        .checked_sub(g.hyperplane_count() + g.member_count())
        .ok_or_else(|| Error::Internal("negative cokernel formula".into()))?;
    let nullity = edges - r.to_rat().rank();
    let smith = smith_normal_form(&r);
    let snf_zero_count = edges - smith.nonzero_count();
    if formula != nullity || nullity != snf_zero_count {
        return Err(Error::Internal(format!(
            "cokernel rank disagreement: formula {formula}, nullity {nullity}, smith {snf_zero_count}"
        )));
    }
    let diag = smith.diagonal();
    let torsion_free = diag.iter().all(|d| d.is_zero() || d.is_one());
    let report = CokernelReport {
        rank: formula,
        torsion_free,
        components: c,
        formula,
        nullity,
        snf_zero_count,
        invariant_factors: diag.iter().filter(|d| !d.is_zero()).map(BigInt::to_string).collect(),
    };
    Ok((report, smith))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::rank_two_flats;
    use crate::corpus;
    use crate::linalg::{lattice_membership, IntMatrix, Membership};

    /// Rows 1..6 then 126, 135, 346; columns (126;1,2,6), (135;1,3,5), (346;3,4,6).
    const X3_R: [[i64; 9]; 9] = [
        [1, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 1],
        [1, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 1],
    ];

    fn x3() -> (Arrangement, FlatFamily) {
        let a = corpus::x3_cone();
        let f = FlatFamily::new(rank_two_flats(&a, 3)).unwrap();
        (a, f)
    }

    #[test]
    fn x3_matrix_matches_table() {
        let (a, f) = x3();
        let rows: Vec<Vec<i64>> = X3_R.iter().map(|r| r.to_vec()).collect();
        assert_eq!(IncidenceGraph::new(&a, &f).matrix(), IntMatrix::from_i64_rows(&rows, 9).unwrap());
    }

    #[test]
    fn x3_rank_one() {
        let (a, f) = x3();
        let r = cokernel_rank(&a, &f).unwrap();
        assert_eq!((r.rank, r.components, r.torsion_free), (1, 1, true));
        assert_eq!(r.invariant_factors, vec!["1"; 8]);
        let m = IncidenceGraph::new(&a, &f).matrix();
        assert_eq!(m.to_rat().rank(), 8);
        // unit vector on edge (126, a1) is not induced by a vertex labeling
        let mut v = vec![BigInt::zero(); 9];
        v[0] = BigInt::one();
        assert_eq!(lattice_membership(&v, &m).unwrap(), Membership::No);
    }

    #[test]
    fn kohno_rank_four() {
        let a = corpus::kohno_cone();
        let f = FlatFamily::new(rank_two_flats(&a, 3)).unwrap();
        let r = cokernel_rank(&a, &f).unwrap();
        assert_eq!((r.rank, r.torsion_free), (4, true));
    }
}
