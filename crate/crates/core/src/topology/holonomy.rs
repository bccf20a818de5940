use serde::Serialize;

use crate::arrangement::{rank_two_flats, Arrangement};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposabilityReport {
    pub dim_h2: usize,
    pub dim_h3: usize,
    /// Sum over flats of size >= 3 of the degree-3 free Lie dimension on `|S| - 1` generators.
    pub local_sum: usize,
    pub decomposable_over_q: bool,
}

fn free_lie_3(n: usize) -> usize {
    (n * n * n - n) / 3
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `x (x) v - v (x) x` for a generator `x` and a tensor `v` of degree `d`, as a degree `d + 1` tensor.
fn bracket_with_generator(n: usize, x: usize, v: &[i64]) -> Vec<i64> {
    let size = v.len();
    let mut out = vec![0; size * n];
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        out[x * size + i] += c;
        out[i * n + x] -= c;
    }
    out
}

/// Compares the degree-3 holonomy Lie algebra with the sum of its local pieces.
/// Lie elements are embedded in the tensor algebra, so spans are computed there.
pub fn decomposability_test(a: &Arrangement) -> Result<DecomposabilityReport> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    let n = a.len();
    let flats = rank_two_flats(a, 2);
    let mut rel2: Vec<Vec<i64>> = Vec::new();
    for s in &flats {
        for &h in &s.hyperplanes {
            let mut v = vec![0i64; n * n];
            for &k in &s.hyperplanes {
                if k != h {
                    v[h * n + k] += 1;
                    v[k * n + h] -= 1;
                }
            }
            rel2.push(v);
        }
    }
    let rank = |rows: &[Vec<i64>], cols: usize| -> Result<usize> {
        if rows.is_empty() {
            return Ok(0);
        }
        let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&c| Rational::from_integer(c.into())).collect()).collect();
        Ok(RatMatrix::from_rows(&q, cols)?.rank())
    };
    let dim_h2 = binom2(n) - rank(&rel2, n * n)?;
    let expected_h2: usize = flats.iter().map(|s| binom2(s.len() - 1)).sum();
    if dim_h2 != expected_h2 {
        return Err(Error::Internal(format!("degree-2 holonomy has dimension {dim_h2}, expected {expected_h2}")));
    }
    let rel3: Vec<Vec<i64>> = (0..n).flat_map(|x| rel2.iter().map(move |r| bracket_with_generator(n, x, r))).collect();
    let dim_h3 = free_lie_3(n) - rank(&rel3, n * n * n)?;
    let local_sum = flats.iter().filter(|s| s.len() >= 3).map(|s| free_lie_3(s.len() - 1)).sum();
    Ok(DecomposabilityReport { dim_h2, dim_h3, local_sum, decomposable_over_q: dim_h3 == local_sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Hyperplane;
    use crate::corpus;

    #[test]
    fn braid4_is_not_decomposable() {
        let r = decomposability_test(&corpus::braid(4)).unwrap();
        assert_eq!((r.dim_h3, r.local_sum, r.decomposable_over_q), (10, 8, false));
        assert_eq!(r.dim_h2, 4);
    }

    #[test]
    fn x3_cone_is_decomposable() {
        let r = decomposability_test(&corpus::x3_cone()).unwrap();
        assert!(r.decomposable_over_q);
        assert_eq!(r.local_sum, 6);
    }

    #[test]
    fn generic_lines_have_no_degree_three() {
        let h = |l: &str, c: &[i64]| Hyperplane::from_ints(l, c);
        let a = Arrangement::new("g", 3, vec![h("x", &[0, 1, 0, 0]), h("y", &[0, 0, 1, 0]), h("z", &[0, 0, 0, 1])]).unwrap();
        let r = decomposability_test(&a).unwrap();
        assert_eq!((r.dim_h2, r.dim_h3, r.local_sum), (0, 0, 0));
        assert!(r.decomposable_over_q);
    }
}
