use num_traits::Zero;

use super::{proportional, Arrangement, Flat, FlatKind, Functional, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

/// The set `(0, a_2, m_3 a_1, ..., m_mu a_1)` for an interior rank-two flat, where `a_1`, `a_2`
/// are the functionals of its first two hyperplanes and `m_i a_1 - a_2` vanishes on the i-th.
pub fn rank2_generating_set(a: &Arrangement, x: &Flat) -> Result<Vec<Functional>> {
    if x.kind != FlatKind::Interior || x.rank != 2 || x.len() < 2 {
        return Err(Error::InvalidFlat("expected an interior rank-two flat".into()));
    }
    let width = a.ambient_dim() + 1;
    let a1 = a.hyperplane(x.hyperplanes[0]).coeffs.clone();
    let a2 = a.hyperplane(x.hyperplanes[1]).coeffs.clone();
    let mut out = vec![vec![Rational::zero(); width], a2.clone()];
    for &h in &x.hyperplanes[2..] {
        let ai = &a.hyperplane(h).coeffs;
        // solve p a1 + q a2 = ai
        let rows: Vec<Vec<Rational>> =
            (0..width).map(|k| vec![a1[k].clone(), a2[k].clone(), ai[k].clone()]).collect();
        let ech = RatMatrix::from_rows(&rows, 3)?.rref();
        if ech.pivots != [0, 1] {
            return Err(Error::InvalidFlat(format!("`{}` is not in the pencil of the flat", a.label(h))));
        }
        let (p, q) = (ech.matrix.get(0, 2).clone(), ech.matrix.get(1, 2).clone());
        if p.is_zero() || q.is_zero() {
            return Err(Error::InvalidFlat(format!("no slope constant for `{}`", a.label(h))));
        }
        let m = -(p / q);
        out.push(a1.iter().map(|c| c * &m).collect());
    }
    Ok(out)
}

/// The arrangement of distinct zero sets of pairwise differences `f_i - f_j`.
/// Differences that are nonzero constants have empty zero set and contribute nothing.
pub fn linear_support(forms: &[Functional]) -> Result<Arrangement> {
    let width = forms.first().map_or(1, |f| f.len());
    if forms.iter().any(|f| f.len() != width) {
        return Err(Error::Dimension("forms of different widths".into()));
    }
    let mut hs: Vec<Hyperplane> = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let d: Functional = forms[i].iter().zip(&forms[j]).map(|(x, y)| x - y).collect();
            if d.iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidArrangement(format!("forms {} and {} coincide", i + 1, j + 1)));
            }
            if d[1..].iter().all(|c| c.is_zero()) || hs.iter().any(|h| proportional(&h.coeffs, &d)) {
                continue;
            }
            hs.push(Hyperplane::new(format!("f{}-f{}", i + 1, j + 1), d));
        }
    }
    Arrangement::new("support", width - 1, hs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::rank_two_flats;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn f(c: &[i64]) -> Functional {
        c.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn slope_pencil() {
        let h = |l: &str, c: &[i64]| Hyperplane::from_ints(l, c);
        let a = Arrangement::new("p", 2, vec![h("x", &[0, 1, 0]), h("y", &[0, 0, 1]), h("y-2x", &[0, -2, 1])]).unwrap();
        let x = &rank_two_flats(&a, 3)[0];
        let g = rank2_generating_set(&a, x).unwrap();
        assert_eq!(g, vec![f(&[0, 0, 0]), f(&[0, 0, 1]), f(&[0, 2, 0])]);
        let s = linear_support(&g).unwrap();
        assert_eq!(s.len(), 3);
        for hp in a.hyperplanes() {
            assert!(s.hyperplanes().iter().any(|k| proportional(&k.coeffs, &hp.coeffs)));
        }
    }

    #[test]
    fn coordinates_give_braid() {
        let s = linear_support(&[f(&[0, 1, 0, 0]), f(&[0, 0, 1, 0]), f(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(rank_two_flats(&s, 3).len(), 1);
        assert_eq!(linear_support(&[f(&[0, 0]), f(&[0, 1])]).unwrap().len(), 1);
        assert!(linear_support(&[f(&[0, 1]), f(&[0, 1])]).is_err());
    }
}
