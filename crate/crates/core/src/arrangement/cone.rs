use num_traits::{One, Zero};

use super::{Arrangement, Flat, Functional, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

pub const CONE_LABEL: &str = "infty";

pub fn cone(a: &Arrangement) -> Result<Arrangement> {
    if a.index_of(CONE_LABEL).is_ok() {
        return Err(Error::InvalidArrangement(format!("label `{CONE_LABEL}` already in use")));
    }
    let l = a.ambient_dim();
    let mut hs: Vec<Hyperplane> = a
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut c = vec![Rational::zero()];
            c.extend(h.linear().iter().cloned());
            c.push(h.constant().clone());
            Hyperplane::new(h.label.clone(), c)
        })
        .collect();
    let mut inf = vec![Rational::zero(); l + 2];
    inf[l + 1] = Rational::one();
    hs.push(Hyperplane::new(CONE_LABEL, inf));
    Arrangement::new(a.name(), l + 1, hs)
}

/// Moves the common point of a central arrangement to the origin; translation leaves the
/// linear parts unchanged and zeroes every constant term.
fn homogenize(a: &Arrangement) -> Result<Arrangement> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    if a.is_homogeneous() {
        return Ok(a.clone());
    }
    let hs = a
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut c = h.coeffs.clone();
            c[0] = Rational::zero();
            Hyperplane::new(h.label.clone(), c)
        })
        .collect();
    Arrangement::new(a.name(), a.ambient_dim(), hs)
}

/// Dehomogenizes a central arrangement with respect to `label`, which becomes the hyperplane
/// at infinity. The last coordinate in which `label` is nonzero is eliminated.
pub fn decone(a: &Arrangement, label: &str) -> Result<Arrangement> {
    let a = homogenize(a)?;
    let hi = a.index_of(label)?;
    let h = a.hyperplane(hi).coeffs.clone();
    let l = a.ambient_dim();
    let j = (1..=l).rev().find(|&i| !h[i].is_zero()).expect("nonzero linear part");
    let hs = a
        .hyperplanes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != hi)
        .map(|(_, f)| {
            let ratio = &f.coeffs[j] / &h[j];
            let mut c = vec![ratio.clone()];
            for i in (1..=l).filter(|&i| i != j) {
                c.push(&f.coeffs[i] - &ratio * &h[i]);
            }
            Hyperplane::new(f.label.clone(), c)
        })
        .collect();
    Arrangement::new(a.name(), l - 1, hs)
}

/// Restricts a central arrangement to a coordinate subspace complementary to the
/// common lineality space, so the result is essential of dimension equal to the rank.
pub fn essentialize(a: &Arrangement) -> Result<Arrangement> {
    let a = homogenize(a)?;
    let rows: Vec<Functional> = a.hyperplanes().iter().map(|h| h.linear().to_vec()).collect();
    let pivots = RatMatrix::from_rows(&rows, a.ambient_dim())?.rref().pivots;
    let hs = a
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut c = vec![Rational::zero()];
            c.extend(pivots.iter().map(|&p| h.linear()[p].clone()));
            Hyperplane::new(h.label.clone(), c)
        })
        .collect();
    Arrangement::new(a.name(), pivots.len(), hs)
}

pub fn localization(a: &Arrangement, f: &Flat) -> Result<Arrangement> {
    if let Some(&bad) = f.hyperplanes.iter().find(|&&i| i >= a.len()) {
        return Err(Error::InvalidFlat(format!("hyperplane index {bad} outside the arrangement")));
    }
    Ok(a.sub_arrangement(&f.hyperplanes))
}

/// The arrangement induced on the hyperplane `h`: distinct nonempty traces of the others.
pub fn restriction(a: &Arrangement, h: usize) -> Arrangement {
    let l = a.ambient_dim();
    let hc = a.hyperplane(h).coeffs.clone();
    let j = (1..=l).rev().find(|&i| !hc[i].is_zero()).expect("nonzero linear part");
    let mut out: Vec<Hyperplane> = Vec::new();
    for (k, f) in a.hyperplanes().iter().enumerate() {
        if k == h {
            continue;
        }
        let ratio = &f.coeffs[j] / &hc[j];
        let mut c = vec![&f.coeffs[0] - &ratio * &hc[0]];
        for i in (1..=l).filter(|&i| i != j) {
            c.push(&f.coeffs[i] - &ratio * &hc[i]);
        }
        if c[1..].iter().all(|x| x.is_zero()) {
            continue;
        }
        if out.iter().any(|g| super::proportional(&g.coeffs, &c)) {
            continue;
        }
        out.push(Hyperplane::new(f.label.clone(), c));
    }
    Arrangement::new(a.name(), l - 1, out).expect("distinct traces")
}
