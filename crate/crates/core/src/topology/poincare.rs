use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arrangement::{all_flats, restriction, Arrangement, Hyperplane};
use crate::error::{Error, Result};

/// Dense integer polynomial in `t`, ascending, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial(Vec<BigInt>);

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self(coeffs);
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `1 + c t`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[1, c])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.0.len().max(other.0.len());
        Polynomial::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + other.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return Polynomial::default();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in other.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Polynomial::new(c)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        Polynomial::new(c)
    }

    /// Exact division, `None` if there is a remainder.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let lead = d.0.last()?;
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return rem.iter().all(Zero::is_zero).then(Polynomial::default);
        }
        let mut q = vec![BigInt::zero(); rem.len() - d.0.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + d.0.len() - 1];
            if !(top % lead).is_zero() {
                return None;
            }
            let f = top / lead;
            for (j, c) in d.0.iter().enumerate() {
                rem[k + j] -= &f * c;
            }
            q[k] = f;
        }
        rem.iter().all(Zero::is_zero).then(|| Polynomial::new(q))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if i > 0 && mag.is_one() { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `sum |mu(X)| t^rank(X)` by Mobius recursion over the whole intersection poset.
pub fn poincare_polynomial(a: &Arrangement) -> Polynomial {
    let flats = all_flats(a);
    let mut mu: Vec<BigInt> = Vec::with_capacity(flats.len());
    for (i, x) in flats.iter().enumerate() {
        let v = if x.hyperplanes.is_empty() {
            BigInt::one()
        } else {
            let below: BigInt = flats[..i]
                .iter()
                .zip(&mu)
                .filter(|(y, _)| y.rank < x.rank && y.hyperplanes.iter().all(|h| x.hyperplanes.contains(h)))
                .map(|(_, m)| m.clone())
                .sum();
            -below
        };
        mu.push(v);
    }
    let top = flats.iter().map(|x| x.rank).max().unwrap_or(0);
    let mut c = vec![BigInt::zero(); top + 1];
    for (x, m) in flats.iter().zip(&mu) {
        c[x.rank] += m.abs();
    }
    Polynomial::new(c)
}

/// `pi(A) = pi(A - H) + t pi(A | H)`, recursing on the last hyperplane.
pub fn poincare_deletion_contraction(a: &Arrangement) -> Polynomial {
    let mut memo = BTreeMap::new();
    deletion_contraction(a, &mut memo)
}

fn dc_key(a: &Arrangement) -> Vec<Vec<String>> {
    a.hyperplanes().iter().map(|h| h.coeffs.iter().map(|c| c.to_string()).collect()).collect()
}

fn deletion_contraction(a: &Arrangement, memo: &mut BTreeMap<Vec<Vec<String>>, Polynomial>) -> Polynomial {
    if a.is_empty() {
        return Polynomial::one();
    }
    let key = dc_key(a);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let h = a.len() - 1;
    let deleted = a.sub_arrangement(&(0..h).collect::<Vec<_>>());
    let restricted = restriction(a, h);
    let p = deletion_contraction(&deleted, memo).add(&deletion_contraction(&restricted, memo).shift(1));
    memo.insert(key, p.clone());
    p
}

/// `prod_{i<k} (1 + (mu + i) t)`.
pub fn discriminantal_poincare(mu: usize, k: usize) -> Polynomial {
    (0..k).fold(Polynomial::one(), |p, i| p.mul(&Polynomial::linear((mu + i) as i64)))
}

/// Hyperplanes `w_i = j` (`1 <= j <= mu`) and `w_i = w_j` in `C^k`.
pub fn discriminantal_arrangement(mu: usize, k: usize) -> Result<Arrangement> {
    if mu == 0 || k == 0 {
        return Err(Error::InvalidArgument("mu and k must be positive".into()));
    }
    let mut hs = Vec::new();
    for i in 1..=k {
        for j in 1..=mu {
            let mut c = vec![0i64; k + 1];
            c[0] = -(j as i64);
            c[i] = 1;
            hs.push(Hyperplane::from_ints(format!("w{i}-m{j}"), &c));
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let mut c = vec![0i64; k + 1];
            c[i] = 1;
            c[j] = -1;
            hs.push(Hyperplane::from_ints(format!("w{i}-w{j}"), &c));
        }
    }
    Arrangement::new(format!("discriminantal({mu},{k})"), k, hs)
}

pub fn total_space_poincare(a: &Arrangement, mu: usize, k: usize) -> Polynomial {
    poincare_polynomial(a).mul(&discriminantal_poincare(mu, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_i64(&[1, 5, 6]).to_string(), "1 + 5t + 6t^2");
        assert_eq!(Polynomial::from_i64(&[1, 1]).to_string(), "1 + t");
        assert_eq!(Polynomial::from_i64(&[0, -1, 0, 2]).to_string(), "-t + 2t^3");
        assert_eq!(Polynomial::default().to_string(), "0");
    }

    #[test]
    fn small_cases() {
        let one = Arrangement::new("h", 1, vec![Hyperplane::from_ints("h", &[0, 1])]).unwrap();
        assert_eq!(poincare_polynomial(&one), Polynomial::linear(1));
        assert_eq!(poincare_polynomial(&corpus::braid(3)), Polynomial::linear(1).mul(&Polynomial::linear(2)));
        // pencil of mu lines through the origin
        let pencil = Arrangement::new(
            "p",
            2,
            (1..=4).map(|m| Hyperplane::from_ints(format!("l{m}"), &[0, m, 1])).collect(),
        )
        .unwrap();
        assert_eq!(poincare_polynomial(&pencil), Polynomial::from_i64(&[1, 4, 3]));
        assert_eq!(discriminantal_poincare(2, 2), Polynomial::from_i64(&[1, 5, 6]));
        assert_eq!(discriminantal_poincare(3, 1), Polynomial::linear(3));
        assert_eq!(total_space_poincare(&one, 1, 1), Polynomial::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn discriminantal_brute_force() {
        let a = discriminantal_arrangement(2, 2).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(poincare_polynomial(&a), discriminantal_poincare(2, 2));
    }

    #[test]
    fn division() {
        let p = Polynomial::from_i64(&[1, 3, 2]);
        assert_eq!(p.div_exact(&Polynomial::linear(1)), Some(Polynomial::linear(2)));
        assert_eq!(Polynomial::from_i64(&[1, 3, 3]).div_exact(&Polynomial::linear(1)), None);
    }

    #[test]
    fn deletion_contraction_agrees() {
        for name in ["braid4", "x3-cone", "kohno-affine", "b2"] {
            let a = corpus::example(name).unwrap();
            assert_eq!(poincare_deletion_contraction(&a), poincare_polynomial(&a), "{name}");
        }
    }
}
