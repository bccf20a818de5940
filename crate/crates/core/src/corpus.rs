//! Named example arrangements and the ACM family generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{cone, parallel_classes, rank_two_flats, Arrangement, Hyperplane, CONE_LABEL};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Fixed corpus entries; `acm(n1,...,nr)` names are generated on demand.
pub const CORPUS: &[&str] = &[
    "braid2",
    "braid3",
    "braid4",
    "braid5",
    "x3-affine",
    "x3-cone",
    "kohno-affine",
    "kohno-cone",
    "d3",
    "b2",
    "b3",
];

pub fn example(name: &str) -> Result<Arrangement> {
    let a = match name {
        "braid2" => braid(2),
        "braid3" => braid(3),
        "braid4" => braid(4),
        "braid5" => braid(5),
        "x3-affine" => x3_affine(),
        "x3-cone" => x3_cone(),
        "kohno-affine" => kohno_affine(),
        "kohno-cone" => kohno_cone(),
        "d3" => d3(),
        "b2" => b_type(2),
        "b3" => b_type(3),
        _ => match parse_acm_name(name) {
            Some(ns) => return acm_arrangement(&ns, 0),
            None => return Err(Error::UnknownLabel(format!("example {name}"))),
        },
    };
    Ok(a)
}

/// `acm(2,2,2)` or `acm-2-2-2`.
pub fn parse_acm_name(name: &str) -> Option<Vec<usize>> {
    let body = name.strip_prefix("acm")?;
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).or_else(|| body.strip_prefix('-'))?;
    body.split([',', '-']).map(|t| t.trim().parse().ok()).collect()
}

fn arr(name: &str, dim: usize, hs: Vec<(String, Vec<i64>)>) -> Arrangement {
    Arrangement::new(name, dim, hs.into_iter().map(|(l, c)| Hyperplane::from_ints(l, &c)).collect())
        .expect("corpus arrangements are valid")
}

/// Hyperplanes `z_i = z_j` in C^l, labelled `A{i}{j}`.
pub fn braid(l: usize) -> Arrangement {
    let mut hs = Vec::new();
    for i in 1..=l {
        for j in i + 1..=l {
            let mut c = vec![0; l + 1];
            c[i] = 1;
            c[j] = -1;
            hs.push((format!("A{i}{j}"), c));
        }
    }
    arr(&format!("braid{l}"), l, hs)
}

/// x=0, x=1, y=0, y=-1, x+2y=0. Parallel classes {a1,a2} and {a3,a4}; a1, a3, a5 meet at the origin.
pub fn x3_affine() -> Arrangement {
    let hs = [("a1", [0, 1, 0]), ("a2", [-1, 1, 0]), ("a3", [0, 0, 1]), ("a4", [1, 0, 1]), ("a5", [0, 1, 2])];
    arr("x3-affine", 2, hs.iter().map(|(l, c)| (l.to_string(), c.to_vec())).collect())
}

pub fn x3_cone() -> Arrangement {
    coned(&x3_affine(), "a6", "x3-cone")
}

/// x=0, x=1, x+y=0, x+y=2, y=0, y=1.
pub fn kohno_affine() -> Arrangement {
    let hs = [
        ("a1", [0, 1, 0]),
        ("a2", [-1, 1, 0]),
        ("a3", [0, 1, 1]),
        ("a4", [-2, 1, 1]),
        ("a5", [0, 0, 1]),
        ("a6", [-1, 0, 1]),
    ];
    arr("kohno-affine", 2, hs.iter().map(|(l, c)| (l.to_string(), c.to_vec())).collect())
}

pub fn kohno_cone() -> Arrangement {
    coned(&kohno_affine(), "a7", "kohno-cone")
}

fn coned(a: &Arrangement, inf_label: &str, name: &str) -> Arrangement {
    cone(a).and_then(|c| c.relabel(CONE_LABEL, inf_label)).expect("fresh label").with_name(name)
}

/// z_i = z_j and z_i = -z_j in C^3.
pub fn d3() -> Arrangement {
    let mut hs = Vec::new();
    for i in 1..=3 {
        for j in i + 1..=3 {
            for (sign, tag) in [(-1, '-'), (1, '+')] {
                let mut c = vec![0; 4];
                c[i] = 1;
                c[j] = sign;
                hs.push((format!("z{i}{tag}z{j}"), c));
            }
        }
    }
    arr("d3", 3, hs)
}

/// Coordinate hyperplanes together with z_i = z_j and z_i = -z_j in C^l.
pub fn b_type(l: usize) -> Arrangement {
    let mut hs = Vec::new();
    for i in 1..=l {
        let mut c = vec![0; l + 1];
        c[i] = 1;
        hs.push((format!("z{i}"), c));
    }
    for i in 1..=l {
        for j in i + 1..=l {
            for (sign, tag) in [(-1, '-'), (1, '+')] {
                let mut c = vec![0; l + 1];
                c[i] = 1;
                c[j] = sign;
                hs.push((format!("z{i}{tag}z{j}"), c));
            }
        }
    }
    arr(&format!("b{l}"), l, hs)
}

const ACM_ATTEMPTS: u64 = 64;

/// Central arrangement in C^3 whose projectivization has r distinguished lines `d1..dr`
/// forming an r-gon with vertices `v_i = d_i ∩ d_{i+1}`, plus `n_i - 1` bundle lines
/// `b{i}_{j}` through each `v_i`. In the affine chart the last line `dr` is at infinity, so
/// the bundles at `v_{r-1}` and `v_r` are parallel to `d_{r-1}` and `d_1`.
pub fn acm_arrangement(ns: &[usize], seed: u64) -> Result<Arrangement> {
    let r = ns.len();
    if r < 3 || ns.iter().any(|&n| n < 2) {
        return Err(Error::InvalidArrangement("ACM needs r >= 3 and every n_i >= 2".into()));
    }
    let name = format!("acm({})", ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","));
    let mut last = String::new();
    for attempt in 0..ACM_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(attempt));
        match acm_affine(ns, &mut rng).and_then(|affine| check_acm(&affine, ns).map(|()| affine)) {
            Ok(affine) => {
                let c = cone(&affine)?.relabel(CONE_LABEL, &format!("d{r}"))?;
                check_acm_cone(&c, ns)?;
                return Ok(c.with_name(name));
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Genericity(format!("{name}: {last}")))
}

fn rand_q(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    Rational::new(rng.gen_range(-span..=span).into(), rng.gen_range(1..=4i64).into())
}

/// Line through `p` with slope `m`, as `(c0, c1, c2)` for `c0 + c1 x + c2 y`.
fn line(m: &Rational, p: (&Rational, &Rational)) -> Vec<Rational> {
    let one = Rational::from_integer(1.into());
    vec![m * p.0 - p.1, -m.clone(), one]
}

fn acm_affine(ns: &[usize], rng: &mut ChaCha8Rng) -> Result<Arrangement> {
    let r = ns.len();
    let zero = Rational::from_integer(0.into());
    let mut slopes: Vec<Rational> = Vec::new();
    let mut dist: Vec<Vec<Rational>> = Vec::new();
    while dist.len() < r - 1 {
        let m = rand_q(rng, 12);
        if slopes.contains(&m) {
            continue;
        }
        let c = rand_q(rng, 12);
        dist.push(line(&m, (&zero, &c)));
        slopes.push(m);
    }
    let mut hs: Vec<Hyperplane> =
        dist.iter().enumerate().map(|(i, c)| Hyperplane::new(format!("d{}", i + 1), c.clone())).collect();
    for (i, &n) in ns.iter().enumerate() {
        for j in 1..n {
            let label = format!("b{}_{}", i + 1, j);
            let coeffs = if i + 2 < r {
                // affine vertex d_{i+1} ∩ d_{i+2}
                let (p, q) = (&dist[i], &dist[i + 1]);
                let det = &p[1] * &q[2] - &p[2] * &q[1];
                let x = (&p[2] * &q[0] - &p[0] * &q[2]) / &det;
                let y = (&p[0] * &q[1] - &p[1] * &q[0]) / &det;
                line(&rand_q(rng, 12), (&x, &y))
            } else {
                // i = r-2: parallel to d_{r-1}; i = r-1: parallel to d_1
                let m = if i + 2 == r { &slopes[r - 2] } else { &slopes[0] };
                line(m, (&zero, &rand_q(rng, 24)))
            };
            hs.push(Hyperplane::new(label, coeffs));
        }
    }
    Arrangement::new("acm", 2, hs).map_err(|e| Error::Genericity(e.to_string()))
}

fn check_acm(a: &Arrangement, ns: &[usize]) -> Result<()> {
    let r = ns.len();
    let mut want: Vec<usize> = ns[..r - 2].iter().map(|n| n + 1).collect();
    let mut got: Vec<usize> = rank_two_flats(a, 3).iter().map(|f| f.len()).collect();
    want.sort_unstable();
    got.sort_unstable();
    if want != got {
        return Err(Error::Genericity(format!("multiple points {got:?}, expected {want:?}")));
    }
    let mut want: Vec<usize> = vec![ns[r - 2], ns[r - 1]];
    let mut got: Vec<usize> = parallel_classes(a).iter().map(|f| f.len()).collect();
    want.sort_unstable();
    got.sort_unstable();
    if want != got {
        return Err(Error::Genericity(format!("parallel classes {got:?}, expected {want:?}")));
    }
    Ok(())
}

fn check_acm_cone(c: &Arrangement, ns: &[usize]) -> Result<()> {
    let r = ns.len();
    let flats = rank_two_flats(c, 3);
    for (i, &n) in ns.iter().enumerate() {
        let d1 = c.index_of(&format!("d{}", i + 1))?;
        let d2 = c.index_of(&format!("d{}", (i + 1) % r + 1))?;
        match flats.iter().find(|f| f.contains(d1) && f.contains(d2)) {
            Some(f) if f.len() == n + 1 => {}
            _ => return Err(Error::Genericity(format!("vertex {} does not have multiplicity {}", i + 1, n + 1))),
        }
    }
    if flats.len() != r {
        return Err(Error::Genericity("unexpected multiple point".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for n in CORPUS {
            assert_eq!(example(n).unwrap().name(), *n);
        }
        assert_eq!(parse_acm_name("acm(3,2,2)"), Some(vec![3, 2, 2]));
        assert_eq!(parse_acm_name("acm-2-2-2"), Some(vec![2, 2, 2]));
        assert!(example("nope").is_err());
    }

    #[test]
    fn acm_multiplicities() {
        let a = acm_arrangement(&[2, 2, 2], 0).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(rank_two_flats(&a, 3).iter().map(|f| f.len()).collect::<Vec<_>>(), vec![3, 3, 3]);
        let a = acm_arrangement(&[3, 2, 2], 0).unwrap();
        assert_eq!(a.len(), 7);
        let mut m: Vec<usize> = rank_two_flats(&a, 3).iter().map(|f| f.len()).collect();
        m.sort_unstable();
        assert_eq!(m, vec![3, 3, 4]);
        assert!(acm_arrangement(&[2, 2], 0).is_err());
    }
}
