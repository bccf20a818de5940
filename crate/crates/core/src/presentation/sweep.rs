use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::relation::{CyclicRelation, Factor, Origin, Presentation};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::words::{gen_of, Word};

/// Orientation choices of the sweep. The default sweeps from right to left past a line of large
/// negative slope, with counterclockwise half-twists; on the Kohno arrangement it gives the cyclic
/// orders (a1,a3,a5), (a2,a4,a6) and the relator [a1, a6^a2].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Convention {
    /// Sweep from large to small sheared coordinate.
    pub decreasing: bool,
    /// Sign of the shear `x' = x + s y`.
    pub negative_shear: bool,
    /// Order fiber positions from top to bottom.
    pub flip: bool,
    /// Passing a vertex rotates its points counterclockwise.
    pub ccw: bool,
}

impl Default for Convention {
    fn default() -> Self {
        Self { decreasing: true, negative_shear: false, flip: false, ccw: true }
    }
}

/// A line `y = m t + b` in sweep coordinates, `t` increasing along the sweep.
struct SweepLine {
    m: Rational,
    b: Rational,
}

struct Vertex {
    t: Rational,
    lines: BTreeSet<usize>,
    point: (Rational, Rational),
}

/// Presentation of the complement of a real affine line arrangement.
pub fn randell_presentation(a: &Arrangement) -> Result<Presentation> {
    randell_presentation_with(a, None, Convention::default())
}

/// Sweep with an explicit shear, or the default small shear when `shear` is `None`.
pub fn randell_presentation_with(a: &Arrangement, shear: Option<Rational>, conv: Convention) -> Result<Presentation> {
    if a.ambient_dim() != 2 {
        return Err(Error::Dimension(format!("the sweep needs lines in the plane, got dimension {}", a.ambient_dim())));
    }
    let s = match shear {
        Some(s) => s,
        None => default_shear(a, conv.negative_shear)?,
    };
    let lines = sweep_lines(a, &s, conv)?;
    let vertices = vertices(a, &lines, &s, conv)?;
    let mut slots: Vec<usize> = (0..a.len()).collect();
    // at t -> -infinity larger slope is lower
    slots.sort_by(|&i, &j| (-&lines[i].m, &lines[i].b).cmp(&(-&lines[j].m, &lines[j].b)));
    let mut elems: Vec<Factor> = slots.iter().map(|&i| Factor::plain(i)).collect();
    let mut relations = Vec::new();
    for v in vertices {
        let pos: Vec<usize> = elems.iter().positions(|f| v.lines.contains(&f.gen())).collect();
        let (p, k) = (pos[0], pos.len());
        if pos[k - 1] != p + k - 1 {
            return Err(Error::Internal("lines through a vertex are not adjacent".into()));
        }
        let cluster = elems[p..p + k].to_vec();
        for r in 0..k - 1 {
            relations.push((
                CyclicRelation { factors: cluster.clone(), rotations: (r, r + 1) },
                Origin::Vertex { lines: v.lines.iter().copied().collect(), point: v.point.clone() },
            ));
        }
        half_twist(&mut elems[p..p + k], conv.ccw);
    }
    Ok(Presentation::from_relations(a.labels(), relations))
}

/// Shear small enough that vertices are swept in lexicographic order of `(x, y)`,
/// avoiding vertical lines.
fn default_shear(a: &Arrangement, negative: bool) -> Result<Rational> {
    let points: Vec<(Rational, Rational)> = intersection_points(a).into_keys().collect();
    let mut bound = Rational::one();
    for (p, q) in points.iter().tuple_combinations() {
        let dx = (&q.0 - &p.0).abs();
        let dy = (&q.1 - &p.1).abs();
        if !dx.is_zero() && !dy.is_zero() {
            bound = bound.min(dx / dy);
        }
    }
    let base = bound / Rational::from_integer(2.into());
    for k in 1..=64i64 {
        let mut s = &base / Rational::from_integer(k.into());
        if negative {
            s = -s;
        }
        if a.hyperplanes().iter().all(|h| !(&h.coeffs[2] - &s * &h.coeffs[1]).is_zero()) {
            return Ok(s);
        }
    }
    Err(Error::Degenerate("no admissible shear".into()))
}

fn sweep_lines(a: &Arrangement, s: &Rational, conv: Convention) -> Result<Vec<SweepLine>> {
    a.hyperplanes()
        .iter()
        .map(|h| {
            let (c0, c1, c2) = (&h.coeffs[0], &h.coeffs[1], &h.coeffs[2]);
            // c0 + c1 x' + (c2 - s c1) y = 0 with x' = x + s y
            let d = c2 - s * c1;
            if d.is_zero() {
                return Err(Error::Degenerate(format!("line {} is vertical after the shear", h.label)));
            }
            let mut m = -(c1 / &d);
            let mut b = -(c0 / &d);
            if conv.decreasing {
                m = -m;
            }
            if conv.flip {
                m = -m;
                b = -b;
            }
            Ok(SweepLine { m, b })
        })
        .collect()
}

/// Intersection points of non-parallel pairs, with the lines through each.
fn intersection_points(a: &Arrangement) -> BTreeMap<(Rational, Rational), BTreeSet<usize>> {
    let mut points: BTreeMap<(Rational, Rational), BTreeSet<usize>> = BTreeMap::new();
    for (i, j) in (0..a.len()).tuple_combinations() {
        let (p, q) = (&a.hyperplane(i).coeffs, &a.hyperplane(j).coeffs);
        let det = &p[1] * &q[2] - &p[2] * &q[1];
        if det.is_zero() {
            continue;
        }
        let x = (&p[2] * &q[0] - &p[0] * &q[2]) / &det;
        let y = (&p[0] * &q[1] - &p[1] * &q[0]) / &det;
        points.entry((x, y)).or_default().extend([i, j]);
    }
    points
}

fn vertices(a: &Arrangement, lines: &[SweepLine], s: &Rational, conv: Convention) -> Result<Vec<Vertex>> {
    let mut out: Vec<Vertex> = intersection_points(a)
        .into_iter()
        .map(|((x, y), ls)| {
            let t = &x + s * &y;
            let t = if conv.decreasing { -t } else { t };
            Vertex { t, lines: ls, point: (x, y) }
        })
        .collect();
    out.sort_by(|u, v| u.t.cmp(&v.t));
    if let Some(w) = out.windows(2).find(|w| w[0].t == w[1].t) {
        return Err(Error::Degenerate(format!(
            "vertices ({}, {}) and ({}, {}) are swept together",
            w[0].point.0, w[0].point.1, w[1].point.0, w[1].point.1
        )));
    }
    debug_assert!(out.iter().all(|v| {
        let hs: BTreeSet<_> = v.lines.iter().map(|&i| &lines[i].m * &v.t + &lines[i].b).collect();
        hs.len() == 1
    }));
    Ok(out)
}

/// Reverses the slots by adjacent swaps `s_1 (s_2 s_1) (s_3 s_2 s_1) ...`, acting on the
/// elements so that their product is preserved.
fn half_twist(block: &mut [Factor], ccw: bool) {
    let k = block.len();
    for top in 1..k {
        for i in (0..top).rev() {
            swap(block, i, ccw);
        }
    }
}

fn swap(block: &mut [Factor], i: usize, ccw: bool) {
    let (g, h) = (block[i].clone(), block[i + 1].clone());
    let (left, right) = if ccw {
        // (g, h) -> (h, g^h)
        (h.clone(), with_conj(g.letter, g.conj.mul(&h.word())))
    } else {
        // (g, h) -> (h^(g^-1), g)
        (with_conj(h.letter, h.conj.mul(&g.word().inverse())), g)
    };
    block[i] = left;
    block[i + 1] = right;
}

/// `letter^conj` with leading powers of `letter` dropped from `conj`.
fn with_conj(letter: i32, conj: Word) -> Factor {
    let skip = conj.letters().iter().take_while(|&&l| gen_of(l) == gen_of(letter)).count();
    Factor { letter, conj: Word::new(conj.letters()[skip..].iter().copied()) }
}
