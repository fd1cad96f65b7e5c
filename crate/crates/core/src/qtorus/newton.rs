use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::element::TorusElement;
use crate::error::{Error, Result};
use crate::qcoeff::Coeff;

type Q = Ratio<i128>;

/// Exponent vectors carrying a nonzero coefficient, in lexicographic order.
pub fn newton_support<C: Coeff>(x: &TorusElement<C>) -> Result<Vec<Vec<i64>>> {
    if x.is_zero() {
        return Err(Error::ZeroElement("Newton polytope"));
    }
    Ok(x.terms().map(|(k, _)| k.clone()).collect())
}

/// Vertices of the convex hull of the support.
pub fn newton_vertices<C: Coeff>(x: &TorusElement<C>) -> Result<Vec<Vec<i64>>> {
    Ok(hull_vertices(&newton_support(x)?))
}

/// Points of `pts` that are not convex combinations of the other points.
pub fn hull_vertices(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = pts.to_vec();
    pts.sort();
    pts.dedup();
    let bound = affine_rank(&pts) + 1;
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<&Vec<i64>> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p)
                .collect();
            !in_hull(&pts[i], &others, bound)
        })
        .map(|i| pts[i].clone())
        .collect()
}

fn affine_rank(pts: &[Vec<i64>]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Q>> = pts[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&pts[0])
                .map(|(a, b)| Q::from_integer((a - b) as i128))
                .collect()
        })
        .collect();
    rank(rows)
}

fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c] / m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= f * *y;
                }
            }
        }
        r += 1;
    }
    r
}

// Caratheodory: v is in the hull iff it is a convex combination of some
// affinely independent subset of at most `bound` points.
fn in_hull(v: &[i64], pts: &[&Vec<i64>], bound: usize) -> bool {
    let mut chosen = Vec::new();
    subsets(pts.len(), bound.min(pts.len()), 0, &mut chosen, &mut |s| {
        convex_solution(v, &s.iter().map(|&i| pts[i]).collect::<Vec<_>>())
    })
}

fn subsets(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if !cur.is_empty() && f(cur) {
        return true;
    }
    if cur.len() == max {
        return false;
    }
    for i in start..n {
        cur.push(i);
        if subsets(n, max, i + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

// Solves sum l_i p_i = v, sum l_i = 1 exactly; true if the solution is unique and nonnegative.
fn convex_solution(v: &[i64], pts: &[&Vec<i64>]) -> bool {
    let s = pts.len();
    let d = v.len();
    let mut m: Vec<Vec<Q>> = (0..=d)
        .map(|row| {
            let mut r: Vec<Q> = (0..s)
                .map(|j| {
                    if row < d {
                        Q::from_integer(pts[j][row] as i128)
                    } else {
                        Q::one()
                    }
                })
                .collect();
            r.push(if row < d {
                Q::from_integer(v[row] as i128)
            } else {
                Q::one()
            });
            r
        })
        .collect();
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..s {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            return false;
        };
        m.swap(r, p);
        let lead = m[r][c];
        for x in &mut m[r][..=s] {
            *x /= lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, y) in m[i][..=s].iter_mut().zip(&pivot[..=s]) {
                    *x -= f * *y;
                }
            }
        }
        piv.push(r);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[s].is_zero()) {
        return false;
    }
    (0..s).all(|c| !m[piv[c]][s].is_negative())
}
