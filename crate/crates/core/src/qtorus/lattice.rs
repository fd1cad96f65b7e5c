use super::element::TorusElement;
use super::matrix::AntiSymMatrix;
use crate::error::{Error, Result};
use crate::qcoeff::Coeff;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn to_i64(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&x| i64::try_from(x).expect("lattice entry overflow"))
        .collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        for i in (r + 1)..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(m[r][c], m[i][c]);
            let (a, b) = (m[r][c] / g, m[i][c] / g);
            let (ri, rr) = (m[i].clone(), m[r].clone());
            for j in 0..cols {
                m[r][j] = x * rr[j] + y * ri[j];
                m[i][j] = -b * rr[j] + a * ri[j];
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[r][c];
        for i in 0..r {
            let f = m[i][c].div_euclid(p);
            if f != 0 {
                let pivot = m[r].clone();
                m[i].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= f * y);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.iter().map(|row| to_i64(row)).collect()
}

/// A Z-basis of `{k : M k = 0}` for an integer matrix with `ncols` columns, in Hermite form.
pub fn integer_kernel(m: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>> {
    for row in m {
        if row.len() != ncols {
            return Err(Error::Dimension {
                expected: ncols,
                got: row.len(),
            });
        }
    }
    // Row-reduce [M^T | I] by unimodular row operations; rows whose left part vanishes span the kernel.
    let nrows = m.len();
    let mut aug: Vec<Vec<i128>> = (0..ncols)
        .map(|i| {
            let mut r: Vec<i128> = m.iter().map(|row| row[i] as i128).collect();
            r.extend((0..ncols).map(|j| i128::from(i == j)));
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..nrows {
        if r == aug.len() {
            break;
        }
        for i in (r + 1)..aug.len() {
            if aug[i][c] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(aug[r][c], aug[i][c]);
            let (a, b) = (aug[r][c] / g, aug[i][c] / g);
            let (ri, rr) = (aug[i].clone(), aug[r].clone());
            for j in 0..aug[0].len() {
                aug[r][j] = x * rr[j] + y * ri[j];
                aug[i][j] = -b * rr[j] + a * ri[j];
            }
        }
        if aug[r][c] != 0 {
            r += 1;
        }
    }
    let basis: Vec<Vec<i64>> = aug[r..].iter().map(|row| to_i64(&row[nrows..])).collect();
    Ok(hermite_rows(&basis))
}

/// Membership of `k` in the lattice spanned by echelon rows, as returned by [`hermite_rows`].
pub fn lattice_contains(basis: &[Vec<i64>], k: &[i64]) -> bool {
    let mut r: Vec<i64> = k.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|&x| x != 0) else {
            continue;
        };
        if r[..p].iter().any(|&x| x != 0) || r[p] % row[p] != 0 {
            return false;
        }
        let c = r[p] / row[p];
        r.iter_mut().zip(row).for_each(|(x, y)| *x -= c * y);
    }
    r.iter().all(|&x| x == 0)
}

/// A Z-basis of `Gamma_N = {k : <k, n>_U in N Z for all n}`.
pub fn gamma_lattice(u: &AntiSymMatrix, n: u64) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let d = u.len();
    // kernel of [U | N I] projected to the first block
    let stacked: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            let mut r = u.rows[i].clone();
            r.extend((0..d).map(|j| if i == j { n as i64 } else { 0 }));
            r
        })
        .collect();
    let ker = integer_kernel(&stacked, 2 * d)?;
    let proj: Vec<Vec<i64>> = ker.iter().map(|v| v[..d].to_vec()).collect();
    Ok(hermite_rows(&proj))
}

/// Description of a submonoid of `Z^I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidDescriptor {
    /// `N^I`.
    Orthant,
    /// `{k : a.k >= 0 for each a in ineqs, v.k = 0 mod m for each (v, m)}`.
    Polyhedral {
        ineqs: Vec<Vec<i64>>,
        congruences: Vec<(Vec<i64>, i64)>,
    },
    /// N-span of generators lying in `N^I`.
    Generators(Vec<Vec<i64>>),
}

impl MonoidDescriptor {
    pub fn contains(&self, k: &[i64]) -> Result<bool> {
        let dot = |a: &[i64]| -> Result<i64> {
            if a.len() != k.len() {
                return Err(Error::Dimension {
                    expected: k.len(),
                    got: a.len(),
                });
            }
            Ok(a.iter().zip(k).map(|(x, y)| x * y).sum())
        };
        match self {
            Self::Orthant => Ok(k.iter().all(|&x| x >= 0)),
            Self::Polyhedral { ineqs, congruences } => {
                for a in ineqs {
                    if dot(a)? < 0 {
                        return Ok(false);
                    }
                }
                for (v, m) in congruences {
                    if dot(v)?.rem_euclid(*m) != 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Self::Generators(gens) => {
                if gens
                    .iter()
                    .any(|g| g.iter().any(|&x| x < 0) || g.iter().all(|&x| x == 0))
                {
                    return Err(Error::Invalid(
                        "generator membership needs nonzero generators in N^I".into(),
                    ));
                }
                Ok(k.iter().all(|&x| x >= 0) && span_contains(gens, k, 0))
            }
        }
    }
}

fn span_contains(gens: &[Vec<i64>], k: &[i64], start: usize) -> bool {
    if k.iter().all(|&x| x == 0) {
        return true;
    }
    for (i, g) in gens.iter().enumerate().skip(start) {
        if g.iter().zip(k).all(|(a, b)| a <= b) {
            let rest: Vec<i64> = k.iter().zip(g).map(|(a, b)| a - b).collect();
            if span_contains(gens, &rest, i) {
                return true;
            }
        }
    }
    false
}

/// True iff every exponent in the support of `x` lies in the monoid.
pub fn monomial_algebra_membership<C: Coeff>(x: &TorusElement<C>, monoid: &MonoidDescriptor) -> Result<bool> {
    for (k, _) in x.terms() {
        if !monoid.contains(k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(
            integer_kernel(&[vec![0, 0], vec![0, 0]], 2).unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        assert!(integer_kernel(&[vec![0, -2], vec![2, 0]], 2).unwrap().is_empty());
        assert_eq!(integer_kernel(&[vec![2, 4, 6]], 3).unwrap().len(), 2);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel spanned by (2, 1), not (4, 2)
        assert_eq!(integer_kernel(&[vec![2, -4]], 2).unwrap(), vec![vec![2, 1]]);
    }

    #[test]
    fn gamma_trivial_n() {
        let u = AntiSymMatrix::from_entries(&["a", "b"], &[("a", "b", 3)]).unwrap();
        assert_eq!(gamma_lattice(&u, 1).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(gamma_lattice(&u, 3).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(gamma_lattice(&u, 2).unwrap(), vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn generator_membership() {
        let m = MonoidDescriptor::Generators(vec![vec![2, 0], vec![1, 1]]);
        assert!(m.contains(&[3, 1]).unwrap());
        assert!(!m.contains(&[1, 0]).unwrap());
    }
}
