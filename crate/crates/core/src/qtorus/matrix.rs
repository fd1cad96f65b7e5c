use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Antisymmetric integer matrix over a named index set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiSymMatrix {
    pub index: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl AntiSymMatrix {
    pub fn new(index: Vec<String>, rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = index.len();
        if rows.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: rows.len(),
            });
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: r.len(),
                });
            }
            for j in 0..n {
                if r[j] != -rows[j][i] {
                    return Err(Error::Invalid(format!(
                        "matrix not antisymmetric at ({}, {})",
                        index[i], index[j]
                    )));
                }
            }
        }
        for (i, name) in index.iter().enumerate() {
            if index[..i].contains(name) {
                return Err(Error::Invalid(format!("duplicate index `{name}`")));
            }
        }
        Ok(Self { index, rows })
    }

    pub fn zero(index: Vec<String>) -> Self {
        let n = index.len();
        Self {
            index,
            rows: vec![vec![0; n]; n],
        }
    }

    /// Builds from upper-triangle entries `(i, j, U_ij)`; the rest follows by antisymmetry.
    pub fn from_entries(index: &[&str], entries: &[(&str, &str, i64)]) -> Result<Self> {
        let mut m = Self::zero(index.iter().map(|s| s.to_string()).collect());
        for &(a, b, v) in entries {
            let i = m.position(a)?;
            let j = m.position(b)?;
            m.rows[i][j] += v;
            m.rows[j][i] -= v;
        }
        Self::new(m.index, m.rows)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.index
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn get(&self, a: &str, b: &str) -> Result<i64> {
        Ok(self.rows[self.position(a)?][self.position(b)?])
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self {
            index: self.index.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(|v| v * c).collect()).collect(),
        }
    }

    /// `<k, n>_U = sum_{i,j} U_ij k_i n_j`.
    pub fn pairing(&self, k: &[i64], n: &[i64]) -> Result<i64> {
        for v in [k, n] {
            if v.len() != self.len() {
                return Err(Error::Dimension {
                    expected: self.len(),
                    got: v.len(),
                });
            }
        }
        Ok(self.pairing_prefix(k, n))
    }

    /// Pairing on the first `len()` coordinates; longer vectors carry central exponents.
    pub(crate) fn pairing_prefix(&self, k: &[i64], n: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.rows.iter().enumerate() {
            if k[i] == 0 {
                continue;
            }
            let mut r = 0;
            for (j, &u) in row.iter().enumerate() {
                r += u * n[j];
            }
            s += k[i] * r;
        }
        s
    }

    /// Square submatrix on the named indices, in the given order.
    pub fn restrict(&self, names: &[String]) -> Result<Self> {
        let pos: Vec<usize> = names.iter().map(|n| self.position(n)).collect::<Result<_>>()?;
        Ok(Self {
            index: names.to_vec(),
            rows: pos
                .iter()
                .map(|&i| pos.iter().map(|&j| self.rows[i][j]).collect())
                .collect(),
        })
    }
}

/// Quantum torus descriptor: antisymmetric matrix on `I` plus central generators `H`.
///
/// Exponent vectors have length `|I| + |H|`; the trailing `H` block is nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    matrix: AntiSymMatrix,
    central: Vec<String>,
}

impl Torus {
    pub fn new(matrix: AntiSymMatrix, central: Vec<String>) -> Result<Arc<Self>> {
        for c in &central {
            if matrix.index.contains(c) || central.iter().filter(|x| *x == c).count() > 1 {
                return Err(Error::Invalid(format!("duplicate generator `{c}`")));
            }
        }
        Ok(Arc::new(Self { matrix, central }))
    }

    pub fn plain(matrix: AntiSymMatrix) -> Arc<Self> {
        Arc::new(Self {
            matrix,
            central: Vec::new(),
        })
    }

    pub fn matrix(&self) -> &AntiSymMatrix {
        &self.matrix
    }

    pub fn central(&self) -> &[String] {
        &self.central
    }

    /// Number of torus generators `|I|`.
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// Length of exponent vectors, `|I| + |H|`.
    pub fn dim(&self) -> usize {
        self.matrix.len() + self.central.len()
    }

    pub fn is_central_slot(&self, i: usize) -> bool {
        i >= self.rank()
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.matrix.index.iter().chain(self.central.iter())
    }

    pub fn slot(&self, name: &str) -> Result<usize> {
        self.names()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn unit_vector(&self, name: &str) -> Result<Vec<i64>> {
        let mut v = vec![0; self.dim()];
        v[self.slot(name)?] = 1;
        Ok(v)
    }

    /// Exponent vector from `(generator, exponent)` pairs.
    pub fn exponent(&self, word: &[(&str, i64)]) -> Result<Vec<i64>> {
        let mut v = vec![0; self.dim()];
        for &(g, e) in word {
            v[self.slot(g)?] += e;
        }
        self.check_exponent(&v)?;
        Ok(v)
    }

    pub fn check_exponent(&self, k: &[i64]) -> Result<()> {
        if k.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: k.len(),
            });
        }
        if let Some(i) = (self.rank()..self.dim()).find(|&i| k[i] < 0) {
            return Err(Error::Invalid(format!(
                "central generator `{}` needs a nonnegative exponent",
                self.central[i - self.rank()]
            )));
        }
        Ok(())
    }

    pub fn pairing(&self, k: &[i64], n: &[i64]) -> i64 {
        self.matrix.pairing_prefix(k, n)
    }
}

/// `<k, n>_U`.
pub fn pairing(u: &AntiSymMatrix, k: &[i64], n: &[i64]) -> Result<i64> {
    u.pairing(k, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_basics() {
        let u = AntiSymMatrix::from_entries(&["x", "y"], &[("x", "y", 1)]).unwrap();
        assert_eq!(pairing(&u, &[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(pairing(&u, &[0, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(pairing(&u, &[3, -2], &[3, -2]).unwrap(), 0);
        assert!(pairing(&u, &[1], &[0, 1]).is_err());
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let r = AntiSymMatrix::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]);
        assert!(r.is_err());
    }
}
