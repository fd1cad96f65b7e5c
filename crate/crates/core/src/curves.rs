//! Edge coordinates of simple diagrams and the admissible-vector monoid.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcoeff::LaurentScalar;
use crate::qtorus::MonoidDescriptor;

/// Ideal triangulation given by arc triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealTriangulationShape {
    pub r: usize,
    pub triangles: Vec<[usize; 3]>,
}

impl IdealTriangulationShape {
    /// Validates arc indices; arcs sit in one or two triangle slots and no triangle repeats an arc.
    pub fn new(r: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mut slots = vec![0usize; r];
        for t in &triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::Invalid(format!("self-folded triangle {t:?}")));
            }
            for &e in t {
                *slots
                    .get_mut(e)
                    .ok_or_else(|| Error::Invalid(format!("arc {e} out of range")))? += 1;
            }
        }
        if let Some(e) = slots.iter().position(|&s| s == 0 || s > 2) {
            return Err(Error::Invalid(format!("arc {e} lies in {} triangle slots", slots[e])));
        }
        Ok(Self { r, triangles })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Self = serde_json::from_str(s)?;
        Self::new(raw.r, raw.triangles)
    }

    pub fn single_triangle() -> Self {
        Self::new(3, vec![[0, 1, 2]]).expect("valid")
    }

    /// Two triangles glued along arc 0.
    pub fn square() -> Self {
        Self::new(5, vec![[0, 1, 2], [0, 3, 4]]).expect("valid")
    }

    /// Once-punctured torus: three arcs, each in both triangles.
    pub fn punctured_torus() -> Self {
        Self::new(3, vec![[0, 1, 2], [0, 2, 1]]).expect("valid")
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.r {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.r,
                got: len,
            })
        }
    }

    /// Nonnegativity, even triangle sums and triangle inequalities.
    pub fn is_admissible(&self, k: &[i64]) -> Result<bool> {
        self.check_dim(k.len())?;
        if k.iter().any(|&x| x < 0) {
            return Ok(false);
        }
        Ok(self.triangles.iter().all(|t| {
            let (a, b, c) = (k[t[0]], k[t[1]], k[t[2]]);
            (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
        }))
    }

    /// Membership in the group completion: every triangle sum even.
    pub fn in_group_completion(&self, k: &[i64]) -> Result<bool> {
        self.check_dim(k.len())?;
        Ok(self
            .triangles
            .iter()
            .all(|t| (k[t[0]] + k[t[1]] + k[t[2]]).rem_euclid(2) == 0))
    }

    /// Nonnegativity and triangle inequalities over the rationals.
    pub fn cone_membership(&self, v: &[Ratio<i64>]) -> Result<bool> {
        self.check_dim(v.len())?;
        if v.iter().any(|x| *x < Ratio::zero()) {
            return Ok(false);
        }
        Ok(self.triangles.iter().all(|t| {
            let (a, b, c) = (v[t[0]], v[t[1]], v[t[2]]);
            a <= b + c && b <= a + c && c <= a + b
        }))
    }

    /// The monoid as a polyhedral descriptor for monomial subalgebras.
    pub fn monoid_descriptor(&self) -> MonoidDescriptor {
        let mut ineqs = Vec::new();
        for i in 0..self.r {
            let mut v = vec![0; self.r];
            v[i] = 1;
            ineqs.push(v);
        }
        let mut congruences = Vec::new();
        for t in &self.triangles {
            for i in 0..3 {
                let mut v = vec![0; self.r];
                v[t[(i + 1) % 3]] += 1;
                v[t[(i + 2) % 3]] += 1;
                v[t[i]] -= 1;
                ineqs.push(v);
            }
            let mut s = vec![0; self.r];
            for &e in t {
                s[e] += 1;
            }
            congruences.push((s, 2));
        }
        MonoidDescriptor::Polyhedral { ineqs, congruences }
    }
}

fn for_each_vector(r: usize, lo: i64, hi: i64, f: &mut dyn FnMut(&[i64]) -> Result<bool>) -> Result<bool> {
    let mut k = vec![lo; r];
    loop {
        if !f(&k)? {
            return Ok(false);
        }
        let mut i = 0;
        while i < r && k[i] == hi {
            k[i] = lo;
            i += 1;
        }
        if i == r {
            return Ok(true);
        }
        k[i] += 1;
    }
}

/// Exhaustive check that `c k` admissible forces `k` admissible, for `k` in the group completion
/// with coordinates in `[-bound, bound]` and `c` in `{2, 3}`.
pub fn primitivity_check(shape: &IdealTriangulationShape, bound: i64) -> Result<bool> {
    for_each_vector(shape.r, -bound, bound, &mut |k| {
        if !shape.in_group_completion(k)? {
            return Ok(true);
        }
        for c in [2, 3] {
            let ck: Vec<i64> = k.iter().map(|x| c * x).collect();
            if shape.is_admissible(&ck)? && !shape.is_admissible(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Admissible vectors with coordinates in `[0, bound]`.
pub fn admissible_vectors(shape: &IdealTriangulationShape, bound: i64) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_vector(shape.r, 0, bound, &mut |k| {
        if shape.is_admissible(k)? {
            out.push(k.to_vec());
        }
        Ok(true)
    })?;
    Ok(out)
}

/// Exhaustive check that admissible vectors with coordinates in `[0, bound]` are closed under sums.
pub fn monoid_closure_check(shape: &IdealTriangulationShape, bound: i64) -> Result<bool> {
    let vs = admissible_vectors(shape, bound)?;
    for a in &vs {
        for b in &vs {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !shape.is_admissible(&s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bilinear form `C(k, k')` on edge vectors.
pub trait Cocycle {
    fn value(&self, k: &[i64], kp: &[i64]) -> i64;
}

/// `C(k, k') = k^T M k'` for an integer matrix `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCocycle(pub Vec<Vec<i64>>);

impl Cocycle for MatrixCocycle {
    fn value(&self, k: &[i64], kp: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(k)
            .map(|(row, a)| a * row.iter().zip(kp).map(|(m, b)| m * b).sum::<i64>())
            .sum()
    }
}

/// Leading term `q^{C(k,k')} S(k+k')` of the product of basis elements.
pub fn graded_product(
    shape: &IdealTriangulationShape,
    k: &[i64],
    kp: &[i64],
    c: &dyn Cocycle,
) -> Result<(Vec<i64>, LaurentScalar)> {
    for v in [k, kp] {
        if !shape.is_admissible(v)? {
            return Err(Error::Invalid(format!("{v:?} is not admissible")));
        }
    }
    let sum: Vec<i64> = k.iter().zip(kp).map(|(a, b)| a + b).collect();
    Ok((sum, LaurentScalar::q_pow(c.value(k, kp))))
}

/// Largest `|k|` over the support of a formal combination.
pub fn filtration_degree(x: &[(Vec<i64>, i64)]) -> Result<i64> {
    let mut merged: std::collections::BTreeMap<&[i64], i64> = Default::default();
    for (k, c) in x {
        *merged.entry(k.as_slice()).or_default() += c;
    }
    merged
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(k, _)| k.iter().sum::<i64>())
        .max()
        .ok_or(Error::ZeroElement("filtration degree of zero"))
}
