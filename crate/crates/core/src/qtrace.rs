//! Chekhov–Fock tori, quantum traces of simple knots and the shear-to-skein map.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qtorus::{AntiSymMatrix, SymElement, Torus};
use crate::surface::Quasitriangulation;

/// Torus with matrix `-2Q`.
pub fn chekhov_fock(q: &AntiSymMatrix) -> Arc<Torus> {
    Torus::plain(q.scaled(-2))
}

/// Passage of a knot through one triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotStep {
    pub triangle: usize,
    pub entry: String,
    pub exit: String,
}

/// Closed curve crossing every edge at most once, given by its cyclic triangle passages.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSimpleKnot {
    pub steps: Vec<KnotStep>,
}

/// Sign per edge; edges not crossed carry 0.
pub type Coloring = BTreeMap<String, i8>;

impl DeltaSimpleKnot {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Same curve traversed the other way.
    pub fn reversed(&self) -> Self {
        Self {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| KnotStep {
                    triangle: s.triangle,
                    entry: s.exit.clone(),
                    exit: s.entry.clone(),
                })
                .collect(),
        }
    }

    pub fn crossed_edges(&self) -> BTreeSet<String> {
        self.steps.iter().map(|s| s.exit.clone()).collect()
    }

    pub fn validate(&self, t: &Quasitriangulation) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        if !t.monogon_edges().is_empty() {
            return bad("quantum traces need a triangulation without monogons".into());
        }
        t.incidence()?;
        let n = self.steps.len();
        if n == 1 {
            return bad("a knot passes through at least two triangles".into());
        }
        let mut seen = BTreeSet::new();
        for (i, s) in self.steps.iter().enumerate() {
            let tri = t
                .triangles
                .get(s.triangle)
                .ok_or_else(|| Error::Invalid(format!("no triangle {}", s.triangle)))?;
            if s.entry == s.exit || !tri.contains(&s.entry) || !tri.contains(&s.exit) {
                return bad(format!(
                    "step {i} does not pass between two sides of triangle {}",
                    s.triangle
                ));
            }
            let next = &self.steps[(i + 1) % n];
            if next.entry != s.exit {
                return bad(format!(
                    "step {i} exits through `{}` but the next enters through `{}`",
                    s.exit, next.entry
                ));
            }
            if next.triangle == s.triangle {
                return bad(format!("step {i} re-enters its own triangle"));
            }
            if !seen.insert(s.exit.clone()) {
                return bad(format!("edge `{}` is crossed more than once", s.exit));
            }
        }
        Ok(())
    }
}

/// All colorings with `(C(entry), C(exit)) != (-1, 1)` at every step.
pub fn admissible_colorings(x: &DeltaSimpleKnot, t: &Quasitriangulation) -> Result<Vec<Coloring>> {
    x.validate(t)?;
    let crossed: Vec<String> = x.crossed_edges().into_iter().collect();
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << crossed.len()) {
        let mut c: Coloring = t.edge_names().into_iter().map(|e| (e, 0)).collect();
        for (i, e) in crossed.iter().enumerate() {
            c.insert(e.clone(), if bits >> i & 1 == 1 { -1 } else { 1 });
        }
        if x.steps.iter().all(|s| (c[&s.entry], c[&s.exit]) != (-1, 1)) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Sum of normalized monomials `[prod Z_a^{C(a)}]` over admissible colorings.
pub fn quantum_trace(x: &DeltaSimpleKnot, t: &Quasitriangulation) -> Result<SymElement> {
    let torus = chekhov_fock(&t.face_matrix()?);
    let mut out = SymElement::zero(&torus, &());
    for c in admissible_colorings(x, t)? {
        let k: Vec<i64> = t.edge_names().iter().map(|e| i64::from(c[e])).collect();
        out = out.try_add(&SymElement::monomial(&torus, &(), k)?)?;
    }
    Ok(out)
}

/// Inner edges and the rows of `Q` they index.
pub fn shear_matrix(t: &Quasitriangulation) -> Result<(Vec<String>, Vec<Vec<i64>>)> {
    let q = t.face_matrix()?;
    let mut inner = Vec::new();
    let mut rows = Vec::new();
    for e in t.edge_names() {
        if t.is_inner(&e)? {
            rows.push(q.rows[q.position(&e)?].clone());
            inner.push(e);
        }
    }
    Ok((inner, rows))
}

/// `Z^k -> X^{kH}` for `k` indexed by the inner edges.
pub fn shear_to_skein(k: &[i64], t: &Quasitriangulation) -> Result<SymElement> {
    if !t.unmarked.is_empty() {
        return Err(Error::Invalid("shear-to-skein needs a totally marked surface".into()));
    }
    let (inner, h) = shear_matrix(t)?;
    if k.len() != inner.len() {
        return Err(Error::Dimension {
            expected: inner.len(),
            got: k.len(),
        });
    }
    let n = t.edge_names().len();
    let image: Vec<i64> = (0..n)
        .map(|j| k.iter().zip(&h).map(|(a, row)| a * row[j]).sum())
        .collect();
    SymElement::monomial(&t.muller_torus()?, &(), image)
}

/// `((e, f), <e, f>_{-2Q}, <eH, fH>_P)`.
pub type ShearPairing = ((String, String), i64, i64);

/// Pairs `(<k, n>_{-2Q}, <kH, nH>_P)` over unit vectors of the inner edges.
pub fn shear_pairings(t: &Quasitriangulation) -> Result<Vec<ShearPairing>> {
    let (inner, h) = shear_matrix(t)?;
    let q = t.face_matrix()?;
    let p = t.vertex_matrix()?;
    let mut out = Vec::new();
    for (i, a) in inner.iter().enumerate() {
        for (j, b) in inner.iter().enumerate() {
            let cf = -2 * q.get(a, b)?;
            let sk = p.pairing(&h[i], &h[j])?;
            out.push(((a.clone(), b.clone()), cf, sk));
        }
    }
    Ok(out)
}

/// Core curve of the bundled annulus.
pub fn annulus_core_knot() -> DeltaSimpleKnot {
    DeltaSimpleKnot::from_json(include_str!("../fixtures/annulus_core.json")).expect("bundled knot")
}
