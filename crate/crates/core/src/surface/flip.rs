use std::collections::BTreeSet;

use super::quasitri::{EdgeKind, EdgeSpec, Face, Quasitriangulation, Slot, UnmarkedComponent};
use crate::error::{Error, Result};
use crate::qcoeff::LaurentScalar;
use crate::qtorus::{weyl_normalize, SymElement};

/// A generator word `[(name, exponent), ...]` standing for its Weyl-normalized monomial.
pub type Word = Vec<(String, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    /// Edge shared by two distinct triangles.
    Ordinary,
    /// Monogon edge together with its adjacent triangle.
    Monogon,
}

/// Result of flipping one edge.
#[derive(Clone, Debug)]
pub struct Flip {
    pub source: Quasitriangulation,
    pub target: Quasitriangulation,
    pub edge: String,
    pub new_edge: String,
    pub kind: FlipKind,
    /// Normalized monomials whose sum is the image of `edge` in the target algebra.
    pub theta: Vec<Word>,
    /// For monogon flips: `(b, c, beta)` with `a a* = q^2 b^2 + q^-2 c^2 + beta b c`.
    pub roles: Option<(String, String, String)>,
}

fn rotate_to(edges: &[String; 3], corners: &[Slot; 3], a: &str) -> Option<([String; 3], [Slot; 3])> {
    let r = edges.iter().position(|e| e == a)?;
    let mut e = edges.clone();
    let mut c = *corners;
    e.rotate_left(r);
    c.rotate_left(r);
    Some((e, c))
}

fn rebuild(
    t: &Quasitriangulation,
    remove: &[Slot],
    insert: &[(Slot, Vec<String>)],
) -> Vec<super::quasitri::MarkedPoint> {
    let mut out = t.marked_points.clone();
    for (p, mp) in t.marked_points.iter().enumerate() {
        let mut list = Vec::new();
        for (k, e) in mp.clockwise.iter().enumerate() {
            if !remove.contains(&(p, k)) {
                list.push(e.clone());
            }
            for (g, new) in insert {
                if *g == (p, k) {
                    list.extend(new.iter().cloned());
                }
            }
        }
        out[p].clockwise = list;
    }
    out
}

/// Flip of `t` at the inner edge `a`.
pub fn flip(t: &Quasitriangulation, a: &str) -> Result<Flip> {
    let inc = t.incidence()?;
    let kind = t.kind(a)?;
    if kind == EdgeKind::Boundary {
        return Err(Error::Invalid(format!("boundary edge `{a}` cannot be flipped")));
    }
    let star = t.partner_name(a);
    if t.kind(&star).is_ok() {
        return Err(Error::Invalid(format!("flip partner name `{star}` already in use")));
    }
    let tris: Vec<([String; 3], [Slot; 3])> = inc
        .faces
        .iter()
        .filter_map(|f| match f {
            Face::Triangle { edges, corners } => rotate_to(edges, corners, a),
            Face::Monogon { .. } => None,
        })
        .collect();
    let mut edges: Vec<EdgeSpec> = t.edges.iter().filter(|e| e.name != a).cloned().collect();
    let remove = inc.ends[a].clone();
    let mut triangles: Vec<[String; 3]> = t
        .triangles
        .iter()
        .filter(|tr| !tr.iter().any(|e| e == a))
        .cloned()
        .collect();
    let mut target = t.clone();
    let (theta, roles) = match kind {
        EdgeKind::Inner => {
            let [(te1, tc1), (te2, tc2)] =
                <[_; 2]>::try_from(tris).map_err(|_| Error::Invalid(format!("edge `{a}` is not flippable")))?;
            let [_, x1, x2] = te1;
            let [_, y1, y2] = te2;
            target.marked_points = rebuild(
                t,
                &remove,
                &[(tc1[1], vec![star.clone()]), (tc2[1], vec![star.clone()])],
            );
            edges.push(EdgeSpec {
                name: star.clone(),
                kind: EdgeKind::Inner,
            });
            triangles.push([star.clone(), x2.clone(), y1.clone()]);
            triangles.push([star.clone(), y2.clone(), x1.clone()]);
            let theta = vec![
                vec![(x1, 1), (y1, 1), (star.clone(), -1)],
                vec![(x2, 1), (y2, 1), (star.clone(), -1)],
            ];
            (theta, None)
        }
        EdgeKind::Monogon => {
            let [(te, tc)] = <[_; 1]>::try_from(tris)
                .map_err(|_| Error::Invalid(format!("monogon edge `{a}` needs one adjacent triangle")))?;
            let [_, x, y] = te;
            let beta = t
                .component_of_monogon(a)
                .map(|u| u.name.clone())
                .ok_or_else(|| Error::Malformed(format!("monogon `{a}` has no component")))?;
            target.marked_points = rebuild(t, &remove, &[(tc[1], vec![star.clone(), star.clone()])]);
            edges.push(EdgeSpec {
                name: star.clone(),
                kind: EdgeKind::Monogon,
            });
            triangles.push([star.clone(), y.clone(), x.clone()]);
            target.unmarked = t
                .unmarked
                .iter()
                .map(|u| UnmarkedComponent {
                    name: u.name.clone(),
                    monogon: if u.monogon == a {
                        star.clone()
                    } else {
                        u.monogon.clone()
                    },
                })
                .collect();
            let theta = vec![
                vec![(y.clone(), 2), (star.clone(), -1)],
                vec![(x.clone(), 2), (star.clone(), -1)],
                vec![(beta.clone(), 1), (x.clone(), 1), (y.clone(), 1), (star.clone(), -1)],
            ];
            (theta, Some((y, x, beta)))
        }
        EdgeKind::Boundary => unreachable!(),
    };
    target.edges = edges;
    target.triangles = triangles;
    target.star_partners.remove(a);
    target.star_partners.insert(star.clone(), a.to_string());
    target.incidence()?;
    Ok(Flip {
        source: t.clone(),
        target,
        edge: a.to_string(),
        new_edge: star,
        kind: if kind == EdgeKind::Monogon {
            FlipKind::Monogon
        } else {
            FlipKind::Ordinary
        },
        theta,
        roles,
    })
}

/// Evaluates a sum of normalized words in the Muller torus of `t`.
pub fn words_to_element(t: &Quasitriangulation, words: &[Word]) -> Result<SymElement> {
    let torus = t.muller_torus()?;
    let mut out = SymElement::zero(&torus, &());
    for w in words {
        let word: Vec<(&str, i64)> = w.iter().map(|(g, e)| (g.as_str(), *e)).collect();
        out = out.try_add(&weyl_normalize(&word, &torus, &())?)?;
    }
    Ok(out)
}

impl Flip {
    /// Words of `Theta(x)` in the target algebra.
    pub fn transfer_words(&self, x: &str) -> Result<Vec<Word>> {
        if x == self.edge {
            return Ok(self.theta.clone());
        }
        let known = self.source.kind(x).is_ok() || self.source.unmarked_names().iter().any(|b| b == x);
        if !known {
            return Err(Error::UnknownName(x.to_string()));
        }
        Ok(vec![vec![(x.to_string(), 1)]])
    }

    /// `Theta(x)` as an element of the target Muller torus.
    pub fn transfer_on_generator(&self, x: &str) -> Result<SymElement> {
        words_to_element(&self.target, &self.transfer_words(x)?)
    }

    /// Right side of the exchange relation for the flipped edge, as words with t-exponent coefficients.
    pub fn exchange_terms(&self) -> Vec<(i64, Word)> {
        match &self.roles {
            Some((b, c, beta)) => vec![
                (4, vec![(b.clone(), 2)]),
                (-4, vec![(c.clone(), 2)]),
                (0, vec![(beta.clone(), 1), (b.clone(), 1), (c.clone(), 1)]),
            ],
            None => Vec::new(),
        }
    }
}

/// `Theta_{t, t2}(x)` where `t2` is a single flip of `t`.
pub fn transfer_on_generator(t: &Quasitriangulation, t2: &Quasitriangulation, x: &str) -> Result<SymElement> {
    let old: BTreeSet<String> = t.edge_names().into_iter().collect();
    let new: BTreeSet<String> = t2.edge_names().into_iter().collect();
    let gone: Vec<&String> = old.difference(&new).collect();
    let [a] = gone.as_slice() else {
        return Err(Error::Invalid("quasitriangulations do not differ by one flip".into()));
    };
    let f = flip(t, a)?;
    if !f.target.same_as(t2) {
        return Err(Error::Invalid("quasitriangulations do not differ by one flip".into()));
    }
    f.transfer_on_generator(x)
}

/// Sum of `t^e` times ordered products of generator powers, in the Muller torus of `t`.
pub fn exchange_rhs(t: &Quasitriangulation, terms: &[(i64, Word)]) -> Result<SymElement> {
    let torus = t.muller_torus()?;
    let mut out = SymElement::zero(&torus, &());
    for (e, w) in terms {
        let mut m = SymElement::scalar(&torus, &(), LaurentScalar::t_pow(*e));
        for (g, k) in w {
            m = m.try_mul(&SymElement::word(&torus, &(), &[(g.as_str(), *k)])?)?;
        }
        out = out.try_add(&m)?;
    }
    Ok(out)
}
