use std::collections::{BTreeMap, BTreeSet};

use super::expr::{Expr, GeneratorMap};
use super::flip::{flip, words_to_element};
use super::quasitri::{EdgeKind, EdgeSpec, MarkedPoint, Quasitriangulation};
use crate::error::{Error, Result};
use crate::qcoeff::LaurentScalar;
use crate::qtorus::{SymElement, Torus};
use std::sync::Arc;

/// Surgery map on generators of the surgery algebra `Delta ∪ Delta*_mon ∪ H`.
#[derive(Clone, Debug)]
pub struct SurgeryMap {
    pub source: Quasitriangulation,
    pub target: Quasitriangulation,
    pub map: GeneratorMap,
    /// Generators of the kernel ideal, when reported.
    pub kernel: Vec<Expr>,
}

/// `(a*, b, c, beta)` for every monogon edge `a`, with `a a* = q^2 b^2 + q^-2 c^2 + beta b c`.
pub fn star_roles(t: &Quasitriangulation) -> Result<BTreeMap<String, (String, String, String, String)>> {
    let mut out = BTreeMap::new();
    for a in t.monogon_edges() {
        let f = flip(t, &a)?;
        let (b, c, beta) = f.roles.clone().expect("monogon flip has roles");
        out.insert(a, (f.new_edge, b, c, beta));
    }
    Ok(out)
}

fn gen(torus: &Arc<Torus>, g: &str) -> Result<SymElement> {
    SymElement::generator(torus, &(), g)
}

/// `a^{-1}(q^2 b^2 + q^-2 c^2 + beta' b c)` in the target, for a given image of `beta`.
fn star_image(map: &GeneratorMap, a: &str, b: &str, c: &str, beta: &SymElement) -> Result<SymElement> {
    let (ia, ib, ic) = (map.image(a)?, map.image(b)?, map.image(c)?);
    let rhs = ib.pow(2).shift(4).add(&ic.pow(2).shift(-4)).add(&beta.mul(ib).mul(ic));
    ia.inverse()?.try_mul(&rhs)
}

fn base_map(source: &Quasitriangulation, target: &Quasitriangulation) -> Result<GeneratorMap> {
    let src = source.muller_torus()?;
    let tgt = target.muller_torus()?;
    let mut images = BTreeMap::new();
    for g in src.names() {
        if tgt.slot(g).is_ok() {
            images.insert(g.clone(), gen(&tgt, g)?);
        }
    }
    Ok(GeneratorMap {
        source: src,
        target: tgt,
        images,
        forbidden_inverses: source.monogon_edges().into_iter().collect(),
    })
}

fn fresh(t: &Quasitriangulation, names: &[&str]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        let taken = t.kind(n).is_ok()
            || t.marked_points.iter().any(|p| p.name == *n)
            || t.unmarked.iter().any(|u| u.name == *n);
        if taken || !seen.insert(*n) {
            return Err(Error::Invalid(format!("name `{n}` is already in use")));
        }
    }
    Ok(())
}

/// Adds a marked point `w` on the boundary edge `e`, creating boundary edges `a1`, `a2`.
pub fn surgery_add_point_boundary(t: &Quasitriangulation, e: &str, a1: &str, a2: &str, w: &str) -> Result<SurgeryMap> {
    let inc = t.incidence()?;
    if t.kind(e)? != EdgeKind::Boundary {
        return Err(Error::Invalid(format!("`{e}` is not a boundary edge")));
    }
    fresh(t, &[a1, a2, w])?;
    let (u, v) = (inc.ends[e][0], inc.ends[e][1]);
    let mut target = t.clone();
    target.name = format!("{}+{w}", t.name);
    let e_first_at_u = u.1 == 0;
    for (slot, new) in [(v, a2), (u, a1)] {
        let list = &mut target.marked_points[slot.0].clockwise;
        if slot.1 == 0 {
            list.insert(0, new.to_string());
        } else {
            list.push(new.to_string());
        }
    }
    let (tri, wlist) = if e_first_at_u {
        ([a1, e, a2], vec![a2, a1])
    } else {
        ([e, a1, a2], vec![a1, a2])
    };
    target.triangles.push(tri.map(str::to_string));
    target.marked_points.push(MarkedPoint {
        name: w.to_string(),
        clockwise: wlist.into_iter().map(str::to_string).collect(),
    });
    for ed in target.edges.iter_mut() {
        if ed.name == e {
            ed.kind = EdgeKind::Inner;
        }
    }
    for n in [a1, a2] {
        target.edges.push(EdgeSpec {
            name: n.to_string(),
            kind: EdgeKind::Boundary,
        });
    }
    target.incidence()?;
    let mut map = base_map(t, &target)?;
    for (a, (star, b, c, beta)) in star_roles(t)? {
        let bimg = map.image(&beta)?.clone();
        let img = star_image(&map, &a, &b, &c, &bimg)?;
        map.images.insert(star, img);
    }
    Ok(SurgeryMap {
        source: t.clone(),
        target,
        map,
        kernel: Vec::new(),
    })
}

/// Adds a marked point `w` on the unmarked component `beta`, with new edges `d`, `e` (inner)
/// and boundary loop `f`; the monogon edge of `beta` becomes an ordinary inner edge.
pub fn surgery_add_point_unmarked(
    t: &Quasitriangulation,
    beta: &str,
    d: &str,
    e: &str,
    f: &str,
    w: &str,
) -> Result<SurgeryMap> {
    let inc = t.incidence()?;
    let comp = t
        .unmarked
        .iter()
        .find(|u| u.name == beta)
        .ok_or_else(|| Error::Invalid(format!("`{beta}` is not an unmarked component")))?;
    let a = comp.monogon.clone();
    fresh(t, &[d, e, f, w])?;
    let roles = star_roles(t)?;
    let (star, b, c, _) = roles[&a].clone();
    let first = inc.ends[&a][0];
    let mut target = t.clone();
    target.name = format!("{}+{w}", t.name);
    let list = &mut target.marked_points[first.0].clockwise;
    list.splice(first.1 + 1..first.1 + 1, [e.to_string(), d.to_string()]);
    target.marked_points.push(MarkedPoint {
        name: w.to_string(),
        clockwise: [f, e, d, f].map(str::to_string).to_vec(),
    });
    target.triangles.push([d, f, e].map(str::to_string));
    target.triangles.push([d, a.as_str(), e].map(str::to_string));
    for ed in target.edges.iter_mut() {
        if ed.name == a {
            ed.kind = EdgeKind::Inner;
        }
    }
    for (n, k) in [(d, EdgeKind::Inner), (e, EdgeKind::Inner), (f, EdgeKind::Boundary)] {
        target.edges.push(EdgeSpec {
            name: n.to_string(),
            kind: k,
        });
    }
    target.unmarked.retain(|u| u.name != beta);
    target.star_partners.remove(&a);
    target.incidence()?;
    let mut map = base_map(t, &target)?;
    let w = |word: &[(&str, i64)]| -> Vec<(String, i64)> { word.iter().map(|(g, k)| (g.to_string(), *k)).collect() };
    let beta_img = words_to_element(
        &target,
        &[
            w(&[(d, -1), (e, 1)]),
            w(&[(&a, 1), (d, -1), (e, -1), (f, 1)]),
            w(&[(d, 1), (e, -1)]),
        ],
    )?;
    let star_img = words_to_element(
        &target,
        &[
            w(&[(&a, -1), (&b, 2)]),
            w(&[(&a, -1), (&c, 2)]),
            w(&[(&a, -1), (&b, 1), (&c, 1), (d, -1), (e, 1)]),
            w(&[(&b, 1), (&c, 1), (d, -1), (e, -1), (f, 1)]),
            w(&[(&a, -1), (&b, 1), (&c, 1), (d, 1), (e, -1)]),
        ],
    )?;
    map.images.insert(beta.to_string(), beta_img);
    map.images.insert(star, star_img);
    for (a2, (star2, b2, c2, beta2)) in roles {
        if a2 != a {
            let bimg = map.image(&beta2)?.clone();
            let img = star_image(&map, &a2, &b2, &c2, &bimg)?;
            map.images.insert(star2, img);
        }
    }
    Ok(SurgeryMap {
        source: t.clone(),
        target,
        map,
        kernel: Vec::new(),
    })
}

/// Plugs the unmarked component `beta` with a disk.
///
/// With `(a, b, c)` the adjacent triangle rotated so the monogon edge `a` comes first,
/// `b` must be inner; it is identified with `c`.
pub fn surgery_plug_hole(t: &Quasitriangulation, beta: &str) -> Result<SurgeryMap> {
    let inc = t.incidence()?;
    let comp = t
        .unmarked
        .iter()
        .find(|u| u.name == beta)
        .ok_or_else(|| Error::Invalid(format!("`{beta}` is not an unmarked component")))?;
    let a = comp.monogon.clone();
    let roles = star_roles(t)?;
    let tri = t
        .triangles
        .iter()
        .find(|tr| tr.contains(&a))
        .ok_or_else(|| Error::Malformed(format!("monogon `{a}` has no adjacent triangle")))?;
    let r = tri.iter().position(|x| *x == a).expect("contains a");
    let b = tri[(r + 1) % 3].clone();
    let c = tri[(r + 2) % 3].clone();
    if t.kind(&b)? == EdgeKind::Boundary {
        return Err(Error::Invalid(format!("edge `{b}` after the monogon must be inner")));
    }
    let mut target = t.clone();
    target.name = format!("{}-{beta}", t.name);
    let remove: Vec<_> = inc.ends[&a].iter().chain(inc.ends[&b].iter()).copied().collect();
    for (p, mp) in target.marked_points.iter_mut().enumerate() {
        mp.clockwise = t.marked_points[p]
            .clockwise
            .iter()
            .enumerate()
            .filter(|(k, _)| !remove.contains(&(p, *k)))
            .map(|(_, e)| e.clone())
            .collect();
    }
    target.marked_points.retain(|mp| !mp.clockwise.is_empty());
    target.edges.retain(|ed| ed.name != a && ed.name != b);
    target.triangles = t
        .triangles
        .iter()
        .filter(|tr| !tr.contains(&a))
        .map(|tr| tr.clone().map(|x| if x == b { c.clone() } else { x }))
        .collect();
    target.unmarked.retain(|u| u.name != beta);
    target.star_partners.remove(&a);
    target.incidence()?;
    let mut map = base_map(t, &target)?;
    let (star, _, _, _) = roles[&a].clone();
    let zero = SymElement::zero(&map.target, &());
    map.images.insert(a.clone(), zero.clone());
    map.images.insert(star.clone(), zero);
    map.images.insert(b.clone(), gen(&map.target, &c)?);
    let loop_value = LaurentScalar::from_terms([(4, -1), (-4, -1)]);
    map.images.insert(
        beta.to_string(),
        SymElement::scalar(&map.target, &(), loop_value.clone()),
    );
    for (a2, (star2, b2, c2, beta2)) in roles {
        if a2 != a {
            let bimg = map.image(&beta2)?.clone();
            let img = star_image(&map, &a2, &b2, &c2, &bimg)?;
            map.images.insert(star2, img);
        }
    }
    let kernel = vec![
        Expr::gen(&a),
        Expr::gen(&star),
        Expr::Add(vec![
            Expr::gen(&b),
            Expr::Mul(vec![Expr::Scalar(LaurentScalar::int(-1)), Expr::gen(&c)]),
        ]),
        Expr::Add(vec![Expr::gen(beta), Expr::Scalar(loop_value.scale(-1))]),
    ];
    Ok(SurgeryMap {
        source: t.clone(),
        target,
        map,
        kernel,
    })
}

impl SurgeryMap {
    /// Evaluates the defining relations of the source algebra on the images.
    ///
    /// Returns a description of every relation that fails; empty means all hold.
    pub fn check_relations(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let p = self.source.vertex_matrix()?;
        let edges = self.source.edge_names();
        let img = |g: &str| self.map.image(g);
        for (i, x) in edges.iter().enumerate() {
            for y in &edges[i + 1..] {
                let lhs = img(x)?.mul(img(y)?);
                let rhs = img(y)?.mul(img(x)?).shift(2 * p.get(x, y)?);
                if lhs != rhs {
                    bad.push(format!("{x}{y} = q^{} {y}{x}", p.get(x, y)?));
                }
            }
        }
        for beta in self.source.unmarked_names() {
            for x in &edges {
                if img(&beta)?.mul(img(x)?) != img(x)?.mul(img(&beta)?) {
                    bad.push(format!("{beta} central with {x}"));
                }
            }
        }
        for (a, (star, b, c, beta)) in star_roles(&self.source)? {
            let lhs = img(&a)?.mul(img(&star)?);
            let rhs = img(&b)?
                .pow(2)
                .shift(4)
                .add(&img(&c)?.pow(2).shift(-4))
                .add(&img(&beta)?.mul(img(&b)?).mul(img(&c)?));
            if lhs != rhs {
                bad.push(format!("{a}{star} exchange relation"));
            }
            let pstar = flip(&self.source, &a)?.target.vertex_matrix()?;
            for x in edges.iter().filter(|x| **x != a) {
                let e = pstar.get(&star, x)?;
                if img(&star)?.mul(img(x)?) != img(x)?.mul(img(&star)?).shift(2 * e) {
                    bad.push(format!("{star}{x} = q^{e} {x}{star}"));
                }
            }
        }
        Ok(bad)
    }
}
