use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qtorus::{AntiSymMatrix, Torus};

/// Role of an edge in a quasitriangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Inner,
    Boundary,
    Monogon,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub kind: EdgeKind,
}

/// A marked point with its incident half-edges listed in clockwise fan order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub name: String,
    pub clockwise: Vec<String>,
}

/// An unmarked boundary component together with the monogon edge around it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnmarkedComponent {
    pub name: String,
    pub monogon: String,
}

/// Combinatorial quasitriangulation of a marked surface.
///
/// Triangles list their edges counterclockwise. Gaps between consecutive entries of
/// a clockwise fan are corners of faces; a corner between `e` then `f` in clockwise
/// order belongs to a triangle in which `f` follows `e` counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quasitriangulation {
    pub name: String,
    pub edges: Vec<EdgeSpec>,
    pub marked_points: Vec<MarkedPoint>,
    pub triangles: Vec<[String; 3]>,
    #[serde(default)]
    pub unmarked: Vec<UnmarkedComponent>,
    #[serde(default)]
    pub star_partners: BTreeMap<String, String>,
}

/// Position of a half-edge: (marked point index, index in its clockwise list).
pub type Slot = (usize, usize);

/// Face of a validated quasitriangulation with its corner gaps.
///
/// Gap `(p, k)` sits between entries `k` and `k + 1` of point `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Face {
    Triangle { edges: [String; 3], corners: [Slot; 3] },
    Monogon { edge: String, corner: Slot },
}

/// Derived incidence data.
#[derive(Clone, Debug)]
pub struct Incidence {
    pub faces: Vec<Face>,
    /// Both slots of every edge.
    pub ends: BTreeMap<String, Vec<Slot>>,
}

impl Quasitriangulation {
    pub fn from_json(s: &str) -> Result<Self> {
        let q: Self = serde_json::from_str(s)?;
        q.incidence()?;
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.name.clone()).collect()
    }

    pub fn kind(&self, edge: &str) -> Result<EdgeKind> {
        self.edges
            .iter()
            .find(|e| e.name == edge)
            .map(|e| e.kind)
            .ok_or_else(|| Error::UnknownName(edge.to_string()))
    }

    pub fn is_inner(&self, edge: &str) -> Result<bool> {
        Ok(self.kind(edge)? != EdgeKind::Boundary)
    }

    pub fn monogon_edges(&self) -> Vec<String> {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Monogon)
            .map(|e| e.name.clone())
            .collect()
    }

    pub fn unmarked_names(&self) -> Vec<String> {
        self.unmarked.iter().map(|u| u.name.clone()).collect()
    }

    pub fn component_of_monogon(&self, edge: &str) -> Option<&UnmarkedComponent> {
        self.unmarked.iter().find(|u| u.monogon == edge)
    }

    /// Name of the edge that replaces `edge` under a flip.
    pub fn partner_name(&self, edge: &str) -> String {
        if let Some(p) = self.star_partners.get(edge) {
            return p.clone();
        }
        match edge.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{edge}*"),
        }
    }

    /// Checks local consistency and matches every fan gap with a face corner.
    pub fn incidence(&self) -> Result<Incidence> {
        let bad = |m: String| Error::Malformed(m);
        let mut names = BTreeSet::new();
        for e in &self.edges {
            if !names.insert(e.name.clone()) {
                return Err(bad(format!("duplicate edge `{}`", e.name)));
            }
        }
        let mut ends: BTreeMap<String, Vec<Slot>> = BTreeMap::new();
        for (p, mp) in self.marked_points.iter().enumerate() {
            if mp.clockwise.len() < 2 {
                return Err(bad(format!("marked point `{}` has fewer than two half-edges", mp.name)));
            }
            let last = mp.clockwise.len() - 1;
            for (k, e) in mp.clockwise.iter().enumerate() {
                if !names.contains(e) {
                    return Err(Error::UnknownName(e.clone()));
                }
                let boundary = self.kind(e)? == EdgeKind::Boundary;
                if boundary != (k == 0 || k == last) {
                    return Err(bad(format!(
                        "marked point `{}` must start and end with its boundary edges only",
                        mp.name
                    )));
                }
                ends.entry(e.clone()).or_default().push((p, k));
            }
        }
        for e in &self.edges {
            let n = ends.get(&e.name).map_or(0, Vec::len);
            if n != 2 {
                return Err(bad(format!("edge `{}` has {n} half-edges, expected 2", e.name)));
            }
        }
        let monogons = self.monogon_edges();
        if monogons.len() != self.unmarked.len() {
            return Err(bad("each unmarked component needs exactly one monogon edge".into()));
        }
        for u in &self.unmarked {
            if self.kind(&u.monogon)? != EdgeKind::Monogon {
                return Err(bad(format!("`{}` is not a monogon edge", u.monogon)));
            }
            if self.unmarked.iter().filter(|v| v.monogon == u.monogon).count() != 1 {
                return Err(bad(format!("monogon `{}` bounds two components", u.monogon)));
            }
        }
        let mut gaps: BTreeSet<Slot> = BTreeSet::new();
        for (p, mp) in self.marked_points.iter().enumerate() {
            for k in 0..mp.clockwise.len() - 1 {
                gaps.insert((p, k));
            }
        }
        let mut faces = Vec::new();
        for m in &monogons {
            let s = &ends[m];
            let (a, b) = (s[0], s[1]);
            if a.0 != b.0 || b.1 != a.1 + 1 {
                return Err(bad(format!("monogon `{m}` must have adjacent ends at one point")));
            }
            gaps.remove(&a);
            faces.push(Face::Monogon {
                edge: m.clone(),
                corner: a,
            });
        }
        let mut tri_faces = Vec::new();
        let mut used = BTreeSet::new();
        if !self.match_triangles(0, &ends, &gaps, &mut used, &mut tri_faces) {
            return Err(bad("triangles do not match the fan gaps".into()));
        }
        if used.len() != gaps.len() {
            return Err(bad("some fan gaps are not corners of any face".into()));
        }
        faces.extend(tri_faces);
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        for f in &faces {
            match f {
                Face::Triangle { edges, .. } => {
                    for e in edges {
                        *count.entry(e).or_default() += 1;
                    }
                }
                Face::Monogon { edge, .. } => *count.entry(edge).or_default() += 1,
            }
        }
        for e in &self.edges {
            let want = if e.kind == EdgeKind::Boundary { 1 } else { 2 };
            if count.get(e.name.as_str()).copied().unwrap_or(0) != want {
                return Err(bad(format!("edge `{}` must lie in {want} face(s)", e.name)));
            }
        }
        Ok(Incidence { faces, ends })
    }

    fn match_triangles(
        &self,
        t: usize,
        ends: &BTreeMap<String, Vec<Slot>>,
        gaps: &BTreeSet<Slot>,
        used: &mut BTreeSet<Slot>,
        out: &mut Vec<Face>,
    ) -> bool {
        let at = |s: Slot| self.marked_points[s.0].clockwise[s.1].as_str();
        if t == self.triangles.len() {
            return true;
        }
        let tri = &self.triangles[t];
        if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            return false;
        }
        // corner i joins tri[i] then tri[i+1] in clockwise order
        let cands: Vec<Vec<Slot>> = (0..3)
            .map(|i| {
                let (e, f) = (&tri[i], &tri[(i + 1) % 3]);
                gaps.iter()
                    .copied()
                    .filter(|&g| !used.contains(&g) && at(g) == e && at((g.0, g.1 + 1)) == f)
                    .collect()
            })
            .collect();
        for &g0 in &cands[0] {
            for &g1 in &cands[1] {
                for &g2 in &cands[2] {
                    let cs = [g0, g1, g2];
                    if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
                        continue;
                    }
                    // edge tri[i+1] is entered at the right of corner i and left of corner i+1
                    let consistent = (0..3).all(|i| {
                        let right = (cs[i].0, cs[i].1 + 1);
                        let left = cs[(i + 1) % 3];
                        right != left && ends[&tri[(i + 1) % 3]].contains(&right)
                    });
                    if !consistent {
                        continue;
                    }
                    for g in cs {
                        used.insert(g);
                    }
                    out.push(Face::Triangle {
                        edges: tri.clone(),
                        corners: cs,
                    });
                    if self.match_triangles(t + 1, ends, gaps, used, out) {
                        return true;
                    }
                    out.pop();
                    for g in cs {
                        used.remove(&g);
                    }
                }
            }
        }
        false
    }

    /// Vertex matrix `P` over the edge set, in edge order.
    ///
    /// At each marked point, a half-edge later in the clockwise list contributes `+1`
    /// to `P(later, earlier)` and `-1` to `P(earlier, later)`.
    pub fn vertex_matrix(&self) -> Result<AntiSymMatrix> {
        self.incidence()?;
        let names = self.edge_names();
        let mut m = AntiSymMatrix::zero(names);
        for mp in &self.marked_points {
            for (x, ex) in mp.clockwise.iter().enumerate() {
                for ey in &mp.clockwise[x + 1..] {
                    if ex == ey {
                        continue;
                    }
                    let i = m.position(ex)?;
                    let j = m.position(ey)?;
                    m.rows[j][i] += 1;
                    m.rows[i][j] -= 1;
                }
            }
        }
        Ok(m)
    }

    /// Face matrix `Q`; requires every face to be a triangle.
    pub fn face_matrix(&self) -> Result<AntiSymMatrix> {
        if !self.monogon_edges().is_empty() {
            return Err(Error::Invalid(
                "face matrix needs a triangulation without monogons".into(),
            ));
        }
        self.incidence()?;
        let mut m = AntiSymMatrix::zero(self.edge_names());
        for t in &self.triangles {
            for i in 0..3 {
                let a = m.position(&t[i])?;
                let b = m.position(&t[(i + 1) % 3])?;
                m.rows[a][b] += 1;
                m.rows[b][a] -= 1;
            }
        }
        Ok(m)
    }

    /// Muller torus: generators `Delta` with matrix `P`, central generators for unmarked components.
    pub fn muller_torus(&self) -> Result<Arc<Torus>> {
        Torus::new(self.vertex_matrix()?, self.unmarked_names())
    }

    /// Boundary components carrying marked points, as sets of boundary edges.
    pub fn marked_boundary_components(&self) -> Result<Vec<Vec<String>>> {
        let inc = self.incidence()?;
        let n = self.marked_points.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            if e.kind == EdgeKind::Boundary {
                let s = &inc.ends[&e.name];
                let (a, b) = (find(&mut parent, s[0].0), find(&mut parent, s[1].0));
                parent[a] = b;
            }
        }
        let mut comps: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for e in &self.edges {
            if e.kind == EdgeKind::Boundary {
                let r = find(&mut parent, inc.ends[&e.name][0].0);
                comps.entry(r).or_default().push(e.name.clone());
            }
        }
        Ok(comps.into_values().collect())
    }

    /// Indicator vectors `k_beta` of the marked boundary components over the edge order.
    pub fn boundary_kernel_vectors(&self) -> Result<Vec<Vec<i64>>> {
        let names = self.edge_names();
        Ok(self
            .marked_boundary_components()?
            .iter()
            .map(|comp| names.iter().map(|n| i64::from(comp.contains(n))).collect())
            .collect())
    }

    /// Equality up to list order and triangle rotation.
    pub fn same_as(&self, o: &Self) -> bool {
        self.canonical_form() == o.canonical_form()
    }

    fn canonical_form(&self) -> String {
        let mut c = self.clone();
        c.name.clear();
        c.edges.sort_by(|a, b| a.name.cmp(&b.name));
        c.marked_points.sort_by(|a, b| a.name.cmp(&b.name));
        for t in c.triangles.iter_mut() {
            let r = (0..3).min_by_key(|&i| t[i].clone()).unwrap_or(0);
            t.rotate_left(r);
        }
        c.triangles.sort();
        c.unmarked.sort_by(|a, b| a.name.cmp(&b.name));
        c.star_partners.clear();
        serde_json::to_string(&c).expect("serializable")
    }
}
