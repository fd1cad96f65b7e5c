//! Kauffman bracket state sums of crossing grids in the disk with four marked points.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::cheby::chebyshev_t;
use crate::error::{Error, Result};
use crate::qcoeff::{quantum_binomial, Coeff, CycContext, CycScalar, LaurentScalar, QBase};
use crate::qtorus::{AntiSymMatrix, Torus, TorusElement};

/// Default cap on enumeration nodes.
pub const DEFAULT_BUDGET: u64 = 1 << 25;

/// Generator order of the grid torus.
pub const GRID_GENERATORS: [&str; 6] = ["a", "b", "c", "d", "x", "y"];

/// Clockwise fans of the disk with arcs `a = P1P2`, `b = P2P3`, `c = P3P4`, `d = P4P1`
/// and diagonals `x = P1P3`, `y = P2P4`.
const FANS: [[&str; 3]; 4] = [["d", "x", "a"], ["a", "y", "b"], ["b", "x", "c"], ["c", "y", "d"]];

/// Which family passes over at every crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    X,
    Y,
}

/// `n` parallel copies of `x` crossing `m` parallel copies of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiskGridDiagram {
    pub n: usize,
    pub m: usize,
    pub over: Over,
}

/// Smoothing choice per crossing, row-major over `(i, j)`: `+1` carries weight `q`, `-1` carries `q^-1`.
pub type GridState = Vec<i8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strand {
    X(usize),
    Y(usize),
}

/// Endpoint of a strand at marked point `point` (0..4 for P1..P4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub point: usize,
    /// Index in the clockwise order of ports at `point`.
    pub position: usize,
    pub strand: Strand,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    Loop,
    Arc { ends: [Port; 2], trivial: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedDiagram {
    pub components: Vec<Component>,
    pub loops: usize,
}

impl ResolvedDiagram {
    pub fn has_trivial_arc(&self) -> bool {
        self.components
            .iter()
            .any(|c| matches!(c, Component::Arc { trivial: true, .. }))
    }

    /// Exponent vector over [`GRID_GENERATORS`].
    pub fn arc_counts(&self) -> Vec<i64> {
        let mut k = vec![0; 6];
        for c in &self.components {
            if let Component::Arc { ends, trivial: false } = c {
                k[arc_class(ends[0].point, ends[1].point)] += 1;
            }
        }
        k
    }
}

fn arc_class(p: usize, r: usize) -> usize {
    match (p.min(r), p.max(r)) {
        (0, 1) => 0,
        (1, 2) => 1,
        (2, 3) => 2,
        (0, 3) => 3,
        (0, 2) => 4,
        (1, 3) => 5,
        _ => unreachable!("same-point arcs are trivial"),
    }
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
    /// Marked points of the ports in each root's component, as a bitmask, with a poison bit.
    mask: Vec<u8>,
}

const POISON: u8 = 1 << 4;

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` once a component joins two ports at one marked point.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        let (ma, mb) = (self.mask[ra], self.mask[rb]);
        self.parent[ra] = rb;
        self.mask[rb] = if ma & mb != 0 { ma | mb | POISON } else { ma | mb };
        self.mask[rb] & POISON == 0
    }
}

impl DiskGridDiagram {
    pub fn new(n: usize, m: usize, over: Over) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Invalid("grid sizes must be positive".into()));
        }
        Ok(Self { n, m, over })
    }

    pub fn crossings(&self) -> usize {
        self.n * self.m
    }

    fn node(&self, i: usize, j: usize, h: usize) -> usize {
        4 * (i * self.m + j) + h
    }

    fn port_node(&self, point: usize, copy: usize) -> usize {
        let base = 4 * self.n * self.m;
        match point {
            0 => base + copy,
            2 => base + self.n + copy,
            1 => base + 2 * self.n + copy,
            _ => base + 2 * self.n + self.m + copy,
        }
    }

    /// All ports with their clockwise positions.
    pub fn ports(&self) -> Vec<Port> {
        let (n, m) = (self.n, self.m);
        let mut out = Vec::with_capacity(2 * (n + m));
        for i in 0..n {
            out.push(Port {
                point: 0,
                position: n - 1 - i,
                strand: Strand::X(i),
            });
        }
        for i in 0..n {
            out.push(Port {
                point: 2,
                position: i,
                strand: Strand::X(i),
            });
        }
        for j in 0..m {
            out.push(Port {
                point: 1,
                position: j,
                strand: Strand::Y(j),
            });
        }
        for j in 0..m {
            out.push(Port {
                point: 3,
                position: m - 1 - j,
                strand: Strand::Y(j),
            });
        }
        out
    }

    fn base_forest(&self) -> UnionFind {
        let total = 4 * self.n * self.m + 2 * (self.n + self.m);
        let mut uf = UnionFind {
            parent: (0..total).collect(),
            mask: vec![0; total],
        };
        for p in self.ports() {
            let copy = match p.strand {
                Strand::X(i) | Strand::Y(i) => i,
            };
            uf.mask[self.port_node(p.point, copy)] = 1 << p.point;
        }
        let (n, m) = (self.n, self.m);
        for i in 0..n {
            uf.union(self.port_node(0, i), self.node(i, 0, 0));
            for j in 0..m - 1 {
                uf.union(self.node(i, j, 1), self.node(i, j + 1, 0));
            }
            uf.union(self.node(i, m - 1, 1), self.port_node(2, i));
        }
        for j in 0..m {
            uf.union(self.port_node(1, j), self.node(0, j, 2));
            for i in 0..n - 1 {
                uf.union(self.node(i, j, 3), self.node(i + 1, j, 2));
            }
            uf.union(self.node(n - 1, j, 3), self.port_node(3, j));
        }
        uf
    }

    /// Node pairs joined by smoothing crossing `(i, j)` with sign `s`.
    fn smoothing(&self, i: usize, j: usize, s: i8) -> [(usize, usize); 2] {
        let (xb, xf, yb, yf) = (
            self.node(i, j, 0),
            self.node(i, j, 1),
            self.node(i, j, 2),
            self.node(i, j, 3),
        );
        let bd_type = (s > 0) == (self.over == Over::X);
        if bd_type {
            [(xf, yb), (xb, yf)]
        } else {
            [(xf, yf), (xb, yb)]
        }
    }

    fn height(&self, s: Strand) -> (u8, i64) {
        match (s, self.over) {
            (Strand::X(i), Over::X) | (Strand::Y(i), Over::Y) => (1, -(i as i64)),
            (Strand::X(i), Over::Y) | (Strand::Y(i), Over::X) => (0, -(i as i64)),
        }
    }

    /// Exponent of `t` converting the height-stacked multicurve into its normalized monomial.
    pub fn height_exponent(&self) -> i64 {
        let ports = self.ports();
        let mut s = 0;
        for e in &ports {
            for f in &ports {
                if e.point == f.point && e.position < f.position {
                    s += match self.height(e.strand).cmp(&self.height(f.strand)) {
                        Ordering::Greater => -1,
                        _ => 1,
                    };
                }
            }
        }
        s
    }

    /// Replaces every crossing by its smoothing and traces the components.
    pub fn resolve(&self, state: &[i8]) -> Result<ResolvedDiagram> {
        if state.len() != self.crossings() {
            return Err(Error::Dimension {
                expected: self.crossings(),
                got: state.len(),
            });
        }
        let mut uf = self.base_forest();
        for i in 0..self.n {
            for j in 0..self.m {
                for (a, b) in self.smoothing(i, j, state[i * self.m + j]) {
                    uf.union(a, b);
                }
            }
        }
        Ok(self.components(&mut uf))
    }

    fn components(&self, uf: &mut UnionFind) -> ResolvedDiagram {
        let ports = self.ports();
        let mut by_root: std::collections::BTreeMap<usize, Vec<Port>> = Default::default();
        for p in &ports {
            let copy = match p.strand {
                Strand::X(i) | Strand::Y(i) => i,
            };
            let r = uf.find(self.port_node(p.point, copy));
            by_root.entry(r).or_default().push(*p);
        }
        let mut comps: Vec<Component> = by_root
            .into_values()
            .map(|v| Component::Arc {
                ends: [v[0], v[1]],
                trivial: v[0].point == v[1].point,
            })
            .collect();
        let mut roots = std::collections::BTreeSet::new();
        for x in 0..4 * self.n * self.m {
            roots.insert(uf.find(x));
        }
        let port_roots: std::collections::BTreeSet<usize> = ports
            .iter()
            .map(|p| {
                let copy = match p.strand {
                    Strand::X(i) | Strand::Y(i) => i,
                };
                uf.find(self.port_node(p.point, copy))
            })
            .collect();
        let loops = roots.difference(&port_roots).count();
        comps.extend(std::iter::repeat_n(Component::Loop, loops));
        ResolvedDiagram {
            components: comps,
            loops,
        }
    }

    /// Scalar and exponent vector of one state; `None` when a trivial arc kills it.
    pub fn evaluate_state<C: Coeff>(&self, state: &[i8], ctx: &C::Ctx) -> Result<Option<(C, Vec<i64>)>> {
        let r = self.resolve(state)?;
        if r.has_trivial_arc() {
            return Ok(None);
        }
        Ok(Some((self.state_scalar(state, r.loops, ctx), r.arc_counts())))
    }

    fn state_scalar<C: Coeff>(&self, state: &[i8], loops: usize, ctx: &C::Ctx) -> C {
        let signed: i64 = state.iter().map(|&s| i64::from(s)).sum();
        let lv = C::from_laurent(ctx, &trivial_loop_scalar());
        let mut c = C::t_pow(ctx, 2 * signed + self.height_exponent());
        for _ in 0..loops {
            c = c.mul(&lv);
        }
        c
    }
}

/// `-q^2 - q^-2`.
pub fn trivial_loop_scalar() -> LaurentScalar {
    LaurentScalar::from_terms([(4, -1), (-4, -1)])
}

/// Muller torus on [`GRID_GENERATORS`].
pub fn grid_torus() -> Arc<Torus> {
    let names: Vec<String> = GRID_GENERATORS.iter().map(|s| s.to_string()).collect();
    let mut u = AntiSymMatrix::zero(names);
    for fan in FANS {
        for (x, ex) in fan.iter().enumerate() {
            for ey in &fan[x + 1..] {
                let i = GRID_GENERATORS.iter().position(|g| g == ex).expect("known");
                let j = GRID_GENERATORS.iter().position(|g| g == ey).expect("known");
                u.rows[j][i] += 1;
                u.rows[i][j] -= 1;
            }
        }
    }
    Torus::plain(u)
}

/// Outcome of a grid enumeration.
#[derive(Clone, Debug)]
pub struct GridTotal<C: Coeff> {
    pub total: TorusElement<C>,
    /// States that survive the trivial-arc relation.
    pub surviving: Vec<GridState>,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Sum over all `2^{nm}` smoothings, pruning partial states that already contain a trivial arc.
pub fn grid_total<C: Coeff>(d: &DiskGridDiagram, ctx: &C::Ctx, budget: u64) -> Result<GridTotal<C>> {
    let torus = grid_torus();
    let mut out = GridTotal {
        total: TorusElement::zero(&torus, ctx),
        surviving: Vec::new(),
        nodes: 0,
    };
    let mut state = vec![0i8; d.crossings()];
    dfs(d, ctx, budget, 0, d.base_forest(), &mut state, &mut out)?;
    Ok(out)
}

fn dfs<C: Coeff>(
    d: &DiskGridDiagram,
    ctx: &C::Ctx,
    budget: u64,
    idx: usize,
    uf: UnionFind,
    state: &mut GridState,
    out: &mut GridTotal<C>,
) -> Result<()> {
    out.nodes += 1;
    if out.nodes > budget {
        return Err(Error::Budget(budget));
    }
    if idx == d.crossings() {
        let mut uf = uf;
        let r = d.components(&mut uf);
        let scalar: C = d.state_scalar(state, r.loops, ctx);
        out.total.add_term(r.arc_counts(), scalar);
        out.surviving.push(state.clone());
        return Ok(());
    }
    let (i, j) = (idx / d.m, idx % d.m);
    for s in [1i8, -1] {
        let mut next = uf.clone();
        if d.smoothing(i, j, s).iter().all(|&(a, b)| next.union(a, b)) {
            state[idx] = s;
            dfs(d, ctx, budget, idx + 1, next, state, out)?;
        }
    }
    state[idx] = 0;
    Ok(())
}

/// Unpruned sum over every state; for small grids.
pub fn grid_total_exhaustive<C: Coeff>(d: &DiskGridDiagram, ctx: &C::Ctx) -> Result<TorusElement<C>> {
    let k = d.crossings();
    if k > 20 {
        return Err(Error::Budget(1 << 20));
    }
    let mut total = TorusElement::zero(&grid_torus(), ctx);
    for bits in 0u64..(1 << k) {
        let state: GridState = (0..k).map(|b| if bits >> b & 1 == 1 { -1 } else { 1 }).collect();
        if let Some((c, e)) = d.evaluate_state::<C>(&state, ctx)? {
            total.add_term(e, c);
        }
    }
    Ok(total)
}

/// `q^{-N^2} a^N c^N sum_j qbinom_{q^4}(N, j) q^{2j^2} u^j` with `u = b d a^-1 c^-1`,
/// written in normalized monomials `[a^{N-j} b^j c^{N-j} d^j]`.
pub fn closed_form<C: Coeff>(n: usize, ctx: &C::Ctx) -> TorusElement<C> {
    let torus = grid_torus();
    let mut out = TorusElement::zero(&torus, ctx);
    let n = n as i64;
    for j in 0..=n {
        let coeff = quantum_binomial(n, j as u64, QBase::Q4).shift(-2 * n * n + 4 * j * j);
        out.add_term(vec![n - j, j, n - j, j, 0, 0], C::from_laurent(ctx, &coeff));
    }
    out
}

/// `eps^-1 [a^N c^N] + eps [b^N d^N]` with `eps = xi^{N^2}`.
pub fn corollary_value(ctx: &Arc<CycContext>) -> TorusElement<CycScalar> {
    let n = ctx.big_n() as i64;
    let e = ctx.epsilon_exp() as i64;
    let mut out = TorusElement::zero(&grid_torus(), ctx);
    out.add_term(vec![n, 0, n, 0, 0, 0], CycScalar::t_pow(ctx, -e));
    out.add_term(vec![0, n, 0, n, 0, 0], CycScalar::t_pow(ctx, e));
    out
}

/// Verdict of the over/under comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transparency {
    Transparent,
    Skew,
    Neither,
}

/// Over and under totals of the `N x 1` grid at the context's `N`, with the verdict.
pub fn transparency_check(
    ctx: &Arc<CycContext>,
) -> Result<(Transparency, TorusElement<CycScalar>, TorusElement<CycScalar>)> {
    let n = ctx.big_n() as usize;
    let under = grid_total::<CycScalar>(&DiskGridDiagram::new(n, 1, Over::X)?, ctx, DEFAULT_BUDGET)?.total;
    let over = grid_total::<CycScalar>(&DiskGridDiagram::new(n, 1, Over::Y)?, ctx, DEFAULT_BUDGET)?.total;
    let v = if over == under {
        Transparency::Transparent
    } else if over == under.neg() {
        Transparency::Skew
    } else {
        Transparency::Neither
    };
    Ok((v, over, under))
}

/// Expected verdict from `xi^{2N} = t^{4N}`.
pub fn expected_transparency(ctx: &Arc<CycContext>) -> Transparency {
    let x = CycScalar::t_pow(ctx, 4 * ctx.big_n() as i64);
    if x == CycScalar::int(ctx, 1) {
        Transparency::Transparent
    } else if x == CycScalar::int(ctx, -1) {
        Transparency::Skew
    } else {
        Transparency::Neither
    }
}

/// Checks `T_N(-xi^2 - xi^-2) = -eps^2 - eps^-2` and `eps^4 = 1`.
pub fn trivial_loop_value(ctx: &Arc<CycContext>) -> (bool, bool) {
    let n = ctx.big_n() as u32;
    let z = CycScalar::t_pow(ctx, 4).add(&CycScalar::t_pow(ctx, -4)).neg();
    let lhs = chebyshev_t(n).eval::<CycScalar>(ctx, &z);
    let e = ctx.epsilon_exp() as i64;
    let rhs = CycScalar::t_pow(ctx, 2 * e).add(&CycScalar::t_pow(ctx, -2 * e)).neg();
    (lhs == rhs, CycScalar::t_pow(ctx, 4 * e) == CycScalar::int(ctx, 1))
}
