use std::fmt;
use std::sync::Arc;

use super::laurent::LaurentScalar;
use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact quotient of integer polynomials (coefficients low to high) by a monic divisor.
fn poly_div_monic(a: &[i64], d: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let dl = d.len();
    let mut q = vec![0i64; rem.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1];
        q[i] = c;
        for (j, &dj) in d.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// The `m`-th cyclotomic polynomial, coefficients from degree 0 upward.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Specialization of `t` to a primitive `m`-th root of unity.
///
/// Arithmetic happens in `Z[t]/(Phi_m)`; `pow_table[k]` holds the residue of `t^k`.
pub struct CycContext {
    m: u64,
    phi: Vec<i64>,
    pow_table: Vec<Vec<i64>>,
    ord_xi: u64,
    n: u64,
    epsilon_exp: u64,
}

impl CycContext {
    pub fn new(m: u64) -> Result<Arc<Self>> {
        if m == 0 {
            return Err(Error::Invalid("root order m must be positive".into()));
        }
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        let mut pow_table = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..m {
            pow_table.push(cur.clone());
            // multiply by t and reduce the overflow coefficient with phi
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..(deg - 1)]);
            for (j, nj) in next.iter_mut().enumerate() {
                *nj -= top * phi[j];
            }
            cur = next;
        }
        let ord_xi = m / gcd(m, 2);
        let n = m / gcd(m, 8);
        let epsilon_exp = (2 * n * n) % m;
        Ok(Arc::new(Self {
            m,
            phi,
            pow_table,
            ord_xi,
            n,
            epsilon_exp,
        }))
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of the cyclotomic polynomial, lowest degree first.
    pub fn reduction(&self) -> &[i64] {
        &self.phi
    }

    /// Order of `xi = t^2`.
    pub fn ord_xi(&self) -> u64 {
        self.ord_xi
    }

    /// `N = ord(xi^4)`.
    pub fn big_n(&self) -> u64 {
        self.n
    }

    /// Exponent `e` with `epsilon = t^e`.
    pub fn epsilon_exp(&self) -> u64 {
        self.epsilon_exp
    }

    /// Order of `t^k` as a root of unity.
    pub fn order_of_t_power(&self, k: i64) -> u64 {
        let k = k.rem_euclid(self.m as i64) as u64;
        self.m / gcd(self.m, k)
    }

    pub(crate) fn t_power(&self, e: i64) -> &[i64] {
        &self.pow_table[e.rem_euclid(self.m as i64) as usize]
    }

    fn reduce_wide(&self, wide: &[i64]) -> Vec<i64> {
        let deg = self.degree();
        let mut out = vec![0i64; deg];
        for (k, &c) in wide.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if k < deg {
                out[k] += c;
            } else {
                for (o, &p) in out.iter_mut().zip(self.t_power(k as i64)) {
                    *o += c * p;
                }
            }
        }
        out
    }
}

impl PartialEq for CycContext {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m
    }
}

impl Eq for CycContext {}

impl fmt::Debug for CycContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycContext")
            .field("m", &self.m)
            .field("ord_xi", &self.ord_xi)
            .field("N", &self.n)
            .field("epsilon_exp", &self.epsilon_exp)
            .finish()
    }
}

/// Residue class in `Z[t]/(Phi_m)`.
#[derive(Clone)]
pub struct CycScalar {
    ctx: Arc<CycContext>,
    res: Vec<i64>,
}

impl CycScalar {
    pub fn zero(ctx: &Arc<CycContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            res: vec![0; ctx.degree()],
        }
    }

    pub fn int(ctx: &Arc<CycContext>, c: i64) -> Self {
        Self::t_pow(ctx, 0).scale(c)
    }

    pub fn t_pow(ctx: &Arc<CycContext>, e: i64) -> Self {
        Self {
            ctx: ctx.clone(),
            res: ctx.t_power(e).to_vec(),
        }
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn residue(&self) -> &[i64] {
        &self.res
    }

    pub fn is_zero(&self) -> bool {
        self.res.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            res: self.res.iter().zip(&o.res).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            ctx: self.ctx.clone(),
            res: self.res.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let deg = self.ctx.degree();
        let mut wide = vec![0i64; 2 * deg];
        for (i, &a) in self.res.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.res.iter().enumerate() {
                wide[i + j] += a * b;
            }
        }
        Self {
            ctx: self.ctx.clone(),
            res: self.ctx.reduce_wide(&wide),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::int(&self.ctx, 1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        self.mul(&Self::t_pow(&self.ctx, e))
    }

    /// Image under `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (k, &c) in self.res.iter().enumerate() {
            if c != 0 {
                out = out.add(&Self::t_pow(&self.ctx, -(k as i64)).scale(c));
            }
        }
        out
    }

    /// `Some((c, e))` when the value equals `c * t^e` with `c = ±1`.
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        for e in 0..self.ctx.m as i64 {
            let p = self.ctx.t_power(e);
            if p == self.res.as_slice() {
                return Some((1, e));
            }
            if p.iter().zip(&self.res).all(|(a, b)| *a == -*b) {
                return Some((-1, e));
            }
        }
        None
    }

    /// Canonical text of the reduced residue as a polynomial in `t`.
    pub fn canonical(&self) -> String {
        LaurentScalar::from_terms(self.res.iter().enumerate().map(|(k, &c)| (k as i64, c))).canonical()
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, o: &Self) -> bool {
        self.ctx.m == o.ctx.m && self.res == o.res
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}({})", self.ctx.m, self.canonical())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Builds the root-of-unity context for `t` of order `m`.
pub fn root_data(m: u64) -> Result<Arc<CycContext>> {
    CycContext::new(m)
}

/// Image of `a` under `t -> zeta_m`.
pub fn specialize(a: &LaurentScalar, ctx: &Arc<CycContext>) -> CycScalar {
    let mut res = vec![0i64; ctx.degree()];
    for (e, c) in a.terms() {
        for (r, &p) in res.iter_mut().zip(ctx.t_power(e)) {
            *r += c * p;
        }
    }
    CycScalar { ctx: ctx.clone(), res }
}
