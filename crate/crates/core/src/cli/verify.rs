use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::cheby::{chebyshev_t, thread};
use crate::error::{Error, Result};
use crate::qcoeff::{CycContext, LaurentScalar};
use crate::qtorus::{frobenius, gamma_lattice, lattice_contains, weyl_normalize, AntiSymMatrix, SymElement, Torus};
use crate::surface::{center_report, fixture, flip, Quasitriangulation};

/// Scalars a check is evaluated over.
#[derive(Clone, Debug)]
pub enum Scalars {
    Symbolic,
    Root(Arc<CycContext>),
}

impl Scalars {
    pub fn root(m: u64) -> Result<Self> {
        Ok(Self::Root(CycContext::new(m)?))
    }

    /// `ord(xi^4)`, or `None` for symbolic `q`.
    pub fn big_n(&self) -> Option<u64> {
        match self {
            Self::Symbolic => None,
            Self::Root(c) => Some(c.big_n()),
        }
    }

    /// Whether an identity of Frobenius type is predicted to hold at degree `n`.
    pub fn frobenius_expected(&self, n: u32) -> bool {
        n == 1 || self.big_n() == Some(u64::from(n))
    }
}

impl fmt::Display for Scalars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Symbolic => f.write_str("symbolic"),
            Self::Root(c) => write!(f, "m={}", c.m()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub context: String,
    pub status: Status,
    /// Predicted truth value of the identity.
    pub expected: Option<bool>,
    /// Computed truth value of the identity.
    pub computed: Option<bool>,
    pub witness: Option<String>,
    pub detail: Option<String>,
    pub runtime_ms: f64,
}

impl VerificationReport {
    fn verdict(name: &str, s: &Scalars, expected: bool, witness: Option<String>, start: Instant) -> Self {
        let computed = witness.is_none();
        let status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        let witness = match (status, witness) {
            (Status::Fail, None) => Some("identity holds where it was predicted to fail".into()),
            (_, w) => w,
        };
        Self {
            name: name.to_string(),
            context: s.to_string(),
            status,
            expected: Some(expected),
            computed: Some(computed),
            witness,
            detail: None,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn skipped(name: &str, context: &str, why: &str) -> Self {
        Self {
            name: name.to_string(),
            context: context.to_string(),
            status: Status::Skipped,
            expected: None,
            computed: None,
            witness: None,
            detail: Some(why.to_string()),
            runtime_ms: 0.0,
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<7} {} [{}] {:.1} ms",
            format!("{:?}", self.status).to_uppercase(),
            self.name,
            self.context,
            self.runtime_ms
        );
        if let (Some(e), Some(c)) = (self.expected, self.computed) {
            s.push_str(&format!(" expected={e} computed={c}"));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness: {w}"));
        }
        if let Some(d) = &self.detail {
            s.push_str(&format!(" ({d})"));
        }
        s
    }
}

/// First differing term of `lhs - rhs` over the given scalars, or `None` if equal.
pub fn difference_witness(lhs: &SymElement, rhs: &SymElement, s: &Scalars) -> Option<String> {
    let fmt = |(k, a, b): (Vec<i64>, String, String)| format!("X{k:?}: {a} vs {b}");
    match s {
        Scalars::Symbolic => lhs.first_difference(rhs).map(fmt),
        Scalars::Root(ctx) => lhs.specialize(ctx).first_difference(&rhs.specialize(ctx)).map(fmt),
    }
}

fn word_elem(t: &Arc<Torus>, w: &[(&str, i64)]) -> Result<SymElement> {
    weyl_normalize::<LaurentScalar>(w, t, &())
}

/// `alpha = [a^-1 b^-1 c d] + [a b^-1] + [a^-1 b]` in the torus `t` over the annulus edges.
pub fn annulus_alpha(t: &Arc<Torus>) -> Result<SymElement> {
    Ok(word_elem(t, &[("a", -1), ("b", -1), ("c", 1), ("d", 1)])?
        .add(&word_elem(t, &[("a", 1), ("b", -1)])?)
        .add(&word_elem(t, &[("a", -1), ("b", 1)])?))
}

/// `F_N(alpha)` against `T_N(alpha)` in the annulus Muller torus.
pub fn cmd_frobenius_annulus(s: &Scalars, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let ann = fixture("annulus")?;
    let target = ann.muller_torus()?;
    let src = Torus::new(target.matrix().scaled(i64::from(n * n)), target.central().to_vec())?;
    let lhs = frobenius(&annulus_alpha(&src)?, n, &target)?;
    let rhs = thread(&chebyshev_t(n), &annulus_alpha(&target)?)?;
    let w = difference_witness(&lhs, &rhs, s);
    Ok(VerificationReport::verdict(
        &format!("frobenius-annulus N={n}"),
        s,
        s.frobenius_expected(n),
        w,
        start,
    ))
}

/// Two-generator torus with `XY = xi^4 YX`.
pub fn gauss_torus() -> Arc<Torus> {
    Torus::plain(AntiSymMatrix::from_entries(&["X", "Y"], &[("X", "Y", 4)]).expect("static matrix"))
}

/// `(X+Y)^N` against `X^N + Y^N`.
pub fn cmd_gauss_criterion(s: &Scalars, n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let t = gauss_torus();
    let x = SymElement::generator(&t, &(), "X")?;
    let y = SymElement::generator(&t, &(), "Y")?;
    let lhs = x.add(&y).pow(n);
    let rhs = x.pow(n).add(&y.pow(n));
    let w = difference_witness(&lhs, &rhs, s);
    Ok(VerificationReport::verdict(
        &format!("gauss N={n}"),
        s,
        s.frobenius_expected(n),
        w,
        start,
    ))
}

/// `F_N(Theta(x))` against `Theta(F_N(x))` for generator `x` after flipping `edge`.
pub fn cmd_flip_coherence(
    t: &Quasitriangulation,
    edge: &str,
    x: &str,
    s: &Scalars,
    n: u32,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let f = flip(t, edge)?;
    let target = f.target.muller_torus()?;
    let src = Torus::new(target.matrix().scaled(i64::from(n * n)), target.central().to_vec())?;
    let mut theta_src = SymElement::zero(&src, &());
    for w in f.transfer_words(x)? {
        let word: Vec<(&str, i64)> = w.iter().map(|(g, e)| (g.as_str(), *e)).collect();
        theta_src = theta_src.add(&word_elem(&src, &word)?);
    }
    let lhs = frobenius(&theta_src, n, &target)?;
    let rhs = f.transfer_on_generator(x)?.pow(n);
    let w = difference_witness(&lhs, &rhs, s);
    let expected = x != edge || s.frobenius_expected(n);
    Ok(VerificationReport::verdict(
        &format!("flip {}:{edge} x={x} N={n}", t.name),
        s,
        expected,
        w,
        start,
    ))
}

/// Generic mode: `ker P` against the `k_beta`; root mode: `Gamma_N` against brute-force commutation.
pub fn cmd_center(t: &Quasitriangulation, root_n: Option<u64>) -> Result<VerificationReport> {
    let start = Instant::now();
    match root_n {
        None => {
            let r = center_report(t)?;
            let mut rep = VerificationReport::verdict(
                &format!("center {}", t.name),
                &Scalars::Symbolic,
                true,
                (!r.matches()).then(|| format!("ker P = {:?}, k_beta = {:?}", r.kernel, r.boundary_vectors)),
                start,
            );
            rep.detail = Some(format!(
                "nullity={} |H_marked|={} kernel={:?}",
                r.nullity, r.marked_components, r.kernel
            ));
            Ok(rep)
        }
        Some(n) => {
            let p = t.vertex_matrix()?;
            let (ok, basis) = gamma_brute_force(&p, n, 1)?;
            let s = Scalars::root(2 * n)?;
            let mut rep = VerificationReport::verdict(
                &format!("center {} Gamma_{n}", t.name),
                &s,
                true,
                (!ok).then(|| "Gamma_N membership disagrees with commutation".to_string()),
                start,
            );
            rep.detail = Some(format!("basis={basis:?}"));
            Ok(rep)
        }
    }
}

/// Compares `Gamma_N` membership with centrality at `q` of order `N`, over exponents in `[-bound, bound]`.
pub fn gamma_brute_force(u: &AntiSymMatrix, n: u64, bound: i64) -> Result<(bool, Vec<Vec<i64>>)> {
    let basis = gamma_lattice(u, n)?;
    let ctx = CycContext::new(2 * n)?;
    let t = Torus::plain(u.clone());
    let d = u.len();
    let gens: Vec<_> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            SymElement::monomial(&t, &(), e).map(|g| g.specialize(&ctx))
        })
        .collect::<Result<_>>()?;
    let mut k = vec![-bound; d];
    loop {
        let x = SymElement::monomial(&t, &(), k.clone())?.specialize(&ctx);
        let central = gens.iter().all(|g| x.mul(g) == g.mul(&x));
        if central != lattice_contains(&basis, &k) {
            return Ok((false, basis));
        }
        let mut i = 0;
        while i < d && k[i] == bound {
            k[i] = -bound;
            i += 1;
        }
        if i == d {
            return Ok((true, basis));
        }
        k[i] += 1;
    }
}
