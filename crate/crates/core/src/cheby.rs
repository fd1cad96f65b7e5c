//! Chebyshev polynomials of the first kind, the generalized DeMoivre expansion and threading.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qcoeff::{quantum_binomial, quantum_integer, Coeff, LaurentScalar, QBase};
use crate::qtorus::{AntiSymMatrix, SymElement, Torus, TorusElement};

/// Integer (Laurent) polynomial in one variable `z`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: BTreeMap<i64, i64>,
}

impl IntPolynomial {
    pub fn from_coeffs<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut p = Self::default();
        for (d, c) in it {
            p.add_term(d, c);
        }
        p
    }

    /// `z^d`.
    pub fn monomial(d: i64) -> Self {
        Self::from_coeffs([(d, 1)])
    }

    fn add_term(&mut self, d: i64, c: i64) {
        let e = self.coeffs.entry(d).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&d);
        }
    }

    pub fn coeff(&self, d: i64) -> i64 {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn times_z_minus(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (d, c) in self.terms() {
            out.add_term(d + 1, c);
        }
        for (d, c) in other.terms() {
            out.add_term(d, -c);
        }
        out
    }

    /// Evaluate at a scalar.
    pub fn eval<C: Coeff>(&self, ctx: &C::Ctx, z: &C) -> C {
        let mut acc = C::zero(ctx);
        for (d, c) in self.terms() {
            assert!(d >= 0, "negative degree in scalar evaluation");
            let mut p = C::from_int(ctx, c);
            for _ in 0..d {
                p = p.mul(z);
            }
            acc = acc.add(&p);
        }
        acc
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.terms().map(|(d, c)| format!("{c}*z^{d}")).collect();
        write!(f, "{}", if s.is_empty() { "0".into() } else { s.join("+") })
    }
}

/// `T_n` with `T_0 = 2`, `T_1 = z`, `T_n = z T_{n-1} - T_{n-2}`.
pub fn chebyshev_t(n: u32) -> IntPolynomial {
    let mut prev = IntPolynomial::from_coeffs([(0, 2)]);
    if n == 0 {
        return prev;
    }
    let mut cur = IntPolynomial::monomial(1);
    for _ in 1..n {
        let next = cur.times_z_minus(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Threading `sum c_i x^i` evaluated in the torus.
pub fn thread<C: Coeff>(p: &IntPolynomial, x: &TorusElement<C>) -> Result<TorusElement<C>> {
    let mut acc = TorusElement::zero(x.torus(), x.ctx());
    for (d, c) in p.terms() {
        let pw = if d < 0 {
            if x.as_monomial().is_none() {
                return Err(Error::NotInvertible("negative power of a non-monomial element".into()));
            }
            x.torus_pow(d)?
        } else {
            x.pow(d as u32)
        };
        acc = acc.add(&pw.scale(&C::from_int(x.ctx(), c)));
    }
    Ok(acc)
}

/// Checks `T_n(X + X^{-1}) = X^n + X^{-n}` for the generator `name` of `torus`.
pub fn demoivre_check(n: u32, torus: &Arc<Torus>, name: &str) -> Result<bool> {
    let x = SymElement::generator(torus, &(), name)?;
    let xi = x.torus_pow(-1)?;
    let lhs = thread(&chebyshev_t(n), &x.add(&xi))?;
    let rhs = x.torus_pow(n as i64)?.add(&x.torus_pow(-(n as i64))?);
    Ok(lhs == rhs)
}

/// `c(n,r,j) = ([n]/[r]) qbinom(n-j-1, r-1) qbinom(r+j-1, r-1)`.
pub fn cnrj(n: u32, r: u32, j: u32) -> Result<LaurentScalar> {
    if r < 1 || r >= n || j > n - r {
        return Err(Error::Invalid(format!(
            "c(n,r,j) needs 1 <= r <= n-1 and 0 <= j <= n-r, got ({n},{r},{j})"
        )));
    }
    let (n, r, j) = (n as i64, r as i64, j as i64);
    let num = &(&quantum_integer(n) * &quantum_binomial(n - j - 1, (r - 1) as u64, QBase::Q))
        * &quantum_binomial(r + j - 1, (r - 1) as u64, QBase::Q);
    num.exact_div(&quantum_integer(r))
}

/// Two-generator torus on `K, E` with `KE = q^2 EK`.
pub fn torus_ke() -> Arc<Torus> {
    Torus::plain(AntiSymMatrix::from_entries(&["K", "E"], &[("K", "E", 2)]).expect("static matrix"))
}

/// Closed form of `T_n(K + K^{-1} + E)`.
pub fn generalized_demoivre(n: u32) -> Result<SymElement> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let t = torus_ke();
    let ni = n as i64;
    let mut out = SymElement::word(&t, &(), &[("K", ni)])?
        .add(&SymElement::word(&t, &(), &[("K", -ni)])?)
        .add(&SymElement::word(&t, &(), &[("E", ni)])?);
    for r in 1..n {
        for j in 0..=(n - r) {
            let c = cnrj(n, r, j)?;
            let k = ni - 2 * j as i64 - r as i64;
            out = out.add(&SymElement::word(&t, &(), &[("E", r as i64), ("K", k)])?.scale(&c));
        }
    }
    Ok(out)
}

/// Direct evaluation `T_n(K + K^{-1} + E)` in the `K, E` torus.
pub fn chebyshev_of_ke(n: u32) -> Result<SymElement> {
    let t = torus_ke();
    let z = SymElement::word(&t, &(), &[("K", 1)])?
        .add(&SymElement::word(&t, &(), &[("K", -1)])?)
        .add(&SymElement::word(&t, &(), &[("E", 1)])?);
    thread(&chebyshev_t(n), &z)
}
