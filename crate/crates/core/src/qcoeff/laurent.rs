use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Laurent polynomial in `t = q^{1/2}` with integer coefficients.
///
/// Exponents count powers of `t`, so `q^k` is stored at exponent `2k`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, i64>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `q^k = t^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, 2 * k)
    }

    pub fn t_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (k + e, c)).collect(),
        }
    }

    /// Substitute `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `Some((c, e))` when the value is the single term `c * t^e`.
    pub fn as_monomial(&self) -> Option<(i64, i64)> {
        if self.terms.len() == 1 {
            let (&e, &c) = self.terms.iter().next()?;
            Some((c, e))
        } else {
            None
        }
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Exact quotient `self / d`, failing if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (la, a) = self.to_poly();
        let (ld, dv) = d.to_poly();
        let lead = *dv.last().unwrap();
        let mut rem = a;
        if rem.len() < dv.len() {
            return Err(Error::InexactDivision(format!("{self} / {d}")));
        }
        let mut quot = vec![0i64; rem.len() - dv.len() + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dv.len() - 1];
            if top % lead != 0 {
                return Err(Error::InexactDivision(format!("{self} / {d}")));
            }
            let c = top / lead;
            quot[i] = c;
            for (j, &dj) in dv.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
        if rem.iter().any(|&r| r != 0) {
            return Err(Error::InexactDivision(format!("{self} / {d}")));
        }
        Ok(Self::from_terms(
            quot.into_iter().enumerate().map(|(i, c)| (i as i64 + la - ld, c)),
        ))
    }

    fn to_poly(&self) -> (i64, Vec<i64>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![0i64; (hi - lo + 1) as usize];
        for (&e, &c) in &self.terms {
            v[(e - lo) as usize] = c;
        }
        (lo, v)
    }

    /// Canonical text: `c*t^k` terms joined by `+`, ascending in `k`; `0` when empty.
    pub fn canonical(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| format!("{c}*t^{e}"))
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Inverse of [`LaurentScalar::canonical`].
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Invalid(format!("bad Laurent string `{s}`"));
        let mut out = Self::zero();
        for part in split_terms(s) {
            let (c, e) = part.split_once("*t^").ok_or_else(bad)?;
            let c: i64 = c.trim().parse().map_err(|_| bad())?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

// Splits on `+` separators while keeping a `+` that follows `^` as part of an exponent.
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut parts = Vec::new();
    let mut start = 0;
    for i in 0..bytes.len() {
        if bytes[i] == b'+' && i > start && bytes[i - 1] != b'^' {
            parts.push(&s[start..i]);
            start = i + 1;
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({})", self.canonical())
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, o: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, o: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, o: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(-1)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, o: LaurentScalar) -> LaurentScalar { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        self.scale(-1)
    }
}
