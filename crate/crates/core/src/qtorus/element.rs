use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::matrix::Torus;
use crate::error::{Error, Result};
use crate::qcoeff::{Coeff, CycContext, CycScalar, LaurentScalar};

/// Finite combination of normalized monomials `X^k` with coefficients in `C`.
#[derive(Clone)]
pub struct TorusElement<C: Coeff> {
    torus: Arc<Torus>,
    ctx: C::Ctx,
    terms: BTreeMap<Vec<i64>, C>,
}

/// Element over `Z[t, 1/t]`.
pub type SymElement = TorusElement<LaurentScalar>;
/// Element over a cyclotomic specialization.
pub type CycElement = TorusElement<CycScalar>;

impl<C: Coeff> PartialEq for TorusElement<C> {
    fn eq(&self, o: &Self) -> bool {
        *self.torus == *o.torus && self.terms == o.terms
    }
}

impl<C: Coeff> Eq for TorusElement<C> {}

impl<C: Coeff> fmt::Debug for TorusElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<C: Coeff> TorusElement<C> {
    pub fn zero(torus: &Arc<Torus>, ctx: &C::Ctx) -> Self {
        Self {
            torus: torus.clone(),
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(torus: &Arc<Torus>, ctx: &C::Ctx, c: C) -> Self {
        let mut out = Self::zero(torus, ctx);
        out.add_term(vec![0; torus.dim()], c);
        out
    }

    pub fn one(torus: &Arc<Torus>, ctx: &C::Ctx) -> Self {
        Self::scalar(torus, ctx, C::one(ctx))
    }

    /// The normalized monomial `X^k`.
    pub fn monomial(torus: &Arc<Torus>, ctx: &C::Ctx, k: Vec<i64>) -> Result<Self> {
        torus.check_exponent(&k)?;
        let mut out = Self::zero(torus, ctx);
        out.terms.insert(k, C::one(ctx));
        Ok(out)
    }

    /// Normalized monomial from `(generator, exponent)` pairs.
    pub fn word(torus: &Arc<Torus>, ctx: &C::Ctx, word: &[(&str, i64)]) -> Result<Self> {
        Self::monomial(torus, ctx, torus.exponent(word)?)
    }

    pub fn generator(torus: &Arc<Torus>, ctx: &C::Ctx, name: &str) -> Result<Self> {
        Self::monomial(torus, ctx, torus.unit_vector(name)?)
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &[i64]) -> C {
        self.terms.get(k).cloned().unwrap_or_else(|| C::zero(&self.ctx))
    }

    pub fn add_term(&mut self, k: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                let s = slot.add(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn same_torus(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.torus, &o.torus) || *self.torus == *o.torus {
            Ok(())
        } else {
            Err(Error::TorusMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_torus(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Product under `X^k X^n = t^{<k,n>} X^{k+n}`.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_torus(o)?;
        let mut out = Self::zero(&self.torus, &self.ctx);
        for (k, a) in &self.terms {
            for (n, b) in &o.terms {
                let e = self.torus.pairing(k, n);
                let key: Vec<i64> = k.iter().zip(n).map(|(x, y)| x + y).collect();
                out.add_term(key, a.mul(b).shift(e));
            }
        }
        Ok(out)
    }

    /// # Panics
    /// If the operands live in different tori.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("torus mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// # Panics
    /// If the operands live in different tori.
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("torus mismatch")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs_same(|c| c.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map_coeffs_same(|c| c.mul(s))
    }

    /// Multiply every coefficient by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        self.map_coeffs_same(|c| c.shift(e))
    }

    fn map_coeffs_same(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(&self.torus, &self.ctx);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Nonnegative power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.torus, &self.ctx);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `Some((k, c))` if the element is `c X^k`.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Inverse of `±t^e X^k`.
    pub fn inverse(&self) -> Result<Self> {
        let (k, c) = self.as_monomial().ok_or_else(|| Error::NotInvertible(self.to_text()))?;
        let (s, e) = c.as_unit().ok_or_else(|| Error::NotInvertible(self.to_text()))?;
        if (self.torus.rank()..self.torus.dim()).any(|i| k[i] != 0) {
            return Err(Error::NotInvertible(self.to_text()));
        }
        let neg: Vec<i64> = k.iter().map(|x| -x).collect();
        let mut out = Self::zero(&self.torus, &self.ctx);
        out.add_term(neg, C::from_int(&self.ctx, s).shift(-e));
        Ok(out)
    }

    /// Integer power; negative powers need an invertible monomial.
    pub fn torus_pow(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        if self.as_monomial().is_none() {
            return Err(Error::NotInvertible(self.to_text()));
        }
        Ok(self.inverse()?.pow((-n) as u32))
    }

    /// Sum of monomials with the given scalar map applied to every coefficient.
    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> TorusElement<D> {
        let mut out = TorusElement::<D>::zero(&self.torus, ctx);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Same coefficients on another torus with identical exponent layout.
    pub fn retarget(&self, torus: &Arc<Torus>) -> Result<Self> {
        if torus.dim() != self.torus.dim() {
            return Err(Error::Dimension {
                expected: torus.dim(),
                got: self.torus.dim(),
            });
        }
        Ok(Self {
            torus: torus.clone(),
            ctx: self.ctx.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Apply `k -> f(k)` to every exponent; colliding images add.
    pub fn map_exponents(&self, torus: &Arc<Torus>, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Self> {
        let mut out = Self::zero(torus, &self.ctx);
        for (k, c) in &self.terms {
            let nk = f(k);
            torus.check_exponent(&nk)?;
            out.add_term(nk, c.clone());
        }
        Ok(out)
    }

    /// Human-readable form, `coeff*X[exp]` terms joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| format!("({})*X{:?}", c.canonical(), k))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Canonical JSON `{terms: [{exp, h, coeff}]}` sorted by exponent.
    pub fn to_json(&self) -> Value {
        let r = self.torus.rank();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!({"exp": &k[..r], "h": &k[r..], "coeff": c.canonical()}))
            .collect();
        json!({ "terms": terms })
    }

    /// First monomial where `self` and `o` differ, as `(exponent, self coeff, other coeff)`.
    pub fn first_difference(&self, o: &Self) -> Option<(Vec<i64>, String, String)> {
        let diff = self.sub(o);
        diff.terms
            .keys()
            .next()
            .map(|k| (k.clone(), self.coeff(k).canonical(), o.coeff(k).canonical()))
    }
}

impl SymElement {
    /// Parse the canonical JSON form.
    pub fn from_json(torus: &Arc<Torus>, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `terms` array"))?;
        let mut out = Self::zero(torus, &());
        for t in terms {
            let mut k: Vec<i64> = serde_json::from_value(t.get("exp").cloned().unwrap_or_default())?;
            let h: Vec<i64> = match t.get("h") {
                Some(h) => serde_json::from_value(h.clone())?,
                None => vec![0; torus.central().len()],
            };
            k.extend(h);
            torus.check_exponent(&k)?;
            let c = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without `coeff` string"))?;
            out.add_term(k, LaurentScalar::parse(c)?);
        }
        Ok(out)
    }

    /// Image under `t -> zeta_m`.
    pub fn specialize(&self, ctx: &Arc<CycContext>) -> CycElement {
        self.map_coeffs(ctx, |c| crate::qcoeff::specialize(c, ctx))
    }
}

/// Checked product of two elements.
pub fn torus_mul<C: Coeff>(x: &TorusElement<C>, y: &TorusElement<C>) -> Result<TorusElement<C>> {
    x.try_mul(y)
}

/// `x^n` for a single monomial `x`; nonnegative powers of sums are also accepted.
pub fn torus_pow<C: Coeff>(x: &TorusElement<C>, n: i64) -> Result<TorusElement<C>> {
    x.torus_pow(n)
}

/// Weyl normalization of a product of pairwise q-commuting monomial elements.
///
/// Returns `t^{-sum_{i<j} <k_i, k_j>} x_1 ... x_n`, which is independent of the order.
pub fn weyl_product<C: Coeff>(factors: &[TorusElement<C>]) -> Result<TorusElement<C>> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Invalid("empty Weyl product".into()))?;
    let mut keys = Vec::with_capacity(factors.len());
    for f in factors {
        let (k, _) = f
            .as_monomial()
            .ok_or_else(|| Error::Invalid("Weyl normalization needs monomial factors".into()))?;
        keys.push(k.clone());
    }
    let mut corr = 0;
    for i in 0..keys.len() {
        for j in (i + 1)..keys.len() {
            corr += first.torus().pairing(&keys[i], &keys[j]);
        }
    }
    let mut prod = TorusElement::one(first.torus(), first.ctx());
    for f in factors {
        prod = prod.try_mul(f)?;
    }
    Ok(prod.shift(-corr))
}

/// Weyl normalization `[x_1 ... x_n]` of a generator word.
pub fn weyl_normalize<C: Coeff>(word: &[(&str, i64)], torus: &Arc<Torus>, ctx: &C::Ctx) -> Result<TorusElement<C>> {
    let mut factors = Vec::with_capacity(word.len());
    for &(g, e) in word {
        if e == 0 {
            return Err(Error::Invalid("generator word with zero exponent".into()));
        }
        factors.push(TorusElement::word(torus, ctx, &[(g, e)])?);
    }
    weyl_product(&factors)
}

/// Reflection anti-involution: `t -> 1/t` on coefficients, monomials fixed.
pub fn reflection<C: Coeff>(x: &TorusElement<C>) -> TorusElement<C> {
    x.map_coeffs(x.ctx(), |c| c.bar())
}

/// Frobenius map `X^k -> X^{pk}` from the torus of `p^2 U` to the torus of `U`.
///
/// Central exponents are coefficients and pass through unchanged.
pub fn frobenius<C: Coeff>(x: &TorusElement<C>, p: u32, target: &Arc<Torus>) -> Result<TorusElement<C>> {
    if p == 0 {
        return Err(Error::Invalid("Frobenius degree must be positive".into()));
    }
    let src = x.torus();
    let p = p as i64;
    if src.central() != target.central()
        || src.matrix().index != target.matrix().index
        || *src.matrix() != target.matrix().scaled(p * p)
    {
        return Err(Error::Invalid(
            "source torus matrix must be p^2 times the target matrix".into(),
        ));
    }
    let r = target.rank();
    x.map_exponents(target, |k| {
        k.iter()
            .enumerate()
            .map(|(i, &e)| if i < r { p * e } else { e })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::AntiSymMatrix;

    fn torus_xy(u: i64) -> Arc<Torus> {
        Torus::plain(AntiSymMatrix::from_entries(&["X", "Y"], &[("X", "Y", u)]).unwrap())
    }

    #[test]
    fn inverse_monomial() {
        let t = torus_xy(3);
        let x = SymElement::word(&t, &(), &[("X", 2), ("Y", -1)]).unwrap();
        let inv = torus_pow(&x, -1).unwrap();
        assert_eq!(x.mul(&inv), SymElement::one(&t, &()));
    }

    #[test]
    fn two_letter_weyl_word() {
        let t = torus_xy(2);
        let w: SymElement = weyl_normalize(&[("X", 1), ("Y", 1)], &t, &()).unwrap();
        assert_eq!(w, SymElement::word(&t, &(), &[("X", 1), ("Y", 1)]).unwrap());
        let x = SymElement::generator(&t, &(), "X").unwrap();
        let y = SymElement::generator(&t, &(), "Y").unwrap();
        // XY = q [XY] when XY = q^2 YX
        assert_eq!(x.mul(&y), w.scale(&LaurentScalar::q_pow(1)));
    }

    #[test]
    fn commutation_rule() {
        let t = torus_xy(4);
        let x = SymElement::generator(&t, &(), "X").unwrap();
        let y = SymElement::generator(&t, &(), "Y").unwrap();
        assert_eq!(x.mul(&y), y.mul(&x).scale(&LaurentScalar::q_pow(4)));
    }

    #[test]
    fn json_roundtrip() {
        let t = torus_xy(1);
        let x = SymElement::word(&t, &(), &[("X", 1), ("Y", -2)]).unwrap();
        let e = x.add(&SymElement::one(&t, &()).scale(&LaurentScalar::q_pow(1)));
        assert_eq!(SymElement::from_json(&t, &e.to_json()).unwrap(), e);
    }
}
