//! Coefficient rings: Laurent polynomials in `t = q^{1/2}` and their cyclotomic specializations.

mod cyclo;
mod laurent;
mod qint;

use std::fmt::Debug;
use std::sync::Arc;

pub use cyclo::{cyclotomic_polynomial, root_data, specialize, CycContext, CycScalar};
pub use laurent::LaurentScalar;
pub use qint::{quantum_binomial, quantum_binomial_by_division, quantum_integer, quantum_integer_base, QBase};

/// Operation selector for [`laurent_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

/// Ring operation on Laurent scalars; `Neg` ignores `b`.
pub fn laurent_arith(a: &LaurentScalar, b: &LaurentScalar, op: ArithOp) -> LaurentScalar {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Mul => a * b,
        ArithOp::Neg => -a,
    }
}

/// Scalars usable as torus coefficients.
pub trait Coeff: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    type Ctx: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, c: i64) -> Self;
    fn t_pow(ctx: &Self::Ctx, e: i64) -> Self;
    fn from_laurent(ctx: &Self::Ctx, a: &LaurentScalar) -> Self;
    fn context(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiply by `t^e`.
    fn shift(&self, e: i64) -> Self;
    /// Apply `t -> t^{-1}`.
    fn bar(&self) -> Self;
    /// `Some((sign, e))` for `±t^e`.
    fn as_unit(&self) -> Option<(i64, i64)>;
    fn canonical(&self) -> String;

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_int(ctx, 1)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coeff for LaurentScalar {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        LaurentScalar::zero()
    }
    fn from_int(_: &(), c: i64) -> Self {
        LaurentScalar::int(c)
    }
    fn t_pow(_: &(), e: i64) -> Self {
        LaurentScalar::t_pow(e)
    }
    fn from_laurent(_: &(), a: &LaurentScalar) -> Self {
        a.clone()
    }
    fn context(&self) {}
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn shift(&self, e: i64) -> Self {
        LaurentScalar::shift(self, e)
    }
    fn bar(&self) -> Self {
        LaurentScalar::bar(self)
    }
    fn as_unit(&self) -> Option<(i64, i64)> {
        self.as_monomial().filter(|(c, _)| c.abs() == 1)
    }
    fn canonical(&self) -> String {
        LaurentScalar::canonical(self)
    }
}

impl Coeff for CycScalar {
    type Ctx = Arc<CycContext>;

    fn zero(ctx: &Self::Ctx) -> Self {
        CycScalar::zero(ctx)
    }
    fn from_int(ctx: &Self::Ctx, c: i64) -> Self {
        CycScalar::int(ctx, c)
    }
    fn t_pow(ctx: &Self::Ctx, e: i64) -> Self {
        CycScalar::t_pow(ctx, e)
    }
    fn from_laurent(ctx: &Self::Ctx, a: &LaurentScalar) -> Self {
        specialize(a, ctx)
    }
    fn context(&self) -> Self::Ctx {
        CycScalar::context(self).clone()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CycScalar::add(self, o)
    }
    fn neg(&self) -> Self {
        CycScalar::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        CycScalar::mul(self, o)
    }
    fn shift(&self, e: i64) -> Self {
        CycScalar::shift(self, e)
    }
    fn bar(&self) -> Self {
        CycScalar::bar(self)
    }
    fn as_unit(&self) -> Option<(i64, i64)> {
        CycScalar::as_unit(self)
    }
    fn canonical(&self) -> String {
        CycScalar::canonical(self)
    }
}
