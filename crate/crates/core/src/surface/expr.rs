use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qcoeff::LaurentScalar;
use crate::qtorus::{SymElement, Torus};

/// Expression over named generators of a source algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(String),
    Inv(String),
    Scalar(LaurentScalar),
    /// Weyl-normalized product `[x_1^{e_1} ... x_n^{e_n}]` of source generators.
    Weyl(Vec<(String, i64)>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn gen(name: &str) -> Self {
        Self::Gen(name.to_string())
    }

    pub fn weyl(word: &[(&str, i64)]) -> Self {
        Self::Weyl(word.iter().map(|(g, e)| (g.to_string(), *e)).collect())
    }

    pub fn t_pow(e: i64) -> Self {
        Self::Scalar(LaurentScalar::t_pow(e))
    }
}

/// Algebra map given by generator images in a target torus.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    /// Source torus whose pairing normalizes `Expr::Weyl` words.
    pub source: Arc<Torus>,
    pub target: Arc<Torus>,
    pub images: BTreeMap<String, SymElement>,
    pub forbidden_inverses: BTreeSet<String>,
}

impl GeneratorMap {
    /// Identity on every generator of `torus`.
    pub fn identity(torus: &Arc<Torus>) -> Result<Self> {
        let mut images = BTreeMap::new();
        for g in torus.names() {
            images.insert(g.clone(), SymElement::generator(torus, &(), g)?);
        }
        Ok(Self {
            source: torus.clone(),
            target: torus.clone(),
            images,
            forbidden_inverses: BTreeSet::new(),
        })
    }

    pub fn image(&self, g: &str) -> Result<&SymElement> {
        self.images.get(g).ok_or_else(|| Error::UnknownName(g.to_string()))
    }

    fn power(&self, g: &str, e: i64) -> Result<SymElement> {
        if e >= 0 {
            return Ok(self.image(g)?.pow(e as u32));
        }
        if self.forbidden_inverses.contains(g) {
            return Err(Error::NotInvertible(format!("inverse of `{g}` is not allowed here")));
        }
        let inv = self.image(g)?.inverse()?;
        Ok(inv.pow((-e) as u32))
    }

    pub fn eval(&self, expr: &Expr) -> Result<SymElement> {
        match expr {
            Expr::Gen(g) => Ok(self.image(g)?.clone()),
            Expr::Inv(g) => self.power(g, -1),
            Expr::Scalar(c) => Ok(SymElement::scalar(&self.target, &(), c.clone())),
            Expr::Weyl(word) => {
                let mut keys = Vec::with_capacity(word.len());
                for (g, e) in word {
                    let mut k = self.source.unit_vector(g)?;
                    k.iter_mut().for_each(|x| *x *= e);
                    keys.push(k);
                }
                let mut corr = 0;
                for i in 0..keys.len() {
                    for j in i + 1..keys.len() {
                        corr += self.source.pairing(&keys[i], &keys[j]);
                    }
                }
                let mut out = SymElement::one(&self.target, &());
                for (g, e) in word {
                    out = out.try_mul(&self.power(g, *e)?)?;
                }
                Ok(out.shift(-corr))
            }
            Expr::Add(xs) => {
                let mut out = SymElement::zero(&self.target, &());
                for x in xs {
                    out = out.try_add(&self.eval(x)?)?;
                }
                Ok(out)
            }
            Expr::Mul(xs) => {
                let mut out = SymElement::one(&self.target, &());
                for x in xs {
                    out = out.try_mul(&self.eval(x)?)?;
                }
                Ok(out)
            }
            Expr::Pow(x, n) => Ok(self.eval(x)?.pow(*n)),
        }
    }
}

/// Structural evaluation of `expr` under `map`.
pub fn eval_expression(expr: &Expr, map: &GeneratorMap) -> Result<SymElement> {
    map.eval(expr)
}
