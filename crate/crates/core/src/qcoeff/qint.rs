use super::laurent::LaurentScalar;
use crate::error::Result;

/// Variable in which quantum integers and binomials are formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBase {
    /// Balanced integers `[n]_q = (q^n - q^{-n})/(q - q^{-1})`.
    Q,
    /// Gaussian integers in `Q = q^4`, `[n]_Q = 1 + Q + ... + Q^{n-1}`.
    Q4,
}

const Q4_STEP: i64 = 8;

/// Balanced quantum integer `[n]_q`, as a geometric sum.
pub fn quantum_integer(n: i64) -> LaurentScalar {
    if n < 0 {
        return -quantum_integer(-n);
    }
    LaurentScalar::from_terms((0..n).map(|k| (2 * (n - 1 - 2 * k), 1)))
}

/// Quantum integer in the chosen base.
pub fn quantum_integer_base(n: i64, base: QBase) -> LaurentScalar {
    match base {
        QBase::Q => quantum_integer(n),
        QBase::Q4 => {
            if n >= 0 {
                LaurentScalar::from_terms((0..n).map(|k| (Q4_STEP * k, 1)))
            } else {
                // (1 - Q^n)/(1 - Q) for n < 0 equals -(Q^{-1} + ... + Q^{n})
                LaurentScalar::from_terms((1..=-n).map(|k| (-Q4_STEP * k, -1)))
            }
        }
    }
}

/// Quantum binomial via the q-Pascal recurrence.
///
/// With [`QBase::Q`] this is the balanced binomial `prod [n-j+1]_q/[j]_q`; with
/// [`QBase::Q4`] it is the Gaussian binomial in `Q = q^4`.
pub fn quantum_binomial(n: i64, k: u64, base: QBase) -> LaurentScalar {
    let k_i = k as i64;
    if k == 0 {
        return LaurentScalar::one();
    }
    if n < 0 {
        let pos = quantum_binomial(n.abs() + k_i - 1, k, base);
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        return match base {
            QBase::Q => pos.scale(sign),
            QBase::Q4 => {
                let m = -n;
                pos.scale(sign).shift(-Q4_STEP * (m * k_i + k_i * (k_i - 1) / 2))
            }
        };
    }
    if k_i > n {
        return LaurentScalar::zero();
    }
    let n_us = n as usize;
    let mut row = vec![LaurentScalar::one()];
    for r in 1..=n_us {
        let mut next = vec![LaurentScalar::zero(); r + 1];
        for j in 0..=r {
            let ji = j as i64;
            let ri = r as i64;
            let keep = if j < r { row[j].clone() } else { LaurentScalar::zero() };
            let down = if j > 0 {
                row[j - 1].clone()
            } else {
                LaurentScalar::zero()
            };
            next[j] = match base {
                QBase::Q => &keep.shift(-2 * ji) + &down.shift(2 * (ri - ji)),
                QBase::Q4 => &down + &keep.shift(Q4_STEP * ji),
            };
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// Quantum binomial as a product of ratios with exact division at every step.
pub fn quantum_binomial_by_division(n: i64, k: u64, base: QBase) -> Result<LaurentScalar> {
    let mut num = LaurentScalar::one();
    let mut den = LaurentScalar::one();
    for j in 1..=k as i64 {
        num = &num * &quantum_integer_base(n - j + 1, base);
        den = &den * &quantum_integer_base(j, base);
    }
    num.exact_div(&den)
}
