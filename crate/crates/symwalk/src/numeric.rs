//! Shared exact-arithmetic helpers and the log-domain real type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

static FACTORIALS: Lazy<RwLock<Vec<BigUint>>> = Lazy::new(|| RwLock::new(vec![BigUint::one()]));

/// `n!` as an exact integer, memoized in a shared append-only table.
pub fn factorial(n: u32) -> BigUint {
    let n = n as usize;
    {
        let table = FACTORIALS.read().unwrap();
        if n < table.len() {
            return table[n].clone();
        }
    }
    let mut table = FACTORIALS.write().unwrap();
    while table.len() <= n {
        let next = table.last().unwrap() * BigUint::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// `n choose k`, exact; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let num = factorial(n);
    num / (factorial(k) * factorial(n - k))
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        (x.to_u64().unwrap() as f64).ln()
    } else {
        let shift = bits - 53;
        let top = (x >> shift).to_u64().unwrap();
        (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational.
pub fn ln_ratio(r: &BigRational) -> f64 {
    assert!(r.is_positive(), "ln of a non-positive rational");
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// f64 value of a rational that may be far outside f64 range internally.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_ratio(&r.abs()).exp()
}

/// Exact rational from a big integer.
pub fn big_to_ratio(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// A strictly positive real stored as its natural logarithm.
///
/// Products and quotients of astronomically large exact quantities (hook
/// products, dimensions of large diagrams) are mirrored into this type for
/// floating comparisons; zero is represented by `-inf`.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct LogReal {
    ln: f64,
}

impl LogReal {
    pub const ONE: LogReal = LogReal { ln: 0.0 };
    pub const ZERO: LogReal = LogReal {
        ln: f64::NEG_INFINITY,
    };

    pub fn from_ln(ln: f64) -> Self {
        LogReal { ln }
    }

    /// From a non-negative f64 value.
    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0, "LogReal::from_value needs a non-negative value");
        LogReal { ln: v.ln() }
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        LogReal { ln: ln_biguint(x) }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        if r.is_zero() {
            LogReal::ZERO
        } else {
            LogReal { ln: ln_ratio(r) }
        }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// The represented value; may overflow to `inf` for large logs.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn powf(self, e: f64) -> Self {
        if self.ln == f64::NEG_INFINITY && e == 0.0 {
            return LogReal::ONE;
        }
        LogReal { ln: self.ln * e }
    }

    /// Log-sum-exp over a sequence of log-domain terms.
    pub fn sum<I: IntoIterator<Item = LogReal>>(items: I) -> LogReal {
        let lns: Vec<f64> = items.into_iter().map(|x| x.ln).collect();
        let m = lns.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return LogReal::ZERO;
        }
        let s: f64 = lns.iter().map(|l| (l - m).exp()).sum();
        LogReal { ln: m + s.ln() }
    }
}

// products and quotients act on the stored logarithms
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal {
            ln: self.ln + rhs.ln,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for LogReal {
    type Output = LogReal;
    fn div(self, rhs: LogReal) -> LogReal {
        LogReal {
            ln: self.ln - rhs.ln,
        }
    }
}

impl fmt::Debug for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogReal(ln = {})", self.ln)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.ln)
    }
}

/// Compare an exact rational against a log-domain bound with relative slack.
pub fn ratio_le_log(r: &BigRational, bound: LogReal, rel_tol: f64) -> bool {
    if r.is_zero() || !r.is_positive() {
        return true;
    }
    ln_ratio(r) <= bound.ln() + rel_tol.abs().max(f64::EPSILON) + bound.ln().abs() * rel_tol
}

/// Table of natural logs `ln 1 .. ln n` with prefix sums `ln k!`.
///
/// Used on the log-gamma evaluation path where diagrams are too large for
/// exact products to be worthwhile.
pub struct LnTable {
    ln: Vec<f64>,
    ln_fact: Vec<f64>,
}

impl LnTable {
    pub fn new(max: usize) -> Self {
        let mut ln = vec![0.0; max + 1];
        let mut ln_fact = vec![0.0; max + 1];
        for k in 1..=max {
            ln[k] = (k as f64).ln();
            ln_fact[k] = ln_fact[k - 1] + ln[k];
        }
        LnTable { ln, ln_fact }
    }

    pub fn ln(&self, k: usize) -> f64 {
        self.ln[k]
    }

    pub fn ln_factorial(&self, k: usize) -> f64 {
        self.ln_fact[k]
    }

    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.ln_fact[n] - self.ln_fact[k] - self.ln_fact[n - k]
    }
}

/// Total order on f64 pairs used for deterministic sorting of report rows.
pub fn f64_total_cmp(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(10), BigUint::from(3628800u64));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn ln_biguint_matches_f64_for_large_inputs() {
        let x = factorial(500);
        let direct = ln_biguint(&x);
        // Stirling with the 1/(12n) correction is accurate to ~1e-9 here.
        let n = 500.0f64;
        let stirling =
            n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n);
        assert!((direct - stirling).abs() < 1e-6, "{direct} vs {stirling}");
    }

    #[test]
    fn logreal_sum_is_logsumexp() {
        let terms = [1.0f64, 2.0, 3.0].map(LogReal::from_value);
        let s = LogReal::sum(terms);
        assert!((s.value() - 6.0).abs() < 1e-12);
        assert_eq!(LogReal::sum(std::iter::empty()), LogReal::ZERO);
    }
}
