//! Dimensions, virtual degrees, augmented dimensions and the exact
//! identities relating them.
//!
//! For a diagram of size `n` with truncated arms `a_i`, legs `b_i` and
//! diagonal hooks `s_i`:
//!
//! - dimension              `d = n! / H(lambda, lambda)` (hook-length formula);
//! - virtual degree         `D = (n-1)! / prod(a_i! b_i!)`;
//! - augmented dimension    `d+ = n! / (prod(s_i) * prod(a_i! b_i!))`;
//! - P-dimension            `d*P = n! / H^{*P}(lambda, lambda)`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numeric::{big_to_ratio, binomial, factorial, ln_biguint, LnTable, LogReal};
use crate::partitions::Partition;
use crate::slicing::{sliced_hook_product_full, SliceSpec};
use crate::Result;

/// Dimension of the irreducible representation `lambda`, by the hook-length
/// formula. The division is exact; a remainder would be an internal bug.
pub fn dimension(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    let hooks = lambda.full_hook_product();
    let fact = factorial(n);
    debug_assert!((&fact % &hooks).is_zero(), "hook product must divide n!");
    fact / hooks
}

/// `ln d_lambda` without materializing the exact integer. Uses exact big
/// integers for small diagrams and a log-table evaluation beyond.
pub fn log_dimension(lambda: &Partition) -> LogReal {
    let n = lambda.size();
    if n <= 1000 {
        return LogReal::from_biguint(&dimension(lambda));
    }
    let table = LnTable::new(n as usize + 1);
    let mut ln_h = 0.0f64;
    let cols: Vec<u32> = (1..=lambda.row_len(1)).map(|j| lambda.col_len(j)).collect();
    for (i, &len) in lambda.parts().iter().enumerate() {
        for j in 1..=len {
            let h = len - j + cols[j as usize - 1] - i as u32;
            ln_h += table.ln(h as usize);
        }
    }
    LogReal::from_ln(table.ln_factorial(n as usize) - ln_h)
}

/// Product of `a_i! b_i!` over the diagonal.
fn arm_leg_factorial_product(lambda: &Partition) -> BigUint {
    let anatomy = lambda.anatomy();
    let mut acc = BigUint::one();
    for i in 0..anatomy.delta as usize {
        acc *= factorial(anatomy.arms[i]);
        acc *= factorial(anatomy.legs[i]);
    }
    acc
}

/// Virtual degree `D(lambda) = (n-1)! / prod(a_i! b_i!)`, exact.
pub fn virtual_degree(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    if n == 0 {
        return BigUint::one();
    }
    let den = arm_leg_factorial_product(lambda);
    let num = factorial(n - 1);
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `ln D(lambda)` on the log path for large diagrams.
pub fn log_virtual_degree(lambda: &Partition) -> LogReal {
    let n = lambda.size();
    if n <= 1000 {
        return LogReal::from_biguint(&virtual_degree(lambda));
    }
    let table = LnTable::new(n as usize);
    let anatomy = lambda.anatomy();
    let mut ln = table.ln_factorial(n as usize - 1);
    for i in 0..anatomy.delta as usize {
        ln -= table.ln_factorial(anatomy.arms[i] as usize);
        ln -= table.ln_factorial(anatomy.legs[i] as usize);
    }
    LogReal::from_ln(ln)
}

/// Augmented dimension `d+ = n! / ((prod s_i)(prod a_i! b_i!))`, exact.
/// Integrality follows from the recursion `d+_lambda = C(n,s) d+_s d+_c`.
pub fn augmented_dimension(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    if n == 0 {
        return BigUint::one();
    }
    let anatomy = lambda.anatomy();
    let mut den = arm_leg_factorial_product(lambda);
    for &s in &anatomy.diag_hooks {
        den *= BigUint::from(s);
    }
    let num = factorial(n);
    debug_assert!((&num % &den).is_zero(), "augmented hook product divides n!");
    num / den
}

/// `P`-dimension `n! / H^{*P}(lambda, lambda)` as an exact rational (not
/// necessarily integral for arbitrary slicings).
pub fn p_dimension(lambda: &Partition, spec: &SliceSpec) -> Result<BigRational> {
    let h = sliced_hook_product_full(lambda, spec)?;
    Ok(big_to_ratio(&factorial(lambda.size())) / big_to_ratio(&h))
}

/// Barnes G at a positive integer: `G(m) = prod_{i=0}^{m-2} i!`.
pub fn barnes_g(m: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..m.saturating_sub(1) {
        acc *= factorial(i);
    }
    acc
}

/// Exact comparison data for the center bound
/// `e^{-6 sqrt(c)} <= d_lambda / (C(n,c) d_s d_c) <= 1`.
#[derive(Debug, Clone)]
pub struct CenterBound {
    /// `d_lambda / (C(n,c) d_s d_c)`, exact.
    pub ratio: BigRational,
    /// `e^{-6 sqrt(c)}`.
    pub lower: LogReal,
    pub center_size: u32,
    pub ok_lower: bool,
    pub ok_upper: bool,
}

/// Relative tolerance used on the transcendental side of the center bound.
pub const CENTER_BOUND_REL_TOL: f64 = 1e-9;

/// Evaluates the center bound report for `lambda` (empty centers give
/// ratio 1).
pub fn center_bound(lambda: &Partition) -> CenterBound {
    let n = lambda.size();
    let anatomy = lambda.anatomy();
    let c = anatomy.center_size;
    let ratio = if n == 0 {
        BigRational::one()
    } else {
        let hook = Partition::hook_shape(anatomy.arms[0], anatomy.legs[0]);
        let d_s = dimension(&hook);
        let d_c = dimension(&lambda.center());
        big_to_ratio(&dimension(lambda)) / big_to_ratio(&(binomial(n, c) * d_s * d_c))
    };
    let lower = LogReal::from_ln(-6.0 * (c as f64).sqrt());
    let ln_ratio = LogReal::from_ratio(&ratio).ln();
    let ok_lower = ln_ratio >= lower.ln() * (1.0 + CENTER_BOUND_REL_TOL) - CENTER_BOUND_REL_TOL;
    let ok_upper = ratio <= BigRational::one();
    CenterBound {
        ratio,
        lower,
        center_size: c,
        ok_lower,
        ok_upper,
    }
}

/// Exact degree data for one diagram.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub lambda: Partition,
    pub dimension: BigUint,
    pub log_dimension: LogReal,
    pub virtual_degree: BigUint,
    pub augmented_dimension: BigUint,
    /// `(ln D - ln d) ln n / ln d`; `None` when `d = 1`.
    pub exponent_gap: Option<f64>,
}

/// Computes all degree quantities for `lambda` with exact arithmetic.
pub fn degree_report(lambda: &Partition) -> DegreeReport {
    let d = dimension(lambda);
    let vd = virtual_degree(lambda);
    let log_d = LogReal::from_biguint(&d);
    let gap = exponent_gap_from_logs(lambda.size(), log_d.ln(), ln_biguint(&vd));
    DegreeReport {
        lambda: lambda.clone(),
        log_dimension: log_d,
        dimension: d,
        virtual_degree: vd,
        augmented_dimension: augmented_dimension(lambda),
        exponent_gap: gap,
    }
}

fn exponent_gap_from_logs(n: u32, ln_d: f64, ln_vd: f64) -> Option<f64> {
    if ln_d <= 0.0 {
        None
    } else {
        Some((ln_vd - ln_d) * (n as f64).ln() / ln_d)
    }
}

/// Families whose virtual-degree exponent gap has a known limit:
/// squares `[p^p]` tend to `4 ln 2`, almost-flat diagrams `[n-2, 2]` to
/// `(ln 2)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharpnessFamily {
    /// `[p^p]`, scanned for side lengths `2..=p`.
    Square(u32),
    /// `[m-2, 2]`, scanned on a doubling grid of sizes up to `n`.
    AlmostFlat(u32),
}

/// One row of a sharpness scan.
#[derive(Debug, Clone, Copy)]
pub struct SharpnessPoint {
    pub n: u32,
    pub ln_dimension: f64,
    pub ln_virtual_degree: f64,
    /// `(ln D - ln d) ln n / ln d`.
    pub exponent_gap: f64,
    /// `ln D / ln d`.
    pub measured_exponent: f64,
    /// `1 + limit / ln n` for the family's limit constant.
    pub predicted_exponent: f64,
    /// The family's limit constant (`4 ln 2` or `ln 2 / 2`).
    pub limit: f64,
}

fn sharpness_point(lambda: &Partition, limit: f64) -> SharpnessPoint {
    let n = lambda.size();
    let ln_d = log_dimension(lambda).ln();
    let ln_vd = log_virtual_degree(lambda).ln();
    SharpnessPoint {
        n,
        ln_dimension: ln_d,
        ln_virtual_degree: ln_vd,
        exponent_gap: exponent_gap_from_logs(n, ln_d, ln_vd)
            .expect("scan members have dimension >= 2"),
        measured_exponent: ln_vd / ln_d,
        predicted_exponent: 1.0 + limit / (n as f64).ln(),
        limit,
    }
}

/// Scans a sharpness family up to its parameter, largest member last.
/// Flat diagrams (`d = 1`) never occur in either family.
pub fn sharpness_scan(family: SharpnessFamily) -> Vec<SharpnessPoint> {
    match family {
        SharpnessFamily::Square(p) => {
            assert!(p >= 2, "square scan needs p >= 2");
            let limit = 4.0 * std::f64::consts::LN_2;
            (2..=p)
                .map(|side| {
                    let lam = Partition::new(vec![side; side as usize]).unwrap();
                    sharpness_point(&lam, limit)
                })
                .collect()
        }
        SharpnessFamily::AlmostFlat(n) => {
            assert!(n >= 5, "almost-flat scan needs n >= 5");
            let limit = std::f64::consts::LN_2 / 2.0;
            let mut sizes = Vec::new();
            let mut m = 5u32;
            while m < n {
                sizes.push(m);
                m = m.saturating_mul(2);
            }
            sizes.push(n);
            sizes
                .into_iter()
                .map(|m| {
                    let lam = Partition::new(vec![m - 2, 2]).unwrap();
                    sharpness_point(&lam, limit)
                })
                .collect()
        }
    }
}
