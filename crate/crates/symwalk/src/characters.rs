//! Irreducible characters of symmetric groups via the Murnaghan–Nakayama
//! border-strip recursion, with memoization shared across a column.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::cycletypes::CycleType;
use crate::degrees::virtual_degree;
use crate::numeric::{ln_biguint, LogReal};
use crate::partitions::{enumerate, Partition};
use crate::{Error, Limits, Result};

/// Cycle lengths of `rho`, largest first. Removing the largest strip first
/// prunes the recursion fastest; any order is mathematically valid.
fn cycles_desc(rho: &CycleType) -> Vec<u32> {
    let mut out = Vec::with_capacity(rho.cycle_count() as usize);
    for (len, mult) in rho.iter() {
        out.extend(std::iter::repeat_n(len, mult as usize));
    }
    out.reverse();
    out
}

/// Border-strip recursion on first-column hook lengths (beta numbers).
///
/// A removable strip of size `k` corresponds to a beta number `f >= k` with
/// `f - k` not among the beta numbers; the strip height is the number of
/// beta numbers strictly between `f - k` and `f`.
fn mn_recurse(
    parts: Vec<u32>,
    cycles: &[u32],
    idx: usize,
    memo: &mut HashMap<(Vec<u32>, usize), i128>,
) -> i128 {
    if idx == cycles.len() {
        debug_assert!(parts.is_empty());
        return 1;
    }
    if let Some(&v) = memo.get(&(parts.clone(), idx)) {
        return v;
    }
    let k = cycles[idx];
    let m = parts.len();
    let beta: Vec<u32> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (m - 1 - i) as u32)
        .collect(); // strictly decreasing
    let mut total: i128 = 0;
    for (pos, &f) in beta.iter().enumerate() {
        if f < k {
            continue;
        }
        let target = f - k;
        // crossings: entries strictly between target and f sit right after pos
        let crossings = beta[pos + 1..].iter().take_while(|&&x| x > target).count();
        if beta[pos + 1..].get(crossings) == Some(&target) {
            continue; // target already occupied: not a removable strip
        }
        let mut nb = beta.clone();
        nb.remove(pos);
        nb.insert(pos + crossings, target);
        let new_parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (m - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sub = mn_recurse(new_parts, cycles, idx + 1, memo);
        if crossings % 2 == 1 {
            total -= sub;
        } else {
            total += sub;
        }
    }
    memo.insert((parts, idx), total);
    total
}

/// One character evaluation with its normalized form `chi = ch / d`.
#[derive(Debug, Clone)]
pub struct CharValue {
    pub lambda: Partition,
    pub rho: CycleType,
    pub ch: i128,
    /// Exact normalized character `ch / d_lambda`.
    pub chi: num_rational::BigRational,
}

/// Evaluates one character together with its exact normalized value.
pub fn char_value(lambda: &Partition, rho: &CycleType) -> Result<CharValue> {
    let ch = character(lambda, rho)?;
    let d = crate::degrees::dimension(lambda);
    let chi = num_rational::BigRational::new(
        num_bigint::BigInt::from(ch),
        num_bigint::BigInt::from(d),
    );
    Ok(CharValue {
        lambda: lambda.clone(),
        rho: rho.clone(),
        ch,
        chi,
    })
}

/// The (non-normalized) character `ch^lambda(rho)`, exact.
pub fn character(lambda: &Partition, rho: &CycleType) -> Result<i128> {
    if lambda.size() != rho.n() {
        return Err(Error::SizeMismatch {
            lambda: lambda.size(),
            rho: rho.n(),
        });
    }
    let cycles = cycles_desc(rho);
    let mut memo = HashMap::new();
    Ok(mn_recurse(lambda.parts().to_vec(), &cycles, 0, &mut memo))
}

/// One column of the character table: `ch^lambda(rho)` for every
/// `lambda |- n`, computed with one memo shared across the column.
#[derive(Debug, Clone)]
pub struct CharColumn {
    pub n: u32,
    pub rho: CycleType,
    pub values: BTreeMap<Partition, i128>,
}

impl CharColumn {
    pub fn value(&self, lambda: &Partition) -> i128 {
        *self
            .values
            .get(lambda)
            .expect("lambda |- n indexes the column")
    }
}

/// Computes a full character column; guarded because the table underneath
/// grows super-polynomially with `n`.
pub fn character_column(n: u32, rho: &CycleType, limits: &Limits) -> Result<CharColumn> {
    if rho.n() != n {
        return Err(Error::SizeMismatch {
            lambda: n,
            rho: rho.n(),
        });
    }
    limits.check_char(n)?;
    let cycles = cycles_desc(rho);
    let mut memo = HashMap::new();
    let mut values = BTreeMap::new();
    for lambda in enumerate(n) {
        let v = mn_recurse(lambda.parts().to_vec(), &cycles, 0, &mut memo);
        values.insert(lambda, v);
    }
    Ok(CharColumn {
        n,
        rho: rho.clone(),
        values,
    })
}

/// Relative slack accepted when comparing `|ch|` against `D(lambda)^{E}`.
pub const CHARACTER_BOUND_REL_TOL: f64 = 1e-9;

/// Both sides of the character bound `|ch^lambda(sigma)| <= D(lambda)^{E(sigma)}`.
#[derive(Debug, Clone, Copy)]
pub struct CharacterBoundReport {
    /// `|ch^lambda(sigma)|` as a float (exact integer underneath).
    pub lhs: f64,
    /// `D(lambda)^{E(sigma)}` in the log domain.
    pub rhs: LogReal,
    pub ok: bool,
}

/// Evaluates the virtual-degree character bound for one pair.
pub fn verify_character_bound(lambda: &Partition, rho: &CycleType) -> Result<CharacterBoundReport> {
    let ch = character(lambda, rho)?;
    let growth = crate::cycletypes::orbit_growth(rho)?;
    let rhs = LogReal::from_ln(ln_biguint(&virtual_degree(lambda)) * growth.exponent);
    let lhs_abs = ch.unsigned_abs();
    let lhs = lhs_abs.to_f64().unwrap_or(f64::MAX);
    // ok = (lhs <= rhs * (1 + tol)), compared in the log domain
    let ok = if lhs_abs == 0 {
        true
    } else {
        (lhs_abs as f64).ln() <= rhs.ln() + CHARACTER_BOUND_REL_TOL.ln_1p()
    };
    Ok(CharacterBoundReport { lhs, rhs, ok })
}
