//! Integer partitions, Young diagrams, hook lengths and exact hook products.
//!
//! Boxes are addressed `(row, col)`, 1-based, row 1 being the first (longest)
//! row. A box `(i, j)` belongs to the diagram of `lambda` iff `j <= lambda_i`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A box of a Young diagram (or of the quarter-plane), addressed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    /// The reflected box, used when transposing diagrams.
    pub fn transposed(self) -> Self {
        Cell {
            row: self.col,
            col: self.row,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// An integer partition `lambda = [lambda_1 >= lambda_2 >= ... >= 1]`,
/// identified with its Young diagram. Immutable after construction.
///
/// The empty partition (size 0) is permitted so that extracting the center
/// of a diagram is total.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing with positive entries.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order (zeros are dropped).
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// One row of length `n`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The hook shape `[arm + 1, 1^leg]`.
    pub fn hook_shape(arm: u32, leg: u32) -> Self {
        let mut parts = vec![arm + 1];
        parts.extend(std::iter::repeat_n(1, leg as usize));
        Partition { parts }
    }

    /// Parses the comma/power grammar also used for cycle types, e.g.
    /// `14,4,3,2,2,1` or `2^5` or `3^2-2-1^2`. Parts may appear in any order.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = crate::cycletypes::parse_term_list(text)?;
        Ok(Partition::from_unsorted(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes `n = |lambda|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (1-based); zero outside the diagram.
    pub fn row_len(&self, i: u32) -> u32 {
        if i == 0 || i as usize > self.parts.len() {
            0
        } else {
            self.parts[i as usize - 1]
        }
    }

    /// Length of column `j` (1-based): `#{i : lambda_i >= j}`.
    pub fn col_len(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= j).count() as u32
    }

    pub fn contains_cell(&self, u: Cell) -> bool {
        u.row >= 1 && u.col >= 1 && u.col <= self.row_len(u.row)
    }

    /// Whether `mu` fits inside `self` as a diagram (`mu_i <= lambda_i`).
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.parts.len() <= self.parts.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// All boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i as u32 + 1, j)))
    }

    /// The conjugate (transposed) diagram.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let parts = (1..=self.parts[0]).map(|j| self.col_len(j)).collect();
        Partition { parts }
    }

    /// Side of the Durfee square: the largest `d` with `lambda_d >= d`.
    pub fn durfee(&self) -> u32 {
        let mut d = 0;
        for (i, &p) in self.parts.iter().enumerate() {
            if p > i as u32 {
                d = i as u32 + 1;
            } else {
                break;
            }
        }
        d
    }

    /// Hook length of box `u`: `(lambda_i - j) + (lambda'_j - i) + 1`.
    pub fn hook_length(&self, u: Cell) -> Result<u32> {
        if !self.contains_cell(u) {
            return Err(Error::BoxOutsideDiagram {
                row: u.row,
                col: u.col,
            });
        }
        Ok(self.row_len(u.row) - u.col + self.col_len(u.col) - u.row + 1)
    }

    /// Exact hook product over a set of boxes of the diagram.
    /// Duplicate boxes in `cells` are counted once (set semantics).
    pub fn hook_product<I: IntoIterator<Item = Cell>>(&self, cells: I) -> Result<BigUint> {
        let mut seen: Vec<Cell> = cells.into_iter().collect();
        seen.sort_unstable();
        seen.dedup();
        let mut acc = BigUint::one();
        for u in seen {
            acc *= BigUint::from(self.hook_length(u)?);
        }
        Ok(acc)
    }

    /// Exact hook product of the whole diagram, `H(lambda, lambda)`.
    pub fn full_hook_product(&self) -> BigUint {
        let cols: Vec<u32> = if self.parts.is_empty() {
            Vec::new()
        } else {
            (1..=self.parts[0]).map(|j| self.col_len(j)).collect()
        };
        let mut acc = BigUint::one();
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 1..=len {
                let h = len - j + cols[j as usize - 1] - i as u32;
                acc *= BigUint::from(h);
            }
        }
        acc
    }

    /// The center `lambda^{>=2}`: the diagram minus its first row and column.
    pub fn center(&self) -> Partition {
        let parts: Vec<u32> = self
            .parts
            .iter()
            .skip(1)
            .map(|&p| p - 1)
            .filter(|&p| p > 0)
            .collect();
        Partition { parts }
    }

    /// Truncated diagram `lambda_{>=2}` (first row removed).
    pub fn below_first_row(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).cloned().collect(),
        }
    }

    /// Full anatomy of the diagram; all fields are cheap to derive.
    pub fn anatomy(&self) -> Anatomy {
        let rows = self.parts.clone();
        let cols: Vec<u32> = if self.parts.is_empty() {
            Vec::new()
        } else {
            (1..=self.parts[0]).map(|j| self.col_len(j)).collect()
        };
        let delta = self.durfee();
        let arms: Vec<u32> = (1..=delta).map(|i| rows[i as usize - 1] - i).collect();
        let legs: Vec<u32> = (1..=delta).map(|i| cols[i as usize - 1] - i).collect();
        let diag_hooks: Vec<u32> = (0..delta as usize).map(|i| arms[i] + legs[i] + 1).collect();
        let external_hook = diag_hooks.first().copied().unwrap_or(0);
        let above_first_row: Vec<u32> = cols.iter().map(|&c| c.saturating_sub(1)).collect();
        Anatomy {
            n: self.size(),
            rows,
            cols,
            delta,
            arms,
            legs,
            diag_hooks,
            external_hook,
            center_size: self.size() - external_hook,
            above_first_row,
        }
    }

    /// Compact display: `3^2-2-1^2` for `[3,3,2,1,1]`.
    pub fn compact(&self) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.parts.len() {
            let v = self.parts[i];
            let mut m = 1;
            while i + m < self.parts.len() && self.parts[i + m] == v {
                m += 1;
            }
            if !out.is_empty() {
                out.push('-');
            }
            if m == 1 {
                out.push_str(&v.to_string());
            } else {
                out.push_str(&format!("{v}^{m}"));
            }
            i += m;
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

/// Row/column/diagonal data of a diagram, per the usual conventions:
/// truncated arms `a_i = lambda_i - i`, truncated legs `b_i = lambda'_i - i`
/// (both for `i <= delta`), diagonal hooks `s_i = a_i + b_i + 1`, external
/// hook `s = s_1` and center size `c = n - s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anatomy {
    pub n: u32,
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub delta: u32,
    pub arms: Vec<u32>,
    pub legs: Vec<u32>,
    pub diag_hooks: Vec<u32>,
    pub external_hook: u32,
    pub center_size: u32,
    /// `u_j`: number of boxes of column `j` strictly above the first row.
    pub above_first_row: Vec<u32>,
}

/// Iterator over all partitions of `n` in reverse-lexicographic order,
/// starting from `[n]`. For `n = 0` it yields the single empty partition.
pub struct Partitions {
    current: Option<Vec<u32>>,
}

/// Enumerates the partitions of `n`, `[n]` first.
pub fn enumerate(n: u32) -> Partitions {
    let start = if n == 0 { Vec::new() } else { vec![n] };
    Partitions {
        current: Some(start),
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        let out = Partition {
            parts: parts.clone(),
        };
        // Find the last part exceeding 1, shrink it, redistribute the rest.
        let k = parts.iter().rposition(|&p| p > 1);
        self.current = k.map(|k| {
            let trailing_ones = (parts.len() - k - 1) as u32;
            let m = parts[k] - 1;
            let mut next: Vec<u32> = parts[..k].to_vec();
            next.push(m);
            let mut rem = trailing_ones + 1;
            while rem >= m {
                next.push(m);
                rem -= m;
            }
            if rem > 0 {
                next.push(rem);
            }
            next
        });
        Some(out)
    }
}

/// All subdiagrams `mu` of `lambda` (partitions with `mu_i <= lambda_i`),
/// including the empty one, in depth-first order.
pub fn subdiagrams(lambda: &Partition) -> Vec<Partition> {
    fn rec(bounds: &[u32], maxpart: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition { parts: acc.clone() });
        if acc.len() < bounds.len() {
            let cap = bounds[acc.len()].min(maxpart);
            for next in (1..=cap).rev() {
                acc.push(next);
                rec(bounds, next, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(lambda.parts(), u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions `p(n)`, via Euler's pentagonal-number recurrence.
pub fn count_partitions(n: u32) -> BigUint {
    let n = n as usize;
    let mut p = vec![BigUint::zero(); n + 1];
    p[0] = BigUint::one();
    for m in 1..=n {
        let mut acc = num_bigint::BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 as usize > m && g2 as usize > m {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            for g in [g1, g2] {
                let g = g as usize;
                if g <= m {
                    let term = num_bigint::BigInt::from(p[m - g].clone());
                    acc += sign * term;
                }
            }
            k += 1;
        }
        p[m] = acc.to_biguint().expect("partition counts are non-negative");
    }
    p[n].clone()
}
