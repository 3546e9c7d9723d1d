//! Generalized hook lengths on arbitrary box sets, slicings of a diagram and
//! sliced hook products.
//!
//! A slicing is a set partition `P = {nu_1, ..., nu_r}` of the boxes of a
//! diagram; the sliced hook product replaces every hook length by the hook
//! length taken inside the block owning the box:
//! `H^{*P}(lambda, E) = prod_i H(nu_i, nu_i ∩ E)`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::numeric::{big_to_ratio, LogReal};
use crate::partitions::{Cell, Partition};
use crate::{Error, Result};

/// A finite set of boxes in the quarter-plane; not necessarily a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoxSet {
    cells: BTreeSet<Cell>,
}

impl BoxSet {
    pub fn new() -> Self {
        BoxSet::default()
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        BoxSet {
            cells: cells.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, u: Cell) -> bool {
        self.cells.contains(&u)
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    /// Hook length of `u` with respect to this set: the number of boxes of
    /// the set in the same row to the right of `u` (inclusive) or in the
    /// same column above `u` (inclusive). `u` need not belong to the set.
    pub fn hook_length(&self, u: Cell) -> u32 {
        self.cells
            .iter()
            .filter(|v| (v.col == u.col && v.row >= u.row) || (v.row == u.row && v.col >= u.col))
            .count() as u32
    }

    /// Hook product of the boxes of `sub` within this set.
    pub fn hook_product<I: IntoIterator<Item = Cell>>(&self, sub: I) -> BigUint {
        let cells: BTreeSet<Cell> = sub.into_iter().collect();
        let mut acc = BigUint::one();
        for u in cells {
            acc *= BigUint::from(self.hook_length(u));
        }
        acc
    }
}

/// Hook length of `u` with respect to an arbitrary box set.
pub fn general_hook_length(set: &BoxSet, u: Cell) -> u32 {
    set.hook_length(u)
}

/// A named slicing of a diagram, or an explicit custom set partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceSpec {
    /// `{lambda_1, lambda_{>=2}}`: first row against the rest.
    Lambda1,
    /// `{lambda^1, lambda^{>=2}}`: external hook against the center.
    LambdaUp1,
    /// Truncated arms, truncated legs and diagonal singletons.
    AbDelta,
    /// Explicit blocks; validated against the diagram at use time.
    Custom(Vec<BoxSet>),
}

impl SliceSpec {
    /// Resolves the slicing into concrete blocks partitioning the boxes of
    /// `lambda`. Empty blocks are omitted; custom blocks must be disjoint,
    /// non-empty and cover the diagram.
    pub fn resolve(&self, lambda: &Partition) -> Result<Vec<BoxSet>> {
        match self {
            SliceSpec::Lambda1 => {
                let first = BoxSet::from_cells((1..=lambda.row_len(1)).map(|j| Cell::new(1, j)));
                let rest = BoxSet::from_cells(lambda.cells().filter(|u| u.row >= 2));
                Ok([first, rest]
                    .into_iter()
                    .filter(|b| !b.is_empty())
                    .collect())
            }
            SliceSpec::LambdaUp1 => {
                let hook = BoxSet::from_cells(lambda.cells().filter(|u| u.row == 1 || u.col == 1));
                let center =
                    BoxSet::from_cells(lambda.cells().filter(|u| u.row >= 2 && u.col >= 2));
                Ok([hook, center]
                    .into_iter()
                    .filter(|b| !b.is_empty())
                    .collect())
            }
            SliceSpec::AbDelta => {
                let anatomy = lambda.anatomy();
                let mut blocks = Vec::new();
                for i in 1..=anatomy.delta {
                    let arm = anatomy.arms[i as usize - 1];
                    if arm > 0 {
                        blocks.push(BoxSet::from_cells(
                            (i + 1..=i + arm).map(|j| Cell::new(i, j)),
                        ));
                    }
                    let leg = anatomy.legs[i as usize - 1];
                    if leg > 0 {
                        blocks.push(BoxSet::from_cells(
                            (i + 1..=i + leg).map(|r| Cell::new(r, i)),
                        ));
                    }
                    blocks.push(BoxSet::from_cells([Cell::new(i, i)]));
                }
                Ok(blocks)
            }
            SliceSpec::Custom(blocks) => {
                let mut seen: BTreeSet<Cell> = BTreeSet::new();
                let mut total = 0usize;
                for block in blocks {
                    if block.is_empty() {
                        return Err(Error::InvalidSlicing("empty block".into()));
                    }
                    for u in block.iter() {
                        if !lambda.contains_cell(u) {
                            return Err(Error::InvalidSlicing(format!(
                                "box {u} lies outside the diagram"
                            )));
                        }
                        if !seen.insert(u) {
                            return Err(Error::InvalidSlicing(format!(
                                "box {u} appears in two blocks"
                            )));
                        }
                        total += 1;
                    }
                }
                if total != lambda.size() as usize {
                    return Err(Error::InvalidSlicing(format!(
                        "blocks cover {total} boxes of a diagram of size {}",
                        lambda.size()
                    )));
                }
                Ok(blocks.clone())
            }
        }
    }
}

/// Sliced hook product `H^{*P}(lambda, E)`, exact. `E` must lie inside the
/// diagram; duplicates are counted once.
pub fn sliced_hook_product<I: IntoIterator<Item = Cell>>(
    lambda: &Partition,
    spec: &SliceSpec,
    cells: I,
) -> Result<BigUint> {
    let sub: BTreeSet<Cell> = cells.into_iter().collect();
    for &u in &sub {
        if !lambda.contains_cell(u) {
            return Err(Error::BoxOutsideDiagram {
                row: u.row,
                col: u.col,
            });
        }
    }
    let blocks = spec.resolve(lambda)?;
    let mut acc = BigUint::one();
    for block in &blocks {
        acc *= block.hook_product(block.iter().filter(|u| sub.contains(u)));
    }
    Ok(acc)
}

/// Sliced hook product of the whole diagram, `H^{*P}(lambda, lambda)`.
pub fn sliced_hook_product_full(lambda: &Partition, spec: &SliceSpec) -> Result<BigUint> {
    let blocks = spec.resolve(lambda)?;
    let mut acc = BigUint::one();
    for block in &blocks {
        acc *= block.hook_product(block.iter());
    }
    Ok(acc)
}

/// Ratio `R_P(lambda, mu) = H(lambda, mu) / H^{*P}(lambda, mu)` where `mu`
/// ranges over the boxes of a subdiagram of `lambda`.
///
/// `exact` is `None` when numerator or denominator exceeds
/// [`RATIO_EXACT_BIT_LIMIT`] bits; the log-domain mirror is always present.
#[derive(Debug, Clone)]
pub struct HookRatio {
    pub exact: Option<BigRational>,
    pub log: LogReal,
}

/// Size threshold beyond which the exact rational form of a ratio is not
/// materialized (the log mirror carries ~1e-15 relative accuracy).
pub const RATIO_EXACT_BIT_LIMIT: u64 = 4096;

/// Computes `R_P(lambda, mu)` for a subdiagram `mu` of `lambda`.
pub fn hook_ratio(lambda: &Partition, mu: &Partition, spec: &SliceSpec) -> Result<HookRatio> {
    if !lambda.contains(mu) {
        return Err(Error::Domain(format!(
            "{mu} is not a subdiagram of {lambda}"
        )));
    }
    let num = lambda.hook_product(mu.cells())?;
    let den = sliced_hook_product(lambda, spec, mu.cells())?;
    let log = LogReal::from_biguint(&num) / LogReal::from_biguint(&den);
    let exact = if num.bits() <= RATIO_EXACT_BIT_LIMIT && den.bits() <= RATIO_EXACT_BIT_LIMIT {
        Some(big_to_ratio(&num) / big_to_ratio(&den))
    } else {
        None
    };
    Ok(HookRatio { exact, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ratio_f64(lambda: &Partition, mu: &Partition, spec: &SliceSpec) -> f64 {
        hook_ratio(lambda, mu, spec)
            .unwrap()
            .exact
            .unwrap()
            .to_f64()
            .unwrap()
    }

    #[test]
    fn general_hook_length_fragmented_example() {
        // The hook of (row 1, col 3) inside a scattered set has length 5.
        let set = BoxSet::from_cells([
            Cell::new(1, 1),
            Cell::new(1, 4),
            Cell::new(1, 5),
            Cell::new(1, 7),
            Cell::new(2, 3),
            Cell::new(2, 4),
            Cell::new(3, 1),
            Cell::new(4, 1),
            Cell::new(4, 3),
        ]);
        assert_eq!(set.hook_length(Cell::new(1, 3)), 5);
        assert_eq!(BoxSet::new().hook_length(Cell::new(1, 1)), 0);
        let single = BoxSet::from_cells([Cell::new(2, 2)]);
        assert_eq!(single.hook_length(Cell::new(2, 2)), 1);
    }

    #[test]
    fn abdelta_sliced_values_of_wide_diagram() {
        let lam = pt(&[14, 4, 3, 2, 2, 1]);
        let blocks = SliceSpec::AbDelta.resolve(&lam).unwrap();
        // total boxes covered = n, blocks pairwise disjoint
        let total: usize = blocks.iter().map(|b| b.len()).sum();
        assert_eq!(total, 26);

        let sliced = |u: Cell| -> u32 {
            let owner = blocks.iter().find(|b| b.contains(u)).unwrap();
            owner.hook_length(u)
        };
        // first-row arm: 13, 12, ..., 1
        for j in 2..=14 {
            assert_eq!(sliced(Cell::new(1, j)), 15 - j);
        }
        // first-column leg: 5, 4, 3, 2, 1 going up
        for i in 2..=6 {
            assert_eq!(sliced(Cell::new(i, 1)), 7 - i);
        }
        // diagonal boxes are singletons
        assert_eq!(sliced(Cell::new(1, 1)), 1);
        assert_eq!(sliced(Cell::new(2, 2)), 1);
        assert_eq!(sliced(Cell::new(3, 3)), 1);
        // second arm (row 2, cols 3..4): 2, 1
        assert_eq!(sliced(Cell::new(2, 3)), 2);
        assert_eq!(sliced(Cell::new(2, 4)), 1);
        // second leg (col 2, rows 3..5): 3, 2, 1
        assert_eq!(sliced(Cell::new(3, 2)), 3);
        assert_eq!(sliced(Cell::new(5, 2)), 1);
    }

    #[test]
    fn abdelta_partial_product_is_780() {
        let lam = pt(&[14, 4, 3, 2, 2, 1]);
        let sub = pt(&[3, 2]);
        let h = sliced_hook_product(&lam, &SliceSpec::AbDelta, sub.cells()).unwrap();
        assert_eq!(h, BigUint::from(780u32));
    }

    #[test]
    fn lambda1_slicing_values() {
        let lam = pt(&[14, 4, 3, 2, 2, 1]);
        let blocks = SliceSpec::Lambda1.resolve(&lam).unwrap();
        assert_eq!(blocks.len(), 2);
        let first = &blocks[0];
        // first row sliced hooks are 14, 13, ..., 1
        for j in 1..=14 {
            assert_eq!(first.hook_length(Cell::new(1, j)), 15 - j);
        }
        // the rest is the standalone diagram [4,3,2,2,1]
        let rest = pt(&[4, 3, 2, 2, 1]);
        let shifted = &blocks[1];
        for u in rest.cells() {
            let v = Cell::new(u.row + 1, u.col);
            assert_eq!(shifted.hook_length(v), rest.hook_length(u).unwrap());
        }
    }

    #[test]
    fn single_row_any_slicing_is_whole() {
        let lam = pt(&[6]);
        for spec in [SliceSpec::Lambda1, SliceSpec::LambdaUp1, SliceSpec::AbDelta] {
            let blocks = spec.resolve(&lam).unwrap();
            let total: usize = blocks.iter().map(|b| b.len()).sum();
            assert_eq!(total, 6);
        }
        // Lambda1 and LambdaUp1 give one block of 6 boxes
        assert_eq!(SliceSpec::Lambda1.resolve(&lam).unwrap().len(), 1);
        assert_eq!(SliceSpec::LambdaUp1.resolve(&lam).unwrap().len(), 1);
    }

    #[test]
    fn trivial_custom_slicing_recovers_full_product() {
        for n in 1..=10u32 {
            for lam in enumerate(n) {
                let whole = SliceSpec::Custom(vec![BoxSet::from_cells(lam.cells())]);
                assert_eq!(
                    sliced_hook_product_full(&lam, &whole).unwrap(),
                    lam.full_hook_product()
                );
            }
        }
    }

    #[test]
    fn custom_validation_errors() {
        let lam = pt(&[2, 1]);
        let overlap = SliceSpec::Custom(vec![
            BoxSet::from_cells([Cell::new(1, 1), Cell::new(1, 2)]),
            BoxSet::from_cells([Cell::new(1, 1), Cell::new(2, 1)]),
        ]);
        assert!(overlap.resolve(&lam).is_err());
        let incomplete = SliceSpec::Custom(vec![BoxSet::from_cells([Cell::new(1, 1)])]);
        assert!(incomplete.resolve(&lam).is_err());
        let outside = SliceSpec::Custom(vec![BoxSet::from_cells([Cell::new(5, 5)])]);
        assert!(outside.resolve(&lam).is_err());
    }

    #[test]
    fn lambda1_product_on_small_diagram() {
        let lam = pt(&[3, 2]);
        let h = sliced_hook_product(&lam, &SliceSpec::Lambda1, lam.cells()).unwrap();
        assert_eq!(h, BigUint::from(12u32)); // (3*2*1) * (2*1)
    }

    #[test]
    fn ratio_examples() {
        // single row: ratio 1
        let lam = pt(&[7]);
        assert_eq!(ratio_f64(&lam, &lam, &SliceSpec::Lambda1), 1.0);

        // two-row diagram: R = (lambda_1 + 1) / (lambda_1 - r + 1)
        let lam = pt(&[6, 4]);
        let expect = 7.0 / 3.0;
        assert!((ratio_f64(&lam, &lam, &SliceSpec::Lambda1) - expect).abs() < 1e-12);

        // subdiagram case checked against the first-row identity below
        let lam = pt(&[3, 2]);
        let mu = pt(&[2]);
        let lhs = hook_ratio(&lam, &mu, &SliceSpec::Lambda1)
            .unwrap()
            .exact
            .unwrap();
        let num = lam.hook_product(mu.cells()).unwrap();
        let row = BoxSet::from_cells((1..=3).map(|j| Cell::new(1, j)));
        let den = row.hook_product(mu.cells());
        assert_eq!(lhs, big_to_ratio(&num) / big_to_ratio(&den));

        assert!(hook_ratio(&pt(&[2]), &pt(&[3]), &SliceSpec::Lambda1).is_err());
    }

    use crate::partitions::subdiagrams;

    #[test]
    fn first_row_identity_for_all_subdiagrams() {
        // R_{lambda_1}(lambda, mu) = H(lambda, mu_1) / H(lambda_1, mu_1)
        use rayon::prelude::*;
        let bad: Vec<String> = (1..=16u32)
            .into_par_iter()
            .flat_map_iter(|n| {
                enumerate(n).filter_map(move |lam| {
                    let row = BoxSet::from_cells((1..=lam.row_len(1)).map(|j| Cell::new(1, j)));
                    for mu in subdiagrams(&lam) {
                        let r = hook_ratio(&lam, &mu, &SliceSpec::Lambda1)
                            .unwrap()
                            .exact
                            .unwrap();
                        let mu1: Vec<Cell> = (1..=mu.row_len(1)).map(|j| Cell::new(1, j)).collect();
                        let num = lam.hook_product(mu1.iter().copied()).unwrap();
                        let den = row.hook_product(mu1.iter().copied());
                        if r != big_to_ratio(&num) / big_to_ratio(&den) {
                            return Some(format!("{lam} {mu}"));
                        }
                    }
                    None
                })
            })
            .collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn first_row_ratio_is_maximized_at_whole_diagram() {
        for n in 1..=10u32 {
            for lam in enumerate(n) {
                let full = hook_ratio(&lam, &lam, &SliceSpec::Lambda1)
                    .unwrap()
                    .exact
                    .unwrap();
                for mu in subdiagrams(&lam) {
                    let r = hook_ratio(&lam, &mu, &SliceSpec::Lambda1)
                        .unwrap()
                        .exact
                        .unwrap();
                    assert!(r <= full, "{lam} {mu}");
                }
            }
        }
    }

    proptest! {
        // For decreasing triples with (b) majorizing (b'),
        // prod(a_i + b_i) <= prod(a_i + b'_i).
        #[test]
        fn majorization_decreases_products(
            a in proptest::collection::vec(0.01f64..10.0, 2..8),
            b in proptest::collection::vec(0.01f64..10.0, 2..8),
            t in 0.0f64..1.0,
        ) {
            let p = a.len().min(b.len());
            let mut a = a[..p].to_vec();
            let mut b = b[..p].to_vec();
            a.sort_by(|x, y| y.partial_cmp(x).unwrap());
            b.sort_by(|x, y| y.partial_cmp(x).unwrap());
            // b' = (1-t) b + t * flat has the same sum and is majorized by b
            let mean: f64 = b.iter().sum::<f64>() / p as f64;
            let bp: Vec<f64> = b.iter().map(|x| (1.0 - t) * x + t * mean).collect();
            let lhs: f64 = a.iter().zip(&b).map(|(x, y)| x + y).product();
            let rhs: f64 = a.iter().zip(&bp).map(|(x, y)| x + y).product();
            prop_assert!(lhs <= rhs * (1.0 + 1e-9));
        }
    }
}
