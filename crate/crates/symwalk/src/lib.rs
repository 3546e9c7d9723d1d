//! Exact combinatorics of symmetric-group representations and of random walks
//! driven by conjugacy classes.
//!
//! The crate is organised around the objects themselves:
//!
//! - [`partitions`]: integer partitions, Young diagrams, hook lengths and hook
//!   products in exact arithmetic;
//! - [`slicing`]: generalized hook lengths on arbitrary box sets, slicings of
//!   a diagram and sliced hook products;
//! - [`degrees`]: representation dimensions, virtual degrees, augmented
//!   dimensions and the identities relating them;
//! - [`cycletypes`]: conjugacy classes as cycle types, orbit growth exponents
//!   and their elementary bounds;
//! - [`characters`]: irreducible characters via the Murnaghan–Nakayama rule;
//! - [`zeta`]: Witten zeta sums over families of irreducible representations;
//! - [`mixing`]: Diaconis–Shahshahani upper bounds and exact total-variation
//!   distances at small degree;
//! - [`simulate`]: Monte Carlo sampling of class elements, multi-step
//!   products, fixed-point statistics and random surface gluings.
//!
//! Everything that can be exact is exact (`BigUint` / `BigRational`);
//! quantities that overflow any fixed precision are mirrored in the log
//! domain by [`numeric::LogReal`].

pub mod characters;
pub mod cycletypes;
pub mod degrees;
pub mod mixing;
pub mod numeric;
pub mod partitions;
pub mod simulate;
pub mod slicing;
pub mod zeta;

pub use cycletypes::{CycleType, Parity};
pub use numeric::LogReal;
pub use partitions::{Cell, Partition};

/// Errors reported by fallible operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("box ({row},{col}) lies outside the diagram")]
    BoxOutsideDiagram { row: u32, col: u32 },
    #[error("invalid slicing: {0}")]
    InvalidSlicing(String),
    #[error("size mismatch: |lambda| = {lambda} but |rho| = {rho}")]
    SizeMismatch { lambda: u32, rho: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} = {requested} exceeds the configured maximum {max}")]
    ResourceGuard {
        what: &'static str,
        requested: u32,
        max: u32,
    },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource guards for operations whose cost explodes with the degree `n`.
///
/// The defaults keep every operation comfortably inside a desk-scale run.
/// All three limits can be raised together through the `SYMWALK_MAX_N`
/// environment variable (see [`Limits::from_env`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which full character columns are computed.
    pub char_max_n: u32,
    /// Largest `n` for which exact step distributions and total-variation
    /// distances are computed (the class-function tables are p(n) x p(n)).
    pub exact_tv_max_n: u32,
    /// Largest `n` for which Witten zeta sums enumerate every partition of
    /// `n`; beyond this the truncated evaluation is used.
    pub zeta_enum_max_n: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            char_max_n: 18,
            exact_tv_max_n: 10,
            zeta_enum_max_n: 50,
        }
    }
}

impl Limits {
    /// Default limits, with every guard raised to `SYMWALK_MAX_N` when that
    /// environment variable is set to a larger value.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var("SYMWALK_MAX_N") {
            if let Ok(v) = raw.trim().parse::<u32>() {
                limits.char_max_n = limits.char_max_n.max(v);
                limits.exact_tv_max_n = limits.exact_tv_max_n.max(v);
                limits.zeta_enum_max_n = limits.zeta_enum_max_n.max(v);
            }
        }
        limits
    }

    fn check(&self, what: &'static str, requested: u32, max: u32) -> Result<()> {
        if requested > max {
            Err(Error::ResourceGuard {
                what,
                requested,
                max,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_char(&self, n: u32) -> Result<()> {
        self.check("character degree n", n, self.char_max_n)
    }

    pub(crate) fn check_exact_tv(&self, n: u32) -> Result<()> {
        self.check("exact distribution degree n", n, self.exact_tv_max_n)
    }
}
