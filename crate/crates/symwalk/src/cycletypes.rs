//! Cycle types of conjugacy classes, orbit growth sequences and the
//! elementary bounds on the orbit growth exponent `E`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::One;

use crate::numeric::factorial;
use crate::partitions::Partition;
use crate::{Error, Result};

/// Parity of a permutation or coset of the alternating group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_transposition_count(k: u32) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn pow(self, t: u32) -> Self {
        match self {
            Parity::Even => Parity::Even,
            Parity::Odd => Parity::from_transposition_count(t),
        }
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Parses a comma (or dash) separated list of `L` / `L^M` terms into the
/// multiset of values it denotes, expanded. Whitespace is ignored.
pub(crate) fn parse_term_list(text: &str) -> Result<Vec<u32>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty cycle-type expression".into()));
    }
    let mut out = Vec::new();
    for term in cleaned.split([',', '-']) {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let (len_s, mult_s) = match term.split_once('^') {
            Some((l, m)) => (l, Some(m)),
            None => (term, None),
        };
        let len: u32 = len_s
            .parse()
            .map_err(|_| Error::Parse(format!("bad length `{len_s}` in `{text}`")))?;
        let mult: u32 = match mult_s {
            Some(m) => m
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity `{m}` in `{text}`")))?,
            None => 1,
        };
        if len == 0 || mult == 0 {
            return Err(Error::Parse(format!(
                "lengths and multiplicities must be positive in `{text}`"
            )));
        }
        out.extend(std::iter::repeat_n(len, mult as usize));
    }
    Ok(out)
}

/// The cycle type of a conjugacy class of the symmetric group of degree `n`:
/// a multiset of cycle lengths with `sum(i * f_i) = n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    n: u32,
    mult: BTreeMap<u32, u32>,
}

impl CycleType {
    pub fn from_lengths<I: IntoIterator<Item = u32>>(lengths: I) -> Result<Self> {
        let mut mult = BTreeMap::new();
        let mut n = 0u32;
        for len in lengths {
            if len == 0 {
                return Err(Error::Parse("cycle length 0".into()));
            }
            *mult.entry(len).or_insert(0) += 1;
            n += len;
        }
        Ok(CycleType { n, mult })
    }

    /// Parses the cycle-type grammar; when `expect_n` is given, the total
    /// must match it, otherwise `n` is inferred as the total.
    pub fn parse(text: &str, expect_n: Option<u32>) -> Result<Self> {
        let ct = CycleType::from_lengths(parse_term_list(text)?)?;
        if let Some(n) = expect_n {
            if ct.n != n {
                return Err(Error::Parse(format!(
                    "cycle type `{text}` has total {} but n = {n} was declared",
                    ct.n
                )));
            }
        }
        Ok(ct)
    }

    pub fn identity(n: u32) -> Self {
        let mut mult = BTreeMap::new();
        if n > 0 {
            mult.insert(1, n);
        }
        CycleType { n, mult }
    }

    pub fn from_partition(p: &Partition) -> Self {
        CycleType::from_lengths(p.parts().iter().cloned()).expect("partition parts are positive")
    }

    /// Cycle lengths in weakly decreasing order, as a partition of `n`.
    pub fn to_partition(&self) -> Partition {
        let mut lens = Vec::new();
        for (&len, &m) in self.mult.iter().rev() {
            lens.extend(std::iter::repeat_n(len, m as usize));
        }
        Partition::new(lens).expect("lengths are sorted and positive")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `f_i`: number of cycles of length `i`.
    pub fn multiplicity(&self, len: u32) -> u32 {
        self.mult.get(&len).copied().unwrap_or(0)
    }

    /// Iterates `(length, multiplicity)` by increasing length.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.mult.iter().map(|(&l, &m)| (l, m))
    }

    /// Total number of cycles.
    pub fn cycle_count(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn fixed_points(&self) -> u32 {
        self.multiplicity(1)
    }

    /// `f = max(f_1, 1)`.
    pub fn f_cap(&self) -> u32 {
        self.fixed_points().max(1)
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points() == self.n
    }

    pub fn sign(&self) -> Parity {
        Parity::from_transposition_count(self.n - self.cycle_count())
    }

    /// Length of the smallest cycle.
    pub fn i_min(&self) -> u32 {
        *self.mult.keys().next().expect("cycle type of n >= 1")
    }

    /// Length of the smallest non-trivial cycle; `None` for the identity.
    pub fn i_bis(&self) -> Option<u32> {
        self.mult.keys().find(|&&l| l >= 2).copied()
    }

    /// Centralizer size `z = prod(i^{f_i} f_i!)`.
    pub fn centralizer_size(&self) -> BigUint {
        let mut z = BigUint::one();
        for (&len, &m) in &self.mult {
            z *= BigUint::from(len).pow(m) * factorial(m);
        }
        z
    }

    /// Size of the conjugacy class, `n! / z`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.n) / self.centralizer_size()
    }

    /// Compact display: `3^2-2-1^2`, largest lengths first.
    pub fn compact(&self) -> String {
        self.to_partition().compact()
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType[{}]", self.compact())
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

/// Orbit growth data of a cycle type: the sequence `(e_i)` defined by
/// `n^{e_1 + ... + e_i} = max(Sigma_i, 1)` with `Sigma_i = sum_{j<=i} j f_j`,
/// its weighted sum `E = sum e_i / i`, and the companion cycle-growth
/// exponent `B = sum b_k / (k(k+1))` with `n^{b_k} = max(F_k, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitGrowth {
    /// `e[i-1]` is `e_i`; the vector has length `n`.
    pub e: Vec<f64>,
    /// `E = sum e_i / i`.
    pub exponent: f64,
    /// `B = sum b_k / (k(k+1))`, evaluated with its exact constant tail.
    pub b_exponent: f64,
    pub i_min: u32,
    pub i_bis: Option<u32>,
    pub f_cap: u32,
}

/// Computes the orbit growth sequence and exponents. Requires `n >= 2`
/// (logarithms of `n` appear in denominators).
pub fn orbit_growth(ct: &CycleType) -> Result<OrbitGrowth> {
    let n = ct.n();
    if n < 2 {
        return Err(Error::Domain(format!(
            "orbit growth needs n >= 2, got n = {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    let imin = ct.i_min();
    let mut e = vec![0.0f64; n as usize];
    let mut sigma: u64 = 0;
    for i in 1..=n {
        let fi = ct.multiplicity(i) as u64;
        let prev = sigma;
        sigma += i as u64 * fi;
        if i < imin {
            continue;
        }
        if i == imin {
            e[i as usize - 1] = ((imin as u64 * fi) as f64).ln() / ln_n;
        } else if fi > 0 {
            e[i as usize - 1] = ((sigma as f64) / (prev as f64)).ln() / ln_n;
        }
    }
    let exponent: f64 = e
        .iter()
        .enumerate()
        .map(|(idx, ei)| ei / (idx as f64 + 1.0))
        .sum();

    // b_k = ln(max(F_k, 1)) / ln n is constant for k >= n; the remaining
    // tail sum_{k>=n} 1/(k(k+1)) telescopes to 1/n.
    let mut b_exponent = 0.0;
    let mut f_running: u64 = 0;
    for k in 1..=n {
        f_running += ct.multiplicity(k) as u64;
        let bk = if f_running <= 1 {
            0.0
        } else {
            (f_running as f64).ln() / ln_n
        };
        if k < n {
            b_exponent += bk / (k as f64 * (k as f64 + 1.0));
        } else {
            b_exponent += bk / k as f64;
        }
    }

    Ok(OrbitGrowth {
        e,
        exponent,
        b_exponent,
        i_min: imin,
        i_bis: ct.i_bis(),
        f_cap: ct.f_cap(),
    })
}

/// `E(sigma) <= ln(max(cyc, 2)) / ln n`.
pub fn e_bound_cycles(ct: &CycleType) -> f64 {
    (ct.cycle_count().max(2) as f64).ln() / (ct.n() as f64).ln()
}

/// `E(sigma) <= (1 / i_min) * ln(i_min * cyc) / ln n`.
pub fn e_bound_imin(ct: &CycleType) -> f64 {
    let imin = ct.i_min() as f64;
    ((imin * ct.cycle_count() as f64).ln() / (ct.n() as f64).ln()) / imin
}

/// `E(sigma) <= 1 - (1 - 1/i_bis) * ln(n / f_1) / ln n`, valid for
/// non-identity classes with at least one fixed point.
pub fn e_bound_ibis(ct: &CycleType) -> Result<f64> {
    let ibis = ct
        .i_bis()
        .ok_or_else(|| Error::Domain("i_bis bound is undefined for the identity class".into()))?;
    if ct.fixed_points() == 0 {
        return Err(Error::Domain(
            "i_bis bound needs at least one fixed point".into(),
        ));
    }
    let n = ct.n() as f64;
    let f1 = ct.fixed_points() as f64;
    Ok(1.0 - (n / f1).ln() / n.ln() * (1.0 - 1.0 / ibis as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions;

    fn ct(text: &str) -> CycleType {
        CycleType::parse(text, None).unwrap()
    }

    #[test]
    fn parse_examples() {
        let c = CycleType::parse("2^5", Some(10)).unwrap();
        assert_eq!(c.multiplicity(2), 5);
        assert_eq!(c.n(), 10);

        let c = ct("3,3,2,1,1");
        assert_eq!(c.n(), 10);
        assert_eq!(c.multiplicity(3), 2);
        assert_eq!(c.multiplicity(2), 1);
        assert_eq!(c.multiplicity(1), 2);

        let c = ct("10");
        assert_eq!(c.n(), 10);
        assert_eq!(c.cycle_count(), 1);

        assert!(CycleType::parse("2^5", Some(11)).is_err());
        assert!(CycleType::parse("2^", None).is_err());
        assert!(CycleType::parse("x", None).is_err());
    }

    #[test]
    fn sign_and_counts() {
        assert_eq!(ct("2,1,1").sign(), Parity::Odd);
        assert_eq!(ct("3").sign(), Parity::Even);
        assert_eq!(ct("2^5").sign(), Parity::Odd);
        assert_eq!(CycleType::identity(7).sign(), Parity::Even);
        assert_eq!(ct("4,3,2,1").cycle_count(), 4);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(ct("2,1,1").class_size(), BigUint::from(6u32)); // transpositions in S4
        assert_eq!(ct("3").class_size(), BigUint::from(2u32)); // 3-cycles in S3
        assert_eq!(ct("2^5").class_size(), BigUint::from(945u32)); // 10!/(2^5 5!)
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=8u32 {
            let total: BigUint = partitions::enumerate(n)
                .map(|p| CycleType::from_partition(&p).class_size())
                .sum();
            assert_eq!(total, factorial(n));
        }
    }

    // Exhaustive class-size oracle: count permutations of S_n by cycle type.
    #[test]
    fn class_size_matches_exhaustive_count() {
        fn cycle_type_of(perm: &[usize]) -> Vec<u32> {
            let n = perm.len();
            let mut seen = vec![false; n];
            let mut lens = Vec::new();
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut len = 0u32;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                    len += 1;
                }
                lens.push(len);
            }
            lens.sort_unstable_by(|a, b| b.cmp(a));
            lens
        }
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        for n in 1..=6usize {
            let mut counts: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
            for p in permutations(n) {
                *counts.entry(cycle_type_of(&p)).or_insert(0) += 1;
            }
            for lam in partitions::enumerate(n as u32) {
                let c = CycleType::from_partition(&lam);
                let expect = counts.get(lam.parts()).copied().unwrap_or(0);
                assert_eq!(c.class_size(), BigUint::from(expect), "n={n} class={c}");
            }
        }
    }

    #[test]
    fn orbit_growth_examples() {
        // fixed-point-free involutions: E = 1/2
        let g = orbit_growth(&ct("2^5")).unwrap();
        assert!((g.exponent - 0.5).abs() < 1e-12);
        assert!((g.e[1] - 1.0).abs() < 1e-12);

        // n-cycle: E = 1/n
        let g = orbit_growth(&ct("10")).unwrap();
        assert!((g.exponent - 0.1).abs() < 1e-12);

        // identity: e_1 = 1, E = 1
        let g = orbit_growth(&CycleType::identity(10)).unwrap();
        assert!((g.e[0] - 1.0).abs() < 1e-12);
        assert!((g.exponent - 1.0).abs() < 1e-12);

        // [k, 1^(n-k)] with k = 4, n = 16, f = 12:
        // E = ln f / ln n + ln(n/f) / (k ln n)
        let g = orbit_growth(&ct("4,1^12")).unwrap();
        let (n, f, k) = (16f64, 12f64, 4f64);
        let expect = f.ln() / n.ln() + (n / f).ln() / (k * n.ln());
        assert!((g.exponent - expect).abs() < 1e-12);

        assert!(orbit_growth(&CycleType::identity(1)).is_err());
    }

    #[test]
    fn e_bounds_examples() {
        // n-cycle: bound ln2/ln n >= 1/n
        let c = ct("10");
        let b = e_bound_cycles(&c);
        assert!((b - 2f64.ln() / 10f64.ln()).abs() < 1e-12);
        assert!(orbit_growth(&c).unwrap().exponent <= b);

        // identity: equality E = 1
        let id = CycleType::identity(10);
        assert!((e_bound_cycles(&id) - 1.0).abs() < 1e-12);
        assert!((e_bound_imin(&id) - 1.0).abs() < 1e-12);
        assert!(e_bound_ibis(&id).is_err());

        // [2^5]: i_min bound is tight
        let c = ct("2^5");
        assert!((e_bound_imin(&c) - 0.5).abs() < 1e-12);

        // [2^5]: cycle bound ln5/ln10 vs E = 1/2
        assert!((e_bound_cycles(&c) - 5f64.ln() / 10f64.ln()).abs() < 1e-12);

        // classes of fixed points and l-cycles only: i_bis bound is tight
        let c = ct("5,5,1^6");
        let g = orbit_growth(&c).unwrap();
        let b = e_bound_ibis(&c).unwrap();
        assert!(
            (g.exponent - b).abs() < 1e-12,
            "E={} bound={}",
            g.exponent,
            b
        );
    }

    #[test]
    fn orbit_growth_sums_to_one_and_bounds_hold() {
        for n in 2..=30u32 {
            for lam in partitions::enumerate(n) {
                let c = CycleType::from_partition(&lam);
                let g = orbit_growth(&c).unwrap();
                let total: f64 = g.e.iter().sum();
                assert!((total - 1.0).abs() < 1e-12, "sum e_i != 1 for {c}");
                assert!(g.exponent <= 1.0 + 1e-12);
                assert!(
                    g.exponent <= e_bound_cycles(&c) + 1e-12,
                    "cyc bound fails for {c}"
                );
                assert!(
                    g.exponent <= e_bound_imin(&c) + 1e-12,
                    "imin bound fails for {c}"
                );
                if c.fixed_points() == 0 {
                    assert!(g.exponent <= 0.5 + 1e-12, "fpf bound fails for {c}");
                }
                if c.fixed_points() >= 1 {
                    let f = c.f_cap() as f64;
                    let nn = n as f64;
                    assert!(
                        g.exponent - 1.0 <= -0.5 * (nn / f).ln() / nn.ln() + 1e-12,
                        "fixed-point bound fails for {c}"
                    );
                    if !c.is_identity() {
                        assert!(
                            g.exponent <= e_bound_ibis(&c).unwrap() + 1e-12,
                            "ibis bound fails for {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn compact_roundtrip() {
        let c = ct("3,3,2,1,1");
        assert_eq!(c.compact(), "3^2-2-1^2");
        assert_eq!(CycleType::parse(&c.compact(), Some(10)).unwrap(), c);
    }
}
