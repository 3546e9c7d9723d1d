//! Monte Carlo engine: uniform sampling inside conjugacy classes, multi-step
//! products, fixed-point statistics, and the random-surface model obtained
//! by gluing the sides of polygons in pairs.
//!
//! Sampling is deterministic for a given seed: work is split into
//! fixed-size chunks, chunk `i` draws from stream `i` of a seeded ChaCha
//! generator, and chunk results merge associatively. Thread count never
//! affects output.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cycletypes::{CycleType, Parity};
use crate::numeric::{factorial, ln_biguint};
use crate::{Error, Result};

/// A permutation of `{1, ..., n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: u32) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::Domain("not a bijection".into()));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn fixed_points(&self) -> u32 {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count() as u32
    }

    pub fn cycle_count(&self) -> u32 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
            }
        }
        count
    }

    pub fn parity(&self) -> Parity {
        Parity::from_transposition_count(self.n() - self.cycle_count())
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        CycleType::from_lengths(lengths).expect("cycle lengths are positive")
    }
}

/// Deterministic factory of independent generator streams.
#[derive(Debug, Clone, Copy)]
pub struct SimRng {
    seed: u64,
}

impl SimRng {
    pub fn new(seed: u64) -> Self {
        SimRng { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Stream `idx` of the seeded generator; streams are independent.
    pub fn stream(&self, idx: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(idx);
        rng
    }
}

const CHUNK: u64 = 8192;

/// Runs `samples` draws split into fixed chunks, each on its own stream,
/// folding per-chunk states and merging in chunk order.
fn chunked<S, FInit, FStep, FMerge>(
    samples: u64,
    rng: &SimRng,
    init: FInit,
    step: FStep,
    merge: FMerge,
) -> S
where
    S: Send,
    FInit: Fn() -> S + Sync,
    FStep: Fn(&mut S, &mut ChaCha8Rng) + Sync,
    FMerge: Fn(S, S) -> S,
{
    let chunks: Vec<(u64, u64)> = (0..samples.div_ceil(CHUNK))
        .map(|i| (i, CHUNK.min(samples - i * CHUNK)))
        .collect();
    let states: Vec<S> = chunks
        .into_par_iter()
        .map(|(idx, count)| {
            let mut rng = rng.stream(idx);
            let mut state = init();
            for _ in 0..count {
                step(&mut state, &mut rng);
            }
            state
        })
        .collect();
    states.into_iter().reduce(merge).unwrap_or_else(init)
}

/// Uniform random permutation by Fisher–Yates.
pub fn sample_uniform(n: u32, rng: &mut ChaCha8Rng) -> Perm {
    let mut images: Vec<u32> = (0..n).collect();
    for i in (1..n as usize).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    Perm { images }
}

/// Uniform permutation of the given coset of the alternating group:
/// a uniform permutation, composed with a fixed transposition when its
/// parity disagrees.
pub fn sample_uniform_coset(n: u32, parity: Parity, rng: &mut ChaCha8Rng) -> Perm {
    assert!(n >= 2, "cosets need n >= 2");
    let mut p = sample_uniform(n, rng);
    if p.parity() != parity {
        p.images.swap(0, 1);
    }
    p
}

/// Uniform element of the conjugacy class with the given cycle type: a
/// fixed cycle template filled with a uniform arrangement of `{1,...,n}`.
pub fn sample_class_element(class: &CycleType, rng: &mut ChaCha8Rng) -> Perm {
    let n = class.n();
    // template_next[pos] = successor of pos when consecutive positions are
    // grouped into cycles of the prescribed lengths
    let mut fill: Vec<u32> = (0..n).collect();
    for i in (1..n as usize).rev() {
        let j = rng.gen_range(0..=i);
        fill.swap(i, j);
    }
    let mut images = vec![0u32; n as usize];
    let mut pos = 0usize;
    for (len, mult) in class.iter() {
        for _ in 0..mult {
            let start = pos;
            for k in 0..len as usize {
                let here = fill[start + k] as usize;
                let next = fill[start + (k + 1) % len as usize];
                images[here] = next;
            }
            pos += len as usize;
        }
    }
    Perm { images }
}

/// Empirical distribution of an integer statistic.
#[derive(Debug, Clone, Default)]
pub struct Histogram {
    counts: BTreeMap<u32, u64>,
    total: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Histogram::default()
    }

    pub fn record(&mut self, value: u32) {
        *self.counts.entry(value).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (v, c) in other.counts {
            *self.counts.entry(v).or_insert(0) += c;
        }
        self.total += other.total;
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, value: u32) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn frequency(&self, value: u32) -> f64 {
        self.count(value) as f64 / self.total.max(1) as f64
    }

    /// Empirical probability of `{value >= m}`.
    pub fn tail(&self, m: u32) -> f64 {
        let c: u64 = self.counts.range(m..).map(|(_, &c)| c).sum();
        c as f64 / self.total.max(1) as f64
    }

    /// Plug-in total-variation distance against an exact distribution.
    pub fn tv_against(&self, exact: &BTreeMap<u32, f64>) -> f64 {
        let mut keys: Vec<u32> = self.counts.keys().copied().collect();
        keys.extend(exact.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        0.5 * keys
            .iter()
            .map(|k| (self.frequency(*k) - exact.get(k).copied().unwrap_or(0.0)).abs())
            .sum::<f64>()
    }
}

/// Histogram of `f_1(sigma_1 ... sigma_t)` over iid uniform class elements.
pub fn walk_fixed_points(class: &CycleType, t: u32, samples: u64, rng: &SimRng) -> Histogram {
    assert!(t >= 1, "walks need at least one step");
    chunked(
        samples,
        rng,
        Histogram::new,
        |hist, rng| {
            let mut prod = sample_class_element(class, rng);
            for _ in 1..t {
                prod = prod.compose(&sample_class_element(class, rng));
            }
            hist.record(prod.fixed_points());
        },
        Histogram::merge,
    )
}

/// Histogram of `f_1` for uniform permutations of a coset.
pub fn coset_fixed_points(n: u32, parity: Parity, samples: u64, rng: &SimRng) -> Histogram {
    chunked(
        samples,
        rng,
        Histogram::new,
        |hist, rng| hist.record(sample_uniform_coset(n, parity, rng).fixed_points()),
        Histogram::merge,
    )
}

/// Estimate of the splitting statistic at the event `{f_1 >= m}`:
/// two-step walk tail minus the uniform-coset tail.
#[derive(Debug, Clone, Copy)]
pub struct SplitReport {
    pub walk_tail: f64,
    pub coset_tail: f64,
    pub statistic: f64,
    /// `f_2 / n`, the transposition density driving the effect.
    pub alpha: f64,
    /// Poisson floor `e^{-a}/2 * a^{m/2} / (m/2)!` at `a = min(alpha, 1/2)`.
    pub poisson_floor: f64,
}

/// Estimates the splitting statistic for the two-step walk of `class`.
/// `m` must be even and at least 2.
pub fn splitting_statistic(
    class: &CycleType,
    m: u32,
    samples: u64,
    rng: &SimRng,
) -> Result<SplitReport> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::Domain(
            "the splitting event needs even m >= 2".into(),
        ));
    }
    let n = class.n();
    let walk = walk_fixed_points(class, 2, samples, &SimRng::new(rng.seed()));
    let coset = coset_fixed_points(
        n,
        Parity::Even,
        samples,
        &SimRng::new(rng.seed().wrapping_add(0x9e3779b97f4a7c15)),
    );
    let alpha = class.multiplicity(2) as f64 / n as f64;
    let a = alpha.min(0.5);
    let half = m / 2;
    let mut fact = 1.0f64;
    for i in 1..=half {
        fact *= i as f64;
    }
    let poisson_floor = if a > 0.0 {
        (-a).exp() / 2.0 * a.powi(half as i32) / fact
    } else {
        0.0
    };
    Ok(SplitReport {
        walk_tail: walk.tail(m),
        coset_tail: coset.tail(m),
        statistic: walk.tail(m) - coset.tail(m),
        alpha,
        poisson_floor,
    })
}

/// Face degrees of the gluing model: `n_j` polygons with `j` sides each,
/// total side count `2N` even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSpec {
    face_degrees: BTreeMap<u32, u32>,
}

impl GlueSpec {
    pub fn new(face_degrees: BTreeMap<u32, u32>) -> Result<Self> {
        let spec = GlueSpec { face_degrees };
        if spec.face_degrees.keys().any(|&j| j == 0) {
            return Err(Error::Domain("polygons need at least one side".into()));
        }
        if !spec.half_edges().is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "total side count {} is odd; sides glue in pairs",
                spec.half_edges()
            )));
        }
        if spec.half_edges() == 0 {
            return Err(Error::Domain("no polygons".into()));
        }
        Ok(spec)
    }

    /// Parses the `j^m` grammar: `3^20` is twenty triangles.
    pub fn parse(text: &str) -> Result<Self> {
        let sides = crate::cycletypes::parse_term_list(text)?;
        let mut map = BTreeMap::new();
        for j in sides {
            *map.entry(j).or_insert(0) += 1;
        }
        GlueSpec::new(map)
    }

    /// Total number of sides, `2N`.
    pub fn half_edges(&self) -> u32 {
        self.face_degrees.iter().map(|(&j, &m)| j * m).sum()
    }

    /// Number of edges after gluing, `N`.
    pub fn edges(&self) -> u32 {
        self.half_edges() / 2
    }

    pub fn faces(&self) -> u32 {
        self.face_degrees.values().sum()
    }

    pub fn monogons(&self) -> u32 {
        self.face_degrees.get(&1).copied().unwrap_or(0)
    }

    pub fn bigons(&self) -> u32 {
        self.face_degrees.get(&2).copied().unwrap_or(0)
    }

    /// The conjugacy class of the side-successor permutation.
    pub fn side_class(&self) -> CycleType {
        let mut lengths = Vec::new();
        for (&j, &m) in &self.face_degrees {
            lengths.extend(std::iter::repeat_n(j, m as usize));
        }
        CycleType::from_lengths(lengths).expect("side counts are positive")
    }

    pub fn compact(&self) -> String {
        self.side_class().compact()
    }
}

/// Combinatorial data of one sampled glued surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceResult {
    /// Cycles of the side-successor composed with the gluing involution.
    pub vertices: u32,
    pub edges: u32,
    pub faces: u32,
    /// Orbits of the group generated by both permutations.
    pub components: u32,
    /// Sum of the per-component genera.
    pub genus_total: u32,
    pub genus_by_component: Vec<u32>,
}

impl SurfaceResult {
    /// Euler consistency: `V - E + F = 2 * components - 2 * total genus`.
    pub fn euler_consistent(&self) -> bool {
        let chi = self.vertices as i64 - self.edges as i64 + self.faces as i64;
        chi == 2 * self.components as i64 - 2 * self.genus_total as i64
    }
}

/// Uniform fixed-point-free involution on `0..2n`, pairing the lowest
/// unpaired point with a uniform unpaired partner.
pub fn sample_involution(half_edges: u32, rng: &mut ChaCha8Rng) -> Perm {
    assert!(half_edges.is_multiple_of(2));
    let mut images = vec![u32::MAX; half_edges as usize];
    let mut free: Vec<u32> = (0..half_edges).rev().collect(); // pop from the back = lowest
    while let Some(a) = free.pop() {
        let j = rng.gen_range(0..free.len());
        let b = free.remove(j);
        images[a as usize] = b;
        images[b as usize] = a;
    }
    Perm { images }
}

/// Glues the polygons of `spec` uniformly at random and reads off the
/// surface data.
pub fn glue_surface(spec: &GlueSpec, rng: &mut ChaCha8Rng) -> SurfaceResult {
    let two_n = spec.half_edges();
    let alpha = sample_class_element(&spec.side_class(), rng);
    let beta = sample_involution(two_n, rng);
    surface_from_permutations(spec, &alpha, &beta)
}

/// Surface data for explicit `alpha` (side successor) and `beta` (gluing).
pub fn surface_from_permutations(spec: &GlueSpec, alpha: &Perm, beta: &Perm) -> SurfaceResult {
    let two_n = spec.half_edges();
    let product = alpha.compose(beta);

    // components: orbits under both generators (union-find)
    let mut parent: Vec<u32> = (0..two_n).collect();
    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut x = x;
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for x in 0..two_n {
        for y in [alpha.image(x), beta.image(x)] {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a as usize] = b;
            }
        }
    }

    // per-component counts of vertices (product cycles), edges, faces
    let mut comp_index: BTreeMap<u32, usize> = BTreeMap::new();
    for x in 0..two_n {
        let root = find(&mut parent, x);
        let next = comp_index.len();
        comp_index.entry(root).or_insert(next);
    }
    let comps = comp_index.len();
    let mut v = vec![0u32; comps];
    let mut e = vec![0u32; comps];
    let mut f = vec![0u32; comps];

    let mut seen = vec![false; two_n as usize];
    for start in 0..two_n {
        if seen[start as usize] {
            continue;
        }
        let c = comp_index[&find(&mut parent, start)];
        v[c] += 1;
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = product.image(x);
        }
    }
    for x in 0..two_n {
        let c = comp_index[&find(&mut parent, x)];
        e[c] += 1; // two half-edges per edge, fixed below
    }
    let mut seen = vec![false; two_n as usize];
    for start in 0..two_n {
        if seen[start as usize] {
            continue;
        }
        let c = comp_index[&find(&mut parent, start)];
        f[c] += 1;
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = alpha.image(x);
        }
    }

    let mut genus_by_component = Vec::with_capacity(comps);
    let mut genus_total = 0u32;
    for c in 0..comps {
        let edges = e[c] / 2;
        let chi = v[c] as i64 - edges as i64 + f[c] as i64;
        debug_assert!(chi <= 2 && chi % 2 == 0, "chi = {chi}");
        let genus = ((2 - chi) / 2) as u32;
        genus_by_component.push(genus);
        genus_total += genus;
    }

    SurfaceResult {
        vertices: product.cycle_count(),
        edges: spec.edges(),
        faces: spec.faces(),
        components: comps as u32,
        genus_total,
        genus_by_component,
    }
}

/// Unsigned Stirling numbers of the first kind `c(n, k)` for `n <= nmax`:
/// `c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k)`.
pub fn stirling_first_unsigned(nmax: u32) -> Vec<Vec<BigUint>> {
    let nmax = nmax as usize;
    let mut table = vec![vec![BigUint::zero(); nmax + 1]; nmax + 1];
    table[0][0] = BigUint::one();
    for n in 1..=nmax {
        for k in 1..=n {
            let carry = BigUint::from(n as u32 - 1) * &table[n - 1][k];
            table[n][k] = &table[n - 1][k - 1] + carry;
        }
    }
    table
}

/// Exact distribution of the cycle count of a uniform permutation drawn
/// from one coset of the alternating group: the count `k` appears with
/// probability `2 c(n,k) / n!` when `n - k` has the coset's parity.
pub fn coset_cycle_count_distribution(n: u32, parity: Parity) -> BTreeMap<u32, f64> {
    let stirling = stirling_first_unsigned(n);
    let ln_half_order = ln_biguint(&factorial(n)) - std::f64::consts::LN_2;
    let mut out = BTreeMap::new();
    for k in 1..=n {
        if Parity::from_transposition_count(n - k) != parity {
            continue;
        }
        let c = &stirling[n as usize][k as usize];
        if c.is_zero() {
            continue;
        }
        out.insert(k, (ln_biguint(c) - ln_half_order).exp());
    }
    out
}

/// Monte Carlo comparison of the glued-surface vertex count against the
/// exact coset cycle-count law.
#[derive(Debug, Clone)]
pub struct MapsReport {
    pub histogram: Histogram,
    pub baseline: BTreeMap<u32, f64>,
    pub baseline_parity: Parity,
    pub tv_estimate: f64,
    pub euler_violations: u64,
    /// The comparison theorem assumes no monogons; flagged, not enforced.
    pub regime_ok: bool,
    pub mean_genus: f64,
}

/// Parity of the baseline coset: the product permutation acts on the side
/// set, so the baseline is the cycle count of a uniform permutation of the
/// sides with `sign(tau) = sign(alpha) sign(beta)` (the alternating group
/// of the sides when the two classes have the same sign).
fn baseline_parity(spec: &GlueSpec) -> Parity {
    let beta_sign = Parity::from_transposition_count(spec.edges());
    spec.side_class().sign() * beta_sign
}

/// Samples surfaces and compares the vertex-count law with the exact
/// cycle-count distribution over the matching coset of the side set.
pub fn vertex_count_comparison(spec: &GlueSpec, samples: u64, rng: &SimRng) -> MapsReport {
    #[derive(Default)]
    struct State {
        hist: Histogram,
        euler_violations: u64,
        genus_sum: u64,
    }
    let state = chunked(
        samples,
        rng,
        State::default,
        |state, rng| {
            let s = glue_surface(spec, rng);
            state.hist.record(s.vertices);
            if !s.euler_consistent() {
                state.euler_violations += 1;
            }
            state.genus_sum += s.genus_total as u64;
        },
        |mut a, b| {
            a.hist = a.hist.merge(b.hist);
            a.euler_violations += b.euler_violations;
            a.genus_sum += b.genus_sum;
            a
        },
    );
    let parity = baseline_parity(spec);
    let baseline = coset_cycle_count_distribution(spec.half_edges(), parity);
    let tv = state.hist.tv_against(&baseline);
    MapsReport {
        tv_estimate: tv,
        baseline,
        baseline_parity: parity,
        euler_violations: state.euler_violations,
        regime_ok: spec.monogons() == 0,
        mean_genus: state.genus_sum as f64 / samples.max(1) as f64,
        histogram: state.hist,
    }
}
