//! Upper bounds and exact distances for products of uniform conjugacy-class
//! elements: the Diaconis–Shahshahani L2 bound, exact step distributions by
//! Fourier inversion in the class-function basis, and cutoff-window
//! arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::characters::{character_column, CharColumn};
use crate::cycletypes::{CycleType, Parity};
use crate::degrees::dimension;
use crate::numeric::{big_to_ratio, factorial, ratio_to_f64};
use crate::partitions::{enumerate, Partition};
use crate::zeta::Subset;
use crate::{Error, Limits, Result};

/// An ordered family of conjugacy classes of the same symmetric group;
/// the walk multiplies one uniform element of each.
#[derive(Debug, Clone)]
pub struct ClassFamily {
    pub n: u32,
    pub classes: Vec<CycleType>,
}

impl ClassFamily {
    pub fn new(classes: Vec<CycleType>) -> Result<Self> {
        let n = classes
            .first()
            .ok_or_else(|| Error::Domain("empty class family".into()))?
            .n();
        if classes.iter().any(|c| c.n() != n) {
            return Err(Error::Domain("classes of different degrees".into()));
        }
        Ok(ClassFamily { n, classes })
    }

    /// The same class repeated `t` times.
    pub fn repeated(class: &CycleType, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::Domain("a family needs at least one step".into()));
        }
        Ok(ClassFamily {
            n: class.n(),
            classes: vec![class.clone(); t as usize],
        })
    }

    pub fn steps(&self) -> u32 {
        self.classes.len() as u32
    }
}

/// Coset of the alternating group supporting the product: the product of
/// the class signs.
pub fn coset_target(family: &ClassFamily) -> Parity {
    family
        .classes
        .iter()
        .fold(Parity::Even, |acc, c| acc * c.sign())
}

/// Coset supporting `t` steps of a single class, per the walk convention:
/// the odd coset exactly when the class is odd and `t` is odd (for `t = 0`
/// the walk sits at the identity, in the even coset).
pub fn coset_after_steps(class: &CycleType, t: u32) -> Parity {
    class.sign().pow(t)
}

/// The Diaconis–Shahshahani upper bound
/// `(1/2) sqrt( sum_{lambda != [n], [1^n]} (d_lambda prod_i chi^lambda(C_i))^2 )`,
/// accumulated as an exact rational and rooted at the end.
pub fn ds_upper_bound(family: &ClassFamily, limits: &Limits) -> Result<f64> {
    let n = family.n;
    let columns: BTreeMap<CycleType, CharColumn> = {
        let mut m = BTreeMap::new();
        for c in &family.classes {
            if !m.contains_key(c) {
                m.insert(c.clone(), character_column(n, c, limits)?);
            }
        }
        m
    };
    let mut sum = BigRational::zero();
    for lam in enumerate(n) {
        if !Subset::StarStar.contains(&lam) {
            continue;
        }
        let d = big_to_ratio(&dimension(&lam));
        let mut term = d.clone();
        for c in &family.classes {
            let ch = BigRational::from_integer(BigInt::from(columns[c].value(&lam)));
            term *= ch / d.clone();
        }
        sum += term.clone() * term;
    }
    if sum.is_zero() {
        return Ok(0.0);
    }
    Ok(0.5 * ratio_to_f64(&sum).sqrt())
}

/// Exact distribution of the `t`-step product over conjugacy classes,
/// by Fourier inversion:
/// `P(K) = |K| / n! * sum_lambda d_lambda chi^lambda(C)^t ch^lambda(K)`.
#[derive(Debug, Clone)]
pub struct StepDistribution {
    pub n: u32,
    pub t: u32,
    pub coset: Parity,
    pub probabilities: BTreeMap<CycleType, BigRational>,
}

impl StepDistribution {
    /// Probability of the event `{f_1 >= m}` under this distribution.
    pub fn tail_fixed_points(&self, m: u32) -> BigRational {
        self.probabilities
            .iter()
            .filter(|(k, _)| k.fixed_points() >= m)
            .map(|(_, p)| p.clone())
            .sum()
    }
}

/// Computes the exact `t`-step distribution of a single repeated class.
pub fn exact_step_distribution(
    class: &CycleType,
    t: u32,
    limits: &Limits,
) -> Result<StepDistribution> {
    let n = class.n();
    limits.check_exact_tv(n)?;
    let lambdas: Vec<Partition> = enumerate(n).collect();
    let step_col = character_column(n, class, limits)?;
    let dims: Vec<BigRational> = lambdas
        .iter()
        .map(|l| big_to_ratio(&dimension(l)))
        .collect();
    let chi_pow: Vec<BigRational> = lambdas
        .iter()
        .zip(&dims)
        .map(|(lam, d)| {
            let chi = BigRational::from_integer(BigInt::from(step_col.value(lam))) / d.clone();
            num_traits::pow::pow(chi, t as usize)
        })
        .collect();
    let nfact = big_to_ratio(&factorial(n));
    let mut probabilities = BTreeMap::new();
    let mut total = BigRational::zero();
    for target in enumerate(n) {
        let k_class = CycleType::from_partition(&target);
        let col = character_column(n, &k_class, limits)?;
        let mut sum = BigRational::zero();
        for (i, lam) in lambdas.iter().enumerate() {
            sum += dims[i].clone()
                * chi_pow[i].clone()
                * BigRational::from_integer(BigInt::from(col.value(lam)));
        }
        let p = big_to_ratio(&k_class.class_size()) / nfact.clone() * sum;
        assert!(!p.is_negative(), "probabilities must be non-negative");
        total += p.clone();
        probabilities.insert(k_class, p);
    }
    assert!(total.is_one(), "step distribution must sum to 1");
    Ok(StepDistribution {
        n,
        t,
        coset: coset_after_steps(class, t),
        probabilities,
    })
}

/// Exact total-variation distance between the `t`-step product of a class
/// and the uniform measure on its target coset. The mass off the coset must
/// vanish by parity; this is asserted.
pub fn exact_tv(class: &CycleType, t: u32, limits: &Limits) -> Result<BigRational> {
    let n = class.n();
    limits.check_exact_tv(n)?;
    let nfact = big_to_ratio(&factorial(n));
    if t == 0 {
        // point mass at the identity against the uniform even coset
        return Ok(BigRational::one() - BigRational::from_integer(2.into()) / nfact);
    }
    let dist = exact_step_distribution(class, t, limits)?;
    let two = BigRational::from_integer(2.into());
    let mut tv = BigRational::zero();
    for (k, p) in &dist.probabilities {
        if k.sign() == dist.coset {
            let uniform = two.clone() * big_to_ratio(&k.class_size()) / nfact.clone();
            tv += (p - uniform).abs();
        } else {
            assert!(p.is_zero(), "off-coset class {k} carries mass {p}");
            tv += p.clone();
        }
    }
    Ok(tv / two)
}

/// Upper bound and (when within the exact guard, for a repeated class)
/// exact distance for one family of steps.
#[derive(Debug, Clone)]
pub struct MixingReport {
    pub ds_bound: f64,
    /// Present iff the family repeats one class and `n` is within the
    /// exact-distribution guard. Always `<= ds_bound` (up to 1e-12).
    pub exact_tv: Option<BigRational>,
    pub target_coset: Parity,
    pub steps: u32,
}

/// Computes the L2 bound plus, when feasible, the exact distance.
pub fn mixing_report(family: &ClassFamily, limits: &Limits) -> Result<MixingReport> {
    let ds_bound = ds_upper_bound(family, limits)?;
    let same_class = family.classes.windows(2).all(|w| w[0] == w[1]);
    let exact = if same_class && family.n <= limits.exact_tv_max_n {
        Some(exact_tv(&family.classes[0], family.steps(), limits)?)
    } else {
        None
    };
    if let Some(tv) = &exact {
        debug_assert!(ratio_to_f64(tv) <= ds_bound + 1e-12);
    }
    Ok(MixingReport {
        ds_bound,
        exact_tv: exact,
        target_coset: coset_target(family),
        steps: family.steps(),
    })
}

/// Cutoff time `ln n / ln(n / f)` with `f = max(f_1, 1)`; rejected for the
/// identity class where the walk does not move.
pub fn cutoff_time(class: &CycleType) -> Result<f64> {
    let n = class.n();
    if n < 2 {
        return Err(Error::Domain("cutoff time needs n >= 2".into()));
    }
    if class.is_identity() {
        return Err(Error::Domain(
            "cutoff time is undefined for the identity class".into(),
        ));
    }
    let f = class.f_cap() as f64;
    Ok((n as f64).ln() / ((n as f64) / f).ln())
}
