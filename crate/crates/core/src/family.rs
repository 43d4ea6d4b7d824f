//! Laws of `Y_n = X_1 + ... + X_n` for families parameterized by their mean.
//!
//! A family exposes the log-pmf of `Y_n` and, optionally, a faster summation
//! over an integer range. Range probabilities `Pr{k <= Y_n <= l | theta}` are
//! the only quantity the coverage computations need.
//!
//! Every family used for the finite-set reduction must satisfy the standing
//! assumption that `Pr{Y_n ∈ I | theta}` is continuous and unimodal in `theta`
//! for every integer interval `I`. Bernoulli and Poisson do. Custom families
//! are accepted on the caller's word; [`unimodality_violations`] is a
//! diagnostic, not a proof.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Admissible parameter range, possibly closed at either end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSpace {
    pub lower: Rational,
    pub lower_closed: bool,
    /// `None` means unbounded above.
    pub upper: Option<Rational>,
    pub upper_closed: bool,
}

impl ParamSpace {
    pub fn contains(&self, theta: Rational) -> bool {
        let above = if self.lower_closed {
            theta >= self.lower
        } else {
            theta > self.lower
        };
        let below = match self.upper {
            None => true,
            Some(u) if self.upper_closed => theta <= u,
            Some(u) => theta < u,
        };
        above && below
    }

    pub fn describe(&self) -> String {
        let open = if self.lower_closed { '[' } else { '(' };
        let upper = match self.upper {
            Some(u) => format!("{}{}", fmt_short(u), if self.upper_closed { ']' } else { ')' }),
            None => "inf)".to_string(),
        };
        format!("{}{}, {}", open, fmt_short(self.lower), upper)
    }
}

fn fmt_short(x: Rational) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}", x)
    }
}

/// An integer-valued distribution parameterized by its mean.
pub trait DistributionFamily: Send + Sync {
    /// Identifier used on the command line (`"bernoulli"`, `"poisson"`).
    fn name(&self) -> &str;

    fn param_space(&self) -> ParamSpace;

    /// Integer support `(k_min, k_max)` of `Y_n`; `k_max = None` when unbounded.
    fn support(&self, n: u64) -> (i64, Option<i64>);

    /// `ln Pr{Y_n = k | theta}` for `k` in the support and admissible `theta`.
    /// May return `-inf` for impossible outcomes.
    fn ln_pmf(&self, n: u64, theta: f64, k: i64) -> f64;

    /// Truncation point used in place of an unbounded upper support.
    fn tail_cutoff(&self, n: u64, theta: f64) -> i64 {
        let mean = n as f64 * theta;
        libm::ceil(libm::ceil(mean) + 40.0 * libm::sqrt(mean) + 40.0) as i64
    }

    /// `Σ_{k=lo}^{hi} Pr{Y_n = k | theta}` with `lo <= hi` inside the
    /// (truncated) support.
    fn range_sum(&self, n: u64, theta: f64, lo: i64, hi: i64) -> f64 {
        let mut sum = CompensatedSum::default();
        for k in lo..=hi {
            sum.add(libm::exp(self.ln_pmf(n, theta, k)));
        }
        sum.value()
    }
}

/// `X ~ Bernoulli(theta)`, so `Y_n ~ Binomial(n, theta)`; `theta ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bernoulli;

/// `X ~ Poisson(theta)`, so `Y_n ~ Poisson(n * theta)`; `theta > 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Poisson;

impl DistributionFamily for Bernoulli {
    fn name(&self) -> &str {
        "bernoulli"
    }

    fn param_space(&self) -> ParamSpace {
        ParamSpace {
            lower: Rational::ZERO,
            lower_closed: true,
            upper: Some(Rational::ONE),
            upper_closed: true,
        }
    }

    fn support(&self, n: u64) -> (i64, Option<i64>) {
        (0, Some(n as i64))
    }

    fn ln_pmf(&self, n: u64, theta: f64, k: i64) -> f64 {
        let n_i = n as i64;
        if k < 0 || k > n_i {
            return f64::NEG_INFINITY;
        }
        if theta == 0.0 {
            return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        if theta == 1.0 {
            return if k == n_i { 0.0 } else { f64::NEG_INFINITY };
        }
        ln_binomial_pmf(n as f64, k as f64, theta)
    }

    fn range_sum(&self, n: u64, theta: f64, lo: i64, hi: i64) -> f64 {
        let n_i = n as i64;
        if theta == 0.0 {
            return if lo <= 0 && 0 <= hi { 1.0 } else { 0.0 };
        }
        if theta == 1.0 {
            return if lo <= n_i && n_i <= hi { 1.0 } else { 0.0 };
        }
        let mode = (libm::floor((n as f64 + 1.0) * theta) as i64).min(n_i);
        let odds = theta / (1.0 - theta);
        anchored_sum(lo, hi, mode, |k| self.ln_pmf(n, theta, k), |k| {
            (n_i - k) as f64 / (k + 1) as f64 * odds
        })
    }
}

impl DistributionFamily for Poisson {
    fn name(&self) -> &str {
        "poisson"
    }

    fn param_space(&self) -> ParamSpace {
        ParamSpace {
            lower: Rational::ZERO,
            lower_closed: false,
            upper: None,
            upper_closed: false,
        }
    }

    fn support(&self, _n: u64) -> (i64, Option<i64>) {
        (0, None)
    }

    fn ln_pmf(&self, n: u64, theta: f64, k: i64) -> f64 {
        if k < 0 {
            return f64::NEG_INFINITY;
        }
        ln_poisson_pmf(k as f64, n as f64 * theta)
    }

    fn range_sum(&self, n: u64, theta: f64, lo: i64, hi: i64) -> f64 {
        let lambda = n as f64 * theta;
        let mode = libm::floor(lambda) as i64;
        anchored_sum(lo, hi, mode, |k| self.ln_pmf(n, theta, k), |k| {
            lambda / (k + 1) as f64
        })
    }
}

/// Sums a unimodal pmf over `lo..=hi` starting from the term nearest the mode
/// and walking outward with the ratio `pmf(k + 1) / pmf(k)`.
///
/// Only one log-pmf evaluation is needed; terms shrink away from the anchor,
/// so the walk stops once a term underflows to zero.
fn anchored_sum(
    lo: i64,
    hi: i64,
    mode: i64,
    ln_pmf: impl Fn(i64) -> f64,
    ratio: impl Fn(i64) -> f64,
) -> f64 {
    debug_assert!(lo <= hi);
    let anchor = mode.clamp(lo, hi);
    let first = libm::exp(ln_pmf(anchor));
    if first == 0.0 {
        return 0.0;
    }
    let mut sum = CompensatedSum::default();
    sum.add(first);

    let mut term = first;
    let mut k = anchor;
    while k < hi {
        term *= ratio(k);
        k += 1;
        if term == 0.0 {
            break;
        }
        sum.add(term);
    }

    term = first;
    k = anchor;
    while k > lo {
        term /= ratio(k - 1);
        k -= 1;
        if term == 0.0 {
            break;
        }
        sum.add(term);
    }
    sum.value()
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

// Log-pmfs in saddle-point form: ln k! is split into Stirling's formula plus
// a small correction, and x ln(x/m) + m - x is evaluated without
// cancellation. Plain log-gamma loses ~1e-12 relative accuracy once the
// terms reach the thousands.

/// `ln k! − ln(√(2πk) (k/e)^k)` for integer `k >= 1`.
#[allow(clippy::excessive_precision)]
fn stirling_error(k: f64) -> f64 {
    const TABLE: [f64; 16] = [
        0.0,
        0.081_061_466_795_327_258_22,
        0.041_340_695_955_409_294_094,
        0.027_677_925_684_998_339_149,
        0.020_790_672_103_765_093_112,
        0.016_644_691_189_821_192_163,
        0.013_876_128_823_070_747_999,
        0.011_896_709_945_891_770_095,
        0.010_411_265_261_972_096_497,
        0.009_255_462_182_712_732_917_7,
        0.008_330_563_433_362_871_256_5,
        0.007_573_675_487_951_840_795,
        0.006_942_840_107_209_529_865_7,
        0.006_408_994_188_004_207_068_4,
        0.005_951_370_112_758_847_735_6,
        0.005_554_733_551_962_801_371,
    ];
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if k <= 15.0 {
        return TABLE[k as usize];
    }
    let kk = k * k;
    if k > 500.0 {
        (S0 - S1 / kk) / k
    } else if k > 80.0 {
        (S0 - (S1 - S2 / kk) / kk) / k
    } else if k > 35.0 {
        (S0 - (S1 - (S2 - S3 / kk) / kk) / kk) / k
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / kk) / kk) / kk) / kk) / k
    }
}

/// Deviance term `x ln(x/m) + m − x`.
fn deviance(x: f64, m: f64) -> f64 {
    if libm::fabs(x - m) < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let vv = v * v;
        for j in 1..1000 {
            ej *= vv;
            let next = s + ej / f64::from(2 * j + 1);
            if next == s {
                return next;
            }
            s = next;
        }
        s
    } else {
        x * libm::log(x / m) + m - x
    }
}

const LN_2PI: f64 = 1.837_877_066_409_345_5;

fn ln_poisson_pmf(k: f64, lambda: f64) -> f64 {
    if k == 0.0 {
        return -lambda;
    }
    -stirling_error(k) - deviance(k, lambda) - 0.5 * (LN_2PI + libm::log(k))
}

/// For `0 < p < 1`.
fn ln_binomial_pmf(n: f64, k: f64, p: f64) -> f64 {
    let q = 1.0 - p;
    if k == 0.0 {
        return n * libm::log1p(-p);
    }
    if k == n {
        return n * libm::log(p);
    }
    let lc = stirling_error(n) - stirling_error(k) - stirling_error(n - k)
        - deviance(k, n * p)
        - deviance(n - k, n * q);
    let lf = LN_2PI + libm::log(k) + libm::log1p(-k / n);
    lc - 0.5 * lf
}

pub(crate) fn check_theta(family: &dyn DistributionFamily, theta: Rational) -> Result<f64> {
    let space = family.param_space();
    if !space.contains(theta) {
        return Err(Error::Domain {
            theta,
            allowed: format!("the {} parameter space {}", family.name(), space.describe()),
        });
    }
    Ok(theta.to_f64())
}

/// `Pr{Y_n = k | theta}`; zero outside the support.
pub fn pmf(family: &dyn DistributionFamily, n: u64, theta: Rational, k: i64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    let theta = check_theta(family, theta)?;
    let (k_min, k_max) = family.support(n);
    if k < k_min || k_max.is_some_and(|m| k > m) {
        return Ok(0.0);
    }
    Ok(libm::exp(family.ln_pmf(n, theta, k)))
}

/// `S(n, k, l, theta) = Pr{k <= Y_n <= l | theta}`; zero when `k > l`.
pub fn prob_range(
    family: &dyn DistributionFamily,
    n: u64,
    k: i64,
    l: i64,
    theta: Rational,
) -> Result<f64> {
    prob_between(family, n, Some(k), Some(l), theta)
}

/// `Pr{lo <= Y_n <= hi | theta}` where a missing bound is unbounded.
pub fn prob_between(
    family: &dyn DistributionFamily,
    n: u64,
    lo: Option<i64>,
    hi: Option<i64>,
    theta: Rational,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    let theta = check_theta(family, theta)?;
    Ok(prob_between_f64(family, n, lo, hi, theta))
}

/// Unchecked variant of [`prob_between`] for an already admissible `theta`.
pub(crate) fn prob_between_f64(
    family: &dyn DistributionFamily,
    n: u64,
    lo: Option<i64>,
    hi: Option<i64>,
    theta: f64,
) -> f64 {
    let (k_min, k_max) = family.support(n);
    let lo = lo.map_or(k_min, |k| k.max(k_min));
    let hi = match (hi, k_max) {
        (Some(l), Some(m)) => l.min(m),
        (Some(l), None) => l,
        (None, Some(m)) => m,
        (None, None) => family.tail_cutoff(n, theta),
    };
    if lo > hi {
        return 0.0;
    }
    if lo == k_min && Some(hi) == k_max {
        return 1.0;
    }
    family.range_sum(n, theta, lo, hi).clamp(0.0, 1.0)
}

/// Number of places where `values` rises by more than `tol` after having
/// fallen by more than `tol` from an earlier peak. Zero means the sequence is
/// unimodal up to `tol`.
pub fn unimodality_violations(values: &[f64], tol: f64) -> usize {
    let mut violations = 0;
    let mut falling = false;
    let mut peak = f64::NEG_INFINITY;
    let mut trough = f64::INFINITY;
    for &v in values {
        if !falling {
            if v < peak - tol {
                falling = true;
                trough = v;
            } else {
                peak = peak.max(v);
            }
        } else if v > trough + tol {
            violations += 1;
            // Start a new rise so each extra mode is counted once.
            falling = false;
            peak = v;
        } else {
            trough = trough.min(v);
        }
    }
    violations
}

/// Families addressable by name.
pub struct FamilyRegistry {
    families: BTreeMap<String, Box<dyn DistributionFamily>>,
}

impl FamilyRegistry {
    /// A registry holding the built-in families.
    pub fn with_builtins() -> Self {
        let mut registry = FamilyRegistry {
            families: BTreeMap::new(),
        };
        registry.register(Box::new(Bernoulli));
        registry.register(Box::new(Poisson));
        registry
    }

    /// Adds or replaces a family under its own name.
    pub fn register(&mut self, family: Box<dyn DistributionFamily>) {
        self.families.insert(family.name().to_string(), family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn DistributionFamily> {
        self.families
            .get(name)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.families.keys().map(String::as_str).collect()
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// Looks up a built-in family by identifier.
pub fn builtin(name: &str) -> Result<&'static dyn DistributionFamily> {
    static BERNOULLI: Bernoulli = Bernoulli;
    static POISSON: Poisson = Poisson;
    match name {
        "bernoulli" | "binomial" => Ok(&BERNOULLI),
        "poisson" => Ok(&POISSON),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn binom_exact(n: u64, k: u64) -> f64 {
        // Exact for n <= 60 in u128.
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * u128::from(n - i) / u128::from(i + 1);
        }
        c as f64
    }

    #[test]
    fn binomial_pmf_center() {
        let p = pmf(&Bernoulli, 10, r(1, 2), 5).unwrap();
        assert!((p - 252.0 / 1024.0).abs() < 1e-12, "{p}");
        assert!((p - 0.24609375).abs() < 1e-12);
    }

    #[test]
    fn binomial_degenerate_endpoints() {
        assert_eq!(pmf(&Bernoulli, 3, Rational::ZERO, 0).unwrap(), 1.0);
        assert_eq!(pmf(&Bernoulli, 3, Rational::ZERO, 1).unwrap(), 0.0);
        assert_eq!(pmf(&Bernoulli, 3, Rational::ONE, 3).unwrap(), 1.0);
        assert_eq!(prob_range(&Bernoulli, 3, 1, 3, Rational::ZERO).unwrap(), 0.0);
        assert_eq!(prob_range(&Bernoulli, 3, 0, 2, Rational::ONE).unwrap(), 0.0);
        assert_eq!(prob_range(&Bernoulli, 3, 3, 3, Rational::ONE).unwrap(), 1.0);
    }

    #[test]
    fn poisson_pmf_at_zero() {
        // Series oracle: e^{-1} = Σ (-1)^j / j!
        let mut series = 0.0;
        let mut term = 1.0;
        for j in 0..30 {
            series += term;
            term *= -1.0 / f64::from(j + 1);
        }
        let p = pmf(&Poisson, 1, Rational::ONE, 0).unwrap();
        assert!((p - series).abs() < 1e-15);
        assert!((p - 0.3678794412).abs() < 1e-10);
    }

    #[test]
    fn binomial_range_by_enumeration() {
        let s = prob_range(&Bernoulli, 10, 3, 7, r(1, 2)).unwrap();
        assert!((s - 912.0 / 1024.0).abs() < 1e-12);
        assert!((s - 0.890625).abs() < 1e-12);
    }

    #[test]
    fn empty_and_full_ranges() {
        assert_eq!(prob_range(&Bernoulli, 10, 5, 2, r(1, 3)).unwrap(), 0.0);
        assert_eq!(prob_range(&Poisson, 10, 5, 2, r(1, 3)).unwrap(), 0.0);
        let full = prob_range(&Bernoulli, 4, 0, 4, r(1, 3)).unwrap();
        assert!((full - 1.0).abs() < 1e-15);
        // ranges are clipped to the support
        let clipped = prob_range(&Bernoulli, 4, -10, 100, r(1, 3)).unwrap();
        assert!((clipped - 1.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            pmf(&Bernoulli, 5, r(3, 2), 1),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            pmf(&Poisson, 5, Rational::ZERO, 0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            prob_range(&Poisson, 5, 0, 1, r(-1, 2)),
            Err(Error::Domain { .. })
        ));
        assert_eq!(pmf(&Bernoulli, 0, r(1, 2), 0), Err(Error::ZeroSampleSize));
    }

    #[test]
    fn large_n_does_not_overflow() {
        let n = 1_000_000;
        let p = pmf(&Bernoulli, n, r(1, 2), 500_000).unwrap();
        // Stirling: C(2m, m)/4^m ≈ 1/sqrt(pi m)
        let approx = 1.0 / (core::f64::consts::PI * 500_000.0).sqrt();
        assert!((p / approx - 1.0).abs() < 1e-6, "{p} vs {approx}");
        let total = prob_range(&Bernoulli, n, 0, n as i64, r(1, 3)).unwrap();
        assert!((total - 1.0).abs() < 1e-9, "{total}");
        let total = prob_between(&Poisson, n, Some(0), None, r(7, 2)).unwrap();
        assert!((total - 1.0).abs() < 1e-9, "{total}");
    }

    #[test]
    fn poisson_tail_truncation() {
        let theta = r(20, 1);
        let n = 60;
        let lam: f64 = 1200.0;
        let cutoff = Poisson.tail_cutoff(n, 20.0);
        assert_eq!(cutoff, (lam + 40.0 * lam.sqrt() + 40.0f64).ceil() as i64);
        let total = prob_between(&Poisson, n, Some(0), None, theta).unwrap();
        assert!((total - 1.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn unimodality_counter() {
        assert_eq!(unimodality_violations(&[0.1, 0.5, 0.9, 0.4, 0.2], 1e-10), 0);
        assert_eq!(unimodality_violations(&[0.1, 0.5, 0.3, 0.6, 0.2], 1e-10), 1);
        assert_eq!(unimodality_violations(&[1.0, 1.0, 1.0], 1e-10), 0);
        assert_eq!(unimodality_violations(&[0.9, 0.5, 0.1], 1e-10), 0);
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("bernoulli").unwrap().name(), "bernoulli");
        assert_eq!(builtin("poisson").unwrap().name(), "poisson");
        assert!(matches!(builtin("gamma"), Err(Error::UnknownFamily(_))));
        let reg = FamilyRegistry::with_builtins();
        assert_eq!(reg.names(), ["bernoulli", "poisson"]);
    }

    #[test]
    fn custom_family_uses_default_summation() {
        /// Bernoulli without the fast path.
        struct Plain;
        impl DistributionFamily for Plain {
            fn name(&self) -> &str {
                "plain"
            }
            fn param_space(&self) -> ParamSpace {
                Bernoulli.param_space()
            }
            fn support(&self, n: u64) -> (i64, Option<i64>) {
                Bernoulli.support(n)
            }
            fn ln_pmf(&self, n: u64, theta: f64, k: i64) -> f64 {
                Bernoulli.ln_pmf(n, theta, k)
            }
        }
        let mut reg = FamilyRegistry::with_builtins();
        reg.register(Box::new(Plain));
        let plain = reg.get("plain").unwrap();
        let a = prob_range(plain, 25, 4, 19, r(2, 7)).unwrap();
        let b = prob_range(&Bernoulli, 25, 4, 19, r(2, 7)).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn binomial_unimodal_in_theta() {
        // Pr{k <= Y_n <= l | theta} over a 1000-point grid has a single mode.
        for &(n, k, l) in &[(10u64, 3i64, 7i64), (25, 0, 4), (25, 20, 25), (40, 12, 13)] {
            let values: Vec<f64> = (0..=1000)
                .map(|j| prob_range(&Bernoulli, n, k, l, r(j, 1000)).unwrap())
                .collect();
            assert_eq!(unimodality_violations(&values, 1e-10), 0, "n={n} k={k} l={l}");
        }
    }

    #[test]
    fn poisson_unimodal_in_theta() {
        for &(n, k, l) in &[(5u64, 3i64, 9i64), (20, 0, 40), (12, 100, 130)] {
            let values: Vec<f64> = (1..=1000)
                .map(|j| prob_range(&Poisson, n, k, l, r(j, 50)).unwrap())
                .collect();
            assert_eq!(unimodality_violations(&values, 1e-10), 0, "n={n} k={k} l={l}");
        }
    }

    proptest! {
        #[test]
        fn binomial_matches_exact_enumeration(n in 1u64..=60, num in 0i128..=1000, k in 0i64..=60, width in 0i64..=60) {
            let theta = r(num, 1000);
            let t = theta.to_f64();
            let l = (k + width).min(n as i64);
            let mut expected = 0.0;
            for j in k..=l {
                let j = j as u64;
                if j <= n {
                    expected += binom_exact(n, j) * t.powi(j as i32) * (1.0 - t).powi((n - j) as i32);
                }
            }
            let got = prob_range(&Bernoulli, n, k, l, theta).unwrap();
            prop_assert!((got - expected).abs() < 1e-12, "{} vs {}", got, expected);
        }

        #[test]
        fn range_equals_sum_of_pmf(n in 1u64..=60, num in 1i128..=2000, k in 0i64..=80, width in 0i64..=80) {
            let theta = r(num, 100);
            let l = k + width;
            let direct: f64 = (k..=l).map(|j| pmf(&Poisson, n, theta, j).unwrap()).sum();
            let got = prob_range(&Poisson, n, k, l, theta).unwrap();
            prop_assert!((got - direct).abs() < 1e-12);
        }

        #[test]
        fn full_support_sums_to_one(n in 1u64..=60, num in 1i128..=2000) {
            let theta = r(num, 100);
            let total = prob_between(&Poisson, n, None, None, theta).unwrap();
            prop_assert!((total - 1.0).abs() < 1e-12);
            let theta = r(num % 1001, 1000);
            let total = prob_range(&Bernoulli, n, 0, n as i64, theta).unwrap();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }

        #[test]
        fn monotone_in_range_ends(n in 1u64..=60, num in 0i128..=1000, k in 0i64..=60, l in 0i64..=60) {
            let theta = r(num, 1000);
            let s = prob_range(&Bernoulli, n, k, l, theta).unwrap();
            prop_assert!(prob_range(&Bernoulli, n, k, l + 1, theta).unwrap() >= s - 1e-15);
            prop_assert!(prob_range(&Bernoulli, n, k + 1, l, theta).unwrap() <= s + 1e-15);
            prop_assert!((0.0..=1.0).contains(&s));
        }
    }
}
