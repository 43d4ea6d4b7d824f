#![allow(dead_code)]

use exactss_core::family::{Bernoulli, Poisson};
use exactss_core::{DistributionFamily, ErrorCriterion, EstimatorKind, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    Abs,
    Rel,
    Mixed,
    RpAbs,
    RpRel,
    RpMixed,
}

impl Pair {
    pub const ALL: [Pair; 6] = [Pair::Abs, Pair::Rel, Pair::Mixed, Pair::RpAbs, Pair::RpRel, Pair::RpMixed];

    pub fn name(self) -> &'static str {
        match self {
            Pair::Abs => "absolute/unbiased",
            Pair::Rel => "relative/unbiased",
            Pair::Mixed => "mixed/unbiased",
            Pair::RpAbs => "absolute/clamped",
            Pair::RpRel => "relative/clamped",
            Pair::RpMixed => "mixed/clamped",
        }
    }

    fn clamped(self) -> bool {
        matches!(self, Pair::RpAbs | Pair::RpRel | Pair::RpMixed)
    }

    fn needs_positive_a(self) -> bool {
        matches!(self, Pair::Rel | Pair::RpAbs | Pair::RpRel)
    }
}

#[derive(Clone, Copy)]
pub struct Instance {
    pub family: &'static dyn DistributionFamily,
    pub n: u64,
    pub criterion: ErrorCriterion,
    pub estimator: EstimatorKind,
    pub a: Rational,
    pub b: Rational,
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} n={} {:?} {:?} [{}, {}]",
            self.family.name(),
            self.n,
            self.criterion,
            self.estimator,
            self.a,
            self.b
        )
    }
}

pub static BERNOULLI: Bernoulli = Bernoulli;
pub static POISSON: Poisson = Poisson;

/// Random `(a, b)`: Bernoulli within `[0, 1]` on a 1/1000 lattice, Poisson
/// within `[1/2, 20]` on a 1/100 lattice.
fn interval(rng: &mut ChaCha8Rng, poisson: bool, positive: bool) -> (Rational, Rational) {
    if poisson {
        let a = rng.gen_range(50..2000);
        let b = rng.gen_range(a + 1..=2000);
        (r(a, 100), r(b, 100))
    } else {
        let lo = if positive { 1 } else { 0 };
        // a = 0 is worth hitting on purpose
        let a = if !positive && rng.gen_bool(0.1) { 0 } else { rng.gen_range(lo..1000) };
        let b = rng.gen_range(a + 1..=1000);
        (r(a, 1000), r(b, 1000))
    }
}

pub fn instance(rng: &mut ChaCha8Rng, pair: Pair, poisson: bool, n_range: (u64, u64)) -> Instance {
    let family: &'static dyn DistributionFamily = if poisson { &POISSON } else { &BERNOULLI };
    let n = rng.gen_range(n_range.0..=n_range.1);
    let (a, b) = interval(rng, poisson, pair.needs_positive_a());
    let fraction = |rng: &mut ChaCha8Rng| r(rng.gen_range(1..1000), 1000);
    let criterion = match pair {
        Pair::Abs | Pair::RpAbs => {
            // clamped sets sometimes get ε > b − a
            let span = if pair.clamped() { (b - a) * r(6, 5) } else { b - a };
            ErrorCriterion::absolute(span * fraction(rng)).unwrap()
        }
        Pair::Rel | Pair::RpRel => ErrorCriterion::relative(fraction(rng)).unwrap(),
        Pair::Mixed | Pair::RpMixed => {
            let eps_r = fraction(rng);
            let c = a + (b - a) * fraction(rng);
            ErrorCriterion::mixed(c * eps_r, eps_r).unwrap()
        }
    };
    let estimator = if pair.clamped() {
        EstimatorKind::range_preserving(a, b).unwrap()
    } else {
        EstimatorKind::Unbiased
    };
    Instance {
        family,
        n,
        criterion,
        estimator,
        a,
        b,
    }
}
