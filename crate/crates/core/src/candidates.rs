//! Finite parameter sets on which the minimum coverage over `[a, b]` is attained.
//!
//! Between consecutive candidate points the boundary functions `g`, `h` are
//! constant, so coverage there is a unimodal function bounded below by its
//! values at the two ends. All membership decisions use exact rationals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::criterion::{ErrorCriterion, EstimatorKind};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Why a point belongs to a candidate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    /// `a` or `b`.
    Endpoint,
    /// `ℓ/n + ε`
    PlusLattice,
    /// `ℓ/n − ε`
    MinusLattice,
    /// `ℓ/(n(1+ε))`
    RelUpper,
    /// `ℓ/(n(1−ε))`
    RelLower,
    /// A point where the coverage formula changes shape.
    Breakpoint,
}

impl Provenance {
    pub const ALL: [Provenance; 6] = [
        Provenance::Endpoint,
        Provenance::PlusLattice,
        Provenance::MinusLattice,
        Provenance::RelUpper,
        Provenance::RelLower,
        Provenance::Breakpoint,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Endpoint => "endpoint",
            Provenance::PlusLattice => "plus-lattice",
            Provenance::MinusLattice => "minus-lattice",
            Provenance::RelUpper => "rel-upper",
            Provenance::RelLower => "rel-lower",
            Provenance::Breakpoint => "breakpoint",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Set of provenance tags; a point reached by several rules carries all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Tags(u8);

impl Tags {
    pub fn contains(self, p: Provenance) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn insert(&mut self, p: Provenance) {
        self.0 |= p.bit();
    }

    pub fn iter(self) -> impl Iterator<Item = Provenance> {
        Provenance::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl From<Provenance> for Tags {
    fn from(p: Provenance) -> Self {
        Tags(p.bit())
    }
}

impl fmt::Display for Tags {
    /// Tags joined by `|` in a fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str(p.as_str())?;
        }
        Ok(())
    }
}

/// Which (criterion, estimator) pair a set was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    Absolute,
    Relative,
    Mixed,
    RangePreservingAbsolute,
    RangePreservingRelative,
    RangePreservingMixed,
}

impl SetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SetKind::Absolute => "absolute",
            SetKind::Relative => "relative",
            SetKind::Mixed => "mixed",
            SetKind::RangePreservingAbsolute => "range-preserving-absolute",
            SetKind::RangePreservingRelative => "range-preserving-relative",
            SetKind::RangePreservingMixed => "range-preserving-mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidatePoint {
    pub theta: Rational,
    pub tags: Tags,
}

/// Sorted, deduplicated candidate points inside `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    kind: SetKind,
    n: u64,
    a: Rational,
    b: Rational,
    points: Vec<CandidatePoint>,
    cardinality_bound: Rational,
}

impl CandidateSet {
    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn interval(&self) -> (Rational, Rational) {
        (self.a, self.b)
    }

    pub fn points(&self) -> &[CandidatePoint] {
        &self.points
    }

    pub fn thetas(&self) -> impl Iterator<Item = Rational> + '_ {
        self.points.iter().map(|p| p.theta)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Strict upper bound on the number of points.
    pub fn cardinality_bound(&self) -> Rational {
        self.cardinality_bound
    }

    pub fn within_bound(&self) -> bool {
        Rational::from(self.points.len() as u64) < self.cardinality_bound
    }

    pub fn contains(&self, theta: Rational) -> bool {
        self.points
            .binary_search_by(|p| p.theta.cmp(&theta))
            .is_ok()
    }
}

/// Accumulates tagged points, keeping only those inside `[a, b]`.
struct Builder {
    a: Rational,
    b: Rational,
    points: BTreeMap<Rational, Tags>,
}

impl Builder {
    fn new(a: Rational, b: Rational) -> Self {
        let mut builder = Builder {
            a,
            b,
            points: BTreeMap::new(),
        };
        builder.add(a, Provenance::Endpoint);
        builder.add(b, Provenance::Endpoint);
        builder
    }

    fn add(&mut self, theta: Rational, tag: Provenance) {
        if theta >= self.a && theta <= self.b {
            self.points.entry(theta).or_default().insert(tag);
        }
    }

    fn add_all(&mut self, thetas: impl IntoIterator<Item = Rational>, tag: Provenance) {
        for t in thetas {
            self.add(t, tag);
        }
    }

    fn finish(self, kind: SetKind, n: u64, cardinality_bound: Rational) -> CandidateSet {
        CandidateSet {
            kind,
            n,
            a: self.a,
            b: self.b,
            points: self
                .points
                .into_iter()
                .map(|(theta, tags)| CandidatePoint { theta, tags })
                .collect(),
            cardinality_bound,
        }
    }
}

/// All `ℓ/m + shift` with integer `ℓ` lying in the open interval `(lo, hi)`.
pub fn lattice(m: Rational, shift: Rational, lo: Rational, hi: Rational) -> Vec<Rational> {
    assert!(m.is_positive(), "lattice spacing must be positive");
    if lo >= hi {
        return Vec::new();
    }
    let first = ((lo - shift) * m).floor() + 1;
    let last = ((hi - shift) * m).ceil() - 1;
    (first..=last)
        .map(|l| Rational::from_integer(l) / m + shift)
        .collect()
}

fn check_interval(a: Rational, b: Rational, positive: bool) -> Result<()> {
    if a >= b {
        return Err(Error::InvalidInterval { a, b });
    }
    if positive && !a.is_positive() {
        return Err(Error::Hypothesis(format!(
            "this candidate set needs 0 < a, got a = {a}"
        )));
    }
    if a.is_negative() {
        return Err(Error::Hypothesis(format!(
            "this candidate set needs 0 <= a, got a = {a}"
        )));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<Rational> {
    if n == 0 {
        Err(Error::ZeroSampleSize)
    } else {
        Ok(Rational::from(n))
    }
}

fn crossover_inside(eps_a: Rational, eps_r: Rational, a: Rational, b: Rational) -> Result<Rational> {
    let c = eps_a / eps_r;
    if a < c && c < b {
        Ok(c)
    } else {
        Err(Error::Hypothesis(format!(
            "the mixed criterion needs a < eps_a/eps_r < b, but eps_a/eps_r = {c} and \
             [a, b] = [{a}, {b}]; use a purely {} margin instead",
            if c <= a { "relative" } else { "absolute" }
        )))
    }
}

fn two() -> Rational {
    Rational::from_integer(2)
}

/// Absolute margin, sample mean:
/// `{a, b} ∪ {ℓ/n + ε ∈ (a, b)} ∪ {ℓ/n − ε ∈ (a, b)}`.
pub fn candidates_abs(n: u64, eps: Rational, a: Rational, b: Rational) -> Result<CandidateSet> {
    let nr = check_n(n)?;
    ErrorCriterion::absolute(eps)?;
    check_interval(a, b, false)?;
    let mut s = Builder::new(a, b);
    add_abs_lattices(&mut s, nr, eps, a, b);
    let bound = two() * nr * (b - a) + Rational::from(4);
    Ok(s.finish(SetKind::Absolute, n, bound))
}

fn add_abs_lattices(s: &mut Builder, nr: Rational, eps: Rational, lo: Rational, hi: Rational) {
    s.add_all(lattice(nr, eps, lo, hi), Provenance::PlusLattice);
    s.add_all(lattice(nr, -eps, lo, hi), Provenance::MinusLattice);
}

fn add_rel_lattices(s: &mut Builder, nr: Rational, eps: Rational, lo: Rational, hi: Rational) {
    let up = nr * (Rational::ONE + eps);
    let down = nr * (Rational::ONE - eps);
    s.add_all(lattice(up, Rational::ZERO, lo, hi), Provenance::RelUpper);
    s.add_all(lattice(down, Rational::ZERO, lo, hi), Provenance::RelLower);
}

/// Relative margin, sample mean:
/// `{a, b} ∪ {ℓ/(n(1+ε)) ∈ (a, b)} ∪ {ℓ/(n(1−ε)) ∈ (a, b)}`; needs `a > 0`.
pub fn candidates_rel(n: u64, eps: Rational, a: Rational, b: Rational) -> Result<CandidateSet> {
    let nr = check_n(n)?;
    ErrorCriterion::relative(eps)?;
    check_interval(a, b, true)?;
    let mut s = Builder::new(a, b);
    add_rel_lattices(&mut s, nr, eps, a, b);
    let bound = two() * nr * (b - a) + Rational::from(4);
    Ok(s.finish(SetKind::Relative, n, bound))
}

/// Mixed margin, sample mean, with `c = eps_a/eps_r` strictly inside `(a, b)`:
/// `{a, c, b} ∪ {ℓ/n ± eps_a ∈ (a, c)} ∪ {ℓ/(n(1±eps_r)) ∈ (c, b)}`.
///
/// Coverage equals the absolute-margin coverage on `[a, c]` and the
/// relative-margin coverage on `[c, b]`, so each side takes the full
/// lattice pair of its own margin.
pub fn candidates_mixed(
    n: u64,
    eps_a: Rational,
    eps_r: Rational,
    a: Rational,
    b: Rational,
) -> Result<CandidateSet> {
    let nr = check_n(n)?;
    ErrorCriterion::mixed(eps_a, eps_r)?;
    check_interval(a, b, false)?;
    let c = crossover_inside(eps_a, eps_r, a, b)?;
    let mut s = Builder::new(a, b);
    s.add(c, Provenance::Breakpoint);
    add_abs_lattices(&mut s, nr, eps_a, a, c);
    add_rel_lattices(&mut s, nr, eps_r, c, b);
    let bound = two() * nr * (b - a) + Rational::from(7);
    Ok(s.finish(SetKind::Mixed, n, bound))
}

/// `A` for the clamped estimator with absolute margin, before intersecting:
/// `{a, b, a+ε, b−ε} ∪ {ℓ/n − ε ∈ (a, b−ε)} ∪ {ℓ/n + ε ∈ (a+ε, b)}`.
fn add_rp_abs(s: &mut Builder, nr: Rational, eps: Rational, a: Rational, b: Rational) {
    s.add(a + eps, Provenance::Breakpoint);
    s.add(b - eps, Provenance::Breakpoint);
    s.add_all(lattice(nr, -eps, a, b - eps), Provenance::MinusLattice);
    s.add_all(lattice(nr, eps, a + eps, b), Provenance::PlusLattice);
}

/// Same for the relative margin, with breakpoints `a/(1−ε)` and `b/(1+ε)`.
fn add_rp_rel(s: &mut Builder, nr: Rational, eps: Rational, a: Rational, b: Rational) {
    let lower = a / (Rational::ONE - eps);
    let upper = b / (Rational::ONE + eps);
    s.add(lower, Provenance::Breakpoint);
    s.add(upper, Provenance::Breakpoint);
    let up = nr * (Rational::ONE + eps);
    let down = nr * (Rational::ONE - eps);
    s.add_all(lattice(up, Rational::ZERO, a, upper), Provenance::RelUpper);
    s.add_all(lattice(down, Rational::ZERO, lower, b), Provenance::RelLower);
}

fn floored(bound: Rational, floor: i64) -> Rational {
    bound.max(Rational::from(floor))
}

/// Absolute margin, estimator clamped to `[a, b]`; needs `0 < a`.
pub fn candidates_rp_abs(n: u64, eps: Rational, a: Rational, b: Rational) -> Result<CandidateSet> {
    let nr = check_n(n)?;
    ErrorCriterion::absolute(eps)?;
    check_interval(a, b, true)?;
    let mut s = Builder::new(a, b);
    add_rp_abs(&mut s, nr, eps, a, b);
    let bound = floored(two() * nr * (b - a - eps) + Rational::from(6), 6);
    Ok(s.finish(SetKind::RangePreservingAbsolute, n, bound))
}

/// Relative margin, estimator clamped to `[a, b]`; needs `0 < a`.
pub fn candidates_rp_rel(n: u64, eps: Rational, a: Rational, b: Rational) -> Result<CandidateSet> {
    let nr = check_n(n)?;
    ErrorCriterion::relative(eps)?;
    check_interval(a, b, true)?;
    let mut s = Builder::new(a, b);
    add_rp_rel(&mut s, nr, eps, a, b);
    let bound = floored(
        two() * nr * (b - a) - nr * eps * (a + b) + Rational::from(6),
        6,
    );
    Ok(s.finish(SetKind::RangePreservingRelative, n, bound))
}

/// Mixed margin, estimator clamped to `[a, b]`, crossover `c` inside `(a, b)`.
///
/// On `[a, c]` coverage is the clamped absolute-margin coverage for the whole
/// interval `[a, b]`, and on `[c, b]` the clamped relative-margin one. Each
/// side therefore takes the full single-margin set for `[a, b]` restricted to
/// its half, with `c` as the shared endpoint.
pub fn candidates_rp_mixed(
    n: u64,
    eps_a: Rational,
    eps_r: Rational,
    a: Rational,
    b: Rational,
) -> Result<CandidateSet> {
    let nr = check_n(n)?;
    ErrorCriterion::mixed(eps_a, eps_r)?;
    check_interval(a, b, false)?;
    let c = crossover_inside(eps_a, eps_r, a, b)?;

    let mut left = Builder::new(a, c);
    add_rp_abs(&mut left, nr, eps_a, a, b);
    let mut right = Builder::new(c, b);
    add_rp_rel(&mut right, nr, eps_r, a, b);

    let mut s = Builder::new(a, b);
    for (theta, tags) in left.points.into_iter().chain(right.points) {
        let entry = s.points.entry(theta).or_default();
        for tag in tags.iter() {
            // c is an endpoint of each half but a breakpoint of the whole
            let tag = if theta == c && tag == Provenance::Endpoint {
                Provenance::Breakpoint
            } else {
                tag
            };
            entry.insert(tag);
        }
    }
    let bound = floored(
        two() * nr * (b - a - eps_a) - nr * (eps_a + b * eps_r) + Rational::from(11),
        7,
    );
    Ok(s.finish(SetKind::RangePreservingMixed, n, bound))
}

/// Dispatches to the builder for `(criterion, estimator)` on `[a, b]`.
///
/// A range-preserving estimator must be clamped to the same `[a, b]`.
pub fn candidates_for(
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    a: Rational,
    b: Rational,
) -> Result<CandidateSet> {
    match (*estimator, *criterion) {
        (EstimatorKind::Unbiased, ErrorCriterion::Absolute { eps }) => candidates_abs(n, eps, a, b),
        (EstimatorKind::Unbiased, ErrorCriterion::Relative { eps }) => candidates_rel(n, eps, a, b),
        (EstimatorKind::Unbiased, ErrorCriterion::Mixed { eps_a, eps_r }) => {
            candidates_mixed(n, eps_a, eps_r, a, b)
        }
        (EstimatorKind::RangePreserving { a: ea, b: eb }, crit) => {
            if (ea, eb) != (a, b) {
                return Err(Error::InvalidQuery(format!(
                    "estimator is clamped to [{ea}, {eb}] but the search interval is [{a}, {b}]; \
                     they must coincide"
                )));
            }
            match crit {
                ErrorCriterion::Absolute { eps } => candidates_rp_abs(n, eps, a, b),
                ErrorCriterion::Relative { eps } => candidates_rp_rel(n, eps, a, b),
                ErrorCriterion::Mixed { eps_a, eps_r } => candidates_rp_mixed(n, eps_a, eps_r, a, b),
            }
        }
    }
}

/// `"p/q"` strings of the points, for diagnostics.
pub fn describe(set: &CandidateSet) -> String {
    let mut out = String::new();
    for (i, p) in set.points.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{}", p.theta));
    }
    out
}
