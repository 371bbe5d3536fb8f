//! Bound verdicts for single specs, the closed identities relating `mu`,
//! `p_g` and `C_{n,r}`, and grid searches for strong Durfee violations.
//!
//! Every comparison of `mu` with `c * p_g` for rational `c = a/b` is decided
//! as `mu * b` versus `a * p_g` in integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::bounds::{asymptotic_ratio, balanced_product, c_coefficient, min_product_bound};
use crate::error::{Error, Result};
use crate::exactmath::{factorial, falling_factorial, nondecreasing_vectors, pow_u64};
use crate::invariants::{DegreeSpec, InvariantReport};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    StrongDurfeeHolds,
    StrongDurfeeViolated,
    NewConjectureHolds,
    NewConjectureViolated,
    IdentityVerified,
    IdentityFailed,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::StrongDurfeeHolds => "strong-durfee-holds",
            Classification::StrongDurfeeViolated => "strong-durfee-violated",
            Classification::NewConjectureHolds => "new-conjecture-holds",
            Classification::NewConjectureViolated => "new-conjecture-violated",
            Classification::IdentityVerified => "identity-verified",
            Classification::IdentityFailed => "identity-failed",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn ordering_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

/// Exact comparison of an integer with `coefficient * factor`.
pub fn compare_scaled(lhs: &BigInt, coefficient: &Rational, factor: &BigInt) -> Ordering {
    (lhs * coefficient.denom()).cmp(&(coefficient.numer() * factor))
}

/// One inequality `lhs (>= | >) coefficient * p_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: BigInt,
    pub coefficient: Rational,
    /// `coefficient * p_g`.
    pub bound: Rational,
    /// `lhs` against `bound`.
    pub comparison: Ordering,
    pub strict: bool,
    /// `p_g = 0` makes the bound trivially satisfied.
    pub trivial: bool,
}

impl BoundCheck {
    fn new(
        name: impl Into<String>,
        lhs: BigInt,
        coefficient: Rational,
        pg: &BigInt,
        strict: bool,
    ) -> Self {
        let comparison = compare_scaled(&lhs, &coefficient, pg);
        let bound = &coefficient * Rational::from_integer(pg.clone());
        BoundCheck {
            name: name.into(),
            lhs,
            coefficient,
            bound,
            comparison,
            strict,
            trivial: pg.is_zero(),
        }
    }

    pub fn holds(&self) -> bool {
        self.trivial
            || match self.comparison {
                Ordering::Greater => true,
                Ordering::Equal => !self.strict,
                Ordering::Less => false,
            }
    }

    pub fn is_equality(&self) -> bool {
        self.comparison == Ordering::Equal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub invariants: InvariantReport,
    /// `mu >= (n+1)! p_g`; for `n = 2` this is `mu >= 6 p_g`.
    pub strong: BoundCheck,
    pub strong_class: Classification,
    /// The proposed replacement bound for this `(n, r)`; for curves, the
    /// identity `mu + P - 1 = 2 p_g`.
    pub conjecture: BoundCheck,
    pub conjecture_class: Classification,
    /// `mu >= C_{n,r} p_g`, the asymptotically sharp coefficient.
    pub c_bound: BoundCheck,
}

impl VerdictReport {
    pub fn spec(&self) -> &DegreeSpec {
        &self.invariants.spec
    }

    pub fn mu(&self) -> &BigInt {
        &self.invariants.mu
    }

    pub fn pg(&self) -> &BigInt {
        &self.invariants.pg
    }

    pub fn strong_violated(&self) -> bool {
        self.strong_class == Classification::StrongDurfeeViolated
    }
}

/// Evaluates every bound on one spec. `mu` and `p_g` must agree across all
/// methods.
pub fn verify(input: &DegreeSpec) -> Result<VerdictReport> {
    let invariants = InvariantReport::checked(input)?;
    let spec = &invariants.spec;
    let (n, r) = (spec.n(), spec.r() as u32);
    let mu = invariants.mu.clone();
    let pg = invariants.pg.clone();

    let strong = BoundCheck::new(
        "strong-durfee",
        mu.clone(),
        Rational::from_integer(factorial(n as u64 + 1)),
        &pg,
        false,
    );
    let strong_class = if strong.holds() {
        Classification::StrongDurfeeHolds
    } else {
        Classification::StrongDurfeeViolated
    };

    let c_value = c_coefficient(n, r)?;
    let c_bound = BoundCheck::new("c-bound", mu.clone(), c_value.clone(), &pg, false);

    let (conjecture, conjecture_class) = if n == 1 {
        let lhs = &mu + spec.degree_product() - 1;
        let check = BoundCheck::new("identity-n1", lhs, c_value, &pg, false);
        let class = if check.is_equality() {
            Classification::IdentityVerified
        } else {
            Classification::IdentityFailed
        };
        (check, class)
    } else {
        let check = match (n, r) {
            (2, 1) => BoundCheck::new("new-conjecture", mu.clone(), int(6), &pg, false),
            (2, _) => BoundCheck::new("new-conjecture", mu.clone(), int(4), &pg, true),
            _ => BoundCheck::new("new-conjecture", mu.clone(), c_value, &pg, false),
        };
        let class = if check.holds() {
            Classification::NewConjectureHolds
        } else {
            Classification::NewConjectureViolated
        };
        (check, class)
    };

    Ok(VerdictReport {
        invariants,
        strong,
        strong_class,
        conjecture,
        conjecture_class,
        c_bound,
    })
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn require_dimension(spec: &DegreeSpec, n: u32) -> Result<DegreeSpec> {
    if spec.n() != n {
        return Err(Error::WrongDimension {
            expected: n.to_string(),
            got: spec.n(),
        });
    }
    spec.reduce()
}

/// Curves: `mu + P - 1 = 2 p_g`.
pub fn identity_n1(spec: &DegreeSpec) -> Result<bool> {
    let spec = require_dimension(spec, 1)?;
    let inv = InvariantReport::checked(&spec)?;
    let c = c_coefficient(1, spec.r() as u32)?;
    Ok(Rational::from_integer(&inv.mu + spec.degree_product() - 1)
        == c * Rational::from_integer(inv.pg))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityN2 {
    pub holds: bool,
    /// `E = ((r-1)/(3r+1)) sum (p_i - 1) - sum_{i<j} (p_i - p_j)^2/(3r+1) - 1`.
    pub e: Rational,
}

/// Surfaces: `mu + P E + 1 = C_{2,r} p_g`.
pub fn identity_n2(spec: &DegreeSpec) -> Result<IdentityN2> {
    let spec = require_dimension(spec, 2)?;
    let inv = InvariantReport::checked(&spec)?;
    let r = spec.r() as i64;
    let d = spec.degrees();
    let shifted_sum: i64 = d.iter().map(|&p| p as i64 - 1).sum();
    let mut spread: i64 = 0;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let diff = d[i] as i64 - d[j] as i64;
            spread += diff * diff;
        }
    }
    let e = Rational::new(
        BigInt::from((r - 1) * shifted_sum - spread),
        BigInt::from(3 * r + 1),
    ) - int(1);
    let lhs =
        Rational::from_integer(&inv.mu + 1) + Rational::from_integer(spec.degree_product()) * &e;
    let rhs = c_coefficient(2, r as u32)? * Rational::from_integer(inv.pg);
    Ok(IdentityN2 {
        holds: lhs == rhs,
        e,
    })
}

/// Hypersurfaces: returns `mu - (n+1)! p_g` after checking it equals
/// `(p-1)^N - p!/(p-N)!`, the falling factorial being zero when `N > p`.
pub fn hypersurface_excess(n: u32, p: u32) -> Result<BigInt> {
    let spec = DegreeSpec::new(n, vec![p])?;
    if !spec.is_reduced() {
        return Err(Error::InvalidSpec(format!("degree {p} must be at least 2")));
    }
    let inv = InvariantReport::checked(&spec)?;
    let ambient = spec.ambient();
    let lhs = &inv.mu - factorial(n as u64 + 1) * &inv.pg;
    let rhs = pow_u64(p as u64 - 1, ambient) - falling_factorial(p as u64, ambient);
    if lhs != rhs {
        return Err(Error::Disagreement {
            quantity: "hypersurface excess".into(),
            detail: format!("n={n} p={p}: {lhs} vs {rhs}"),
        });
    }
    Ok(lhs)
}

/// The hypersurface identity with its sign. The excess is non-negative for
/// `n >= 2`; plane curves give `-(p-1)`, so only the equality is checked there.
pub fn identity_r1(n: u32, p: u32) -> Result<bool> {
    match hypersurface_excess(n, p) {
        Ok(excess) => Ok(n < 2 || !excess.is_negative()),
        Err(Error::Disagreement { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialProductReport {
    pub min_product: BigInt,
    /// `mu >= min_product * p_g`.
    pub product_bound: bool,
    /// `min_product * p_g >= 2^n p_g`.
    pub power_bound: bool,
    /// For `n > r`: `mu > balanced_product * p_g`.
    pub balanced_strict: Option<bool>,
    /// Whether enumeration agreed with the balanced closed form (`n > r`).
    pub balanced_matches: Option<bool>,
}

impl FactorialProductReport {
    pub fn holds(&self) -> bool {
        self.product_bound
            && self.power_bound
            && self.balanced_strict.unwrap_or(true)
            && self.balanced_matches.unwrap_or(true)
    }
}

/// `mu >= min prod (k_i + 1)! * p_g >= 2^n p_g`, plus the strict balanced
/// bound when `n > r`.
pub fn factorial_product_check(spec: &DegreeSpec) -> Result<FactorialProductReport> {
    let spec = spec.reduce()?;
    let (n, r) = (spec.n(), spec.r() as u32);
    if n < 2 {
        return Err(Error::WrongDimension {
            expected: ">= 2".into(),
            got: n,
        });
    }
    let inv = InvariantReport::checked(&spec)?;
    let min_product = min_product_bound(n, r);
    let product_bound = inv.mu >= &min_product * &inv.pg;
    let power_bound = &min_product * &inv.pg >= pow_u64(2, n as u64) * &inv.pg;
    let (balanced_strict, balanced_matches) = if n > r {
        let balanced = balanced_product(n, r);
        (
            Some(inv.mu > &balanced * &inv.pg),
            Some(balanced == min_product),
        )
    } else {
        (None, None)
    };
    Ok(FactorialProductReport {
        min_product,
        product_bound,
        power_bound,
        balanced_strict,
        balanced_matches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// `p_1 = ... = p_r = p` for each `p` in range.
    EqualDegrees,
    /// Every non-decreasing degree vector with entries in range.
    FullGrid,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::EqualDegrees => "equal_degrees",
            SearchMode::FullGrid => "full_grid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub n: u32,
    pub r: u32,
    pub p_min: u32,
    pub p_max: u32,
    pub mode: SearchMode,
    /// Worker threads; `0` uses the global pool.
    pub jobs: usize,
}

impl SearchParams {
    pub fn grid(&self) -> Result<Vec<DegreeSpec>> {
        if self.p_min < 2 {
            return Err(Error::InvalidSpec(format!(
                "search needs p_min >= 2 (got {})",
                self.p_min
            )));
        }
        if self.r == 0 || self.n == 0 {
            return Err(Error::InvalidSpec("search needs n, r >= 1".into()));
        }
        let vectors: Vec<Vec<u32>> = match self.mode {
            SearchMode::EqualDegrees => (self.p_min..=self.p_max)
                .map(|p| vec![p; self.r as usize])
                .collect(),
            SearchMode::FullGrid => nondecreasing_vectors(self.r as usize, self.p_min, self.p_max),
        };
        if vectors.is_empty() {
            return Err(Error::EmptyGrid(format!(
                "no degrees in {}..={}",
                self.p_min, self.p_max
            )));
        }
        vectors
            .into_iter()
            .map(|d| DegreeSpec::new(self.n, d))
            .collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "n={} r={} p={}..{} mode={}",
            self.n,
            self.r,
            self.p_min,
            self.p_max,
            self.mode.as_str()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub params: SearchParams,
    pub evaluated: usize,
    /// Sorted by [`DegreeSpec::minimality_key`].
    pub strong_violations: Vec<VerdictReport>,
    /// For `n = 2`: specs with `mu < C_{2,r} p_g`.
    pub c_bound_violations: Vec<VerdictReport>,
    pub conjecture_violations: Vec<VerdictReport>,
}

impl SearchResult {
    pub fn minimal_violation(&self) -> Option<&VerdictReport> {
        self.strong_violations.first()
    }
}

/// Evaluates every spec of the grid and collects violations. The result does
/// not depend on `params.jobs`.
pub fn search(params: &SearchParams) -> Result<SearchResult> {
    let grid = params.grid()?;
    let evaluate = || grid.par_iter().map(verify).collect::<Result<Vec<_>>>();
    let mut reports = if params.jobs == 0 {
        evaluate()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(params.jobs)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?
            .install(evaluate)?
    };
    reports.sort_by_key(|v| v.spec().minimality_key());

    let pick = |keep: &dyn Fn(&VerdictReport) -> bool| -> Vec<VerdictReport> {
        reports.iter().filter(|v| keep(v)).cloned().collect()
    };
    let strong_violations = pick(&|v| v.strong_violated());
    let c_bound_violations = if params.n == 2 {
        pick(&|v| !v.c_bound.holds())
    } else {
        Vec::new()
    };
    let conjecture_violations =
        pick(&|v| v.conjecture_class == Classification::NewConjectureViolated);
    Ok(SearchResult {
        params: params.clone(),
        evaluated: reports.len(),
        strong_violations,
        c_bound_violations,
        conjecture_violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePoint {
    pub p: u32,
    pub mu: BigInt,
    pub pg: BigInt,
    pub ratio: Rational,
    /// `|ratio - C_{n,r}|`.
    pub deviation: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub n: u32,
    pub r: u32,
    pub limit: Rational,
    pub points: Vec<TracePoint>,
    /// Degrees where `p_g = 0` and the ratio is undefined.
    pub excluded: Vec<u32>,
}

impl TraceResult {
    pub fn deviations_strictly_decreasing(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].deviation < w[0].deviation)
    }
}

/// Exact `mu / p_g` along equal-degree specs and its distance to `C_{n,r}`.
pub fn trace_ratio(n: u32, r: u32, degrees: &[u32]) -> Result<TraceResult> {
    let limit = asymptotic_ratio(n, r)?;
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for &p in degrees {
        if p < 2 {
            return Err(Error::InvalidSpec(format!("trace needs p >= 2 (got {p})")));
        }
        let inv = InvariantReport::checked(&DegreeSpec::equal(n, r as usize, p)?)?;
        if inv.pg.is_zero() {
            excluded.push(p);
            continue;
        }
        let ratio = Rational::new(inv.mu.clone(), inv.pg.clone());
        let deviation = (&ratio - &limit).abs();
        points.push(TracePoint {
            p,
            mu: inv.mu,
            pg: inv.pg,
            ratio,
            deviation,
        });
    }
    Ok(TraceResult {
        n,
        r,
        limit,
        points,
        excluded,
    })
}
