//! Milnor number and geometric genus of the cone over a smooth projective
//! complete intersection `Y = {f_1 = ... = f_r = 0} ⊂ P^{N-1}` with
//! `deg f_i = p_i`, computed by independent routes.
//!
//! Notation: `n` is the dimension of the cone, `r` the number of equations,
//! `N = n + r` the ambient dimension and `P = prod p_i`.
//!
//! The formulas presume `Y` is smooth, i.e. the `f_i` are generic forms of
//! the given degrees. Nothing here certifies smoothness of a particular `Y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, binomial_signed, compositions, pow_big, pow_u64};
use crate::{Rational, Series};

/// Assumption attached to every computed report.
pub const SMOOTHNESS_ASSUMPTION: &str =
    "values assume the projective complete intersection is smooth (generic forms)";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSpec {
    n: u32,
    degrees: Vec<u32>,
}

impl DegreeSpec {
    pub fn new(n: u32, degrees: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("dimension n must be at least 1".into()));
        }
        if degrees.is_empty() {
            return Err(Error::InvalidSpec("at least one degree is required".into()));
        }
        if let Some(&bad) = degrees.iter().find(|&&p| p == 0) {
            return Err(Error::InvalidSpec(format!("degree {bad} is not positive")));
        }
        Ok(DegreeSpec { n, degrees })
    }

    /// `r` equations all of degree `p`.
    pub fn equal(n: u32, r: usize, p: u32) -> Result<Self> {
        Self::new(n, vec![p; r])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Ambient dimension `N = n + r`.
    pub fn ambient(&self) -> u64 {
        self.n as u64 + self.r() as u64
    }

    pub fn degree_product(&self) -> BigInt {
        self.degrees.iter().fold(BigInt::one(), |acc, &p| acc * p)
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().map(|&p| p as u64).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.degrees.iter().all(|&p| p >= 2)
    }

    pub fn is_sorted(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] <= w[1])
    }

    /// The common degree if all degrees coincide.
    pub fn common_degree(&self) -> Option<u32> {
        let first = self.degrees[0];
        self.degrees.iter().all(|&p| p == first).then_some(first)
    }

    pub fn sorted(&self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.sort_unstable();
        DegreeSpec { n: self.n, degrees }
    }

    /// Drops linear equations: a degree-1 entry cuts by a hyperplane, which
    /// leaves the dimension and lowers the codimension.
    pub fn reduce(&self) -> Result<Self> {
        let degrees: Vec<u32> = self.degrees.iter().copied().filter(|&p| p > 1).collect();
        if degrees.is_empty() {
            return Err(Error::SmoothGerm { n: self.n });
        }
        Ok(DegreeSpec { n: self.n, degrees })
    }

    /// Sort key for "smallest" specs: degree sum first, then sorted degrees.
    pub fn minimality_key(&self) -> (u64, Vec<u32>) {
        (self.degree_sum(), self.sorted().degrees)
    }
}

impl fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degrees: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "n={} degrees=({})", self.n, degrees.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MilnorMethod {
    /// Alternating sum over weak compositions.
    ClosedSum,
    /// `chi = P [(1+x)^N / prod(1 + p_i x)]_n`.
    Series,
    /// Closed form for `p_1 = ... = p_r`.
    EqualDegree,
}

impl MilnorMethod {
    pub const ALL: [MilnorMethod; 3] = [
        MilnorMethod::ClosedSum,
        MilnorMethod::Series,
        MilnorMethod::EqualDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MilnorMethod::ClosedSum => "closed_sum",
            MilnorMethod::Series => "series",
            MilnorMethod::EqualDegree => "equal_degree",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenusMethod {
    /// `sum over compositions of prod C(p_i, k_i + 1)`.
    Compositions,
    /// Lattice-point count as an alternating sum of `C(sum p - sum_I p, N)`.
    InclusionExclusion,
    /// `[prod(1 - z^{p_i}) / (1 - z)^{N+1}]` at power `sum p - N`.
    SeriesCoeff,
    /// `P sum prod C(p_i - 1, k_i) / (k_i + 1)`, with exact division.
    ReducedSum,
}

impl GenusMethod {
    pub const ALL: [GenusMethod; 4] = [
        GenusMethod::Compositions,
        GenusMethod::InclusionExclusion,
        GenusMethod::SeriesCoeff,
        GenusMethod::ReducedSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenusMethod::Compositions => "compositions",
            GenusMethod::InclusionExclusion => "inclusion_exclusion",
            GenusMethod::SeriesCoeff => "series_coeff",
            GenusMethod::ReducedSum => "reduced_sum",
        }
    }
}

fn sign(k: u32) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn to_integer(v: Rational, context: impl FnOnce() -> String) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonExactDivision { context: context() })
    }
}

/// Complete homogeneous symmetric polynomial `h_m(a_1, ..., a_r)`, evaluated
/// as a sum over weak compositions of `m`.
pub(crate) fn complete_homogeneous(m: u32, values: &[BigInt]) -> BigInt {
    compositions(m, values.len())
        .map(|c| {
            c.parts()
                .iter()
                .zip(values)
                .fold(BigInt::one(), |acc, (&k, a)| acc * pow_big(a, k as u64))
        })
        .sum()
}

fn milnor_closed_sum(spec: &DegreeSpec) -> BigInt {
    let n = spec.n;
    let shifted: Vec<BigInt> = spec.degrees.iter().map(|&p| BigInt::from(p - 1)).collect();
    let alt: BigInt = (0..=n)
        .map(|j| sign(j) * complete_homogeneous(n - j, &shifted))
        .sum();
    spec.degree_product() * alt - sign(n)
}

/// Euler characteristic of the Milnor fiber via coefficient extraction.
fn chi_series(spec: &DegreeSpec) -> Result<BigInt> {
    let order = spec.n as usize;
    let one = BigInt::one();
    let mut f = Series::poly([rat(one.clone()), rat(one.clone())], order)
        .int_power(spec.ambient() as i64)?;
    for &p in &spec.degrees {
        let factor = Series::poly([rat(one.clone()), rat(BigInt::from(p))], order);
        f = f.try_mul(&factor.inverse()?)?;
    }
    let coeff = f.coefficient(order)?;
    to_integer(rat(spec.degree_product()) * coeff, || {
        format!("Milnor fiber Euler characteristic of {spec}")
    })
}

fn milnor_from_chi(n: u32, chi: BigInt) -> BigInt {
    sign(n) * (chi - 1)
}

fn milnor_equal_degree(spec: &DegreeSpec) -> Result<BigInt> {
    let p = spec.common_degree().ok_or_else(|| Error::MethodMismatch {
        method: MilnorMethod::EqualDegree.name(),
        reason: format!("degrees of {spec} are not all equal"),
    })?;
    let r = spec.r() as u64;
    let one_minus_p = BigInt::from(1) - BigInt::from(p);
    let sum: BigInt = (0..=spec.n as u64)
        .map(|j| pow_big(&one_minus_p, j) * binomial(j + r - 1, j))
        .sum();
    Ok(sign(spec.n) * (pow_u64(p as u64, r) * sum - 1))
}

fn milnor_raw(spec: &DegreeSpec, method: MilnorMethod) -> Result<BigInt> {
    match method {
        MilnorMethod::ClosedSum => Ok(milnor_closed_sum(spec)),
        MilnorMethod::Series => Ok(milnor_from_chi(spec.n, chi_series(spec)?)),
        MilnorMethod::EqualDegree => milnor_equal_degree(spec),
    }
}

fn genus_compositions(spec: &DegreeSpec) -> BigInt {
    compositions(spec.n, spec.r())
        .map(|c| {
            c.parts()
                .iter()
                .zip(&spec.degrees)
                .fold(BigInt::one(), |acc, (&k, &p)| {
                    acc * binomial(p as u64, k as u64 + 1)
                })
        })
        .sum()
}

fn genus_inclusion_exclusion(spec: &DegreeSpec) -> BigInt {
    let r = spec.r();
    let total = spec.degree_sum() as i64;
    let ambient = spec.ambient();
    (0u64..1 << r)
        .map(|mask| {
            let removed: i64 = (0..r)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| spec.degrees[i] as i64)
                .sum();
            sign(mask.count_ones()) * binomial_signed(total - removed, ambient)
        })
        .sum()
}

fn genus_series_coeff(spec: &DegreeSpec) -> Result<BigInt> {
    let target = spec.degree_sum() as i64 - spec.ambient() as i64;
    if target < 0 {
        return Ok(BigInt::zero());
    }
    let order = target as usize;
    let mut f = Series::one(order);
    for _ in 0..=spec.ambient() {
        f = f.prefix_sums();
    }
    for &p in &spec.degrees {
        f = f.try_sub(&f.shift_up(p as usize))?;
    }
    to_integer(f.coefficient(order)?, || {
        format!("lattice series coefficient of {spec}")
    })
}

fn genus_reduced_sum(spec: &DegreeSpec) -> Result<BigInt> {
    let sum: Rational = compositions(spec.n, spec.r())
        .map(|c| {
            c.parts()
                .iter()
                .zip(&spec.degrees)
                .fold(rat(BigInt::one()), |acc, (&k, &p)| {
                    acc * Rational::new(
                        binomial(p as u64 - 1, k as u64),
                        BigInt::from(k as u64 + 1),
                    )
                })
        })
        .sum();
    to_integer(rat(spec.degree_product()) * sum, || {
        format!("reduced genus sum of {spec}")
    })
}

fn genus_raw(spec: &DegreeSpec, method: GenusMethod) -> Result<BigInt> {
    match method {
        GenusMethod::Compositions => Ok(genus_compositions(spec)),
        GenusMethod::InclusionExclusion => Ok(genus_inclusion_exclusion(spec)),
        GenusMethod::SeriesCoeff => genus_series_coeff(spec),
        GenusMethod::ReducedSum => genus_reduced_sum(spec),
    }
}

/// Milnor number of the cone. Degree-1 entries are reduced away first.
pub fn milnor(spec: &DegreeSpec, method: MilnorMethod) -> Result<BigInt> {
    milnor_raw(&spec.reduce()?, method)
}

/// Geometric genus of the cone (the delta invariant when `n = 1`).
pub fn genus(spec: &DegreeSpec, method: GenusMethod) -> Result<BigInt> {
    genus_raw(&spec.reduce()?, method)
}

/// Euler characteristic `chi = (-1)^n mu + 1` of the Milnor fiber, from the
/// series route.
pub fn chi_milnor_fiber(spec: &DegreeSpec) -> Result<BigInt> {
    chi_series(&spec.reduce()?)
}

/// Closed forms for the genus with `r` equal degrees `p` in dimensions 1, 2, 3.
pub fn equal_degree_genus(n: u32, r: u32, p: u32) -> Result<BigInt> {
    let q = |v: i64| rat(BigInt::from(v));
    let (r_, p_) = (r as i64, p as i64);
    let lead = rat(BigInt::from(r) * BigInt::from(p - 1) * pow_u64(p as u64, r as u64));
    let value = match n {
        1 => lead / q(2),
        2 => {
            lead / q(8) * (q(r_ * (p_ - 1)) + Rational::new(BigInt::from(p_ - 5), BigInt::from(3)))
        }
        3 => lead / q(48) * q(p_ * r_ - 2 - r_) * q(p_ * r_ - 3 + p_ - r_),
        _ => {
            return Err(Error::WrongDimension {
                expected: "1, 2 or 3".into(),
                got: n,
            })
        }
    };
    to_integer(value, || format!("equal-degree genus n={n} r={r} p={p}"))
}

/// Both invariants of one spec with every applicable method recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    /// Spec as given.
    pub input: DegreeSpec,
    /// Spec after dropping degree-1 entries; all formulas run on this.
    pub spec: DegreeSpec,
    pub mu: BigInt,
    pub pg: BigInt,
    pub chi: BigInt,
    pub milnor_values: Vec<(MilnorMethod, BigInt)>,
    pub genus_values: Vec<(GenusMethod, BigInt)>,
    /// Closed-form genus for equal degrees in dimensions 1..=3, when defined.
    pub closed_form_genus: Option<BigInt>,
    pub agreement: bool,
}

impl InvariantReport {
    /// Runs every applicable method. Disagreement is recorded, not raised;
    /// see [`InvariantReport::checked`].
    pub fn compute(input: &DegreeSpec) -> Result<Self> {
        let spec = input.reduce()?;
        let mut milnor_values = Vec::new();
        for method in MilnorMethod::ALL {
            if method == MilnorMethod::EqualDegree && spec.common_degree().is_none() {
                continue;
            }
            milnor_values.push((method, milnor_raw(&spec, method)?));
        }
        let genus_values = GenusMethod::ALL
            .iter()
            .map(|&m| genus_raw(&spec, m).map(|v| (m, v)))
            .collect::<Result<Vec<_>>>()?;
        let closed_form_genus = match spec.common_degree() {
            Some(p) if spec.n <= 3 => Some(equal_degree_genus(spec.n, spec.r() as u32, p)?),
            _ => None,
        };
        let chi = chi_series(&spec)?;
        let mu = milnor_values[0].1.clone();
        let pg = genus_values[0].1.clone();
        let agreement = milnor_values.iter().all(|(_, v)| *v == mu)
            && genus_values.iter().all(|(_, v)| *v == pg)
            && closed_form_genus.as_ref().is_none_or(|v| *v == pg)
            && chi == sign(spec.n) * &mu + 1
            && !mu.is_negative()
            && !pg.is_negative();
        Ok(InvariantReport {
            input: input.clone(),
            spec,
            mu,
            pg,
            chi,
            milnor_values,
            genus_values,
            closed_form_genus,
            agreement,
        })
    }

    /// Like [`InvariantReport::compute`] but fails on any disagreement.
    pub fn checked(input: &DegreeSpec) -> Result<Self> {
        let report = Self::compute(input)?;
        if !report.agreement {
            return Err(Error::Disagreement {
                quantity: format!("invariants of {}", report.spec),
                detail: report.method_summary(),
            });
        }
        Ok(report)
    }

    pub fn method_summary(&self) -> String {
        let mut parts: Vec<String> = self
            .milnor_values
            .iter()
            .map(|(m, v)| format!("mu[{}]={v}", m.name()))
            .collect();
        parts.extend(
            self.genus_values
                .iter()
                .map(|(m, v)| format!("pg[{}]={v}", m.name())),
        );
        if let Some(v) = &self.closed_form_genus {
            parts.push(format!("pg[closed_form]={v}"));
        }
        parts.push(format!("chi={}", self.chi));
        parts.join(" ")
    }

    pub fn was_reduced(&self) -> bool {
        self.input.r() != self.spec.r()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(n: u32, degrees: &[u32]) -> DegreeSpec {
        DegreeSpec::new(n, degrees.to_vec()).unwrap()
    }

    fn all_milnor(s: &DegreeSpec) -> Vec<BigInt> {
        MilnorMethod::ALL
            .iter()
            .filter_map(|&m| milnor(s, m).ok())
            .collect()
    }

    #[test]
    fn spec_validation() {
        assert!(DegreeSpec::new(0, vec![2]).is_err());
        assert!(DegreeSpec::new(2, vec![]).is_err());
        assert!(DegreeSpec::new(2, vec![2, 0]).is_err());
        let s = spec(2, &[3, 2]);
        assert_eq!(s.ambient(), 4);
        assert_eq!(s.degree_product(), BigInt::from(6));
        assert_eq!(s.sorted().degrees(), &[2, 3]);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(spec(2, &[1, 3]).reduce().unwrap(), spec(2, &[3]));
        assert_eq!(spec(2, &[2, 3]).reduce().unwrap(), spec(2, &[2, 3]));
        assert_eq!(spec(3, &[1, 1]).reduce(), Err(Error::SmoothGerm { n: 3 }));
    }

    #[test]
    fn milnor_examples() {
        for m in [
            MilnorMethod::ClosedSum,
            MilnorMethod::Series,
            MilnorMethod::EqualDegree,
        ] {
            assert_eq!(milnor(&spec(2, &[3]), m).unwrap(), BigInt::from(8));
            assert_eq!(milnor(&spec(2, &[3, 3]), m).unwrap(), BigInt::from(80));
            assert_eq!(milnor(&spec(1, &[2, 2]), m).unwrap(), BigInt::from(5));
        }
        assert!(matches!(
            milnor(&spec(2, &[2, 3]), MilnorMethod::EqualDegree),
            Err(Error::MethodMismatch { .. })
        ));
    }

    #[test]
    fn hypersurface_milnor_is_power() {
        for n in 1..=5u32 {
            for p in 2..=9u32 {
                let expect = pow_u64(p as u64 - 1, n as u64 + 1);
                for v in all_milnor(&spec(n, &[p])) {
                    assert_eq!(v, expect);
                }
            }
        }
    }

    #[test]
    fn genus_examples() {
        for m in GenusMethod::ALL {
            assert_eq!(genus(&spec(2, &[3]), m).unwrap(), BigInt::from(1), "{m:?}");
            assert_eq!(
                genus(&spec(2, &[3, 3]), m).unwrap(),
                BigInt::from(15),
                "{m:?}"
            );
            assert_eq!(
                genus(&spec(1, &[2, 2]), m).unwrap(),
                BigInt::from(4),
                "{m:?}"
            );
            assert_eq!(
                genus(&spec(2, &[2, 2]), m).unwrap(),
                BigInt::from(1),
                "{m:?}"
            );
        }
    }

    #[test]
    fn equal_degree_genus_examples() {
        assert_eq!(equal_degree_genus(2, 2, 3).unwrap(), BigInt::from(15));
        assert_eq!(equal_degree_genus(1, 2, 2).unwrap(), BigInt::from(4));
        assert_eq!(equal_degree_genus(3, 1, 2).unwrap(), BigInt::from(0));
        assert!(equal_degree_genus(4, 1, 2).is_err());
        for n in 1..=3 {
            for r in 1..=4 {
                for p in 2..=8 {
                    let s = DegreeSpec::equal(n, r as usize, p).unwrap();
                    assert_eq!(
                        equal_degree_genus(n, r, p).unwrap(),
                        genus(&s, GenusMethod::Compositions).unwrap(),
                        "n={n} r={r} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(
            chi_milnor_fiber(&spec(2, &[3, 3])).unwrap(),
            BigInt::from(81)
        );
        assert_eq!(
            chi_milnor_fiber(&spec(1, &[2, 2])).unwrap(),
            BigInt::from(-4)
        );
        assert_eq!(
            chi_milnor_fiber(&spec(2, &[2, 2])).unwrap(),
            BigInt::from(8)
        );
    }

    #[test]
    fn report_records_all_methods() {
        let rep = InvariantReport::checked(&spec(2, &[1, 3, 3])).unwrap();
        assert!(rep.was_reduced());
        assert_eq!(rep.spec, spec(2, &[3, 3]));
        assert_eq!(rep.milnor_values.len(), 3);
        assert_eq!(rep.genus_values.len(), 4);
        assert_eq!(rep.closed_form_genus, Some(BigInt::from(15)));
        assert_eq!(
            (rep.mu.clone(), rep.pg.clone()),
            (BigInt::from(80), BigInt::from(15))
        );
        let rep = InvariantReport::checked(&spec(4, &[2, 5])).unwrap();
        assert_eq!(rep.milnor_values.len(), 2);
        assert_eq!(rep.closed_form_genus, None);
        assert!(matches!(
            InvariantReport::compute(&spec(2, &[1])),
            Err(Error::SmoothGerm { .. })
        ));
    }

    #[test]
    fn raw_formulas_ignore_linear_equations() {
        for n in 1..=4u32 {
            for degrees in [vec![1, 3], vec![2, 1, 4], vec![1, 1, 3, 3]] {
                let raw = spec(n, &degrees);
                let red = raw.reduce().unwrap();
                for m in [MilnorMethod::ClosedSum, MilnorMethod::Series] {
                    assert_eq!(milnor_raw(&raw, m).unwrap(), milnor_raw(&red, m).unwrap());
                }
                for m in GenusMethod::ALL {
                    assert_eq!(genus_raw(&raw, m).unwrap(), genus_raw(&red, m).unwrap());
                }
            }
        }
    }

    fn small_spec() -> impl Strategy<Value = DegreeSpec> {
        (1u32..=4, prop::collection::vec(1u32..=6, 1..=4))
            .prop_map(|(n, d)| DegreeSpec::new(n, d).unwrap())
            .prop_filter("not smooth", |s| s.reduce().is_ok())
    }

    proptest! {
        #[test]
        fn invariants_are_permutation_invariant(s in small_spec(), seed in any::<u64>()) {
            let mut degrees = s.degrees().to_vec();
            // deterministic shuffle from the seed
            let len = degrees.len();
            for i in (1..len).rev() {
                let j = (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize;
                degrees.swap(i, j);
            }
            let t = DegreeSpec::new(s.n(), degrees).unwrap();
            let a = InvariantReport::checked(&s).unwrap();
            let b = InvariantReport::checked(&t).unwrap();
            prop_assert_eq!(a.mu, b.mu);
            prop_assert_eq!(a.pg, b.pg);
        }

        #[test]
        fn invariants_are_nonnegative(s in small_spec()) {
            let rep = InvariantReport::checked(&s).unwrap();
            prop_assert!(!rep.mu.is_negative() && !rep.pg.is_negative());
        }
    }
}
