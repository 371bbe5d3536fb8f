//! The bound coefficients `C_{n,r} = C(N-1, n) / S_{n,r}` with
//! `S_{n,r} = sum over weak compositions (k_1..k_r) of n of prod 1/(k_i+1)!`,
//! their Stirling closed form, and the auxiliary sums `C_n`/`D_n` behind the
//! product-of-factorials bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{binomial, compositions, factorial, falling_factorial, pow_u64, stirling2};
use crate::{Rational, Series};

/// One entry of the `C_{n,r}` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCoefficient {
    pub n: u32,
    pub r: u32,
    pub value: Rational,
}

impl BoundCoefficient {
    pub fn floor(&self) -> BigInt {
        pow_u64(2, self.n as u64)
    }

    pub fn above_floor(&self) -> bool {
        self.value >= Rational::from_integer(self.floor())
    }
}

fn rat(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `(n + r)! * S_{n,r}` for all `r' <= r`, `n' <= n`, as integers.
///
/// Splitting off the last part `k` of a composition gives
/// `T(j, m) = sum_k C(m + j, k + 1) T(j - 1, m - k)`.
fn scaled_s_table(n: u32, r: u32) -> Vec<Vec<BigInt>> {
    let (n, r) = (n as usize, r as usize);
    let mut table = vec![vec![BigInt::zero(); n + 1]; r + 1];
    table[0][0] = BigInt::one();
    for j in 1..=r {
        for m in 0..=n {
            let mut acc = BigInt::zero();
            for k in 0..=m {
                let prev = &table[j - 1][m - k];
                if !prev.is_zero() {
                    acc += binomial((m + j) as u64, k as u64 + 1) * prev;
                }
            }
            table[j][m] = acc;
        }
    }
    table
}

/// `S_{n,r}` as the sum over weak compositions, accumulated part by part.
pub fn s_composition(n: u32, r: u32) -> Rational {
    let table = scaled_s_table(n, r);
    Rational::new(
        table[r as usize][n as usize].clone(),
        factorial(n as u64 + r as u64),
    )
}

/// `S_{n,r}` by enumerating every composition. Exponential; for checks on
/// small arguments.
pub fn s_composition_enumerated(n: u32, r: u32) -> Rational {
    compositions(n, r as usize)
        .map(|c| {
            let den = c
                .parts()
                .iter()
                .fold(BigInt::one(), |acc, &k| acc * factorial(k as u64 + 1));
            Rational::new(BigInt::one(), den)
        })
        .sum()
}

/// `S_{n,r} = S2(n + r, r) r! / (n + r)!`.
pub fn s_stirling(n: u32, r: u32) -> Result<Rational> {
    let m = n as u64 + r as u64;
    Ok(Rational::new(
        stirling2(m, r as u64)? * factorial(r as u64),
        factorial(m),
    ))
}

/// `C_{n,r}` from the composition sum.
pub fn c_by_composition(n: u32, r: u32) -> Rational {
    let top = n as u64 + r as u64 - 1;
    rat(binomial(top, n as u64)) / s_composition(n, r)
}

/// `C_{n,r} = C(n+r-1, n) (n+r)! / (S2(n+r, r) r!)`.
pub fn c_by_stirling(n: u32, r: u32) -> Result<Rational> {
    let m = n as u64 + r as u64;
    Ok(Rational::new(
        binomial(m - 1, n as u64) * factorial(m),
        stirling2(m, r as u64)? * factorial(r as u64),
    ))
}

/// `C_{n,r}`, computed both ways; disagreement is an error.
pub fn c_coefficient(n: u32, r: u32) -> Result<Rational> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidSpec(format!(
            "C_{{n,r}} needs n, r >= 1 (got n={n}, r={r})"
        )));
    }
    let a = c_by_composition(n, r);
    let b = c_by_stirling(n, r)?;
    if a != b {
        return Err(Error::Disagreement {
            quantity: format!("C_{{{n},{r}}}"),
            detail: format!("composition {a} vs stirling {b}"),
        });
    }
    Ok(a)
}

/// `r^{n+r} / (n+r)! = sum_j C(r, j) S_{n+j, r-j}`.
pub fn stirling_recursion_check(n: u32, r: u32) -> bool {
    let m = n as u64 + r as u64;
    let lhs = Rational::new(pow_u64(r as u64, m), factorial(m));
    let table = scaled_s_table(n + r, r);
    let rhs: Rational = (0..=r)
        .map(|j| {
            let (nn, rr) = ((n + j) as usize, (r - j) as usize);
            // table entries carry a factor (nn + rr)! = (n + r)!
            Rational::new(binomial(r as u64, j as u64) * &table[rr][nn], factorial(m))
        })
        .sum();
    lhs == rhs
}

/// `C_{n,1}, ..., C_{n,r_max}`; fails unless the sequence is non-increasing
/// and bounded below by `2^n`.
pub fn monotone_scan(n: u32, r_max: u32) -> Result<Vec<Rational>> {
    let values = (1..=r_max)
        .into_par_iter()
        .map(|r| c_coefficient(n, r))
        .collect::<Result<Vec<_>>>()?;
    let floor = rat(pow_u64(2, n as u64));
    for (i, v) in values.iter().enumerate() {
        if *v < floor {
            return Err(Error::Disagreement {
                quantity: format!("C_{{{n},{}}} >= 2^{n}", i + 1),
                detail: format!("{v} < {floor}"),
            });
        }
        if i > 0 && *v > values[i - 1] {
            return Err(Error::Disagreement {
                quantity: format!("C_{{{n},{}}} <= C_{{{n},{}}}", i + 1, i),
                detail: format!("{v} > {}", values[i - 1]),
            });
        }
    }
    Ok(values)
}

/// The full `C_{n,r}` table for `1 <= n <= n_max`, `1 <= r <= r_max`, row-major.
pub fn bound_table(n_max: u32, r_max: u32) -> Result<Vec<BoundCoefficient>> {
    let cells: Vec<(u32, u32)> = (1..=n_max)
        .flat_map(|n| (1..=r_max).map(move |r| (n, r)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, r)| c_coefficient(n, r).map(|value| BoundCoefficient { n, r, value }))
        .collect()
}

/// `S2(n+r+1, r+1) r (r+1) >= S2(n+r, r) (n+r) (n+r+1)`, the Stirling form
/// of `C_{n,r} >= C_{n,r+1}`.
pub fn stirling_monotonicity_check(n: u32, r: u32) -> Result<bool> {
    let (n, r) = (n as u64, r as u64);
    let lhs = stirling2(n + r + 1, r + 1)? * r * (r + 1);
    let rhs = stirling2(n + r, r)? * (n + r) * (n + r + 1);
    Ok(lhs >= rhs)
}

/// `(e^x - 1)^{r+1} >= x^2 e^x (e^x - 1)^{r-1}` coefficientwise: the
/// generating-function form of the monotonicity step, cleared of the common
/// factor `x (r-1)!`.
pub fn generating_form_check(r: u32, order: usize) -> Result<bool> {
    let one = Rational::one();
    let e = Series::exp_series(one.clone(), order);
    let em1 = e.try_sub(&Series::one(order))?;
    let lhs = em1.int_power(r as i64 + 1)?;
    let rhs = e.shift_up(2).try_mul(&em1.int_power(r as i64 - 1)?)?;
    lhs.dominates(&rhs)
}

/// Outcome of the coefficientwise dominance chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    pub order: usize,
    /// `e^x - 1 >= x e^{x/2}`.
    pub half_exponent: bool,
    /// `(e^x - 1)^2 >= x^2 e^x`.
    pub squared: bool,
    /// The Stirling monotonicity inequality evaluated directly on small `n + r`.
    pub stirling_cases: Vec<(u32, u32, bool)>,
}

impl DominanceReport {
    pub fn all_hold(&self) -> bool {
        self.half_exponent && self.squared && self.stirling_cases.iter().all(|c| c.2)
    }
}

/// Checks both dominances through `order` and the Stirling inequality for
/// `n, r <= 8`.
pub fn dominance_inequality_checks(order: usize) -> Result<DominanceReport> {
    let one = Rational::one();
    let em1 = Series::exp_series(one.clone(), order).try_sub(&Series::one(order))?;
    let half = Series::exp_series(Rational::new(1.into(), 2.into()), order).shift_up(1);
    let half_exponent = em1.dominates(&half)?;
    let squared = em1
        .int_power(2)?
        .dominates(&Series::exp_series(one, order).shift_up(2))?;
    let mut stirling_cases = Vec::new();
    for n in 1..=8 {
        for r in 1..=8 {
            stirling_cases.push((n, r, stirling_monotonicity_check(n, r)?));
        }
    }
    Ok(DominanceReport {
        order,
        half_exponent,
        squared,
        stirling_cases,
    })
}

/// Limit of `mu / p_g` for `r` equal degrees `p -> infinity`. Closed forms
/// for `n = 2, 3`; `C_{n,r}` otherwise.
pub fn asymptotic_ratio(n: u32, r: u32) -> Result<Rational> {
    let r_ = BigInt::from(r);
    match n {
        2 => Ok(Rational::new(12 * (&r_ + 1), 3 * &r_ + 1)),
        3 if r > 0 => Ok(Rational::new(8 * (&r_ + 2), r_)),
        _ => c_coefficient(n, r),
    }
}

/// `min over weak compositions of n into r parts of prod (k_i + 1)!`, by
/// enumeration.
pub fn min_product_bound(n: u32, r: u32) -> BigInt {
    compositions(n, r as usize)
        .map(|c| {
            c.parts()
                .iter()
                .fold(BigInt::one(), |acc, &k| acc * factorial(k as u64 + 1))
        })
        .min()
        .expect("at least one composition when r >= 1")
}

/// `((n1+1)!)^{r-r1} ((n1+2)!)^{r1}` with `n = n1 r + r1`: the product at
/// the most balanced composition.
pub fn balanced_product(n: u32, r: u32) -> BigInt {
    let (n1, r1) = ((n / r) as u64, (n % r) as u64);
    let r = r as u64;
    num_traits::pow(factorial(n1 + 1), (r - r1) as usize)
        * num_traits::pow(factorial(n1 + 2), r1 as usize)
}

/// `C_n(p) = sum over compositions of n of prod (p_i - 1)^{k_i}`.
pub fn c_poly(n: u32, degrees: &[u32]) -> BigInt {
    compositions(n, degrees.len())
        .map(|c| {
            c.parts()
                .iter()
                .zip(degrees)
                .fold(BigInt::one(), |acc, (&k, &p)| {
                    acc * pow_u64(p as u64 - 1, k as u64)
                })
        })
        .sum()
}

/// `D_n(p) = sum over compositions of n of prod C(p_i - 1, k_i) k_i!`.
pub fn d_poly(n: u32, degrees: &[u32]) -> BigInt {
    compositions(n, degrees.len())
        .map(|c| {
            c.parts()
                .iter()
                .zip(degrees)
                .fold(BigInt::one(), |acc, (&k, &p)| {
                    acc * falling_factorial(p as u64 - 1, k as u64)
                })
        })
        .sum()
}

/// `D_n(p_1..p_r) - D_n(p_1..p_{r-1}) = (p_r - 1) D_{n-1}(p_1..p_{r-1}, p_r - 1)`.
pub fn d_poly_recursion_check(n: u32, degrees: &[u32]) -> bool {
    let Some((&last, head)) = degrees.split_last() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let mut lowered = head.to_vec();
    lowered.push(last - 1);
    d_poly(n, degrees) - d_poly(n, head) == BigInt::from(last - 1) * d_poly(n - 1, &lowered)
}

/// `C_n(p) >= D_n(p) + D_{n-1}(p)`.
pub fn c_poly_inequality_check(n: u32, degrees: &[u32]) -> bool {
    n >= 1 && c_poly(n, degrees) >= d_poly(n, degrees) + d_poly(n - 1, degrees)
}
