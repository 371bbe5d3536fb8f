//! Exact integer combinatorics: binomials, factorials, Stirling numbers of
//! the second kind, and lexicographic weak compositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `C(m, k)`, zero when `k > m`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (m - i) is divisible by (i + 1) at every step
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial with a signed top argument; zero whenever the top is negative
/// or smaller than `k`.
pub fn binomial_signed(m: i64, k: u64) -> BigInt {
    if m < 0 {
        BigInt::zero()
    } else {
        binomial(m as u64, k)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `p (p-1) ... (p-len+1)`; zero once a factor hits zero.
pub fn falling_factorial(p: u64, len: u64) -> BigInt {
    if len > p {
        return BigInt::zero();
    }
    (0..len).fold(BigInt::one(), |acc, i| acc * (p - i))
}

/// Stirling number of the second kind via the alternating sum
/// `(1/r!) sum_j (-1)^j C(r, j) (r - j)^m`.
///
/// The final division by `r!` must be exact; a remainder is reported as
/// [`Error::NonExactDivision`].
pub fn stirling2(m: u64, r: u64) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for j in 0..=r {
        let term = binomial(r, j) * pow_u64(r - j, m);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, rem) = sum.div_rem(&factorial(r));
    if !rem.is_zero() || q.is_negative() {
        return Err(Error::NonExactDivision {
            context: format!("stirling2({m}, {r})"),
        });
    }
    Ok(q)
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow_u64(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn pow_big(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// A weak composition `(k_1, ..., k_r)` of a fixed total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[u32]> for Composition {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

/// Lazy lexicographic enumeration of the weak compositions of `total` into
/// `parts` non-negative parts, starting at `(0, ..., 0, total)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u32>,
    done: bool,
}

impl Compositions {
    fn new(total: u32, parts: usize) -> Self {
        if parts == 0 {
            return Compositions {
                current: Vec::new(),
                done: total != 0,
            };
        }
        let mut current = vec![0; parts];
        current[parts - 1] = total;
        Compositions {
            current,
            done: false,
        }
    }

    fn advance(&mut self) {
        let r = self.current.len();
        if r == 0 {
            self.done = true;
            return;
        }
        // rightmost position (excluding the last) whose tail still holds mass
        let mut tail = self.current[r - 1];
        for j in (0..r - 1).rev() {
            if tail > 0 {
                self.current[j] += 1;
                for slot in &mut self.current[j + 1..r - 1] {
                    *slot = 0;
                }
                self.current[r - 1] = tail - 1;
                return;
            }
            tail += self.current[j];
        }
        self.done = true;
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let out = Composition(self.current.clone());
        self.advance();
        Some(out)
    }
}

impl std::iter::FusedIterator for Compositions {}

/// All weak compositions of `total` into `parts` parts, in lexicographic order.
/// There are `C(total + parts - 1, total)` of them.
pub fn compositions(total: u32, parts: usize) -> Compositions {
    Compositions::new(total, parts)
}

/// Non-decreasing vectors of length `len` with entries in `lo..=hi`, in
/// lexicographic order.
pub fn nondecreasing_vectors(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, hi: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in lo..=hi {
            prefix.push(v);
            rec(len, v, hi, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        rec(len, lo, hi, &mut Vec::with_capacity(len), &mut out);
    }
    out
}
