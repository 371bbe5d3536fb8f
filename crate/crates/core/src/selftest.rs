//! Exhaustive identity and inequality suites over fixed grids. Each suite
//! counts its cases and keeps the first few failures.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bounds::{
    balanced_product, c_coefficient, c_poly_inequality_check, d_poly_recursion_check,
    dominance_inequality_checks, min_product_bound, monotone_scan, s_composition, s_stirling,
    stirling_recursion_check,
};
use crate::conjecture::{factorial_product_check, identity_n1, identity_n2, identity_r1, verify};
use crate::error::Result;
use crate::exactmath::{factorial, nondecreasing_vectors, pow_u64, stirling2};
use crate::invariants::{DegreeSpec, InvariantReport};
use crate::Rational;

pub const DEFAULT_DOMINANCE_ORDER: usize = 64;

const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub examples: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            cases: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_RECORDED_FAILURES {
                self.examples.push(what());
            }
        }
    }

    fn record_result(&mut self, res: Result<bool>, what: impl FnOnce() -> String) {
        match res {
            Ok(ok) => self.record(ok, what),
            Err(e) => self.record(false, || format!("{}: {e}", what())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

/// The degree grid `n <= n_max`, `r <= r_max`, entries in `lo..=hi`, as
/// non-decreasing vectors.
pub fn degree_grid(
    n_range: std::ops::RangeInclusive<u32>,
    r_max: usize,
    lo: u32,
    hi: u32,
) -> Vec<DegreeSpec> {
    let mut out = Vec::new();
    for n in n_range {
        for r in 1..=r_max {
            for d in nondecreasing_vectors(r, lo, hi) {
                out.push(DegreeSpec::new(n, d).expect("grid entries are valid"));
            }
        }
    }
    out
}

/// `S2(m, r)` for all `m, r <= m_max` from `S2(m, r) = r S2(m-1, r) + S2(m-1, r-1)`.
pub fn stirling_recurrence_table(m_max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); m_max + 1]; m_max + 1];
    t[0][0] = BigInt::one();
    for m in 1..=m_max {
        for r in 1..=m {
            t[m][r] = BigInt::from(r) * &t[m - 1][r] + &t[m - 1][r - 1];
        }
    }
    t
}

pub fn stirling_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("stirling2 alternating sum vs recurrence (m <= 20)");
    let table = stirling_recurrence_table(20);
    for m in 0..=20usize {
        for r in 0..=m {
            s.record_result(
                stirling2(m as u64, r as u64).map(|v| v == table[m][r]),
                || format!("S2({m},{r})"),
            );
        }
    }
    s
}

pub fn s_routes_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("S_{n,r} composition sum vs Stirling form (n + r <= 30)");
    for r in 1..=30u32 {
        for n in 0..=30 - r {
            s.record_result(s_stirling(n, r).map(|v| v == s_composition(n, r)), || {
                format!("S_{{{n},{r}}}")
            });
        }
    }
    s
}

pub fn stirling_recursion_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("recursion r^{n+r}/(n+r)! = sum C(r,j) S_{n+j,r-j} (n, r <= 10)");
    for n in 0..=10 {
        for r in 1..=10 {
            s.record(stirling_recursion_check(n, r), || format!("n={n} r={r}"));
        }
    }
    s
}

pub fn bound_table_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("C_{n,r} endpoints, monotonicity and 2^n floor");
    for n in 1..=10u32 {
        let m = n as u64;
        s.record_result(
            c_coefficient(n, 1).map(|c| c == Rational::from_integer(factorial(m + 1))),
            || format!("C_{{{n},1}} = (n+1)!"),
        );
        let expect = Rational::new(factorial(m + 2) * (m + 1), pow_u64(2, m + 2) - 2);
        s.record_result(c_coefficient(n, 2).map(|c| c == expect), || {
            format!("C_{{{n},2}} closed form")
        });
    }
    for n in 1..=8 {
        s.record_result(monotone_scan(n, 40).map(|_| true), || {
            format!("monotone scan n={n}")
        });
    }
    for r in 1..=40u32 {
        let closed = Rational::new(BigInt::from(12 * (r + 1)), BigInt::from(3 * r + 1));
        s.record_result(c_coefficient(2, r).map(|c| c == closed), || {
            format!("C_{{2,{r}}} = 4(r+1)/(r+1/3)")
        });
    }
    s
}

pub fn dominance_suite(order: usize) -> SuiteOutcome {
    let mut s = SuiteOutcome::new("dominance chain and Stirling monotonicity inequality");
    match dominance_inequality_checks(order) {
        Ok(rep) => {
            s.record(rep.half_exponent, || {
                format!("e^x - 1 >= x e^(x/2) at order {order}")
            });
            s.record(rep.squared, || {
                format!("(e^x - 1)^2 >= x^2 e^x at order {order}")
            });
            for (n, r, ok) in rep.stirling_cases {
                s.record(ok, || format!("inequality at n={n} r={r}"));
            }
        }
        Err(e) => s.record(false, || e.to_string()),
    }
    s
}

pub fn cross_oracle_suite() -> SuiteOutcome {
    let mut s =
        SuiteOutcome::new("all Milnor and genus routes agree (n <= 5, r <= 4, 2 <= p <= 7)");
    for spec in degree_grid(1..=5, 4, 2, 7) {
        s.record_result(InvariantReport::compute(&spec).map(|r| r.agreement), || {
            spec.to_string()
        });
    }
    s
}

pub fn identity_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("closed identities for n = 1, n = 2, r = 1");
    for spec in degree_grid(1..=1, 4, 2, 9) {
        s.record_result(identity_n1(&spec), || format!("n=1 identity at {spec}"));
    }
    for spec in degree_grid(2..=2, 4, 2, 9) {
        s.record_result(identity_n2(&spec).map(|id| id.holds), || {
            format!("n=2 identity at {spec}")
        });
    }
    for n in 1..=6 {
        for p in 2..=12 {
            s.record_result(identity_r1(n, p), || format!("r=1 identity n={n} p={p}"));
        }
    }
    for p in 2..=12u32 {
        s.record_result(
            InvariantReport::checked(&DegreeSpec::new(2, vec![p]).expect("valid"))
                .map(|inv| inv.pg * 6 == inv.mu - p + 1),
            || format!("6 p_g = mu - P + 1 at p={p}"),
        );
    }
    s
}

pub fn factorial_product_suite() -> SuiteOutcome {
    let mut s =
        SuiteOutcome::new("product-of-factorials bound, recursion for D_n, C_n >= D_n + D_{n-1}");
    for spec in degree_grid(2..=5, 4, 2, 7) {
        s.record_result(
            factorial_product_check(&spec).map(|rep| rep.holds()),
            || format!("bound at {spec}"),
        );
        s.record(d_poly_recursion_check(spec.n(), spec.degrees()), || {
            format!("D_n recursion at {spec}")
        });
        s.record(c_poly_inequality_check(spec.n(), spec.degrees()), || {
            format!("C_n >= D_n + D_(n-1) at {spec}")
        });
    }
    for n in 2..=9 {
        for r in 1..n {
            s.record(min_product_bound(n, r) == balanced_product(n, r), || {
                format!("balanced product n={n} r={r}")
            });
        }
    }
    s
}

pub fn dimension_three_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("mu > 8(r+2)/r p_g strictly for n = 3");
    for spec in degree_grid(3..=3, 4, 2, 7) {
        let r = spec.r() as i64;
        let c = Rational::new(BigInt::from(8 * (r + 2)), BigInt::from(r));
        s.record_result(
            verify(&spec).map(|v| {
                Rational::from_integer(v.mu().clone()) > c * Rational::from_integer(v.pg().clone())
            }),
            || format!("n=3 strict at {spec}"),
        );
    }
    s
}

/// Runs every suite. `dominance_order` is the truncation order of the
/// series dominance checks.
pub fn run_all(dominance_order: usize) -> Vec<SuiteOutcome> {
    vec![
        stirling_suite(),
        s_routes_suite(),
        stirling_recursion_suite(),
        bound_table_suite(),
        dominance_suite(dominance_order),
        cross_oracle_suite(),
        identity_suite(),
        factorial_product_suite(),
        dimension_three_suite(),
    ]
}
