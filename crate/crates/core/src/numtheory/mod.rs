//! Arithmetic functions built from prime powers: `g(n)` (the product of all
//! prime powers up to `n`), `h(n)` (the product of primes in `(n/2, n]`),
//! `f(n) = n g(n) / h(n)`, the exponents `xi_p(n)`, and the prime-interval
//! scans used to decide when `|G| = g(m)` can occur.

mod factored;
mod primes;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

pub use factored::FactoredInteger;
pub use primes::{
    factor_small, is_prime, prime_power_base, primes_in_halfopen, sieve_primes, PrimeCounts,
};

/// Exact `f(n)` is only produced up to this `n`; use [`f_log`] beyond it.
pub const EXACT_F_CAP: u64 = 100_000;

/// Smallest `n` accepted by [`asymptotic_ratio`].
pub const RATIO_MIN_N: u64 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero has no factorization")]
    Zero,
    #[error("n = {n} is below the prime p = {p}")]
    BelowPrime { p: u64, n: u64 },
    #[error("argument must be at least {min}, got {n}")]
    TooSmall { n: u64, min: u64 },
    #[error("exact f(n) is capped at n <= {cap}, got {n}; use the logarithmic form")]
    ExactCap { n: u64, cap: u64 },
}

/// The exponent `e >= 1` with `p^e <= n < p^(e+1)`.
pub fn xi(p: u64, n: u64) -> Result<u32, NumError> {
    if !is_prime(p) {
        return Err(NumError::NotPrime(p));
    }
    if n < p {
        return Err(NumError::BelowPrime { p, n });
    }
    let mut e = 1;
    let mut power = p;
    while let Some(next) = power.checked_mul(p) {
        if next > n {
            break;
        }
        power = next;
        e += 1;
    }
    Ok(e)
}

/// `xi_p(n)` for every prime `p <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiProfile {
    pub n: u64,
    pub entries: BTreeMap<u64, u32>,
}

impl XiProfile {
    pub fn new(n: u64) -> Result<Self, NumError> {
        if n < 2 {
            return Err(NumError::TooSmall { n, min: 2 });
        }
        let entries = sieve_primes(n)
            .into_iter()
            .map(|p| (p, xi(p, n).expect("p <= n")))
            .collect();
        Ok(XiProfile { n, entries })
    }
}

fn triangular(e: u32) -> u32 {
    e * (e + 1) / 2
}

/// `g(n)`: the product of all prime powers at most `n`, assembled as
/// `prod p^(xi_p (xi_p + 1) / 2)`. `g(1) = 1`.
pub fn g_of(n: u64) -> FactoredInteger {
    if n < 2 {
        return FactoredInteger::one();
    }
    let pairs = sieve_primes(n)
        .into_iter()
        .map(|p| (p, triangular(xi(p, n).expect("p <= n"))));
    FactoredInteger::from_factors(pairs).expect("sieve output is prime")
}

/// `h(n)`: the product of the primes in `(n/2, n]`. `h(1) = 1`.
pub fn h_of(n: u64) -> FactoredInteger {
    let pairs = primes_in_halfopen(n as f64 / 2.0, n as f64)
        .into_iter()
        .map(|p| (p, 1));
    FactoredInteger::from_factors(pairs).expect("sieve output is prime")
}

/// `f(n) = n g(n) / h(n)`, exact. Capped at [`EXACT_F_CAP`].
pub fn f_of(n: u64) -> Result<FactoredInteger, NumError> {
    if n == 0 {
        return Err(NumError::TooSmall { n, min: 1 });
    }
    if n > EXACT_F_CAP {
        return Err(NumError::ExactCap {
            n,
            cap: EXACT_F_CAP,
        });
    }
    let numerator = FactoredInteger::from_u64(n)?.mul(&g_of(n));
    Ok(numerator
        .checked_div(&h_of(n))
        .expect("primes above n/2 divide g(n) exactly once"))
}

/// `ln f(n)`, summed over primes without forming any big integer.
pub fn f_log(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let half = n as f64 / 2.0;
    let mut total = (n as f64).ln();
    for p in sieve_primes(n) {
        let lp = (p as f64).ln();
        let e = triangular(xi(p, n).expect("p <= n"));
        // p > n/2 has xi = 1 and cancels against h(n)
        if (p as f64) > half {
            debug_assert_eq!(e, 1);
            continue;
        }
        total += e as f64 * lp;
    }
    total
}

/// One point of the convergence `ln f(n) / (n/2) -> 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticSample {
    pub n: u64,
    pub log_f: f64,
    pub ratio: f64,
}

pub fn asymptotic_ratio(n: u64) -> Result<AsymptoticSample, NumError> {
    if n < RATIO_MIN_N {
        return Err(NumError::TooSmall {
            n,
            min: RATIO_MIN_N,
        });
    }
    let log_f = f_log(n);
    Ok(AsymptoticSample {
        n,
        log_f,
        ratio: log_f / (n as f64 / 2.0),
    })
}

/// Every `m` in `[3, limit]` with fewer than two primes in `(m/2, m]`.
pub fn large_prime_count_exceptions(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let counts = PrimeCounts::new(limit);
    (3..=limit)
        .filter(|&m| counts.count(m) - counts.count(m / 2) < 2)
        .collect()
}

/// Integer scan of the "prime in `(x, 6x/5)` for `x >= 25`" interval claim.
///
/// Endpoint conventions are not pinned down by the claim, so boundary
/// behavior is reported rather than asserted: `open_gaps` lists `x` with no
/// prime strictly inside, `rescued_by_endpoint` the subset of those where
/// `6x/5` itself is a prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIntervalScan {
    pub limit: u64,
    pub open_gaps: Vec<u64>,
    pub rescued_by_endpoint: Vec<u64>,
}

pub fn prime_interval_scan(limit: u64) -> PrimeIntervalScan {
    let top = limit.saturating_mul(6) / 5 + 1;
    let counts = PrimeCounts::new(top.max(2));
    let mut open_gaps = Vec::new();
    let mut rescued_by_endpoint = Vec::new();
    for x in 25..=limit {
        // primes p with x < p < 6x/5
        let upper_exclusive = if (6 * x) % 5 == 0 {
            6 * x / 5 - 1
        } else {
            6 * x / 5
        };
        let inside = counts.count(upper_exclusive) - counts.count(x);
        if inside == 0 {
            open_gaps.push(x);
            if (6 * x) % 5 == 0 && counts.is_prime(6 * x / 5) {
                rescued_by_endpoint.push(x);
            }
        }
    }
    PrimeIntervalScan {
        limit,
        open_gaps,
        rescued_by_endpoint,
    }
}
