use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use super::primes::{factor_small, is_prime};
use super::NumError;

/// A positive integer kept both as its prime factorization and as an exact
/// value. The empty factor map is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
    value: BigUint,
}

impl FactoredInteger {
    pub fn one() -> Self {
        FactoredInteger {
            factors: BTreeMap::new(),
            value: BigUint::one(),
        }
    }

    /// Builds from `(prime, exponent)` pairs. Repeated primes accumulate and
    /// zero exponents are dropped.
    pub fn from_factors<I>(pairs: I) -> Result<Self, NumError>
    where
        I: IntoIterator<Item = (u64, u32)>,
    {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(NumError::NotPrime(p));
            }
            if e > 0 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self::from_map(factors))
    }

    fn from_map(factors: BTreeMap<u64, u32>) -> Self {
        let value = factors.iter().fold(BigUint::one(), |acc, (&p, &e)| {
            acc * BigUint::from(p).pow(e)
        });
        FactoredInteger { factors, value }
    }

    /// Factors `n` by trial division.
    pub fn from_u64(n: u64) -> Result<Self, NumError> {
        if n == 0 {
            return Err(NumError::Zero);
        }
        Ok(Self::from_map(factor_small(n).into_iter().collect()))
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    /// The largest power of `p` dividing this number.
    pub fn p_part(&self, p: u64) -> FactoredInteger {
        let mut map = BTreeMap::new();
        if let Some(&e) = self.factors.get(&p) {
            map.insert(p, e);
        }
        Self::from_map(map)
    }

    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            *factors.entry(p).or_insert(0) += e;
        }
        FactoredInteger {
            factors,
            value: &self.value * &other.value,
        }
    }

    /// Whether `self` divides `other`, decided on exponents.
    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }

    /// `self / divisor` when the division is exact.
    pub fn checked_div(&self, divisor: &FactoredInteger) -> Option<FactoredInteger> {
        if !divisor.divides(self) {
            return None;
        }
        let mut factors = self.factors.clone();
        for (&p, &e) in &divisor.factors {
            let slot = factors.get_mut(&p).expect("divisibility checked");
            *slot -= e;
            if *slot == 0 {
                factors.remove(&p);
            }
        }
        Some(FactoredInteger {
            factors,
            value: &self.value / &divisor.value,
        })
    }

    /// Natural logarithm as `sum e * ln p`, without touching the big value.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(&p, &e)| e as f64 * (p as f64).ln())
            .sum()
    }

    /// Checks the stored value against the factor map.
    pub fn is_consistent(&self) -> bool {
        self.factors.keys().all(|&p| is_prime(p))
            && self.factors.values().all(|&e| e >= 1)
            && Self::from_map(self.factors.clone()).value == self.value
    }

    /// Compact `2^4.3^2.5.11` form.
    pub fn shape(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(&p, &e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.shape())
    }
}

impl Serialize for FactoredInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.value.to_string())
    }
}
