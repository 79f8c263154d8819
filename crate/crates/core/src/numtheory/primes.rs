//! Sieving and deterministic primality for 64-bit integers.

/// All primes `<= limit`, ascending.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(estimate_pi(limit));
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn estimate_pi(limit: u64) -> usize {
    let x = limit as f64;
    if x < 17.0 {
        return 8;
    }
    (1.26 * x / x.ln()) as usize
}

/// Prime-counting table: `count(n)` is the number of primes `<= n` for `n <= limit`.
#[derive(Debug, Clone)]
pub struct PrimeCounts {
    counts: Vec<u32>,
}

impl PrimeCounts {
    pub fn new(limit: u64) -> Self {
        let mut counts = vec![0u32; limit as usize + 1];
        let mut next = sieve_primes(limit).into_iter().peekable();
        let mut running = 0u32;
        for (i, slot) in counts.iter_mut().enumerate() {
            if next.peek() == Some(&(i as u64)) {
                running += 1;
                next.next();
            }
            *slot = running;
        }
        PrimeCounts { counts }
    }

    pub fn limit(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn count(&self, n: u64) -> u32 {
        self.counts[n as usize]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.counts[n as usize] != self.counts[n as usize - 1]
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    // The first twelve primes as witnesses suffice below 3.3e24.
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization. Only meant for the small integers that
/// appear as orbit lengths and element orders.
pub fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The unique prime `p` with `n = p^k`, `k >= 1`, if any.
pub fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    match factor_small(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Primes `p` with `a < p <= b`. The lower end is strict, the upper inclusive.
pub fn primes_in_halfopen(a: f64, b: f64) -> Vec<u64> {
    if a.is_nan() || b.is_nan() || a >= b || b < 2.0 {
        return Vec::new();
    }
    let hi = b.floor() as u64;
    sieve_primes(hi)
        .into_iter()
        .filter(|&p| (p as f64) > a)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..n)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn sieve_small_limits() {
        assert!(sieve_primes(0).is_empty());
        assert!(sieve_primes(1).is_empty());
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        let thirty = sieve_primes(30);
        assert_eq!(thirty.len(), 10);
        assert_eq!(*thirty.last().unwrap(), 29);
        let oracle: Vec<u64> = (0..=30).filter(|&n| trial_division(n)).collect();
        assert_eq!(thirty, oracle);
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let primes = sieve_primes(20_000);
        let flagged: Vec<u64> = (0..=20_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, flagged);
    }

    #[test]
    fn miller_rabin_large() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_615));
        // strong pseudoprime to bases 2..=37 would need > 3.3e24
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn halfopen_endpoints() {
        assert_eq!(primes_in_halfopen(5.0, 10.0), vec![7]);
        assert_eq!(primes_in_halfopen(2.0, 4.0), vec![3]);
        assert_eq!(primes_in_halfopen(6.5, 13.0), vec![7, 11, 13]);
        assert!(primes_in_halfopen(10.0, 5.0).is_empty());
    }

    #[test]
    fn counts_agree_with_sieve() {
        let table = PrimeCounts::new(1000);
        assert_eq!(table.count(1000), 168);
        assert_eq!(table.count(10), 4);
        assert!(table.is_prime(997));
        assert!(!table.is_prime(1000));
    }

    #[test]
    fn factor_small_roundtrip() {
        for n in 1..2000u64 {
            let back: u64 = factor_small(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
        }
        assert_eq!(prime_power_base(64), Some((2, 6)));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }
}
