//! Factorization and multiplicative functions built on the generalized gcd.
//!
//! `(a, b)_s` is the largest `l^s` dividing both `a` and `b`. With `s = 1`
//! it is the ordinary gcd, and Klee's function `Φ_s` and the generalized
//! divisor count `τ_s` reduce to Euler's `φ` and the classical `τ`.

use std::fmt;

use num_integer::Integer;

use crate::error::{domain, resource, Result};

/// Largest argument accepted by [`factorize`] and the functions built on it.
pub const DESK_BOUND: u64 = 10_000_000;

/// Largest argument accepted by [`klee_phi_bruteforce`].
pub const ORACLE_BOUND: u64 = 100_000;

/// Canonical prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime powers `p^e` exactly dividing the value, in prime order.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

// Gaps between successive integers coprime to 30, starting from 7.
const WHEEL_30: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// Trial division over 2, 3, 5 and a mod-30 wheel. Whatever survives past
/// the square root is prime (or 1).
fn trial_divide(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut take = |n: &mut u64, p: u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2, 3, 5] {
        take(&mut n, p);
    }
    let mut p = 7u64;
    let mut w = 0;
    while p.saturating_mul(p) <= n {
        take(&mut n, p);
        p += WHEEL_30[w];
        w = (w + 1) % WHEEL_30.len();
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Factor `n` into prime powers.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return domain("cannot factor 0");
    }
    if n > DESK_BOUND {
        return resource(format!("{n} exceeds the factorization bound {DESK_BOUND}"));
    }
    Ok(Factorization {
        value: n,
        factors: trial_divide(n),
    })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = trial_divide(n);
    f.len() == 1 && f[0].1 == 1
}

/// Largest `l^s` dividing `g` (`g ≥ 1`).
///
/// Only primes with `p^s ≤` the unfactored remainder can contribute, so the
/// scan stops early for `s ≥ 2` even when `g` has a large prime factor.
fn sth_power_part(mut g: u64, s: u32) -> u64 {
    if s == 1 {
        return g;
    }
    let mut out = 1u64;
    let mut p = 2u64;
    loop {
        match p.checked_pow(s) {
            Some(ps) if ps <= g => {}
            _ => break,
        }
        let mut e = 0;
        while g % p == 0 {
            g /= p;
            e += 1;
        }
        out *= p.pow(e - e % s);
        p += if p == 2 { 1 } else { 2 };
    }
    out
}

/// The generalized gcd `(a, b)_s`: the largest `l^s` dividing both `a` and
/// `b`. `a = 0` is allowed and gives the largest s-th power dividing `b`.
pub fn gen_gcd(a: u64, b: u64, s: u32) -> Result<u64> {
    if b == 0 {
        return domain("(a, b)_s requires b >= 1");
    }
    if s == 0 {
        return domain("(a, b)_s requires s >= 1");
    }
    Ok(sth_power_part(a.gcd(&b), s))
}

fn check_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return domain(format!("{what} is undefined at 0"));
    }
    Ok(())
}

fn check_s(s: u32) -> Result<()> {
    if s == 0 {
        return domain("s must be at least 1");
    }
    Ok(())
}

/// `Φ_s(p^a)` for a single prime power.
pub fn klee_phi_prime_power(p: u64, a: u32, s: u32) -> u64 {
    if a >= s {
        p.pow(a) - p.pow(a - s)
    } else {
        p.pow(a)
    }
}

/// Klee's function `Φ_s(n) = #{1 ≤ m ≤ n : (m, n)_s = 1}`, via the
/// prime-power closed form.
pub fn klee_phi(n: u64, s: u32) -> Result<u64> {
    check_positive(n, "Φ_s")?;
    check_s(s)?;
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, a)| klee_phi_prime_power(p, a, s))
        .product())
}

/// `Φ_s(n)` by counting `m` in `[1, n]` with `(m, n)_s = 1` directly.
pub fn klee_phi_bruteforce(n: u64, s: u32) -> Result<u64> {
    check_positive(n, "Φ_s")?;
    check_s(s)?;
    if n > ORACLE_BOUND {
        return resource(format!("{n} exceeds the brute-force bound {ORACLE_BOUND}"));
    }
    let mut count = 0;
    for m in 1..=n {
        if gen_gcd(m, n, s)? == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of s-th powers dividing `n`: `∏ (⌊a/s⌋ + 1)` over `p^a ‖ n`.
pub fn tau_s(n: u64, s: u32) -> Result<u64> {
    check_positive(n, "τ_s")?;
    check_s(s)?;
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(_, a)| u64::from(a / s) + 1)
        .product())
}

pub fn euler_phi(n: u64) -> Result<u64> {
    klee_phi(n, 1)
}

pub fn divisor_tau(n: u64) -> Result<u64> {
    tau_s(n, 1)
}

/// `σ_k(n) = Σ_{d | n} d^k`. Overflowing `u64` is a resource error.
pub fn sigma(n: u64, k: u32) -> Result<u64> {
    check_positive(n, "σ_k")?;
    let overflow = || resource(format!("σ_{k}({n}) overflows u64"));
    let mut total = 0u64;
    for d in factorize(n)?.divisors() {
        let Some(term) = d.checked_pow(k) else {
            return overflow();
        };
        let Some(t) = total.checked_add(term) else {
            return overflow();
        };
        total = t;
    }
    Ok(total)
}

/// `s`-th root of `n` when `n` is a perfect s-th power.
pub fn exact_root(n: u64, s: u32) -> Option<u64> {
    if s == 0 {
        return None;
    }
    if n <= 1 || s == 1 {
        return Some(n);
    }
    let guess = (n as f64).powf(1.0 / f64::from(s)).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r.checked_pow(s) == Some(n))
}
