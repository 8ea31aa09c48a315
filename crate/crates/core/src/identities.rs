//! The Menon-type sums and the closed forms they are compared against.
//!
//! Character sums are accumulated exactly: every value is a root of unity
//! `exp(2πi·j/L)`, so terms are binned by `j` with integer weights and only
//! the final `L` bins are converted to floating point. The result is rounded
//! to the nearest integer and the distance to it is kept as the residual.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{
    divisor_tau, euler_phi, exact_root, factorize, gen_gcd, is_prime, klee_phi, sigma, tau_s,
};
use crate::characters::{CharValue, CharacterGroup, DirichletCharacter, Turn, UNIT_GROUP_BOUND};
use crate::error::{domain, resource, Error, Result};

/// Largest modulus accepted by the single-sum evaluators.
pub const SUM_BOUND: u64 = 100_000;

/// Largest tuple count `n^s` accepted by [`sury_sum`].
pub const SURY_TUPLE_BOUND: u64 = 10_000_000;

/// Largest number of unit terms accepted by [`round_exact`].
pub const ROUNDING_TERM_BOUND: usize = 1_000_000;

/// Largest modulus accepted by [`cohen_partition`].
pub const COHEN_BOUND: u64 = 10_000;

/// A complex sum that is expected to be an integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: Complex64,
    pub rounded: i64,
    /// `|value - rounded|`, imaginary part included.
    pub residual: f64,
}

impl SumResult {
    /// Rounds `value` to the nearest integer. A residual of 0.5 or more
    /// means the sum is not an integer at all, which is an integrity error.
    pub fn from_complex(value: Complex64) -> Result<Self> {
        let rounded = value.re.round();
        let residual = (value - Complex64::new(rounded, 0.0)).norm();
        if !(residual < 0.5) {
            return Err(Error::Integrity(format!(
                "sum {value} is not within 0.5 of an integer"
            )));
        }
        Ok(SumResult {
            value,
            rounded: rounded as i64,
            residual,
        })
    }
}

/// Integer-weighted multiset of roots of unity.
#[derive(Debug, Default)]
struct TurnBins {
    bins: BTreeMap<Turn, i64>,
}

impl TurnBins {
    fn add(&mut self, weight: i64, v: CharValue) {
        if let CharValue::Root(t) = v {
            *self.bins.entry(t).or_insert(0) += weight;
        }
    }

    fn finish(self) -> Result<SumResult> {
        let value = self
            .bins
            .into_iter()
            .map(|(t, w)| t.to_complex() * w as f64)
            .sum();
        SumResult::from_complex(value)
    }
}

/// Sums unit-magnitude character values and rounds to an integer.
pub fn round_exact<I: IntoIterator<Item = CharValue>>(terms: I) -> Result<SumResult> {
    let mut bins = TurnBins::default();
    for (i, v) in terms.into_iter().enumerate() {
        if i >= ROUNDING_TERM_BOUND {
            return resource(format!("more than {ROUNDING_TERM_BOUND} terms"));
        }
        bins.add(1, v);
    }
    bins.finish()
}

/// Sums `weight · value` pairs and rounds to an integer.
pub fn round_weighted<I: IntoIterator<Item = (i64, CharValue)>>(terms: I) -> Result<SumResult> {
    let mut bins = TurnBins::default();
    for (w, v) in terms {
        bins.add(w, v);
    }
    bins.finish()
}

fn check_sum_modulus(n: u64) -> Result<()> {
    if n == 0 {
        return domain("the sums are defined for n >= 1");
    }
    if n > SUM_BOUND {
        return resource(format!("{n} exceeds the sum bound {SUM_BOUND}"));
    }
    Ok(())
}

fn check_character(n: u64, chi: &DirichletCharacter) -> Result<()> {
    if chi.modulus() != n {
        return domain(format!("character mod {} used with n = {n}", chi.modulus()));
    }
    Ok(())
}

/// `Σ_{1 ≤ m ≤ n, gcd(m,n)=1} gcd(m-1, n)`.
pub fn menon_sum(n: u64) -> Result<u64> {
    check_sum_modulus(n)?;
    Ok((1..=n)
        .filter(|m| m.gcd(&n) == 1)
        .map(|m| (m - 1).gcd(&n))
        .sum())
}

/// `Σ gcd(m_1 - 1, m_2, …, m_s, n)` over `1 ≤ m_i ≤ n` with `gcd(m_1, n) = 1`.
pub fn sury_sum(n: u64, vars: u32) -> Result<u64> {
    check_sum_modulus(n)?;
    if vars == 0 {
        return domain("Sury's sum needs at least one variable");
    }
    match n.checked_pow(vars) {
        Some(t) if t <= SURY_TUPLE_BOUND => {}
        _ => {
            return resource(format!(
                "{n}^{vars} tuples exceed the bound {SURY_TUPLE_BOUND}"
            ))
        }
    }
    fn inner(g: u64, n: u64, depth: u32) -> u64 {
        if depth == 0 {
            return g;
        }
        if g == 1 {
            return n.pow(depth);
        }
        (1..=n).map(|m| inner(g.gcd(&m), n, depth - 1)).sum()
    }
    Ok((1..=n)
        .filter(|m| m.gcd(&n) == 1)
        .map(|m| inner((m - 1).gcd(&n), n, vars - 1))
        .sum())
}

/// `Σ_{k=1}^{n} gcd(k-1, n) χ(k)`.
pub fn zhao_cao_sum(n: u64, chi: &DirichletCharacter) -> Result<SumResult> {
    check_sum_modulus(n)?;
    check_character(n, chi)?;
    round_weighted((1..=n).map(|k| ((k - 1).gcd(&n) as i64, chi.eval(k))))
}

/// `(k - 1, n)_s` for every `k`, with `n`'s factorization fixed.
struct ShiftedGcd<'a> {
    factors: &'a [(u64, u32)],
    s: u32,
}

impl ShiftedGcd<'_> {
    fn at(&self, k: u64) -> u64 {
        let km1 = k - 1;
        let mut out = 1;
        for &(p, a) in self.factors {
            let mut v = 0;
            if km1 == 0 {
                v = a;
            } else {
                let mut x = km1;
                while v < a && x % p == 0 {
                    x /= p;
                    v += 1;
                }
            }
            out *= p.pow(v - v % self.s);
        }
        out
    }
}

/// Precomputed data for evaluating `Σ_{(k,n)_s = 1} (k-1, n)_s χ(k)` for many
/// characters mod one `n`.
///
/// Terms with `gcd(k, n) > 1` vanish, so only units are kept. They are laid
/// out in the mixed-radix order of their discrete-log coordinates, which lets
/// [`SumKernel::sum`] walk the exponent of `χ(k)` with one addition per term.
#[derive(Debug, Clone)]
pub struct SumKernel {
    modulus: u64,
    s: u32,
    radices: Vec<u64>,
    exponent: u64,
    weights: Vec<u64>,
    /// `exp(2πi j / L)` for `0 ≤ j < L`.
    roots: Vec<Complex64>,
}

impl SumKernel {
    pub fn new(group: &CharacterGroup, s: u32) -> Result<Self> {
        if s == 0 {
            return domain("s must be at least 1");
        }
        let n = group.modulus();
        let radices = group.radices();
        let exponent = radices.iter().fold(1u64, |l, r| l.lcm(r));
        let shifted = ShiftedGcd {
            factors: group.factorization().factors(),
            s,
        };
        let mut weights = vec![0u64; group.order() as usize];
        for k in 1..=n {
            // (k, n)_s = 1 holds for every unit k
            let Some(coords) = group.coordinates(k) else {
                continue;
            };
            let pos = coords
                .iter()
                .zip(&radices)
                .fold(0u64, |acc, (&e, &r)| acc * r + u64::from(e));
            weights[pos as usize] = shifted.at(k);
        }
        let roots = (0..exponent)
            .map(|j| Turn::new(j, exponent).to_complex())
            .collect();
        Ok(SumKernel {
            modulus: n,
            s,
            radices,
            exponent,
            weights,
            roots,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn sum(&self, chi: &DirichletCharacter) -> Result<SumResult> {
        check_character(self.modulus, chi)?;
        let l = self.exponent;
        // χ(g_j) = exp(2πi · step_j / L)
        let steps: Vec<u64> = chi
            .components()
            .iter()
            .flat_map(|c| c.index().iter().zip(c.group().generators()))
            .map(|(&i, g)| u64::from(i) * (l / g.order) % l)
            .collect();
        let mut bins = vec![0i64; l as usize];

        match self.radices.len() {
            0 => bins[0] += self.weights[0] as i64,
            r => {
                let inner = self.radices[r - 1] as usize;
                let inner_step = steps[r - 1];
                let mut odometer = vec![0u64; r - 1];
                let mut base = 0u64;
                for block in self.weights.chunks_exact(inner) {
                    let mut t = base;
                    for &w in block {
                        bins[t as usize] += w as i64;
                        t += inner_step;
                        if t >= l {
                            t -= l;
                        }
                    }
                    // a full wrap of any axis adds index·L ≡ 0, so no undo step
                    for pos in (0..r - 1).rev() {
                        odometer[pos] += 1;
                        base += steps[pos];
                        if base >= l {
                            base -= l;
                        }
                        if odometer[pos] < self.radices[pos] {
                            break;
                        }
                        odometer[pos] = 0;
                    }
                }
            }
        }

        let value = bins
            .iter()
            .zip(&self.roots)
            .filter(|(&w, _)| w != 0)
            .map(|(&w, z)| z * w as f64)
            .sum();
        SumResult::from_complex(value)
    }
}

/// `Σ_{1 ≤ k ≤ n, (k,n)_s = 1} (k-1, n)_s χ(k)`.
pub fn generalized_sum(n: u64, s: u32, chi: &DirichletCharacter) -> Result<SumResult> {
    check_sum_modulus(n)?;
    check_character(n, chi)?;
    let group = CharacterGroup::new(n)?;
    SumKernel::new(&group, s)?.sum(chi)
}

/// `Σ_{1 ≤ k ≤ p^{n-m}, (k, p^{n-m})_s = 1} χ(k p^m + 1)` for `χ` mod `p^n`.
///
/// Requires `s | n`, `s | m` and `s ≤ m < n`.
pub fn char_shift_sum(
    p: u64,
    n_exp: u32,
    s: u32,
    m: u32,
    chi: &DirichletCharacter,
) -> Result<SumResult> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if s == 0 || n_exp % s != 0 || m % s != 0 || m < s || m >= n_exp {
        return domain(format!(
            "need s | n, s | m and s <= m < n; got n={n_exp}, m={m}, s={s}"
        ));
    }
    let modulus = match p.checked_pow(n_exp) {
        Some(q) if q <= UNIT_GROUP_BOUND => q,
        _ => return resource(format!("{p}^{n_exp} exceeds {UNIT_GROUP_BOUND}")),
    };
    check_character(modulus, chi)?;
    let span = p.pow(n_exp - m);
    let shift = p.pow(m);
    let mut terms = Vec::new();
    for k in 1..=span {
        if gen_gcd(k, span, s)? == 1 {
            terms.push(chi.eval((k * shift + 1) % modulus));
        }
    }
    round_exact(terms)
}

/// A split of `{m ≤ n : (m, n)_s = 1}` into s-reduced residue systems mod `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohenPartition {
    pub n: u64,
    pub s: u32,
    pub d: u64,
    /// `Φ_s(n) / Φ_s(d)`.
    pub expected_classes: u64,
    pub classes: Vec<Vec<u64>>,
    /// Every class is a complete s-reduced residue system mod `d` and there
    /// are exactly `expected_classes` of them, all the same size.
    pub valid: bool,
}

/// Builds the partition by reducing every element mod `d`: the `j`-th
/// class takes the `j`-th smallest element of each residue's fiber. Each
/// class is then checked independently.
pub fn cohen_partition(n: u64, s: u32, d: u64) -> Result<CohenPartition> {
    if n == 0 || s == 0 || d == 0 {
        return domain("n, s and d must be positive");
    }
    if n > COHEN_BOUND {
        return resource(format!("{n} exceeds the partition bound {COHEN_BOUND}"));
    }
    if n % d != 0 || exact_root(d, s).is_none() {
        return domain(format!("{d} is not an s-th power divisor of {n} (s = {s})"));
    }
    let reduced_d: Vec<u64> = (0..d).filter(|&r| gen_gcd(r, d, s) == Ok(1)).collect();
    let mut fibers: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for m in 1..=n {
        if gen_gcd(m, n, s)? == 1 {
            fibers.entry(m % d).or_default().push(m);
        }
    }
    let phi_n = klee_phi(n, s)?;
    let phi_d = klee_phi(d, s)?;
    let expected_classes = phi_n / phi_d;

    let class_count = fibers.values().map(Vec::len).max().unwrap_or(0);
    let classes: Vec<Vec<u64>> = (0..class_count)
        .map(|j| fibers.values().filter_map(|f| f.get(j).copied()).collect())
        .collect();

    let is_reduced_system = |class: &Vec<u64>| {
        let mut residues: Vec<u64> = class.iter().map(|m| m % d).collect();
        residues.sort_unstable();
        residues == reduced_d && class.iter().all(|&m| gen_gcd(m, d, s) == Ok(1))
    };
    let disjoint_cover = {
        let mut all: Vec<u64> = classes.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len() as u64 == phi_n
    };
    let valid = phi_n % phi_d == 0
        && classes.len() as u64 == expected_classes
        && disjoint_cover
        && classes.iter().all(is_reduced_system);
    Ok(CohenPartition {
        n,
        s,
        d,
        expected_classes,
        classes,
        valid,
    })
}

pub fn cohen_partition_check(n: u64, s: u32, d: u64) -> Result<bool> {
    Ok(cohen_partition(n, s, d)?.valid)
}

/// The s-th-power divisors of `n`, increasing.
pub fn sth_power_divisors(n: u64, s: u32) -> Result<Vec<u64>> {
    Ok(factorize(n)?
        .divisors()
        .into_iter()
        .filter(|&d| exact_root(d, s).is_some())
        .collect())
}

/// `φ(n) τ(n)`.
pub fn menon_rhs(n: u64) -> Result<u64> {
    Ok(euler_phi(n)? * divisor_tau(n)?)
}

/// `φ(n) σ_{s-1}(n)`.
pub fn sury_rhs(n: u64, vars: u32) -> Result<u64> {
    Ok(euler_phi(n)? * sigma(n, vars.saturating_sub(1))?)
}

/// `φ(n) τ(n/d)` for a character of conductor `d`.
pub fn zhao_cao_rhs(n: u64, conductor: u64) -> Result<u64> {
    Ok(euler_phi(n)? * divisor_tau(n / conductor)?)
}

/// `Φ_s(n) τ_s(n/d)`: the value claimed for conductor `d`. With `d = n` this
/// is `Φ_s(n)`, and with `s = 1` it is the Zhao–Cao value.
pub fn generalized_rhs(n: u64, s: u32, conductor: u64) -> Result<u64> {
    if conductor == 0 || n % conductor != 0 {
        return domain(format!("{conductor} does not divide {n}"));
    }
    Ok(klee_phi(n, s)? * tau_s(n / conductor, s)?)
}

/// Splits `n = m^{qs}` with `m ≥ 2` in every possible way, as `(m, q)`.
pub fn power_representations(n: u64, s: u32) -> Vec<(u64, u32)> {
    if n < 2 || s == 0 {
        return Vec::new();
    }
    let Some(root) = exact_root(n, s) else {
        return Vec::new();
    };
    let mut reps = Vec::new();
    let mut q = 1u32;
    while 2u64.checked_pow(q).is_some_and(|v| v <= root) {
        if let Some(m) = exact_root(root, q) {
            reps.push((m, q));
        }
        q += 1;
    }
    reps
}

/// Whether the conductor `d` of a character mod `n` has the shape `m^{ts}`,
/// `1 ≤ t ≤ q`, for some representation `n = m^{qs}`.
pub fn conductor_has_power_shape(n: u64, s: u32, d: u64) -> bool {
    power_representations(n, s)
        .into_iter()
        .any(|(m, q)| (1..=q).any(|t| m.checked_pow(t * s) == Some(d)))
}

/// `(q - r + 1) Φ_s(p^a)` for `a = qs` and conductor `p^{rs}`, `1 ≤ r ≤ q`.
/// `None` when the conductor does not have that shape.
pub fn prime_power_rhs(p: u64, a: u32, s: u32, conductor: u64) -> Result<Option<i64>> {
    if s == 0 || a % s != 0 {
        return Ok(None);
    }
    let q = a / s;
    let Some(r) = (1..=q).find(|&r| p.checked_pow(r * s) == Some(conductor)) else {
        return Ok(None);
    };
    Ok(Some(i64::from(q - r + 1) * klee_phi(p.pow(a), s)? as i64))
}

/// Piecewise value of [`char_shift_sum`] for a character mod `p^n` with
/// conductor `p^l`, `l = rs`, `1 ≤ r ≤ n/s`:
///
/// * `Φ_s(p^{n-m})` if `l ≤ m < n`,
/// * `-p^{n-l}` if `m = l - s`,
/// * `0` if `s ≤ m < l - s`.
///
/// For a primitive character (`l = n`) this is `-1` at `m = n - s` and `0`
/// below it. `None` when the conductor is not of the form `p^{rs}`.
pub fn shift_sum_rhs(p: u64, n_exp: u32, s: u32, m: u32, conductor: u64) -> Result<Option<i64>> {
    if s == 0 || n_exp % s != 0 {
        return Ok(None);
    }
    let Some(l) = (1..=n_exp / s)
        .map(|r| r * s)
        .find(|&l| p.checked_pow(l) == Some(conductor))
    else {
        return Ok(None);
    };
    let value = if l <= m {
        klee_phi(p.pow(n_exp - m), s)? as i64
    } else if m + s == l {
        -(p.pow(n_exp - l) as i64)
    } else {
        0
    };
    Ok(Some(value))
}
