use crate::arith::{factorize, is_prime};
use crate::error::{domain, resource, Result};

/// Largest prime power for which a discrete-log table is built.
pub const UNIT_GROUP_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub residue: u64,
    pub order: u64,
}

/// Cyclic decomposition of `(ℤ/p^a)^*` with a complete discrete-log table.
///
/// Generators are canonical: the smallest primitive root for odd `p`, and
/// `-1` then `5` for `2^a` with `a ≥ 3`. `(ℤ/4)^*` is generated by `3` and
/// `(ℤ/2)^*` is trivial.
#[derive(Debug, Clone)]
pub struct UnitGroupStructure {
    prime: u64,
    exponent: u32,
    modulus: u64,
    generators: Vec<Generator>,
    dlog: Vec<Option<[u32; 2]>>,
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn smallest_primitive_root(p: u64, a: u32, modulus: u64) -> u64 {
    let order = modulus / p * (p - 1);
    let mut primes: Vec<u64> = factorize(p - 1)
        .expect("p - 1 is within the factorization bound")
        .factors()
        .iter()
        .map(|&(q, _)| q)
        .collect();
    if a >= 2 {
        primes.push(p);
    }
    (2..modulus)
        .filter(|g| g % p != 0)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, order / q, modulus) != 1))
        .expect("odd prime powers have primitive roots")
}

impl UnitGroupStructure {
    pub fn new(p: u64, a: u32) -> Result<Self> {
        if p > UNIT_GROUP_BOUND {
            return resource(format!(
                "{p} exceeds the unit group bound {UNIT_GROUP_BOUND}"
            ));
        }
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if a == 0 {
            return domain("prime power exponent must be at least 1");
        }
        let modulus = match p.checked_pow(a) {
            Some(q) if q <= UNIT_GROUP_BOUND => q,
            _ => {
                return resource(format!(
                    "{p}^{a} exceeds the unit group bound {UNIT_GROUP_BOUND}"
                ))
            }
        };

        let mut dlog = vec![None; modulus as usize];
        let generators = if p != 2 {
            let g = smallest_primitive_root(p, a, modulus);
            let order = modulus / p * (p - 1);
            let mut x = 1u64;
            for e in 0..order {
                dlog[x as usize] = Some([e as u32, 0]);
                x = x * g % modulus;
            }
            vec![Generator { residue: g, order }]
        } else if a == 1 {
            dlog[1] = Some([0, 0]);
            Vec::new()
        } else if a == 2 {
            dlog[1] = Some([0, 0]);
            dlog[3] = Some([1, 0]);
            vec![Generator {
                residue: 3,
                order: 2,
            }]
        } else {
            let half = modulus >> 2;
            let mut x = 1u64;
            for e in 0..half {
                dlog[x as usize] = Some([0, e as u32]);
                dlog[(modulus - x) as usize] = Some([1, e as u32]);
                x = x * 5 % modulus;
            }
            vec![
                Generator {
                    residue: modulus - 1,
                    order: 2,
                },
                Generator {
                    residue: 5,
                    order: half,
                },
            ]
        };

        Ok(UnitGroupStructure {
            prime: p,
            exponent: a,
            modulus,
            generators,
            dlog,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `φ(p^a)`, the product of the generator orders.
    pub fn order(&self) -> u64 {
        self.generators.iter().map(|g| g.order).product()
    }

    /// Exponent vector of `k` with respect to the generators, or `None` when
    /// `p | k`.
    pub fn dlog(&self, k: u64) -> Option<&[u32]> {
        let n = self.generators.len();
        self.dlog[(k % self.modulus) as usize]
            .as_ref()
            .map(|v| &v[..n])
    }

    /// `∏ g_i^{e_i} mod p^a`.
    pub fn from_exponents(&self, exps: &[u32]) -> u64 {
        self.generators
            .iter()
            .zip(exps)
            .fold(1 % self.modulus, |acc, (g, &e)| {
                acc * pow_mod(g.residue, u64::from(e), self.modulus) % self.modulus
            })
    }

    /// Exponent `c` of the conductor `p^c` of the component character with
    /// the given index vector, read off from the generator orders.
    ///
    /// For odd `p` a character `g ↦ ζ^i` is trivial on `1 + p^c ℤ` exactly
    /// when `p^{a-c} | i`. For `2^a` the subgroup `1 + 2^c ℤ` (`c ≥ 2`) is
    /// generated by a power of 5, so only the second index matters there.
    pub(crate) fn conductor_exponent(&self, index: &[u32]) -> u32 {
        if index.iter().all(|&i| i == 0) {
            return 0;
        }
        let a = self.exponent;
        let p = self.prime;
        let valuation = |mut i: u64| {
            let mut v = 0;
            while i % p == 0 {
                i /= p;
                v += 1;
            }
            v
        };
        if p != 2 {
            a - valuation(u64::from(index[0]))
        } else if a == 2 || index[1] == 0 {
            2
        } else {
            a - valuation(u64::from(index[1]))
        }
    }
}
