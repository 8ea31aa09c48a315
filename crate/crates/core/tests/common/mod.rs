//! A deliberately naive reference implementation, sharing no code with the
//! library: generators by exhaustive order search, discrete logs by walking
//! powers, sums in plain floating point and conductors by scanning divisors.
#![allow(dead_code)]

use std::f64::consts::TAU;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest `l^s` dividing both `a` and `b`, by trying every `l`.
pub fn gen_gcd(a: u64, b: u64, s: u32) -> u64 {
    let g = gcd(a, b);
    let mut best = 1;
    let mut l = 1u64;
    while let Some(ls) = l.checked_pow(s).filter(|&v| v <= g) {
        if g % ls == 0 {
            best = ls;
        }
        l += 1;
    }
    best
}

/// `#{1 ≤ k ≤ n : (k, n)_s = 1}`.
pub fn klee_phi(n: u64, s: u32) -> u64 {
    (1..=n).filter(|&k| gen_gcd(k, n, s) == 1).count() as u64
}

/// `#{d : d^s | n}`.
pub fn tau_s(n: u64, s: u32) -> u64 {
    (1..=n)
        .take_while(|d| d.pow(s) <= n)
        .filter(|d| n % d.pow(s) == 0)
        .count() as u64
}

pub fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn order_mod(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 {
        x = x * g % q;
        k += 1;
    }
    k
}

/// Generators (residue, order) with the same canonical choice as the
/// library's labels: smallest primitive root, or `-1` and `5` mod `2^a`.
fn generators(p: u64, a: u32) -> Vec<(u64, u64)> {
    let q = p.pow(a);
    let phi = q / p * (p - 1);
    match (p, a) {
        (2, 1) => vec![],
        (2, 2) => vec![(3, 2)],
        (2, _) => vec![(q - 1, 2), (5, q / 4)],
        _ => {
            let g = (2..q)
                .find(|&g| g % p != 0 && order_mod(g, q) == phi)
                .unwrap();
            vec![(g, phi)]
        }
    }
}

/// Character mod `n` given by index vectors per prime power, evaluated by
/// discrete logs found through exhaustive search.
pub struct Character {
    pub n: u64,
    pub label: String,
    /// `χ(k)` as a fraction of a turn, `None` off the units.
    pub values: Vec<Option<f64>>,
}

impl Character {
    pub fn value(&self, k: u64) -> Option<f64> {
        self.values[(k % self.n) as usize]
    }

    pub fn complex(&self, k: u64) -> (f64, f64) {
        match self.value(k) {
            Some(t) => ((TAU * t).cos(), (TAU * t).sin()),
            None => (0.0, 0.0),
        }
    }

    /// Smallest `d | n` such that `χ` is trivial on units `≡ 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let trivial = |t: f64| (t - t.round()).abs() < 1e-9;
        (1..=self.n)
            .filter(|d| self.n % d == 0)
            .find(|&d| {
                (1..self.n)
                    .step_by(d as usize)
                    .all(|k| self.value(k).map_or(true, trivial))
            })
            .unwrap()
    }
}

/// All characters mod `n`, in the library's enumeration order.
pub fn characters(n: u64) -> Vec<Character> {
    let parts: Vec<(u64, u32, Vec<(u64, u64)>)> = prime_powers(n)
        .into_iter()
        .map(|(p, a)| (p, a, generators(p, a)))
        .collect();
    // discrete logs of every residue, per prime power
    let logs: Vec<Vec<Option<Vec<u64>>>> = parts
        .iter()
        .map(|(p, a, gens)| {
            let q = p.pow(*a);
            let mut table = vec![None; q as usize];
            let mut exps = vec![0u64; gens.len()];
            loop {
                let x = gens.iter().zip(&exps).fold(1 % q, |acc, (&(g, _), &e)| {
                    (0..e).fold(acc, |y, _| y * g % q)
                });
                table[x as usize] = Some(exps.clone());
                let mut i = exps.len();
                loop {
                    if i == 0 {
                        return table;
                    }
                    i -= 1;
                    exps[i] += 1;
                    if exps[i] < gens[i].1 {
                        break;
                    }
                    exps[i] = 0;
                }
            }
        })
        .collect();
    let radices: Vec<u64> = parts
        .iter()
        .flat_map(|(_, _, gens)| gens.iter().map(|g| g.1))
        .collect();
    let mut index = vec![0u64; radices.len()];
    let mut out = Vec::new();
    loop {
        let mut label = format!("{n}:");
        let mut offset = 0;
        let mut segments = Vec::new();
        for (p, a, gens) in &parts {
            let idx = &index[offset..offset + gens.len()];
            let list: Vec<String> = idx.iter().map(u64::to_string).collect();
            segments.push(format!("{p}^{a}=[{}]", list.join(",")));
            offset += gens.len();
        }
        label.push_str(&segments.join(";"));
        let values = (0..n)
            .map(|k| {
                let mut turn = 0.0;
                let mut offset = 0;
                for ((p, a, gens), table) in parts.iter().zip(&logs) {
                    let q = p.pow(*a);
                    let e = table[(k % q) as usize].as_ref()?;
                    for (j, &(_, ord)) in gens.iter().enumerate() {
                        turn += (index[offset + j] * e[j]) as f64 / ord as f64;
                    }
                    offset += gens.len();
                }
                Some(turn.fract())
            })
            .collect();
        out.push(Character { n, label, values });
        let mut i = index.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            index[i] += 1;
            if index[i] < radices[i] {
                break;
            }
            index[i] = 0;
        }
    }
}

/// `Σ_{(k,n)_s = 1} (k-1, n)_s χ(k)` term by term.
pub fn generalized_sum(chi: &Character, s: u32) -> (f64, f64) {
    let n = chi.n;
    let (mut re, mut im) = (0.0, 0.0);
    for k in 1..=n {
        if gen_gcd(k, n, s) == 1 {
            let w = gen_gcd(k - 1, n, s) as f64;
            let (x, y) = chi.complex(k);
            re += w * x;
            im += w * y;
        }
    }
    (re, im)
}

/// Failures of the unrestricted identity `Σ = Φ_s(n) τ_s(n/d)` as
/// `n,s,label,lhs,rhs` lines, in enumeration order.
pub fn strict_failures(n_max: u64, s_values: &[u32]) -> Vec<String> {
    let mut out = Vec::new();
    for &s in s_values {
        for n in 1..=n_max {
            for chi in characters(n) {
                let (re, im) = generalized_sum(&chi, s);
                assert!(im.abs() < 1e-6 && (re - re.round()).abs() < 1e-6);
                let lhs = re.round() as i64;
                let rhs = (klee_phi(n, s) * tau_s(n / chi.conductor(), s)) as i64;
                if lhs != rhs {
                    out.push(format!("{n},{s},{},{lhs},{rhs}", chi.label));
                }
            }
        }
    }
    out
}
