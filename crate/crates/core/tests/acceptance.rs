//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the run exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use menon_core::arith::{euler_phi, gen_gcd, klee_phi, klee_phi_bruteforce, tau_s};
use menon_core::characters::{CharacterGroup, DirichletCharacter};
use menon_core::harness::{reproduce_remark, run_sweep, Identity, IdentityReport, SweepConfig};
use menon_core::identities::{cohen_partition_check, sth_power_divisors, SumKernel};
use num_complex::Complex64;

type Outcome = Result<String, String>;

fn sweep(identity: Identity, n_max: u64, s: &[u32]) -> Result<IdentityReport, String> {
    run_sweep(&SweepConfig::new(identity, n_max).with_s(s)).map_err(|e| e.to_string())
}

fn no_failures(report: &IdentityReport) -> Outcome {
    let s = report.summary;
    if s.fail > 0 {
        let first = report.failures().next().unwrap();
        return Err(format!("{} failures, first {first:?}", s.fail));
    }
    if s.pass == 0 {
        return Err("no instance evaluated".into());
    }
    Ok(format!(
        "pass={} skipped={} worst_residual={:.1e}",
        s.pass, s.skipped, report.worst_residual
    ))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn remark() -> Outcome {
    let start = Instant::now();
    let report = reproduce_remark().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let r = &report.records[0];
    ensure(r.lhs == Some(5) && r.rhs == Some(6), || format!("{r:?}"))?;
    ensure(r.residual.unwrap() < 1e-9, || {
        format!("residual {:?}", r.residual)
    })?;
    ensure(elapsed < Duration::from_millis(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("lhs=5 rhs=6 in {elapsed:?}"))
}

fn theorem1() -> Outcome {
    let start = Instant::now();
    let mut pass = 0;
    for (s, n_max) in [(1, 200), (2, 1024), (3, 1024)] {
        let report = sweep(Identity::Theorem1, n_max, &[s])?;
        no_failures(&report)?;
        ensure(report.worst_residual < 1e-6, || {
            format!("residual {}", report.worst_residual)
        })?;
        pass += report.summary.pass;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("pass={pass} in {elapsed:.1?}"))
}

fn theorem2() -> Outcome {
    let report = sweep(Identity::Theorem2, 4096, &[1, 2, 3])?;
    no_failures(&report)
}

fn zhao_cao() -> Outcome {
    no_failures(&sweep(Identity::ZhaoCao, 150, &[1])?)
}

fn menon() -> Outcome {
    no_failures(&sweep(Identity::Menon, 5000, &[1])?)
}

fn sury() -> Outcome {
    let a = no_failures(&sweep(Identity::Sury, 60, &[2])?)?;
    let b = no_failures(&sweep(Identity::Sury, 25, &[3])?)?;
    Ok(format!("s=2: {a}; s=3: {b}"))
}

fn lemmas_31_33() -> Outcome {
    let s: Vec<u32> = (1..=12).collect();
    let a = no_failures(&sweep(Identity::Lemma31, 4096, &s)?)?;
    let b = no_failures(&sweep(Identity::Lemma33, 4096, &s)?)?;
    Ok(format!("primitive: {a}; by conductor: {b}"))
}

fn lemma34() -> Outcome {
    let s: Vec<u32> = (1..=12).collect();
    no_failures(&sweep(Identity::Lemma34, 4096, &s)?)
}

fn oracles() -> Outcome {
    for n in 1..=3000 {
        for s in 1..=4 {
            let k = klee_phi(n, s).map_err(|e| e.to_string())?;
            let b = klee_phi_bruteforce(n, s).map_err(|e| e.to_string())?;
            ensure(k == b, || format!("Φ_{s}({n}): {k} vs {b}"))?;
            let t = tau_s(n, s).map_err(|e| e.to_string())?;
            ensure(t == common::tau_s(n, s), || format!("τ_{s}({n})"))?;
        }
    }
    for a in 0..=300 {
        for b in 1..=300 {
            for s in 1..=3 {
                let g = gen_gcd(a, b, s).map_err(|e| e.to_string())?;
                ensure(g == common::gen_gcd(a, b, s), || format!("({a},{b})_{s}"))?;
            }
        }
    }
    Ok("klee_phi, tau_s, gen_gcd agree".into())
}

fn character_engine() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=100 {
        let group = CharacterGroup::new(n).map_err(|e| e.to_string())?;
        let chars: Vec<DirichletCharacter> = group.characters().collect();
        let phi = euler_phi(n).unwrap();
        ensure(chars.len() as u64 == phi, || format!("count mod {n}"))?;
        let values: Vec<Vec<Complex64>> = chars
            .iter()
            .map(|c| (0..n).map(|k| c.eval(k).to_complex()).collect())
            .collect();
        for (i, a) in values.iter().enumerate() {
            for (j, b) in values.iter().enumerate() {
                let dot: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
                let target = if i == j { phi as f64 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        for chi in &chars {
            let product: u64 = chi.factor().iter().map(|c| c.conductor()).product();
            ensure(product == chi.conductor(), || {
                format!("{chi}: conductor product")
            })?;
            ensure(chi.conductor() == chi.conductor_by_scan(), || {
                format!("{chi}: scan")
            })?;
            let prim = chi.primitive_part();
            ensure(
                prim.is_primitive() && prim.modulus() == chi.conductor(),
                || format!("{chi}: primitive part"),
            )?;
            let back = prim.induce(n).map_err(|e| e.to_string())?;
            ensure(&back == chi, || format!("{chi}: round trip"))?;
        }
    }
    ensure(worst < 1e-9, || format!("orthogonality residual {worst}"))?;
    let mut checked = 0;
    for n in 1..=500 {
        for s in 1..=3 {
            for d in sth_power_divisors(n, s).map_err(|e| e.to_string())? {
                let ok = cohen_partition_check(n, s, d).map_err(|e| e.to_string())?;
                ensure(ok, || format!("partition n={n} s={s} d={d}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "orthogonality residual {worst:.1e}; {checked} partitions"
    ))
}

/// Restriction of `chi` to the prime powers dividing `r`.
fn restrict(chi: &DirichletCharacter, r: u64) -> DirichletCharacter {
    let parts: Vec<_> = chi
        .components()
        .iter()
        .filter(|c| r % c.prime_power() == 0)
        .cloned()
        .collect();
    if parts.is_empty() {
        return CharacterGroup::new(1).unwrap().principal();
    }
    DirichletCharacter::new(parts).unwrap()
}

fn multiplicativity() -> Outcome {
    let mut checked = 0;
    let kernel = |n: u64, s: u32| SumKernel::new(&CharacterGroup::new(n).unwrap(), s).unwrap();
    for s in 1..=3 {
        for n in 2..=400u64 {
            let k = kernel(n, s);
            let group = CharacterGroup::new(n).unwrap();
            let divisors: Vec<u64> = group.factorization().divisors();
            let splits: Vec<(u64, u64)> = divisors
                .iter()
                .map(|&r| (r, n / r))
                .filter(|&(r, t)| 1 < r && r < t && num_integer::gcd(r, t) == 1)
                .collect();
            if splits.is_empty() {
                continue;
            }
            let factor_kernels: Vec<(SumKernel, SumKernel)> = splits
                .iter()
                .map(|&(r, t)| (kernel(r, s), kernel(t, s)))
                .collect();
            for chi in group.characters() {
                let f = k.sum(&chi).map_err(|e| e.to_string())?.rounded;
                for (&(r, t), (kr, kt)) in splits.iter().zip(&factor_kernels) {
                    let fr = kr
                        .sum(&restrict(&chi, r))
                        .map_err(|e| e.to_string())?
                        .rounded;
                    let ft = kt
                        .sum(&restrict(&chi, t))
                        .map_err(|e| e.to_string())?
                        .rounded;
                    ensure(f == fr * ft, || {
                        format!("f({n}) = {f} != {fr}·{ft} for {chi}, s={s}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} factorizations"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("remark reproduction", remark),
        ("theorem 1 sweep", theorem1),
        ("theorem 2 sweep", theorem2),
        ("zhao-cao sweep", zhao_cao),
        ("menon sweep", menon),
        ("sury sweep", sury),
        ("shift sum lemmas", lemmas_31_33),
        ("prime power lemma", lemma34),
        ("oracle suite", oracles),
        ("character engine", character_engine),
        ("multiplicativity of f", multiplicativity),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{elapsed:.1?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
