//! Dirichlet characters with exact values.
//!
//! A character mod `n` is stored as one component per prime power `p^a ‖ n`,
//! each component being an index vector against the canonical generators of
//! `(ℤ/p^a)^*` (see [`UnitGroupStructure`]). The character sends the
//! generator `g_j` of order `o_j` to `exp(2πi · index_j / o_j)`.
//!
//! Characters are labelled `n:p^a=[i,..];q^b=[j,..]`, e.g. `4:2^2=[0]` for
//! the principal character mod 4. The labelling is deterministic because the
//! generators are.

mod unit_group;
mod value;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{factorize, Factorization};
use crate::error::{domain, Error, Result};

pub use unit_group::{Generator, UnitGroupStructure, UNIT_GROUP_BOUND};
pub use value::{CharValue, Turn};

/// Builds the unit group structure of `(ℤ/p^a)^*`.
pub fn unit_group_structure(p: u64, a: u32) -> Result<UnitGroupStructure> {
    UnitGroupStructure::new(p, a)
}

/// The restriction of a character to `(ℤ/p^a)^*`.
#[derive(Debug, Clone)]
pub struct CharacterComponent {
    group: Arc<UnitGroupStructure>,
    index: Vec<u32>,
}

impl CharacterComponent {
    pub fn new(group: Arc<UnitGroupStructure>, index: Vec<u32>) -> Result<Self> {
        let gens = group.generators();
        if index.len() != gens.len() {
            return domain(format!(
                "mod {} needs {} indices, got {}",
                group.modulus(),
                gens.len(),
                index.len()
            ));
        }
        for (&i, g) in index.iter().zip(gens) {
            if u64::from(i) >= g.order {
                return domain(format!(
                    "index {i} out of range for generator order {}",
                    g.order
                ));
            }
        }
        Ok(CharacterComponent { group, index })
    }

    fn principal(group: Arc<UnitGroupStructure>) -> Self {
        let index = vec![0; group.generators().len()];
        CharacterComponent { group, index }
    }

    /// Recovers a component on `group` from its values at the generators.
    /// Fails if some value is not a root of unity of the generator's order.
    fn from_generator_values(
        group: Arc<UnitGroupStructure>,
        value_at: impl Fn(u64) -> Option<Turn>,
    ) -> Result<Self> {
        let mut index = Vec::with_capacity(group.generators().len());
        for g in group.generators() {
            let t = value_at(g.residue).ok_or_else(|| {
                Error::Integrity(format!("character vanishes at generator {}", g.residue))
            })?;
            if g.order % t.den() != 0 {
                return Err(Error::Integrity(format!(
                    "value {t} at {} is not an {}-th root of unity",
                    g.residue, g.order
                )));
            }
            index.push((t.num() * (g.order / t.den())) as u32);
        }
        Ok(CharacterComponent { group, index })
    }

    pub fn group(&self) -> &UnitGroupStructure {
        &self.group
    }

    pub fn prime_power(&self) -> u64 {
        self.group.modulus()
    }

    pub fn index(&self) -> &[u32] {
        &self.index
    }

    pub fn is_principal(&self) -> bool {
        self.index.iter().all(|&i| i == 0)
    }

    /// Conductor of this component, a power of its prime.
    pub fn conductor(&self) -> u64 {
        self.group
            .prime()
            .pow(self.group.conductor_exponent(&self.index))
    }

    fn value(&self, k: u64) -> Option<Turn> {
        let exps = self.group.dlog(k)?;
        let mut t = Turn::ZERO;
        for ((&i, &e), g) in self.index.iter().zip(exps).zip(self.group.generators()) {
            t = t * Turn::new(u64::from(i) * u64::from(e) % g.order, g.order);
        }
        Some(t)
    }

    fn same_as(&self, other: &CharacterComponent) -> bool {
        self.prime_power() == other.prime_power() && self.index == other.index
    }
}

/// A Dirichlet character mod `n`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    components: Vec<CharacterComponent>,
    // lcm of all generator orders; every value is a power of exp(2πi/exponent)
    exponent: u64,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.same_as(b))
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Assembles a character from components on pairwise distinct primes.
    /// Components are sorted by prime; the modulus is their product.
    pub fn new(mut components: Vec<CharacterComponent>) -> Result<Self> {
        components.sort_by_key(|c| c.group.prime());
        if components
            .windows(2)
            .any(|w| w[0].group.prime() == w[1].group.prime())
        {
            return domain("character components must be on distinct primes");
        }
        let modulus = components.iter().map(|c| c.prime_power()).product();
        let exponent = components
            .iter()
            .flat_map(|c| c.group.generators())
            .fold(1u64, |l, g| l.lcm(&g.order));
        Ok(DirichletCharacter {
            modulus,
            components,
            exponent,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn components(&self) -> &[CharacterComponent] {
        &self.components
    }

    pub fn is_principal(&self) -> bool {
        self.components.iter().all(|c| c.is_principal())
    }

    /// Order of the character in the character group.
    pub fn order(&self) -> u64 {
        self.components
            .iter()
            .flat_map(|c| c.index.iter().zip(c.group.generators()))
            .fold(1u64, |l, (&i, g)| {
                l.lcm(&(g.order / u64::from(i).gcd(&g.order)))
            })
    }

    /// `χ(k)`, exact.
    pub fn eval(&self, k: u64) -> CharValue {
        let l = self.exponent;
        let mut num = 0u64;
        for c in &self.components {
            let Some(exps) = c.group.dlog(k) else {
                return CharValue::Zero;
            };
            for ((&i, &e), g) in c.index.iter().zip(exps).zip(c.group.generators()) {
                num = (num + u64::from(i) * u64::from(e) % g.order * (l / g.order)) % l;
            }
        }
        CharValue::Root(Turn::new(num, l))
    }

    /// Conductor as the product of the component conductors.
    ///
    /// Agrees with [`conductor_by_scan`](Self::conductor_by_scan); the
    /// property tests check this for every character of modulus ≤ 300.
    pub fn conductor(&self) -> u64 {
        self.components.iter().map(|c| c.conductor()).product()
    }

    /// Smallest `d | n` such that `χ(k) = 1` whenever `k ≡ 1 (mod d)` and
    /// `gcd(k, n) = 1`.
    pub fn conductor_by_scan(&self) -> u64 {
        let n = self.modulus;
        let divisors = factorize(n)
            .expect("character moduli are within the factorization bound")
            .divisors();
        for d in divisors {
            let induced = (1..=n)
                .step_by(d as usize)
                .filter(|k| k.gcd(&n) == 1)
                .all(|k| self.eval(k).is_one());
            if induced {
                return d;
            }
        }
        unreachable!("n is always an induced modulus")
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// Pointwise product of two characters mod the same `n`.
    pub fn multiply(&self, other: &DirichletCharacter) -> Result<DirichletCharacter> {
        if self.modulus != other.modulus {
            return domain(format!(
                "cannot multiply characters mod {} and mod {}",
                self.modulus, other.modulus
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| {
                let index = a
                    .index
                    .iter()
                    .zip(&b.index)
                    .zip(a.group.generators())
                    .map(|((&x, &y), g)| ((u64::from(x) + u64::from(y)) % g.order) as u32)
                    .collect();
                CharacterComponent {
                    group: Arc::clone(&a.group),
                    index,
                }
            })
            .collect();
        Ok(DirichletCharacter {
            modulus: self.modulus,
            components,
            exponent: self.exponent,
        })
    }

    /// The characters mod `p^a` whose product (after lifting to `n`) is `χ`,
    /// one per prime power of the modulus.
    pub fn factor(&self) -> Vec<DirichletCharacter> {
        self.components
            .iter()
            .map(|c| DirichletCharacter::new(vec![c.clone()]).expect("a single component is valid"))
            .collect()
    }

    /// The primitive character `ψ` mod `conductor(χ)` that agrees with `χ`
    /// on every `k` coprime to the modulus.
    pub fn primitive_part(&self) -> DirichletCharacter {
        let components = self
            .components
            .iter()
            .filter_map(|c| {
                let e = c.group.conductor_exponent(&c.index);
                if e == 0 {
                    return None;
                }
                let group = if e == c.group.exponent() {
                    Arc::clone(&c.group)
                } else {
                    Arc::new(
                        UnitGroupStructure::new(c.group.prime(), e)
                            .expect("a divisor of a valid prime power is valid"),
                    )
                };
                Some(
                    CharacterComponent::from_generator_values(group, |k| c.value(k))
                        .expect("a component factors through its conductor"),
                )
            })
            .collect();
        DirichletCharacter::new(components).expect("components are on distinct primes")
    }

    /// The character mod `n` induced by `χ`, for `n` a multiple of the
    /// modulus: equal to `χ` on integers coprime to `n`.
    pub fn induce(&self, n: u64) -> Result<DirichletCharacter> {
        if n == 0 || n % self.modulus != 0 {
            return domain(format!("{n} is not a multiple of {}", self.modulus));
        }
        let group = CharacterGroup::new(n)?;
        let components = group
            .components
            .iter()
            .map(|g| {
                match self
                    .components
                    .iter()
                    .find(|c| c.group.prime() == g.prime())
                {
                    Some(c) => {
                        CharacterComponent::from_generator_values(Arc::clone(g), |k| c.value(k))
                    }
                    None => Ok(CharacterComponent::principal(Arc::clone(g))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        DirichletCharacter::new(components)
    }

    /// Canonical label, e.g. `12:2^2=[1];3^1=[0]`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.modulus)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}^{}=[", c.group.prime(), c.group.exponent())?;
            for (j, x) in c.index.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl FromStr for DirichletCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Domain(format!("malformed character label {s:?}: {why}"));
        let (modulus, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let modulus: u64 = modulus.trim().parse().map_err(|_| bad("modulus"))?;
        let mut components = Vec::new();
        for part in rest.split(';').filter(|p| !p.is_empty()) {
            let (pp, idx) = part.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let (p, a) = pp.split_once('^').ok_or_else(|| bad("missing '^'"))?;
            let p: u64 = p.parse().map_err(|_| bad("prime"))?;
            let a: u32 = a.parse().map_err(|_| bad("exponent"))?;
            let idx = idx
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| bad("index brackets"))?;
            let index = idx
                .split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad("index")))
                .collect::<Result<Vec<_>>>()?;
            let group = Arc::new(UnitGroupStructure::new(p, a)?);
            components.push(CharacterComponent::new(group, index)?);
        }
        let chi = DirichletCharacter::new(components)?;
        if chi.modulus != modulus {
            return Err(bad("components do not multiply to the modulus"));
        }
        let canonical = factorize(modulus)?;
        if chi.components.len() != canonical.factors().len() {
            return Err(bad("every prime power of the modulus needs a component"));
        }
        Ok(chi)
    }
}

/// The group of characters mod `n`, with the shared unit-group tables.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: u64,
    factorization: Factorization,
    components: Vec<Arc<UnitGroupStructure>>,
}

impl CharacterGroup {
    pub fn new(n: u64) -> Result<Self> {
        let factorization = factorize(n)?;
        let components = factorization
            .factors()
            .iter()
            .map(|&(p, a)| UnitGroupStructure::new(p, a).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterGroup {
            modulus: n,
            factorization,
            components,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn components(&self) -> &[Arc<UnitGroupStructure>] {
        &self.components
    }

    /// `φ(n)`, which is also the number of characters.
    pub fn order(&self) -> u64 {
        self.components.iter().map(|c| c.order()).product()
    }

    /// Generator orders of all components, flattened in label order.
    pub fn radices(&self) -> Vec<u64> {
        self.components
            .iter()
            .flat_map(|c| c.generators().iter().map(|g| g.order))
            .collect()
    }

    /// Flattened exponent vector of `k`, or `None` if `gcd(k, n) > 1`.
    pub fn coordinates(&self, k: u64) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        for c in &self.components {
            out.extend_from_slice(c.dlog(k)?);
        }
        Some(out)
    }

    pub fn principal(&self) -> DirichletCharacter {
        self.character_unchecked(&vec![0; self.radices().len()])
    }

    /// The character with the given flattened index vector.
    pub fn character(&self, flat_index: &[u32]) -> Result<DirichletCharacter> {
        let radices = self.radices();
        if flat_index.len() != radices.len() {
            return domain(format!(
                "mod {} needs {} indices, got {}",
                self.modulus,
                radices.len(),
                flat_index.len()
            ));
        }
        if flat_index
            .iter()
            .zip(&radices)
            .any(|(&i, &r)| u64::from(i) >= r)
        {
            return domain("character index out of range");
        }
        Ok(self.character_unchecked(flat_index))
    }

    fn character_unchecked(&self, flat_index: &[u32]) -> DirichletCharacter {
        let mut rest = flat_index;
        let components = self
            .components
            .iter()
            .map(|g| {
                let (head, tail) = rest.split_at(g.generators().len());
                rest = tail;
                CharacterComponent {
                    group: Arc::clone(g),
                    index: head.to_vec(),
                }
            })
            .collect();
        DirichletCharacter::new(components).expect("group components are on distinct primes")
    }

    /// All `φ(n)` characters in lexicographic order of their index vectors,
    /// starting with the principal character.
    pub fn characters(&self) -> impl Iterator<Item = DirichletCharacter> + '_ {
        let radices = self.radices();
        let mut next = Some(vec![0u32; radices.len()]);
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            for pos in (0..succ.len()).rev() {
                succ[pos] += 1;
                if u64::from(succ[pos]) < radices[pos] {
                    next = Some(succ);
                    break;
                }
                succ[pos] = 0;
            }
            Some(self.character_unchecked(&current))
        })
    }
}

/// Every character mod `n`, principal first.
pub fn enumerate_characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    let group = CharacterGroup::new(n)?;
    Ok(group.characters().collect())
}

pub fn principal_character(n: u64) -> Result<DirichletCharacter> {
    Ok(CharacterGroup::new(n)?.principal())
}

/// `χ(k)` for any integer `k`.
pub fn eval_character(chi: &DirichletCharacter, k: i64) -> CharValue {
    chi.eval(k.rem_euclid(chi.modulus() as i64) as u64)
}

pub fn multiply_characters(
    a: &DirichletCharacter,
    b: &DirichletCharacter,
) -> Result<DirichletCharacter> {
    a.multiply(b)
}
