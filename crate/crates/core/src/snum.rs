//! Supernatural (Steinitz) numbers: formal products `∏ p^α_p` with each
//! exponent a natural number or infinity, supported on finitely many primes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent of a single prime. Arithmetic saturates at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub fn is_zero(self) -> bool {
        self == Exponent::Finite(0)
    }

    pub fn saturating_add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a.saturating_add(b)),
            _ => Exponent::Infinite,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
            (Exponent::Finite(_), Exponent::Infinite) => Ordering::Less,
            (Exponent::Infinite, Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Infinite, Exponent::Infinite) => Ordering::Equal,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A supernatural number. Absent primes have exponent zero; stored exponents
/// are never zero, so structural equality is numeric equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SupernaturalNumber {
    exponents: BTreeMap<u64, Exponent>,
}

impl SupernaturalNumber {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_natural(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroNatural);
        }
        let exponents = factorize(n)
            .into_iter()
            .map(|(p, e)| (p, Exponent::Finite(e)))
            .collect();
        Ok(Self { exponents })
    }

    /// `n^∞`: every prime dividing `n` raised to infinity.
    pub fn infinite_power(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroNatural);
        }
        let exponents = factorize(n).into_iter().map(|(p, _)| (p, Exponent::Infinite)).collect();
        Ok(Self { exponents })
    }

    /// Builds from explicit `(prime, exponent)` pairs; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u64, Exponent)>>(pairs: I) -> Result<Self> {
        let mut out = Self::one();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e.is_zero() {
                continue;
            }
            let slot = out.exponents.entry(p).or_insert(Exponent::Finite(0));
            *slot = slot.saturating_add(e);
        }
        Ok(out)
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.exponents.get(&p).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exponents.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The finite value, if every exponent is finite and the product fits.
    pub fn to_natural(&self) -> Option<u64> {
        let mut acc = 1u64;
        for (p, e) in self.iter() {
            let Exponent::Finite(e) = e else { return None };
            acc = acc.checked_mul(p.checked_pow(e)?)?;
        }
        Some(acc)
    }

    fn merge(&self, other: &Self, f: impl Fn(Exponent, Exponent) -> Exponent) -> Self {
        let mut exponents = BTreeMap::new();
        for p in self.primes().chain(other.primes()) {
            let e = f(self.exponent(p), other.exponent(p));
            if !e.is_zero() {
                exponents.insert(p, e);
            }
        }
        Self { exponents }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, Exponent::saturating_add)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, std::cmp::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, std::cmp::min)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(p, e)| e <= other.exponent(p))
    }

    /// Whether the natural number `n` divides this supernatural number.
    pub fn has_divisor(&self, n: u64) -> bool {
        factorize(n)
            .into_iter()
            .all(|(p, e)| Exponent::Finite(e) <= self.exponent(p))
    }

    /// Whether `M_n(F) ⊗ M_𝔫(F) ≅ M_𝔫(F)`, i.e. `n^∞ | 𝔫`.
    pub fn tensor_absorbs(&self, n: u64) -> Result<bool> {
        Ok(Self::infinite_power(n)?.divides(self))
    }

    pub fn is_locally_finite(&self) -> bool {
        self.exponents.values().all(|e| *e != Exponent::Infinite)
    }

    pub fn primary_component(&self, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut exponents = BTreeMap::new();
        if let Some(&e) = self.exponents.get(&p) {
            exponents.insert(p, e);
        }
        Ok(Self { exponents })
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                Exponent::Finite(1) => write!(f, "{p}")?,
                Exponent::Finite(e) => write!(f, "{p}^{e}")?,
                Exponent::Infinite => write!(f, "{p}^inf")?,
            }
        }
        Ok(())
    }
}

/// Accepts exactly the canonical text form: primes strictly ascending,
/// `^inf` for infinity, `^1` omitted, `1` for the empty product.
impl FromStr for SupernaturalNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let bad = |msg: &str| Error::Parse(format!("supernatural number {s:?}: {msg}"));
        let mut exponents = BTreeMap::new();
        let mut last = 0u64;
        for factor in s.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, Some(e)),
                None => (factor, None),
            };
            let p: u64 = base.parse().map_err(|_| bad("expected a prime base"))?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if p <= last {
                return Err(bad("primes must be strictly ascending"));
            }
            last = p;
            let e = match exp {
                None => Exponent::Finite(1),
                Some("inf") => Exponent::Infinite,
                Some(e) => {
                    let e: u32 = e.parse().map_err(|_| bad("expected an exponent"))?;
                    if e < 2 {
                        return Err(bad("exponents 0 and 1 are not written"));
                    }
                    Exponent::Finite(e)
                }
            };
            exponents.insert(p, e);
        }
        Ok(Self { exponents })
    }
}
