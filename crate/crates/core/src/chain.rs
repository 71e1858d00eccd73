//! Divisor chains `1 = n₀ | n₁ | n₂ | ⋯` and the mixed-radix words that index
//! their basis vectors.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::snum::SupernaturalNumber;

/// How a finite list of radices continues past its end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepeatPolicy {
    None,
    /// `m₁,…,m_T,m_T,m_T,…`
    RepeatLast,
    /// `m₁,…,m_T,m₁,…,m_T,…`
    RepeatPattern,
}

/// The radices `m_t = n_t / n_{t-1}` of a divisor chain. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorChain {
    radices: Arc<[usize]>,
    policy: RepeatPolicy,
}

impl DivisorChain {
    pub fn new(radices: Vec<usize>, policy: RepeatPolicy) -> Result<Self> {
        if radices.is_empty() {
            return Err(Error::InvalidParameter("a chain needs at least one radix".into()));
        }
        if let Some(&r) = radices.iter().find(|&&r| r < 2) {
            return Err(Error::BadRadix(r));
        }
        Ok(Self {
            radices: radices.into(),
            policy,
        })
    }

    pub fn finite(radices: Vec<usize>) -> Result<Self> {
        Self::new(radices, RepeatPolicy::None)
    }

    /// The chain `m, m, m, …` for `m^∞`.
    pub fn homogeneous(m: usize) -> Result<Self> {
        Self::new(vec![m], RepeatPolicy::RepeatPattern)
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn policy(&self) -> RepeatPolicy {
        self.policy
    }

    /// Number of levels available, `None` when unbounded.
    pub fn depth(&self) -> Option<usize> {
        match self.policy {
            RepeatPolicy::None => Some(self.radices.len()),
            _ => None,
        }
    }

    /// Radix of digit position `position` (0-based), i.e. `m_{position+1}`.
    pub fn radix(&self, position: usize) -> Option<usize> {
        let len = self.radices.len();
        match self.policy {
            _ if position < len => Some(self.radices[position]),
            RepeatPolicy::None => None,
            RepeatPolicy::RepeatLast => Some(self.radices[len - 1]),
            RepeatPolicy::RepeatPattern => Some(self.radices[position % len]),
        }
    }

    pub fn radix_checked(&self, position: usize) -> Result<usize> {
        self.radix(position).ok_or(Error::DepthExceeded {
            requested: position + 1,
            available: self.radices.len(),
        })
    }

    pub fn check_level(&self, level: usize) -> Result<()> {
        match self.depth() {
            Some(d) if level > d => Err(Error::DepthExceeded {
                requested: level,
                available: d,
            }),
            _ => Ok(()),
        }
    }

    /// `n_t`.
    pub fn size(&self, level: usize) -> Result<usize> {
        self.check_level(level)?;
        (0..level).try_fold(1usize, |acc, pos| {
            acc.checked_mul(self.radix(pos).expect("level checked"))
                .ok_or(Error::Overflow("chain size"))
        })
    }

    /// Smallest level whose size is a multiple of `n`, searched up to `limit`.
    pub fn level_covering(&self, n: usize, limit: usize) -> Result<usize> {
        let mut size = 1usize;
        for level in 0..=limit {
            if level > 0 {
                size = size
                    .checked_mul(self.radix_checked(level - 1)?)
                    .ok_or(Error::Overflow("chain size"))?;
            }
            if size.is_multiple_of(n) {
                return Ok(level);
            }
        }
        Err(Error::SizeNotDivisor(n as u64, self.degree().to_string()))
    }

    /// `Some(m)` when every radix equals `m`.
    pub fn homogeneous_radix(&self) -> Option<usize> {
        let m = self.radices[0];
        self.radices.iter().all(|&r| r == m).then_some(m)
    }

    pub fn require_homogeneous(&self) -> Result<usize> {
        self.homogeneous_radix()
            .ok_or_else(|| Error::NotHomogeneous(self.to_string()))
    }

    /// The supernatural number `lcm{n_t}` the chain converges to.
    pub fn degree(&self) -> SupernaturalNumber {
        let finite = |rs: &[usize]| {
            rs.iter().fold(SupernaturalNumber::one(), |acc, &r| {
                acc.mul(&SupernaturalNumber::from_natural(r as u64).expect("radix >= 2"))
            })
        };
        let infinite = |rs: &[usize]| {
            rs.iter().fold(SupernaturalNumber::one(), |acc, &r| {
                acc.mul(&SupernaturalNumber::infinite_power(r as u64).expect("radix >= 2"))
            })
        };
        match self.policy {
            RepeatPolicy::None => finite(&self.radices),
            RepeatPolicy::RepeatLast => {
                let (last, prefix) = self.radices.split_last().expect("nonempty");
                finite(prefix).mul(&infinite(std::slice::from_ref(last)))
            }
            RepeatPolicy::RepeatPattern => infinite(&self.radices),
        }
    }

    /// Whether `n` divides the chain degree.
    pub fn admits_size(&self, n: usize) -> bool {
        self.degree().has_divisor(n as u64)
    }

    pub fn ensure_same(&self, other: &DivisorChain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChainMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for DivisorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.radices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        match self.policy {
            RepeatPolicy::None => Ok(()),
            RepeatPolicy::RepeatLast => f.write_str("+last"),
            RepeatPolicy::RepeatPattern => f.write_str("+repeat"),
        }
    }
}

/// `"2,3,4"`, `"2,3,4+repeat"` (cycle the list) or `"2,3,4+last"`.
impl FromStr for DivisorChain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, policy) = if let Some(b) = s.strip_suffix("+repeat") {
            (b, RepeatPolicy::RepeatPattern)
        } else if let Some(b) = s.strip_suffix("+last") {
            (b, RepeatPolicy::RepeatLast)
        } else {
            (s, RepeatPolicy::None)
        };
        let radices = body
            .split(',')
            .map(|r| {
                r.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad chain literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(radices, policy)
    }
}

/// A word `k_{t-1}⋯k₀` of explicit length `t`; digit `k_i` has radix
/// `m_{i+1}`. Leading zeros are significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdicWord {
    // least significant first
    digits: Vec<usize>,
}

impl AdicWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_low_first(digits: Vec<usize>) -> Self {
        Self { digits }
    }

    /// Digits as printed, most significant first.
    pub fn from_high_first(digits: &[usize]) -> Self {
        Self {
            digits: digits.iter().rev().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, position: usize) -> usize {
        self.digits[position]
    }

    /// The length-`t` word of `k`.
    pub fn encode(k: usize, t: usize, chain: &DivisorChain) -> Result<Self> {
        let size = chain.size(t)?;
        if k >= size {
            return Err(Error::IndexOutOfRange {
                index: k,
                level: t,
                size,
            });
        }
        let mut rest = k;
        let mut digits = Vec::with_capacity(t);
        for pos in 0..t {
            let m = chain.radix_checked(pos)?;
            digits.push(rest % m);
            rest /= m;
        }
        Ok(Self { digits })
    }

    /// Digits placed at positions `offset, offset+1, …` must respect the radices there.
    pub fn validate_at(&self, chain: &DivisorChain, offset: usize) -> Result<()> {
        for (i, &d) in self.digits.iter().enumerate() {
            let m = chain.radix_checked(offset + i)?;
            if d >= m {
                return Err(Error::RadixMismatch {
                    digit: d,
                    position: offset + i,
                    radix: m,
                });
            }
        }
        Ok(())
    }

    pub fn validate(&self, chain: &DivisorChain) -> Result<()> {
        self.validate_at(chain, 0)
    }

    /// `k₀ + k₁n₁ + k₂n₂ + ⋯`.
    pub fn decode(&self, chain: &DivisorChain) -> Result<usize> {
        self.validate(chain)?;
        let mut place = 1usize;
        let mut acc = 0usize;
        for (pos, &d) in self.digits.iter().enumerate() {
            acc += d * place;
            place = place
                .checked_mul(chain.radix_checked(pos)?)
                .ok_or(Error::Overflow("word index"))?;
        }
        Ok(acc)
    }

    /// If `w = v·u′` (u′ the low digits of w), returns the high part `v`.
    pub fn split_tail(tail: &AdicWord, word: &AdicWord) -> Option<AdicWord> {
        word.digits.starts_with(&tail.digits).then(|| AdicWord {
            digits: word.digits[tail.len()..].to_vec(),
        })
    }

    /// The word `v·u`, with `v` moved to the positions directly above `u`.
    pub fn concat_above(high: &AdicWord, low: &AdicWord, chain: &DivisorChain) -> Result<AdicWord> {
        high.validate_at(chain, low.len())?;
        Ok(Self::concat_unchecked(high, low))
    }

    pub(crate) fn concat_unchecked(high: &AdicWord, low: &AdicWord) -> AdicWord {
        let mut digits = low.digits.clone();
        digits.extend_from_slice(&high.digits);
        AdicWord { digits }
    }

    /// Drops high-order zeros.
    pub fn strip_leading_zeros(&self) -> AdicWord {
        let keep = self.digits.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
        AdicWord {
            digits: self.digits[..keep].to_vec(),
        }
    }

    /// Pads with high-order zeros up to length `t`.
    pub fn padded(&self, t: usize) -> AdicWord {
        let mut digits = self.digits.clone();
        if digits.len() < t {
            digits.resize(t, 0);
        }
        AdicWord { digits }
    }

    /// All words of length `t` in index order.
    pub fn all_of_length(t: usize, chain: &DivisorChain) -> Result<Vec<AdicWord>> {
        let n = chain.size(t)?;
        (0..n).map(|k| Self::encode(k, t, chain)).collect()
    }
}

impl fmt::Display for AdicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("_");
        }
        for (i, d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for AdicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "_" {
            return Ok(Self::empty());
        }
        let high_first = s
            .split('.')
            .map(|d| {
                d.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_high_first(&high_first))
    }
}
