//! Deep matrices: the span of generators `d_{u,v}` multiplied by tail
//! splicing, their action on left-infinite sequences by chopping and sewing
//! heads, and the maps onto Leavitt and supernatural matrix algebras.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{splice_product, CoreElement};
use crate::chain::{AdicWord, DivisorChain};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::leavitt::LeavittElement;

type Terms = BTreeMap<(AdicWord, AdicWord), Scalar>;

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, value: Scalar) {
    let sum = match map.remove(&key) {
        Some(prev) => &prev + &value,
        None => value,
    };
    if !sum.is_zero() {
        map.insert(key, sum);
    }
}

/// A finite combination of generators `d_{u,v}`. Unbalanced pairs
/// (`|u| ≠ |v|`) exist only on homogeneous chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeepElement {
    chain: DivisorChain,
    field: FieldDescriptor,
    terms: Terms,
}

impl DeepElement {
    pub fn zero(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self {
            chain: chain.clone(),
            field,
            terms: Terms::new(),
        }
    }

    /// `d_{∅,∅}`.
    pub fn identity(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self::d_unit(chain, field, &AdicWord::empty(), &AdicWord::empty()).expect("empty words")
    }

    pub fn d_unit(chain: &DivisorChain, field: FieldDescriptor, u: &AdicWord, v: &AdicWord) -> Result<Self> {
        Self::scaled(chain, u, v, &field.one())
    }

    pub fn scaled(chain: &DivisorChain, u: &AdicWord, v: &AdicWord, s: &Scalar) -> Result<Self> {
        u.validate(chain)?;
        v.validate(chain)?;
        if u.len() != v.len() && chain.homogeneous_radix().is_none() {
            return Err(Error::UnbalancedOnGeneralChain(u.to_string(), v.to_string()));
        }
        let mut out = Self::zero(chain, s.field());
        accumulate(&mut out.terms, (u.clone(), v.clone()), s.clone());
        Ok(out)
    }

    pub fn chain(&self) -> &DivisorChain {
        &self.chain
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<(AdicWord, AdicWord), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        self.terms.keys().all(|(u, v)| u.len() == v.len())
    }

    fn check_compatible(&self, chain: &DivisorChain, field: FieldDescriptor) -> Result<()> {
        self.chain.ensure_same(chain)?;
        self.field.ensure_same(field)
    }

    pub fn add(&self, other: &DeepElement) -> Result<DeepElement> {
        self.check_compatible(&other.chain, other.field)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            accumulate(&mut out.terms, k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> DeepElement {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &DeepElement) -> Result<DeepElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<DeepElement> {
        self.field.ensure_same(s.field())?;
        let mut out = Self::zero(&self.chain, self.field);
        for (k, v) in &self.terms {
            accumulate(&mut out.terms, k.clone(), v * s);
        }
        Ok(out)
    }

    /// Bilinear extension of `d_{u,u′} d_{w,w′} = d_{vu,w′}` if `w = vu′`,
    /// `d_{u,vw′}` if `u′ = vw`, and 0 otherwise.
    pub fn mul(&self, other: &DeepElement) -> Result<DeepElement> {
        self.check_compatible(&other.chain, other.field)?;
        let mut out = Self::zero(&self.chain, self.field);
        for ((u, u_prime), a) in &self.terms {
            for ((w, w_prime), b) in &other.terms {
                if let Some(key) = splice_product(u, u_prime, w, w_prime) {
                    accumulate(&mut out.terms, key, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<DeepElement> {
        let mut acc = Self::identity(&self.chain, self.field);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `|u| - |v|` over the terms.
    pub fn degree_support(&self) -> BTreeSet<i64> {
        self.terms
            .keys()
            .map(|(u, v)| u.len() as i64 - v.len() as i64)
            .collect()
    }

    /// Longest word in any term.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|(u, v)| u.len().max(v.len())).max().unwrap_or(0)
    }

    /// `d_{u,v} ↦ x_u y_v`.
    pub fn to_leavitt(&self) -> Result<LeavittElement> {
        let mut out = LeavittElement::zero(&self.chain, self.field);
        for ((u, v), s) in &self.terms {
            out = out.add(&LeavittElement::term(&self.chain, u, v, s)?)?;
        }
        Ok(out)
    }

    /// `d_{u,v} ↦ e_{u,v}` on balanced elements.
    pub fn balanced_to_core(&self) -> Result<CoreElement> {
        let mut out = CoreElement::zero(&self.chain, self.field);
        for ((u, v), s) in &self.terms {
            out = out.add(&CoreElement::scaled_unit(&self.chain, u, v, s)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for DeepElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((u, v), s)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !s.is_one() {
                write!(f, "({s})*")?;
            }
            write!(f, "d[{u},{v}]")?;
        }
        Ok(())
    }
}

/// A finite combination of left-infinite sequences `⋯000w`, each keyed by
/// `w` with its leading zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailVector {
    chain: DivisorChain,
    field: FieldDescriptor,
    entries: BTreeMap<AdicWord, Scalar>,
}

impl TailVector {
    pub fn zero(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self {
            chain: chain.clone(),
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(chain: &DivisorChain, field: FieldDescriptor, w: &AdicWord) -> Result<Self> {
        w.validate(chain)?;
        let mut out = Self::zero(chain, field);
        out.entries.insert(w.strip_leading_zeros(), field.one());
        Ok(out)
    }

    /// The image of a level-`t` coordinate vector under `e_w ↦ ⋯000w`.
    pub fn from_level(
        chain: &DivisorChain,
        field: FieldDescriptor,
        level: usize,
        coords: &BTreeMap<usize, Scalar>,
    ) -> Result<Self> {
        let mut out = Self::zero(chain, field);
        for (&i, s) in coords {
            field.ensure_same(s.field())?;
            let w = AdicWord::encode(i, level, chain)?.strip_leading_zeros();
            accumulate(&mut out.entries, w, s.clone());
        }
        Ok(out)
    }

    pub fn entries(&self) -> &BTreeMap<AdicWord, Scalar> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &TailVector) -> Result<TailVector> {
        self.chain.ensure_same(&other.chain)?;
        self.field.ensure_same(other.field)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            accumulate(&mut out.entries, k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Result<TailVector> {
        self.field.ensure_same(s.field())?;
        let mut out = Self::zero(&self.chain, self.field);
        for (k, v) in &self.entries {
            accumulate(&mut out.entries, k.clone(), v * s);
        }
        Ok(out)
    }
}

impl fmt::Display for TailVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, s)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if s.is_one() {
                write!(f, "[{w}]")?;
            } else {
                write!(f, "({s})*[{w}]")?;
            }
        }
        Ok(())
    }
}

/// `d_{u,v} · π = π′u` when the zero-padded sequence `π` ends in `v`
/// (`π = π′v`), and 0 otherwise.
pub fn frankenstein_act(x: &DeepElement, pi: &TailVector) -> Result<TailVector> {
    x.check_compatible(&pi.chain, pi.field)?;
    let mut out = TailVector::zero(&pi.chain, pi.field);
    for ((u, v), a) in &x.terms {
        for (w, b) in &pi.entries {
            let padded = w.padded(v.len());
            if let Some(head) = AdicWord::split_tail(v, &padded) {
                let sewn = AdicWord::concat_unchecked(&head, u).strip_leading_zeros();
                accumulate(&mut out.entries, sewn, a * b);
            }
        }
    }
    Ok(out)
}
