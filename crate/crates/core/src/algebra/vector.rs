use std::collections::BTreeMap;
use std::fmt;

use crate::chain::{AdicWord, DivisorChain};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::sparse::SparseMatrix;

use super::CoreElement;

/// A vector of `F^𝔫 = lim F^{n_t}`, where `F^{n_t} → F^{n_{t+1}}` stacks
/// copies `v ↦ (v; v; …; v)` (the basis word `u` goes to `Σ_i iu`).
/// Canonical values sit at the minimal level.
#[derive(Debug, Clone)]
pub struct ModuleVector {
    chain: DivisorChain,
    field: FieldDescriptor,
    level: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl ModuleVector {
    pub fn zero(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self {
            chain: chain.clone(),
            field,
            level: 0,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(chain: &DivisorChain, field: FieldDescriptor, w: &AdicWord) -> Result<Self> {
        let index = w.decode(chain)?;
        Ok(Self {
            chain: chain.clone(),
            field,
            level: w.len(),
            entries: BTreeMap::from([(index, field.one())]),
        }
        .compress())
    }

    pub fn from_entries(
        chain: &DivisorChain,
        field: FieldDescriptor,
        level: usize,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self> {
        let n = chain.size(level)?;
        let mut map = BTreeMap::new();
        for (i, s) in entries {
            if i >= n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    level,
                    size: n,
                });
            }
            field.ensure_same(s.field())?;
            let sum = match map.remove(&i) {
                Some(prev) => &prev + &s,
                None => s,
            };
            if !sum.is_zero() {
                map.insert(i, sum);
            }
        }
        Ok(Self {
            chain: chain.clone(),
            field,
            level,
            entries: map,
        })
    }

    pub fn chain(&self) -> &DivisorChain {
        &self.chain
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &BTreeMap<usize, Scalar> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lift(&self, t: usize) -> Result<ModuleVector> {
        if t < self.level {
            return Err(Error::InvalidParameter(format!(
                "cannot lift level {} down to {t}",
                self.level
            )));
        }
        let n = self.chain.size(self.level)?;
        let copies = self.chain.size(t)? / n;
        let entries = (0..copies)
            .flat_map(|k| self.entries.iter().map(move |(&i, s)| (k * n + i, s.clone())))
            .collect();
        Ok(Self {
            level: t,
            entries,
            ..self.clone()
        })
    }

    pub fn compress(&self) -> ModuleVector {
        let mut level = self.level;
        let mut entries = self.entries.clone();
        while level > 0 {
            let n = self.chain.size(level - 1).expect("existing level");
            let m = self.chain.radix(level - 1).expect("existing level");
            let head: BTreeMap<usize, Scalar> = entries.range(..n).map(|(&i, s)| (i, s.clone())).collect();
            let repeated =
                head.len() * m == entries.len() && entries.iter().all(|(&i, s)| head.get(&(i % n)) == Some(s));
            if !repeated {
                break;
            }
            entries = head;
            level -= 1;
        }
        Self {
            chain: self.chain.clone(),
            field: self.field,
            level,
            entries,
        }
    }

    pub fn same_representation(&self, other: &ModuleVector) -> bool {
        self.chain == other.chain
            && self.field == other.field
            && self.level == other.level
            && self.entries == other.entries
    }

    fn check_compatible(&self, chain: &DivisorChain, field: FieldDescriptor) -> Result<()> {
        self.chain.ensure_same(chain)?;
        self.field.ensure_same(field)
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check_compatible(&other.chain, other.field)?;
        let t = self.level.max(other.level);
        let (a, b) = (self.lift(t)?, other.lift(t)?);
        Self::from_entries(&self.chain, self.field, t, a.entries.into_iter().chain(b.entries)).map(|v| v.compress())
    }

    pub fn scale(&self, s: &Scalar) -> ModuleVector {
        let entries = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.entries.iter().map(|(&i, v)| (i, v * s)).collect()
        };
        Self {
            entries,
            ..self.clone()
        }
    }
}

impl PartialEq for ModuleVector {
    fn eq(&self, other: &Self) -> bool {
        if self.check_compatible(&other.chain, other.field).is_err() {
            return false;
        }
        let t = self.level.max(other.level);
        match (self.lift(t), other.lift(t)) {
            (Ok(a), Ok(b)) => a.entries == b.entries,
            _ => false,
        }
    }
}

impl Eq for ModuleVector {}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (n, (&i, s)) in self.entries.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let w = AdicWord::encode(i, self.level, &self.chain).map_err(|_| fmt::Error)?;
            if s.is_one() {
                write!(f, "[{w}]")?;
            } else {
                write!(f, "({s})*[{w}]")?;
            }
        }
        Ok(())
    }
}

/// `x · v`, computed at the common level; on basis words this is
/// `e_{u,v} w = w′u` when `w = w′v` and zero otherwise.
pub fn act(x: &CoreElement, v: &ModuleVector) -> Result<ModuleVector> {
    v.check_compatible(x.chain(), x.field())?;
    let t = x.level().max(v.level);
    let (a, vv) = (x.lift(t)?, v.lift(t)?);
    Ok(ModuleVector {
        entries: a.block().apply(&vv.entries),
        ..vv
    }
    .compress())
}

/// Some `a` with `a · v = w`.
pub fn transitive_witness(v: &ModuleVector, w: &ModuleVector) -> Result<CoreElement> {
    v.check_compatible(&w.chain, w.field)?;
    let t = v.level.max(w.level);
    let (vv, ww) = (v.lift(t)?, w.lift(t)?);
    let (&pivot, pv) = vv.entries.iter().next().ok_or(Error::ZeroVector)?;
    let inv = pv.inv()?;
    let n = v.chain.size(t)?;
    let block = SparseMatrix::from_entries(n, n, ww.entries.iter().map(|(&i, s)| ((i, pivot), s * &inv)))?;
    Ok(CoreElement::from_block(&v.chain, v.field, t, block)?.compress())
}
