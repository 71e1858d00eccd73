use std::collections::BTreeMap;
use std::fmt;

use crate::chain::DivisorChain;
use crate::error::Result;
use crate::field::{FieldDescriptor, Scalar};
use crate::sparse::{accumulate, product_entries, Entries};

use super::CoreElement;

/// An element of `T(F)`: a finitely supported infinite matrix plus an
/// `𝔫`-recurrent one. A nonzero recurrent matrix has infinite support, so
/// the decomposition is unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedElement {
    finite: Entries,
    recurrent: CoreElement,
}

impl MixedElement {
    pub fn new(finite: Entries, recurrent: CoreElement) -> Result<Self> {
        let field = recurrent.field();
        let mut clean = Entries::new();
        for (k, v) in finite {
            field.ensure_same(v.field())?;
            accumulate(&mut clean, k, v);
        }
        Ok(Self {
            finite: clean,
            recurrent: recurrent.compress(),
        })
    }

    pub fn recurrent(recurrent: CoreElement) -> Self {
        Self {
            finite: Entries::new(),
            recurrent: recurrent.compress(),
        }
    }

    pub fn finite_unit(chain: &DivisorChain, s: &Scalar, row: usize, col: usize) -> Self {
        Self {
            finite: std::iter::once(((row, col), s.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            recurrent: CoreElement::zero(chain, s.field()),
        }
    }

    pub fn identity(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self::recurrent(CoreElement::identity(chain, field))
    }

    pub fn finite_part(&self) -> &Entries {
        &self.finite
    }

    pub fn recurrent_part(&self) -> &CoreElement {
        &self.recurrent
    }

    pub fn chain(&self) -> &DivisorChain {
        self.recurrent.chain()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.recurrent.field()
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.recurrent.is_zero()
    }

    /// One past the largest row or column index in the finite part.
    pub fn finite_extent(&self) -> usize {
        self.finite.keys().map(|&(r, c)| r.max(c) + 1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MixedElement) -> Result<MixedElement> {
        let recurrent = self.recurrent.add(&other.recurrent)?;
        let mut finite = self.finite.clone();
        for (&k, v) in &other.finite {
            accumulate(&mut finite, k, v.clone());
        }
        Ok(Self { finite, recurrent })
    }

    pub fn neg(&self) -> MixedElement {
        Self {
            finite: self.finite.iter().map(|(&k, v)| (k, -v)).collect(),
            recurrent: self.recurrent.neg(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<MixedElement> {
        let recurrent = self.recurrent.scale(s)?;
        let finite = if s.is_zero() {
            Entries::new()
        } else {
            self.finite.iter().map(|(&k, v)| (k, v * s)).collect()
        };
        Ok(Self { finite, recurrent })
    }

    /// `(f₁ + r₁)(f₂ + r₂) = (f₁f₂ + f₁r₂ + r₁f₂) + r₁r₂`. Each product with a
    /// finite factor is finitely supported; the recurrent factor is realized
    /// on just enough diagonal blocks to cover the finite indices involved.
    pub fn mul(&self, other: &MixedElement) -> Result<MixedElement> {
        let recurrent = self.recurrent.mul(&other.recurrent)?;
        let mut finite = product_entries(&self.finite, &other.finite);

        if !self.finite.is_empty() {
            let max_col = self.finite.keys().map(|&(_, c)| c).max().expect("nonempty");
            let r2 = realize_covering(&other.recurrent, max_col)?;
            for (k, v) in product_entries(&self.finite, &r2) {
                accumulate(&mut finite, k, v);
            }
        }
        if !other.finite.is_empty() {
            let max_row = other.finite.keys().map(|&(r, _)| r).max().expect("nonempty");
            let r1 = realize_covering(&self.recurrent, max_row)?;
            for (k, v) in product_entries(&r1, &other.finite) {
                accumulate(&mut finite, k, v);
            }
        }
        Ok(Self { finite, recurrent })
    }

    /// The top-left `window × window` corner of the infinite matrix.
    pub fn truncate(&self, window: usize) -> Result<BTreeMap<(usize, usize), Scalar>> {
        let mut out = realize_covering(&self.recurrent, window.saturating_sub(1))?;
        out.retain(|&(r, c), _| r < window && c < window);
        for (&(r, c), v) in &self.finite {
            if r < window && c < window {
                accumulate(&mut out, (r, c), v.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .finite
            .iter()
            .map(|(&(r, c), s)| {
                if s.is_one() {
                    format!("f[{r},{c}]")
                } else {
                    format!("({s})*f[{r},{c}]")
                }
            })
            .collect();
        if !self.recurrent.is_zero() || parts.is_empty() {
            parts.push(self.recurrent.to_string());
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Entries of the recurrent matrix on the first blocks, enough to contain index `max_index`.
fn realize_covering(x: &CoreElement, max_index: usize) -> Result<Entries> {
    let x = x.compress();
    let n = x.size();
    let blocks = max_index / n + 1;
    Ok(x.realize(blocks)?.entries().clone())
}
