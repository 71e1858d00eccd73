use std::fmt;

use crate::chain::{AdicWord, DivisorChain};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::sparse::SparseMatrix;

/// An element `x = a ⊕ a ⊕ ⋯` of `M_𝔫(F)`, stored by its block `a` of size
/// `n_t × n_t`.
///
/// Values returned by arithmetic are canonical: the level is minimal, so the
/// block is not itself a repetition of a level `t-1` block. [`CoreElement::lift`]
/// produces non-canonical values; equality compares at a common level and is
/// therefore independent of the representative.
#[derive(Debug, Clone)]
pub struct CoreElement {
    chain: DivisorChain,
    field: FieldDescriptor,
    level: usize,
    block: SparseMatrix,
}

impl CoreElement {
    pub fn zero(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self {
            chain: chain.clone(),
            field,
            level: 0,
            block: SparseMatrix::zero(1, 1),
        }
    }

    pub fn identity(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self::scalar(chain, &field.one())
    }

    pub fn scalar(chain: &DivisorChain, s: &Scalar) -> Self {
        let mut block = SparseMatrix::zero(1, 1);
        block.add_entry(0, 0, s.clone()).expect("in range");
        Self {
            chain: chain.clone(),
            field: s.field(),
            level: 0,
            block,
        }
    }

    /// The matrix unit `e_{u,v}` with `|u| = |v|`.
    pub fn unit(chain: &DivisorChain, field: FieldDescriptor, u: &AdicWord, v: &AdicWord) -> Result<Self> {
        Self::scaled_unit(chain, u, v, &field.one())
    }

    pub fn scaled_unit(chain: &DivisorChain, u: &AdicWord, v: &AdicWord, s: &Scalar) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::Unbalanced(u.to_string(), v.to_string()));
        }
        let level = u.len();
        let n = chain.size(level)?;
        let mut block = SparseMatrix::zero(n, n);
        block.add_entry(u.decode(chain)?, v.decode(chain)?, s.clone())?;
        Ok(Self {
            chain: chain.clone(),
            field: s.field(),
            level,
            block,
        }
        .compress())
    }

    /// Wraps a level-`t` block as is (not canonicalized).
    pub fn from_block(chain: &DivisorChain, field: FieldDescriptor, level: usize, block: SparseMatrix) -> Result<Self> {
        let n = chain.size(level)?;
        if block.rows() != n || block.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "level {level} needs a {n}x{n} block, got {}x{}",
                block.rows(),
                block.cols()
            )));
        }
        if block.entries().values().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), "block entry".into()));
        }
        Ok(Self {
            chain: chain.clone(),
            field,
            level,
            block,
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

    pub fn block(&self) -> &SparseMatrix {
        &self.block
    }

    pub fn size(&self) -> usize {
        self.block.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.block.is_zero()
    }

    /// The same element written at level `t ≥ level`.
    pub fn lift(&self, t: usize) -> Result<CoreElement> {
        if t < self.level {
            return Err(Error::InvalidParameter(format!(
                "cannot lift level {} down to {t}",
                self.level
            )));
        }
        let k = self.chain.size(t)? / self.size();
        Ok(Self {
            block: self.block.repeat_diagonal(k),
            level: t,
            ..self.clone()
        })
    }

    /// The unique minimal-level representative.
    pub fn compress(&self) -> CoreElement {
        let mut level = self.level;
        let mut block = self.block.clone();
        while level > 0 {
            let m = self.chain.radix(level - 1).expect("existing level");
            match block.as_repetition(m) {
                Some(smaller) => {
                    block = smaller;
                    level -= 1;
                }
                None => break,
            }
        }
        Self {
            chain: self.chain.clone(),
            field: self.field,
            level,
            block,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.compress().level == self.level
    }

    pub fn same_representation(&self, other: &CoreElement) -> bool {
        self.chain == other.chain && self.field == other.field && self.level == other.level && self.block == other.block
    }

    fn check_compatible(&self, other: &CoreElement) -> Result<()> {
        self.chain.ensure_same(&other.chain)?;
        self.field.ensure_same(other.field)
    }

    /// Both operands written at their common (maximal) level.
    pub fn align(&self, other: &CoreElement) -> Result<(CoreElement, CoreElement)> {
        self.check_compatible(other)?;
        let t = self.level.max(other.level);
        Ok((self.lift(t)?, other.lift(t)?))
    }

    pub fn add(&self, other: &CoreElement) -> Result<CoreElement> {
        let (a, b) = self.align(other)?;
        Ok(Self {
            block: a.block.add(&b.block)?,
            ..a
        }
        .compress())
    }

    pub fn neg(&self) -> CoreElement {
        Self {
            block: self.block.neg(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &CoreElement) -> Result<CoreElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<CoreElement> {
        self.field.ensure_same(s.field())?;
        Ok(Self {
            block: self.block.scale(s),
            ..self.clone()
        }
        .compress())
    }

    pub fn mul(&self, other: &CoreElement) -> Result<CoreElement> {
        let (a, b) = self.align(other)?;
        Ok(Self {
            block: a.block.mul(&b.block)?,
            ..a
        }
        .compress())
    }

    pub fn pow(&self, k: u32) -> Result<CoreElement> {
        let mut acc = Self::identity(&self.chain, self.field);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `tr(a) / n_t`, unchanged by lifting. Fails over `F_p` when `p` divides
    /// the block size of the canonical form.
    pub fn normalized_trace(&self) -> Result<Scalar> {
        let canonical = self.compress();
        let n = self.field.from_i64(canonical.size() as i64);
        Ok(&canonical.block.trace(self.field) * &n.inv()?)
    }

    /// `B` diagonal copies of the canonical block, as one dense-addressable matrix.
    pub fn realize(&self, blocks: usize) -> Result<SparseMatrix> {
        if blocks == 0 {
            return Err(Error::InvalidParameter("need at least one block".into()));
        }
        Ok(self.compress().block.repeat_diagonal(blocks))
    }

    /// The block's entries as matrix units `(u, v, coefficient)` at the current level.
    pub fn terms(&self) -> Result<Vec<(AdicWord, AdicWord, Scalar)>> {
        self.block
            .entries()
            .iter()
            .map(|(&(r, c), s)| {
                Ok((
                    AdicWord::encode(r, self.level, &self.chain)?,
                    AdicWord::encode(c, self.level, &self.chain)?,
                    s.clone(),
                ))
            })
            .collect()
    }
}

impl PartialEq for CoreElement {
    fn eq(&self, other: &Self) -> bool {
        match self.align(other) {
            Ok((a, b)) => a.block == b.block,
            Err(_) => false,
        }
    }
}

impl Eq for CoreElement {}

impl fmt::Display for CoreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map_err(|_| fmt::Error)?;
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (u, v, s)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if s.is_one() {
                write!(f, "e[{u},{v}]")?;
            } else {
                write!(f, "({s})*e[{u},{v}]")?;
            }
        }
        Ok(())
    }
}

/// Symbolic product of matrix units on balanced words:
/// `e_{u,u′} e_{w,w′}` is `e_{vu,w′}` if `w = vu′`, `e_{u,vw′}` if `u′ = vw`,
/// and zero when neither of `u′`, `w` is a tail of the other.
pub fn unit_mul(
    u: &AdicWord,
    u_prime: &AdicWord,
    w: &AdicWord,
    w_prime: &AdicWord,
) -> Result<Option<(AdicWord, AdicWord)>> {
    if u.len() != u_prime.len() {
        return Err(Error::Unbalanced(u.to_string(), u_prime.to_string()));
    }
    if w.len() != w_prime.len() {
        return Err(Error::Unbalanced(w.to_string(), w_prime.to_string()));
    }
    Ok(splice_product(u, u_prime, w, w_prime))
}

/// The tail-splicing rule shared by matrix units, deep matrices and Leavitt
/// monomials. Digit positions are not checked.
pub(crate) fn splice_product(
    u: &AdicWord,
    u_prime: &AdicWord,
    w: &AdicWord,
    w_prime: &AdicWord,
) -> Option<(AdicWord, AdicWord)> {
    if let Some(v) = AdicWord::split_tail(u_prime, w) {
        return Some((AdicWord::concat_unchecked(&v, u), w_prime.clone()));
    }
    if let Some(v) = AdicWord::split_tail(w, u_prime) {
        return Some((u.clone(), AdicWord::concat_unchecked(&v, w_prime)));
    }
    None
}
