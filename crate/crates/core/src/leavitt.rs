//! The Leavitt algebra `L_F(1,m)` as rectangular recurrent matrices, and its
//! generalization `L_F(1,𝔫)` on an arbitrary divisor chain.
//!
//! A component is an infinite block-diagonal matrix `a ⊕ a ⊕ ⋯` with a
//! rectangular block `a`. Blocks are stored by their actual size, so the
//! same data covers non-homogeneous chains, where row and column levels
//! refine at different rates. Components are keyed by the reduced shape
//! ratio `rows/cols`, which repetition preserves; on a homogeneous chain
//! `m` the ratio is `m^d` with `d` the standard degree.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;

use crate::algebra::{splice_product, CoreElement};
use crate::chain::{AdicWord, DivisorChain};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::sparse::SparseMatrix;

/// Reduced ratio `num/den` of block rows to block columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Ratio {
        let g = num.gcd(&den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn checked_mul(self, other: Ratio) -> Result<Ratio> {
        let num = self.num.checked_mul(other.num).ok_or(Error::Overflow("shape ratio"))?;
        let den = self.den.checked_mul(other.den).ok_or(Error::Overflow("shape ratio"))?;
        Ok(Ratio::new(num, den))
    }

    /// `d` with `num/den = m^d`, if there is one.
    pub fn degree(self, m: usize) -> Option<i64> {
        let log = |mut x: u64| {
            let mut d = 0i64;
            while x > 1 {
                if !x.is_multiple_of(m as u64) {
                    return None;
                }
                x /= m as u64;
                d += 1;
            }
            Some(d)
        };
        match (self.num, self.den) {
            (n, 1) => log(n),
            (1, d) => log(d).map(|d| -d),
            _ => None,
        }
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A rectangular block standing for `a ⊕ a ⊕ ⋯`. Lifting by `k` replaces
/// `a` with `k` diagonal copies; compression undoes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectBlock {
    block: SparseMatrix,
}

impl RectBlock {
    pub fn new(block: SparseMatrix) -> RectBlock {
        RectBlock { block }
    }

    pub fn block(&self) -> &SparseMatrix {
        &self.block
    }

    pub fn rows(&self) -> usize {
        self.block.rows()
    }

    pub fn cols(&self) -> usize {
        self.block.cols()
    }

    pub fn ratio(&self) -> Ratio {
        Ratio::new(self.rows() as u64, self.cols() as u64)
    }

    pub fn lift(&self, k: usize) -> RectBlock {
        RectBlock::new(self.block.repeat_diagonal(k))
    }

    pub fn compress(&self) -> RectBlock {
        RectBlock::new(self.block.compress_repetition().0)
    }

    /// Both blocks lifted to a common size; requires equal ratios.
    fn align(&self, other: &RectBlock) -> (SparseMatrix, SparseMatrix) {
        debug_assert_eq!(self.ratio(), other.ratio());
        let l = self.rows().lcm(&other.rows());
        (
            self.block.repeat_diagonal(l / self.rows()),
            other.block.repeat_diagonal(l / other.rows()),
        )
    }
}

/// An element of `L_F(1,𝔫)`: finitely many nonzero components with pairwise
/// distinct shape ratios, each stored compressed.
#[derive(Debug, Clone)]
pub struct LeavittElement {
    chain: DivisorChain,
    field: FieldDescriptor,
    components: BTreeMap<Ratio, RectBlock>,
}

impl LeavittElement {
    pub fn zero(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self {
            chain: chain.clone(),
            field,
            components: BTreeMap::new(),
        }
    }

    pub fn scalar(chain: &DivisorChain, s: &Scalar) -> Self {
        let block = SparseMatrix::from_entries(1, 1, [((0, 0), s.clone())]).expect("in range");
        Self::zero(chain, s.field()).with_block(block)
    }

    pub fn identity(chain: &DivisorChain, field: FieldDescriptor) -> Self {
        Self::scalar(chain, &field.one())
    }

    fn with_block(mut self, block: SparseMatrix) -> Self {
        self.accumulate(RectBlock::new(block));
        self
    }

    /// The single-component element `block ⊕ block ⊕ ⋯`.
    pub fn from_block(chain: &DivisorChain, field: FieldDescriptor, block: SparseMatrix) -> Result<Self> {
        for size in [block.rows(), block.cols()] {
            if !chain.admits_size(size) {
                return Err(Error::SizeNotDivisor(size as u64, chain.degree().to_string()));
            }
        }
        for v in block.entries().values() {
            field.ensure_same(v.field())?;
        }
        Ok(Self::zero(chain, field).with_block(block))
    }

    /// `x_i`: the `m × 1` unit column with a 1 in row `i`.
    pub fn gen_x(chain: &DivisorChain, field: FieldDescriptor, i: usize) -> Result<Self> {
        let m = Self::generator_radix(chain, i)?;
        Self::from_block(chain, field, SparseMatrix::from_entries(m, 1, [((i, 0), field.one())])?)
    }

    /// `y_i`: the `1 × m` unit row with a 1 in column `i`.
    pub fn gen_y(chain: &DivisorChain, field: FieldDescriptor, i: usize) -> Result<Self> {
        let m = Self::generator_radix(chain, i)?;
        Self::from_block(chain, field, SparseMatrix::from_entries(1, m, [((0, i), field.one())])?)
    }

    fn generator_radix(chain: &DivisorChain, i: usize) -> Result<usize> {
        let m = chain.require_homogeneous()?;
        if i >= m {
            return Err(Error::RadixMismatch {
                digit: i,
                position: 0,
                radix: m,
            });
        }
        Ok(m)
    }

    /// `coef · x_u y_v`: a unit at `(u, v)` in the `n_{|u|} × n_{|v|}` block.
    pub fn term(chain: &DivisorChain, u: &AdicWord, v: &AdicWord, coef: &Scalar) -> Result<Self> {
        let (rows, cols) = (chain.size(u.len())?, chain.size(v.len())?);
        let block = SparseMatrix::from_entries(rows, cols, [((u.decode(chain)?, v.decode(chain)?), coef.clone())])?;
        Self::from_block(chain, coef.field(), block)
    }

    pub fn chain(&self) -> &DivisorChain {
        &self.chain
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn components(&self) -> &BTreeMap<Ratio, RectBlock> {
        &self.components
    }

    pub fn component(&self, ratio: Ratio) -> Option<&RectBlock> {
        self.components.get(&ratio)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn accumulate(&mut self, part: RectBlock) {
        let key = part.ratio();
        let sum = match self.components.remove(&key) {
            Some(prev) => {
                let (a, b) = prev.align(&part);
                RectBlock::new(a.add(&b).expect("aligned sizes"))
            }
            None => part,
        };
        if !sum.block.is_zero() {
            self.components.insert(key, sum.compress());
        }
    }

    fn check_compatible(&self, other: &LeavittElement) -> Result<()> {
        self.chain.ensure_same(&other.chain)?;
        self.field.ensure_same(other.field)
    }

    pub fn add(&self, other: &LeavittElement) -> Result<LeavittElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for part in other.components.values() {
            out.accumulate(part.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LeavittElement {
        Self {
            components: self
                .components
                .iter()
                .map(|(&k, b)| (k, RectBlock::new(b.block.neg())))
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &LeavittElement) -> Result<LeavittElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Result<LeavittElement> {
        self.field.ensure_same(s.field())?;
        if s.is_zero() {
            return Ok(Self::zero(&self.chain, self.field));
        }
        Ok(Self {
            components: self
                .components
                .iter()
                .map(|(&k, b)| (k, RectBlock::new(b.block.scale(s))))
                .collect(),
            ..self.clone()
        })
    }

    /// Componentwise product: for blocks `A` (`r₁ × c₁`) and `B` (`r₂ × c₂`)
    /// both are lifted to inner size `lcm(c₁, r₂)` and multiplied.
    pub fn mul(&self, other: &LeavittElement) -> Result<LeavittElement> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.chain, self.field);
        for a in self.components.values() {
            for b in other.components.values() {
                let inner = a.cols().lcm(&b.rows());
                let product = a
                    .block
                    .repeat_diagonal(inner / a.cols())
                    .mul(&b.block.repeat_diagonal(inner / b.rows()))?;
                for size in [product.rows(), product.cols()] {
                    if !self.chain.admits_size(size) {
                        return Err(Error::SizeNotDivisor(size as u64, self.chain.degree().to_string()));
                    }
                }
                out.accumulate(RectBlock::new(product));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<LeavittElement> {
        let mut acc = Self::identity(&self.chain, self.field);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Shape ratios carrying a nonzero component.
    pub fn ratio_support(&self) -> BTreeSet<Ratio> {
        self.components.keys().copied().collect()
    }

    /// Standard degrees `|u| - |v|` carrying a nonzero component; needs a homogeneous chain.
    pub fn degree_support(&self) -> Result<BTreeSet<i64>> {
        let m = self.chain.require_homogeneous()?;
        self.components
            .keys()
            .map(|r| {
                r.degree(m)
                    .ok_or_else(|| Error::InvalidParameter(format!("shape ratio {r} is not a power of {m}")))
            })
            .collect()
    }

    /// Monomials `(u, v, c)` for `c · x_u y_v`, read off each component at
    /// the smallest lift whose sizes are both chain sizes.
    pub fn terms(&self) -> Result<Vec<(AdicWord, AdicWord, Scalar)>> {
        let mut out = Vec::new();
        for part in self.components.values() {
            let (t, s, k) = self.word_levels(part)?;
            let lifted = part.block.repeat_diagonal(k);
            for (&(r, c), v) in lifted.entries() {
                out.push((
                    AdicWord::encode(r, t, &self.chain)?,
                    AdicWord::encode(c, s, &self.chain)?,
                    v.clone(),
                ));
            }
        }
        Ok(out)
    }

    fn word_levels(&self, part: &RectBlock) -> Result<(usize, usize, usize)> {
        const SEARCH: usize = 64;
        let sizes: Vec<usize> = (0..=SEARCH).map_while(|t| self.chain.size(t).ok()).collect();
        for (t, &nt) in sizes.iter().enumerate() {
            if nt % part.rows() != 0 {
                continue;
            }
            let k = nt / part.rows();
            if let Some(s) = sizes.iter().position(|&ns| ns == part.cols() * k) {
                return Ok((t, s, k));
            }
        }
        Err(Error::SizeNotDivisor(part.rows() as u64, self.chain.to_string()))
    }

    /// The isomorphism `L(1,𝔫)₀ → M_𝔫(F)` on the ratio-one part.
    pub fn to_core(&self) -> Result<CoreElement> {
        if self.components.keys().any(|&r| r != Ratio::ONE) {
            return Err(Error::NotDegreeZero);
        }
        let Some(part) = self.components.get(&Ratio::ONE) else {
            return Ok(CoreElement::zero(&self.chain, self.field));
        };
        let limit = self.chain.depth().unwrap_or(64);
        let level = self.chain.level_covering(part.rows(), limit)?;
        let k = self.chain.size(level)? / part.rows();
        Ok(CoreElement::from_block(&self.chain, self.field, level, part.block.repeat_diagonal(k))?.compress())
    }

    pub fn from_core(y: &CoreElement) -> LeavittElement {
        Self::zero(y.chain(), y.field()).with_block(y.block().clone())
    }
}

/// The symbolic product `x_u y_{u′} · x_w y_{w′}` by tail splicing; lengths
/// are unrestricted.
pub fn term_mul(u: &AdicWord, u_prime: &AdicWord, w: &AdicWord, w_prime: &AdicWord) -> Option<(AdicWord, AdicWord)> {
    splice_product(u, u_prime, w, w_prime)
}

impl PartialEq for LeavittElement {
    fn eq(&self, other: &Self) -> bool {
        self.chain == other.chain
            && self.field == other.field
            && self.components.len() == other.components.len()
            && self.components.iter().all(|(k, a)| {
                other.components.get(k).is_some_and(|b| {
                    let (x, y) = a.align(b);
                    x == y
                })
            })
    }
}

impl Eq for LeavittElement {}

impl fmt::Display for LeavittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms().map_err(|_| fmt::Error)?;
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (u, v, s)) in terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !s.is_one() {
                write!(f, "({s})*")?;
            }
            write!(f, "x[{u}]*y[{v}]")?;
        }
        Ok(())
    }
}
