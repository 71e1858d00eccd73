//! Recognition witnesses for matrix algebras: triples `a, b, c` with
//! `bⁿ = 0` and `ab^k + b^{n-k}c = 1`, `m`-th roots of the shift, and the
//! root chains `b_t^{m_t} = b_{t-1}`, `a b₁ + b₁^{m₁-1} c = 1` presenting `M_𝔫(F)`.

use serde::Serialize;

use crate::algebra::CoreElement;
use crate::chain::DivisorChain;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::sparse::SparseMatrix;

#[derive(Debug, Clone)]
pub struct AarTriple {
    pub a: CoreElement,
    pub b: CoreElement,
    pub c: CoreElement,
    pub n: usize,
    pub k: usize,
}

fn level_one(
    chain: &DivisorChain,
    field: FieldDescriptor,
    n: usize,
    entries: impl IntoIterator<Item = (usize, usize)>,
) -> Result<CoreElement> {
    let block = SparseMatrix::from_entries(n, n, entries.into_iter().map(|k| (k, field.one())))?;
    Ok(CoreElement::from_block(chain, field, 1, block)?.compress())
}

fn triple_on(chain: &DivisorChain, field: FieldDescriptor, k: usize) -> Result<AarTriple> {
    let n = chain.size(1)?;
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n-1, got n={n}, k={k}")));
    }
    Ok(AarTriple {
        a: level_one(chain, field, n, (0..n - k).map(|i| (i, k + i)))?,
        b: level_one(chain, field, n, (0..n - 1).map(|i| (i + 1, i)))?,
        c: level_one(chain, field, n, (0..k).map(|i| (i, n - k + i)))?,
        n,
        k,
    })
}

/// `ã = Σ_{i<n-k} e_{i,k+i}`, `b̃ = Σ_{i<n-1} e_{i+1,i}`, `c̃ = Σ_{i<k} e_{i,n-k+i}`
/// in `M_n(F)`, realized on the chain `[n]`.
pub fn aar_witnesses(n: usize, k: usize, field: FieldDescriptor) -> Result<AarTriple> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    triple_on(&DivisorChain::finite(vec![n])?, field, k)
}

/// Whether `bⁿ = 0` and `ab^k + b^{n-k}c = 1` hold exactly.
pub fn aar_check(a: &CoreElement, b: &CoreElement, c: &CoreElement, n: usize, k: usize) -> bool {
    if k == 0 || k >= n {
        return false;
    }
    let check = || -> Result<bool> {
        if !b.pow(n as u32)?.is_zero() {
            return Ok(false);
        }
        let lhs = a.mul(&b.pow(k as u32)?)?.add(&b.pow((n - k) as u32)?.mul(c)?)?;
        Ok(lhs == CoreElement::identity(b.chain(), b.field()))
    };
    check().unwrap_or(false)
}

/// Smallest `k ≤ limit` with `x^k = 0`.
pub fn nilpotency_index(x: &CoreElement, limit: u32) -> Result<Option<u32>> {
    let mut power = CoreElement::identity(x.chain(), x.field());
    for k in 0..=limit {
        if power.is_zero() {
            return Ok(Some(k));
        }
        power = power.mul(x)?;
    }
    Ok(None)
}

/// Index convention used to read the root formula
/// `b′ = Σ_{i=1}^{n} Σ_{j=1}^{m} e_{jn-i,(j+1)n-i} + Σ_{i=1}^{n-1} e_{mn-i,n-i-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootConvention {
    /// Indices read 0-based as printed; terms outside `0..nm` dropped.
    AsPrintedDropOverflow,
    /// As printed, transposed.
    AsPrintedTransposed,
    /// Every index shifted down by one (1-based reading); overflow dropped.
    ShiftedDropOverflow,
    /// Shifted and transposed.
    ShiftedTransposed,
}

impl RootConvention {
    pub const ALL: [RootConvention; 4] = [
        RootConvention::AsPrintedDropOverflow,
        RootConvention::AsPrintedTransposed,
        RootConvention::ShiftedDropOverflow,
        RootConvention::ShiftedTransposed,
    ];

    fn entries(self, n: usize, m: usize) -> Vec<(usize, usize)> {
        let mut raw: Vec<(i64, i64)> = Vec::new();
        let (ni, mi) = (n as i64, m as i64);
        for i in 1..=ni {
            for j in 1..=mi {
                raw.push((j * ni - i, (j + 1) * ni - i));
            }
        }
        for i in 1..ni {
            raw.push((mi * ni - i, ni - i - 1));
        }
        let shift = match self {
            RootConvention::ShiftedDropOverflow | RootConvention::ShiftedTransposed => 1,
            _ => 0,
        };
        let transpose = matches!(
            self,
            RootConvention::AsPrintedTransposed | RootConvention::ShiftedTransposed
        );
        let size = ni * mi;
        raw.into_iter()
            .map(|(r, c)| (r - shift, c - shift))
            .filter(|&(r, c)| (0..size).contains(&r) && (0..size).contains(&c))
            .map(|(r, c)| {
                if transpose {
                    (c as usize, r as usize)
                } else {
                    (r as usize, c as usize)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct MatrixRoot {
    pub root: CoreElement,
    /// `b̃` of `M_n(F)` at level 1.
    pub shift: CoreElement,
    pub convention: RootConvention,
}

/// An `m`-th root of the `n`-shift `b̃`, living at the level of size `nm`
/// on the chain `[n, m]` (or `[n]` when `m = 1`), so that `b′^m = b̃ ⊕ ⋯ ⊕ b̃`.
///
/// Every reading of the printed formula is validated by exact
/// exponentiation and the first one that works is returned.
pub fn matrix_root(n: usize, m: usize, field: FieldDescriptor) -> Result<MatrixRoot> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    let chain = if m == 1 {
        DivisorChain::finite(vec![n])?
    } else {
        DivisorChain::finite(vec![n, m])?
    };
    let root_level = if m == 1 { 1 } else { 2 };
    let shift = triple_on(&chain, field, 1)?.b;
    for convention in RootConvention::ALL {
        let block = SparseMatrix::from_entries(
            n * m,
            n * m,
            convention.entries(n, m).into_iter().map(|k| (k, field.one())),
        )?;
        let root = CoreElement::from_block(&chain, field, root_level, block)?.compress();
        if root.pow(m as u32)? == shift {
            return Ok(MatrixRoot {
                root,
                shift,
                convention,
            });
        }
    }
    Err(Error::Validation(format!(
        "no reading of the root formula works for n={n}, m={m}"
    )))
}

/// For `b` of size `n` at level `t`, the element `b′` at level `t+1`
/// (size `nm`, `m = m_{t+1}`) sending block `j` to block `j-1` and block 0
/// through `b` into block `m-1`. Then `b′^m = b ⊕ ⋯ ⊕ b`.
pub fn root_of(b: &CoreElement, level: usize) -> Result<CoreElement> {
    let chain = b.chain();
    let m = chain.radix_checked(level)?;
    let block = b.lift(level)?.block().clone();
    let n = block.rows();
    let mut out = SparseMatrix::zero(n * m, n * m);
    for j in 1..m {
        for i in 0..n {
            out.add_entry((j - 1) * n + i, j * n + i, b.field().one())?;
        }
    }
    for (&(r, c), v) in block.entries() {
        out.add_entry((m - 1) * n + r, c, v.clone())?;
    }
    Ok(CoreElement::from_block(chain, b.field(), level + 1, out)?.compress())
}

#[derive(Debug, Clone)]
pub struct RootChain {
    pub chain: DivisorChain,
    pub a: CoreElement,
    pub c: CoreElement,
    /// `b₁, …, b_T`; `roots[t-1]` lives at level `t`.
    pub roots: Vec<CoreElement>,
}

/// Witnesses `a, c, b₁, …, b_T` for `M_𝔫(F)` on `chain`, to `depth` levels
/// (the chain's own depth when `None`). `k` is fixed to 1.
pub fn chain_witnesses(chain: &DivisorChain, field: FieldDescriptor, depth: Option<usize>) -> Result<RootChain> {
    let depth = depth
        .or(chain.depth())
        .ok_or_else(|| Error::InvalidParameter("an unbounded chain needs an explicit depth".into()))?;
    chain.check_level(depth)?;
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let triple = triple_on(chain, field, 1)?;
    let mut roots = vec![triple.b.clone()];
    for level in 1..depth {
        let next = root_of(roots.last().expect("nonempty"), level)?;
        roots.push(next);
    }
    let out = RootChain {
        chain: chain.clone(),
        a: triple.a,
        c: triple.c,
        roots,
    };
    if !out.verify()? {
        return Err(Error::Validation("root chain relations failed".into()));
    }
    Ok(out)
}

impl RootChain {
    /// `b_t^{m_t} = b_{t-1}` (with `b₀ = 0`) and `a b₁ + b₁^{m₁-1} c = 1`.
    pub fn verify(&self) -> Result<bool> {
        let field = self.a.field();
        let mut previous = CoreElement::zero(&self.chain, field);
        for (t, b) in self.roots.iter().enumerate() {
            let m = self.chain.radix_checked(t)?;
            if b.pow(m as u32)? != previous {
                return Ok(false);
            }
            previous = b.clone();
        }
        let b1 = &self.roots[0];
        let m1 = self.chain.radix_checked(0)?;
        let lhs = self.a.mul(b1)?.add(&b1.pow(m1 as u32 - 1)?.mul(&self.c)?)?;
        Ok(lhs == CoreElement::identity(&self.chain, field))
    }
}
