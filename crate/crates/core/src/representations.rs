//! Module constructions over `M_𝔫(F)`: locally simple direct limits
//! `V_i → V_{i+1} = V_i ⊗ W_{i+1}`, `x ↦ x ⊗ α_{i+1}`, and the rank-`ℓ`
//! band construction `V_n = W ⊗ (F^p)^{⊗n} ⊗ F^ℓ` with its simplicity
//! diagnostics.
//!
//! Tensor indices flatten with the newest factor last: `(w, q) ↦ w·p + q` for
//! the band construction. For locally simple chains the new factor is the
//! outer one, `(j, i) ↦ j·n_t + i`, matching the block-diagonal embedding of
//! `M_{n_t}` in `M_{n_{t+1}}`.

use std::collections::BTreeMap;

use crate::algebra::CoreElement;
use crate::chain::DivisorChain;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::DenseMatrix;

fn parallel(field: FieldDescriptor, a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len()
        && DenseMatrix::from_rows(field, vec![a.to_vec(), b.to_vec()])
            .map(|m| m.rank() <= 1)
            .unwrap_or(false)
}

/// `α_i ∈ F^{m_i}` for levels `i = 1..=T`, all nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocallySimpleSpec {
    chain: DivisorChain,
    field: FieldDescriptor,
    alphas: Vec<Vec<Scalar>>,
}

impl LocallySimpleSpec {
    pub fn new(chain: &DivisorChain, field: FieldDescriptor, alphas: Vec<Vec<Scalar>>) -> Result<Self> {
        for (t, alpha) in alphas.iter().enumerate() {
            let m = chain.radix_checked(t)?;
            if alpha.len() != m {
                return Err(Error::ShapeMismatch(format!(
                    "alpha_{} has length {}, radix is {m}",
                    t + 1,
                    alpha.len()
                )));
            }
            if alpha.iter().any(|s| s.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), "alpha entry".into()));
            }
            if alpha.iter().all(Scalar::is_zero) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(Self {
            chain: chain.clone(),
            field,
            alphas,
        })
    }

    /// `α_i = e₀` at every level: `u ↦ 0u`, the tail embedding `⋯000u`.
    pub fn first_vectors(chain: &DivisorChain, field: FieldDescriptor, depth: usize) -> Result<Self> {
        Self::build(chain, field, depth, |j| if j == 0 { field.one() } else { field.zero() })
    }

    /// `α_i = (1,…,1)` at every level: the stacking limit `F^𝔫`.
    pub fn all_ones(chain: &DivisorChain, field: FieldDescriptor, depth: usize) -> Result<Self> {
        Self::build(chain, field, depth, |_| field.one())
    }

    fn build(
        chain: &DivisorChain,
        field: FieldDescriptor,
        depth: usize,
        entry: impl Fn(usize) -> Scalar,
    ) -> Result<Self> {
        let alphas = (0..depth)
            .map(|t| Ok((0..chain.radix_checked(t)?).map(&entry).collect()))
            .collect::<Result<_>>()?;
        Self::new(chain, field, alphas)
    }

    pub fn chain(&self) -> &DivisorChain {
        &self.chain
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn depth(&self) -> usize {
        self.alphas.len()
    }

    /// `α_i` for `1 ≤ i ≤ T`.
    pub fn alpha(&self, i: usize) -> Option<&[Scalar]> {
        i.checked_sub(1).and_then(|k| self.alphas.get(k)).map(Vec::as_slice)
    }
}

/// A vector of `V_t = F^{n_t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LsVector {
    pub level: usize,
    pub entries: BTreeMap<usize, Scalar>,
}

/// `f_{t′-1} ∘ ⋯ ∘ f_t (v)` where `f_i(x) = Σ_j α_{i+1,j} · (x in block j)`.
pub fn ls_lift(v: &LsVector, spec: &LocallySimpleSpec, t_prime: usize) -> Result<LsVector> {
    if t_prime < v.level {
        return Err(Error::InvalidParameter(format!(
            "cannot lift level {} down to {t_prime}",
            v.level
        )));
    }
    if t_prime > spec.depth() {
        return Err(Error::DepthExceeded {
            requested: t_prime,
            available: spec.depth(),
        });
    }
    let mut entries = v.entries.clone();
    for t in v.level..t_prime {
        let n = spec.chain.size(t)?;
        let mut next = BTreeMap::new();
        for (j, a) in spec.alphas[t].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (&i, s) in &entries {
                next.insert(j * n + i, a * s);
            }
        }
        entries = next;
    }
    Ok(LsVector {
        level: t_prime,
        entries,
    })
}

/// `x · v` at the common level.
pub fn ls_act(x: &CoreElement, v: &LsVector, spec: &LocallySimpleSpec) -> Result<LsVector> {
    spec.chain.ensure_same(x.chain())?;
    spec.field.ensure_same(x.field())?;
    let t = x.level().max(v.level);
    let v = ls_lift(v, spec, t)?;
    Ok(LsVector {
        level: t,
        entries: x.lift(t)?.block().apply(&v.entries),
    })
}

/// Whether `α_i ∥ α′_i` for every `i ≥ from_index`.
pub fn ls_isomorphic(a: &LocallySimpleSpec, b: &LocallySimpleSpec, from_index: usize) -> Result<bool> {
    a.chain.ensure_same(&b.chain)?;
    a.field.ensure_same(b.field)?;
    if a.depth() != b.depth() {
        return Err(Error::ShapeMismatch(format!(
            "spec depths {} and {} differ",
            a.depth(),
            b.depth()
        )));
    }
    Ok((from_index.max(1)..=a.depth()).all(|i| parallel(a.field, a.alpha(i).unwrap(), b.alpha(i).unwrap())))
}

/// `φ(α)` as a `p × ℓ` array: column `j` is `α` shifted down by `j`.
pub fn phi_band(alpha: &[Scalar], p: usize, field: FieldDescriptor) -> Result<DenseMatrix> {
    let ell = alpha.len();
    check_band(p, ell)?;
    let mut out = DenseMatrix::zero(field, p, ell);
    for j in 0..ell {
        for (r, a) in alpha.iter().enumerate() {
            out.set(j + r, j, a.clone());
        }
    }
    Ok(out)
}

fn check_band(p: usize, ell: usize) -> Result<()> {
    if ell == 0 || 2 * ell - 1 > p {
        return Err(Error::InvalidParameter(format!(
            "band map needs 1 <= l and 2l-1 <= p, got p={p}, l={ell}"
        )));
    }
    Ok(())
}

/// `x = Σ_i x_i ⊗ e_i ∈ W_n ⊗ F^ℓ`, stored as the `dim W_n × ℓ` array
/// with columns `x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    p: usize,
    level: usize,
    array: DenseMatrix,
}

impl TensorVector {
    pub fn new(p: usize, level: usize, array: DenseMatrix) -> Result<Self> {
        if array.cols() == 0 {
            return Err(Error::InvalidParameter("need l >= 1".into()));
        }
        Ok(Self { p, level, array })
    }

    pub fn zero(field: FieldDescriptor, p: usize, ell: usize, w_dim: usize) -> Result<Self> {
        Self::new(p, 0, DenseMatrix::zero(field, w_dim, ell))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.array.cols()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.array.rows()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.array.field()
    }

    pub fn array(&self) -> &DenseMatrix {
        &self.array
    }

    pub fn is_zero(&self) -> bool {
        self.array.is_zero()
    }
}

/// `dim span{x_1, …, x_ℓ}`.
pub fn tensor_rank(x: &TensorVector) -> usize {
    x.array.rank()
}

/// `(id ⊗ φ)(x)`: row `w` becomes rows `w·p + q` holding `φ(row w)`.
pub fn lift_step(x: &TensorVector) -> Result<TensorVector> {
    let (p, ell) = (x.p, x.ell());
    check_band(p, ell)?;
    let mut out = DenseMatrix::zero(x.field(), x.dim() * p, ell);
    for w in 0..x.dim() {
        let band = phi_band(x.array.row(w), p, x.field())?;
        for q in 0..p {
            for j in 0..ell {
                out.set(w * p + q, j, band.get(q, j).clone());
            }
        }
    }
    TensorVector::new(p, x.level + 1, out)
}

/// Some `a ∈ End(W)` with `a · x = target`, for `x` of full rank `ℓ`.
pub fn transitive_solve(x: &TensorVector, target: &TensorVector) -> Result<DenseMatrix> {
    if x.dim() != target.dim() || x.ell() != target.ell() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} versus {}x{}",
            x.dim(),
            x.ell(),
            target.dim(),
            target.ell()
        )));
    }
    let ell = x.ell();
    let rows = x.array.independent_rows();
    if rows.len() < ell {
        return Err(Error::RankDeficient {
            rank: rows.len(),
            required: ell,
        });
    }
    let square = DenseMatrix::from_rows(x.field(), rows.iter().map(|&r| x.array.row(r).to_vec()).collect())?;
    let mut select = DenseMatrix::zero(x.field(), ell, x.dim());
    for (k, &r) in rows.iter().enumerate() {
        select.set(k, r, x.field().one());
    }
    target.array.mul(&square.inverse()?)?.mul(&select)
}

/// Codimension of `{a ∈ End(W_n) : a·x = 0}` in `End(W_n)`, raw (`N · rank`)
/// and divided by `N = dim W_n`.
pub fn ann_codim(x: &TensorVector) -> (usize, usize) {
    let rank = tensor_rank(x);
    (x.dim() * rank, rank)
}

/// `rank((T ⊗ 1)(x)) ≤ rank(x)`.
pub fn rank_monotone_check(t: &DenseMatrix, x: &TensorVector) -> Result<bool> {
    if t.cols() != x.dim() {
        return Err(Error::ShapeMismatch(format!(
            "map has {} columns, vector has {} rows",
            t.cols(),
            x.dim()
        )));
    }
    Ok(t.mul(&x.array)?.rank() <= tensor_rank(x))
}
