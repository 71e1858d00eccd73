//! Seeded generators and small dense oracles shared by the integration tests.
#![allow(dead_code)]

pub mod golden;

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use supermat::chain::{AdicWord, DivisorChain};
use supermat::deep::DeepElement;
use supermat::field::{FieldDescriptor, Scalar};
use supermat::linalg::DenseMatrix;
use supermat::sparse::SparseMatrix;
use supermat::CoreElement;

pub const Q: FieldDescriptor = FieldDescriptor::Rationals;
pub const F2: FieldDescriptor = FieldDescriptor::PrimeField(2);
pub const F5: FieldDescriptor = FieldDescriptor::PrimeField(5);

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn chain(s: &str) -> DivisorChain {
    s.parse().unwrap()
}

pub fn word(s: &str) -> AdicWord {
    s.parse().unwrap()
}

/// Nonzero scalar: small fractions over Q, uniform residues over F_p.
pub fn scalar(rng: &mut StdRng, field: FieldDescriptor) -> Scalar {
    match field {
        FieldDescriptor::Rationals => loop {
            let num = rng.random_range(-5i64..=5);
            let den = rng.random_range(1i64..=4);
            if num != 0 {
                return field.fraction(&num.into(), &den.into()).unwrap();
            }
        },
        FieldDescriptor::PrimeField(p) => field.from_i64(rng.random_range(1..p as i64)),
    }
}

/// Any scalar, zero included.
pub fn any_scalar(rng: &mut StdRng, field: FieldDescriptor) -> Scalar {
    if rng.random_bool(0.25) {
        field.zero()
    } else {
        scalar(rng, field)
    }
}

pub fn random_word(rng: &mut StdRng, chain: &DivisorChain, len: usize) -> AdicWord {
    let digits = (0..len)
        .map(|pos| rng.random_range(0..chain.radix(pos).unwrap()))
        .collect();
    AdicWord::from_low_first(digits)
}

/// Sum of up to `terms` scaled units at levels up to `max_level`.
pub fn random_core(
    rng: &mut StdRng,
    chain: &DivisorChain,
    field: FieldDescriptor,
    max_level: usize,
    terms: usize,
) -> CoreElement {
    let mut x = CoreElement::zero(chain, field);
    for _ in 0..rng.random_range(0..=terms) {
        let t = rng.random_range(0..=max_level);
        let u = random_word(rng, chain, t);
        let v = random_word(rng, chain, t);
        let s = scalar(rng, field);
        x = x.add(&CoreElement::scaled_unit(chain, &u, &v, &s).unwrap()).unwrap();
    }
    x
}

/// Random deep element with words of length `≤ max_len`, balanced on request.
pub fn random_deep(
    rng: &mut StdRng,
    chain: &DivisorChain,
    field: FieldDescriptor,
    max_len: usize,
    terms: usize,
    balanced: bool,
) -> DeepElement {
    let mut x = DeepElement::zero(chain, field);
    for _ in 0..rng.random_range(1..=terms) {
        let a = rng.random_range(0..=max_len);
        let b = if balanced { a } else { rng.random_range(0..=max_len) };
        let u = random_word(rng, chain, a);
        let v = random_word(rng, chain, b);
        x = x
            .add(&DeepElement::scaled(chain, &u, &v, &scalar(rng, field)).unwrap())
            .unwrap();
    }
    x
}

pub fn random_dense(rng: &mut StdRng, field: FieldDescriptor, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_rows(
        field,
        (0..rows)
            .map(|_| (0..cols).map(|_| any_scalar(rng, field)).collect())
            .collect(),
    )
    .unwrap()
}

/// Dense `n × n` block of `x` at level `t`, computed entry by entry from the
/// canonical block: `x[i][j] = a[i mod k][j mod k]` when `⌊i/k⌋ = ⌊j/k⌋`.
pub fn dense_at(x: &CoreElement, t: usize) -> Vec<Vec<Scalar>> {
    let c = x.compress();
    let n = x.chain().size(t).unwrap();
    let k = c.size();
    let field = x.field();
    let mut out = vec![vec![field.zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i / k == j / k {
                if let Some(v) = c.block().get(i % k, j % k) {
                    *cell = v.clone();
                }
            }
        }
    }
    out
}

pub fn dense_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: FieldDescriptor) -> Vec<Vec<Scalar>> {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![field.zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

pub fn sparse_to_dense(m: &SparseMatrix, field: FieldDescriptor) -> Vec<Vec<Scalar>> {
    m.to_dense(field)
}

pub fn coords_to_vec(v: &BTreeMap<usize, Scalar>, n: usize, field: FieldDescriptor) -> Vec<Scalar> {
    (0..n)
        .map(|i| v.get(&i).cloned().unwrap_or_else(|| field.zero()))
        .collect()
}
