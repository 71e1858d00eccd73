//! Sparse coordinate matrices over a scalar field, plus the block-repetition
//! helpers that recurrent matrices are built from.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::snum::factorize;

pub type Entries = BTreeMap<(usize, usize), Scalar>;

/// Adds `value` into `entries[key]`, removing the slot if it cancels.
pub(crate) fn accumulate(entries: &mut Entries, key: (usize, usize), value: Scalar) {
    if value.is_zero() {
        return;
    }
    match entries.get_mut(&key) {
        Some(slot) => {
            let sum = &*slot + &value;
            if sum.is_zero() {
                entries.remove(&key);
            } else {
                *slot = sum;
            }
        }
        None => {
            entries.insert(key, value);
        }
    }
}

/// Product of two coordinate maps, indices unbounded.
pub(crate) fn product_entries(a: &Entries, b: &Entries) -> Entries {
    let mut by_row: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
    for (&(r, c), v) in b {
        by_row.entry(r).or_default().push((c, v));
    }
    let mut out = Entries::new();
    for (&(i, k), x) in a {
        if let Some(row) = by_row.get(&k) {
            for &(j, y) in row {
                accumulate(&mut out, (i, j), x * y);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Entries::new(),
        }
    }

    pub fn identity(n: usize, field: FieldDescriptor) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut m = Self::zero(rows, cols);
        for ((r, c), v) in entries {
            m.add_entry(r, c, v)?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    pub fn add_entry(&mut self, r: usize, c: usize, value: Scalar) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::ShapeMismatch(format!(
                "entry ({r},{c}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        accumulate(&mut self.entries, (r, c), value);
        Ok(())
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        for (&k, v) in &other.entries {
            accumulate(&mut entries, k, v.clone());
        }
        Ok(SparseMatrix { entries, ..*self })
    }

    pub fn neg(&self) -> SparseMatrix {
        self.map_values(|v| -v)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        if s.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        self.map_values(|v| v * s)
    }

    fn map_values(&self, f: impl Fn(&Scalar) -> Scalar) -> SparseMatrix {
        let entries = self.entries.iter().map(|(&k, v)| (k, f(v))).collect();
        SparseMatrix { entries, ..*self }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: product_entries(&self.entries, &other.entries),
        })
    }

    /// `a ⊕ a ⊕ ⋯ ⊕ a` with `k` diagonal copies.
    pub fn repeat_diagonal(&self, k: usize) -> SparseMatrix {
        let mut entries = Entries::new();
        for copy in 0..k {
            for (&(r, c), v) in &self.entries {
                entries.insert((copy * self.rows + r, copy * self.cols + c), v.clone());
            }
        }
        SparseMatrix {
            rows: self.rows * k,
            cols: self.cols * k,
            entries,
        }
    }

    /// The block `b` with `self = b ⊕ ⋯ ⊕ b` (`k` copies), if there is one.
    pub fn as_repetition(&self, k: usize) -> Option<SparseMatrix> {
        if k == 0 || !self.rows.is_multiple_of(k) || !self.cols.is_multiple_of(k) {
            return None;
        }
        let (br, bc) = (self.rows / k, self.cols / k);
        let mut block = Entries::new();
        for (&(r, c), v) in &self.entries {
            if r < br && c < bc {
                block.insert((r, c), v.clone());
            }
        }
        if block.len() * k != self.entries.len() {
            return None;
        }
        for (&(r, c), v) in &self.entries {
            let copy = r / br;
            if c / bc != copy || block.get(&(r % br, c % bc)) != Some(v) {
                return None;
            }
        }
        Some(SparseMatrix {
            rows: br,
            cols: bc,
            entries: block,
        })
    }

    /// Strips block repetition as far as possible. Returns the minimal block
    /// and the number of copies removed.
    pub fn compress_repetition(&self) -> (SparseMatrix, usize) {
        let mut current = self.clone();
        let mut factor = 1;
        loop {
            let g = current.rows.gcd(&current.cols);
            let step = factorize(g as u64)
                .into_iter()
                .map(|(p, _)| p as usize)
                .find_map(|p| current.as_repetition(p).map(|b| (p, b)));
            match step {
                Some((p, b)) => {
                    current = b;
                    factor *= p;
                }
                None => return (current, factor),
            }
        }
    }

    pub fn to_dense(&self, field: FieldDescriptor) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn trace(&self, field: FieldDescriptor) -> Scalar {
        self.entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .fold(field.zero(), |acc, (_, v)| &acc + v)
    }

    /// Matrix–vector product with a sparse vector.
    pub fn apply(&self, v: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (&(r, c), a) in &self.entries {
            if let Some(x) = v.get(&c) {
                let term = a * x;
                match out.get_mut(&r) {
                    Some(slot) => *slot = &*slot + &term,
                    None => {
                        out.insert(r, term);
                    }
                }
            }
        }
        out.retain(|_, s| !s.is_zero());
        out
    }
}
