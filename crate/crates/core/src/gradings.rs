//! Elementary gradings of `M_𝔫(F)` by finitely generated abelian groups and
//! letter gradings of `L_F(1,m)`.
//!
//! An elementary grading is fixed by `h_{t,j} ∈ G` (`t < T`, `j < m_{t+1}`);
//! the word `u = i_{t-1}⋯i₀` gets `g_u = Σ_s h_{s,i_s}` and
//! `deg e_{u,u′} = g_u - g_{u′}`. Refining `e_{u,u′}` into `Σ_i e_{iu,iu′}`
//! adds and subtracts the same `h_{t,i}`, so degrees are lift-invariant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::CoreElement;
use crate::chain::{AdicWord, DivisorChain};
use crate::error::{Error, Result};
use crate::leavitt::LeavittElement;
use crate::sparse::SparseMatrix;

/// `ℤ^r × ℤ/d₁ × ⋯ × ℤ/d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

/// Coordinates: `rank` free ones, then one residue per torsion factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            xs => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if rank == 0 && torsion.is_empty() {
            return Err(Error::InvalidParameter("a group needs at least one factor".into()));
        }
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidParameter(format!("torsion order {d} must be at least 2")));
        }
        Ok(Self { rank, torsion })
    }

    pub fn integers() -> Self {
        Self {
            rank: 1,
            torsion: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn dimension(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.dimension()])
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.dimension() {
            return Err(Error::ShapeMismatch(format!(
                "group {self} needs {} coordinates, got {}",
                self.dimension(),
                coords.len()
            )));
        }
        Ok(self.reduce(coords))
    }

    fn reduce(&self, mut coords: Vec<i64>) -> GroupElement {
        for (x, &d) in coords[self.rank..].iter_mut().zip(&self.torsion) {
            *x = x.rem_euclid(d as i64);
        }
        GroupElement(coords)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// Parses `3`, `-1` or `(1,0,2)`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad group element {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(coords)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join("x"))
    }
}

/// Accepts `Z`, `Z^2`, `Z/3` and products such as `Z^2xZ/2xZ/4`.
impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad group {s:?}"));
        let mut rank = 0;
        let mut torsion = Vec::new();
        for part in s.split(['x', '*']).map(str::trim) {
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                torsion.push(d.parse::<u64>().map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        Self::new(rank, torsion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryGrading {
    chain: DivisorChain,
    group: AbelianGroup,
    /// `h[t][j]` for `t < T`, `j < m_{t+1}`.
    h: Vec<Vec<GroupElement>>,
}

impl ElementaryGrading {
    pub fn new(chain: &DivisorChain, group: AbelianGroup, h: Vec<Vec<GroupElement>>) -> Result<Self> {
        for (t, row) in h.iter().enumerate() {
            let m = chain.radix_checked(t)?;
            if row.len() != m {
                return Err(Error::ShapeMismatch(format!(
                    "h[{t}] has {} entries, radix is {m}",
                    row.len()
                )));
            }
            if row.iter().any(|g| g.0.len() != group.dimension()) {
                return Err(Error::ShapeMismatch(format!("h[{t}] has elements outside {group}")));
            }
        }
        Ok(Self {
            chain: chain.clone(),
            group,
            h,
        })
    }

    /// All `h_{t,j} = 0` to depth `depth`.
    pub fn trivial(chain: &DivisorChain, group: AbelianGroup, depth: usize) -> Result<Self> {
        let h = (0..depth)
            .map(|t| Ok(vec![group.zero(); chain.radix_checked(t)?]))
            .collect::<Result<_>>()?;
        Self::new(chain, group, h)
    }

    /// Parses `"0:1,2;1:(0,1),0"`: position `t`, then `h_{t,0},h_{t,1},…`.
    /// Omitted positions and trailing entries are zero. `depth` defaults to
    /// the chain depth, or to the deepest listed position on unbounded chains.
    pub fn parse(chain: &DivisorChain, group: AbelianGroup, depth: Option<usize>, text: &str) -> Result<Self> {
        let mut listed: BTreeMap<usize, Vec<GroupElement>> = BTreeMap::new();
        for clause in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (pos, values) = clause
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected position:values in {clause:?}")))?;
            let pos: usize = pos
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad position {pos:?}")))?;
            listed.insert(
                pos,
                split_elements(values)
                    .iter()
                    .map(|v| group.parse_element(v))
                    .collect::<Result<_>>()?,
            );
        }
        let depth = depth
            .or(chain.depth())
            .unwrap_or_else(|| listed.keys().next_back().map_or(0, |t| t + 1));
        if let Some(&t) = listed.keys().find(|&&t| t >= depth) {
            return Err(Error::DepthExceeded {
                requested: t + 1,
                available: depth,
            });
        }
        let mut h = Vec::with_capacity(depth);
        for t in 0..depth {
            let m = chain.radix_checked(t)?;
            let mut row = listed.remove(&t).unwrap_or_default();
            if row.len() > m {
                return Err(Error::ShapeMismatch(format!(
                    "h[{t}] has {} entries, radix is {m}",
                    row.len()
                )));
            }
            row.resize(m, group.zero());
            h.push(row);
        }
        Self::new(chain, group, h)
    }

    pub fn chain(&self) -> &DivisorChain {
        &self.chain
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn depth(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[Vec<GroupElement>] {
        &self.h
    }

    /// `g_u = Σ_s h_{s,u_s}`.
    pub fn word_weight(&self, u: &AdicWord) -> Result<GroupElement> {
        if u.len() > self.depth() {
            return Err(Error::DepthExceeded {
                requested: u.len(),
                available: self.depth(),
            });
        }
        u.validate(&self.chain)?;
        Ok(u.digits()
            .iter()
            .enumerate()
            .fold(self.group.zero(), |acc, (s, &d)| self.group.add(&acc, &self.h[s][d])))
    }

    /// `deg e_{u,u′} = g_u - g_{u′}`.
    pub fn unit_degree(&self, u: &AdicWord, u_prime: &AdicWord) -> Result<GroupElement> {
        if u.len() != u_prime.len() {
            return Err(Error::Unbalanced(u.to_string(), u_prime.to_string()));
        }
        Ok(self.group.sub(&self.word_weight(u)?, &self.word_weight(u_prime)?))
    }

    /// Homogeneous components of `x`, keyed by degree.
    pub fn components(&self, x: &CoreElement) -> Result<BTreeMap<GroupElement, CoreElement>> {
        self.chain.ensure_same(x.chain())?;
        let x = x.compress();
        let n = x.size();
        let mut blocks: BTreeMap<GroupElement, SparseMatrix> = BTreeMap::new();
        for (u, v, s) in x.terms()? {
            let (r, c) = (u.decode(&self.chain)?, v.decode(&self.chain)?);
            blocks
                .entry(self.unit_degree(&u, &v)?)
                .or_insert_with(|| SparseMatrix::zero(n, n))
                .add_entry(r, c, s)?;
        }
        blocks
            .into_iter()
            .map(|(g, b)| {
                Ok((
                    g,
                    CoreElement::from_block(&self.chain, x.field(), x.level(), b)?.compress(),
                ))
            })
            .collect()
    }

    pub fn component(&self, x: &CoreElement, g: &GroupElement) -> Result<CoreElement> {
        Ok(self
            .components(x)?
            .remove(g)
            .unwrap_or_else(|| CoreElement::zero(x.chain(), x.field())))
    }

    /// The degree of `x` if it is homogeneous; zero counts as degree 0.
    pub fn is_homogeneous(&self, x: &CoreElement) -> Result<Option<GroupElement>> {
        let comps = self.components(x)?;
        Ok(match comps.len() {
            0 => Some(self.group.zero()),
            1 => comps.into_keys().next(),
            _ => None,
        })
    }
}

fn split_elements(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

/// `deg x_i = g_i`, `deg y_i = -g_i` on `L_F(1,m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterGrading {
    group: AbelianGroup,
    g: Vec<GroupElement>,
}

impl LetterGrading {
    pub fn new(group: AbelianGroup, g: Vec<GroupElement>) -> Result<Self> {
        if g.iter().any(|x| x.0.len() != group.dimension()) {
            return Err(Error::ShapeMismatch(format!("letter degrees outside {group}")));
        }
        Ok(Self { group, g })
    }

    /// `g_i = 1` in `ℤ`.
    pub fn standard(m: usize) -> Self {
        Self {
            group: AbelianGroup::integers(),
            g: vec![GroupElement(vec![1]); m],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    fn word_weight(&self, u: &AdicWord) -> Result<GroupElement> {
        u.digits().iter().try_fold(self.group.zero(), |acc, &d| {
            let g = self.g.get(d).ok_or(Error::RadixMismatch {
                digit: d,
                position: 0,
                radix: self.g.len(),
            })?;
            Ok(self.group.add(&acc, g))
        })
    }

    /// `deg x_u y_v = Σ_{i∈u} g_i - Σ_{j∈v} g_j`.
    pub fn leavitt_degree(&self, u: &AdicWord, v: &AdicWord) -> Result<GroupElement> {
        Ok(self.group.sub(&self.word_weight(u)?, &self.word_weight(v)?))
    }

    pub fn components(&self, x: &LeavittElement) -> Result<BTreeMap<GroupElement, LeavittElement>> {
        let m = x.chain().require_homogeneous()?;
        if m != self.g.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} letter degrees for radix {m}",
                self.g.len()
            )));
        }
        let mut out: BTreeMap<GroupElement, LeavittElement> = BTreeMap::new();
        for (u, v, s) in x.terms()? {
            let term = LeavittElement::term(x.chain(), &u, &v, &s)?;
            let slot = out
                .entry(self.leavitt_degree(&u, &v)?)
                .or_insert_with(|| LeavittElement::zero(x.chain(), x.field()));
            *slot = slot.add(&term)?;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn leavitt_component(&self, x: &LeavittElement, g: &GroupElement) -> Result<LeavittElement> {
        Ok(self
            .components(x)?
            .remove(g)
            .unwrap_or_else(|| LeavittElement::zero(x.chain(), x.field())))
    }

    pub fn is_homogeneous(&self, x: &LeavittElement) -> Result<Option<GroupElement>> {
        let comps = self.components(x)?;
        Ok(match comps.len() {
            0 => Some(self.group.zero()),
            1 => comps.into_keys().next(),
            _ => None,
        })
    }
}
