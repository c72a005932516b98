//! Tropical cohomology `H^{p,q}` of a complex through cellular cochains.
//!
//! In degree `p` the cochains on a `q`-cell `P` are `F^p(P)`, written in the
//! basis dual to the canonical basis of `F_p(P)`. The coboundary of a cochain
//! on a facet `P ⊂ Q` is `[Q:P]` times the transpose of the face map. Only
//! cells with compact closure carry cochains.

mod cech;

pub use cech::{cech_dims, cech_oracle, CECH_CELL_LIMIT};

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactla::{QMatrix, QSubspace, Rational};
use crate::tropspace::{TangentTable, TropComplex};
use crate::{Error, Result};

/// Position of one cell's coefficients inside a cochain space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub cell: usize,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub p: usize,
    /// `blocks[q]` lists the `q`-cells carrying cochains.
    pub blocks: Vec<Vec<Block>>,
    /// `deltas[q]` maps `C^q` to `C^{q+1}`.
    pub deltas: Vec<QMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    /// Cocycles whose classes form a basis, in cell-block coordinates.
    pub representatives: Vec<Vec<Rational>>,
}

impl CochainComplex {
    /// Cochains of degree `p` on the compact cells of `cx` that are not in `exclude`.
    pub fn build(cx: &TropComplex, p: usize, exclude: &[usize]) -> Result<CochainComplex> {
        let table = TangentTable::new(cx, p)?;
        Ok(Self::from_table(cx, &table, |c| !exclude.contains(&c)))
    }

    /// Cochains on the compact cells accepted by `keep`, using precomputed coefficients.
    pub fn from_table(cx: &TropComplex, table: &TangentTable, keep: impl Fn(usize) -> bool) -> CochainComplex {
        let top = cx.fan().rank();
        let mut blocks: Vec<Vec<Block>> = vec![Vec::new(); top + 1];
        for cell in cx.cells() {
            if !cell.compact || !keep(cell.id) || cell.dim() > top {
                continue;
            }
            let list = &mut blocks[cell.dim()];
            let offset = list.last().map(|b: &Block| b.offset + b.dim).unwrap_or(0);
            list.push(Block { cell: cell.id, offset, dim: table.dim(cell.id) });
        }
        let mut deltas = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let src = &blocks[q];
            let empty = Vec::new();
            let dst = if q < top { &blocks[q + 1] } else { &empty };
            let mut m = QMatrix::zeros(total(dst), total(src));
            for b in dst {
                for (k, &(f, s)) in cx.facets(b.cell).iter().enumerate() {
                    let Some(a) = src.iter().find(|a| a.cell == f) else { continue };
                    let map = table.facet_map(b.cell, k).transpose();
                    let block = if s > 0 { map } else { map.neg() };
                    m.set_block(b.offset, a.offset, &block);
                }
            }
            deltas.push(m);
        }
        CochainComplex { p: table.p, blocks, deltas }
    }

    pub fn top(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn dim(&self, q: usize) -> usize {
        self.blocks.get(q).map(|b| total(b)).unwrap_or(0)
    }

    fn delta_before(&self, q: usize) -> Option<&QMatrix> {
        q.checked_sub(1).map(|k| &self.deltas[k])
    }

    pub fn cocycles(&self, q: usize) -> QSubspace {
        match self.deltas.get(q) {
            Some(d) => d.kernel_basis(),
            None => QSubspace::zero(0),
        }
    }

    pub fn coboundaries(&self, q: usize) -> QSubspace {
        match self.delta_before(q) {
            Some(d) => d.image(),
            None => QSubspace::zero(self.dim(q)),
        }
    }

    pub fn cohomology(&self, q: usize) -> CohomologyResult {
        if q > self.top() {
            return CohomologyResult { p: self.p, q, dim: 0, representatives: Vec::new() };
        }
        let z = self.cocycles(q);
        let b = self.coboundaries(q);
        let mut span = b.clone();
        let mut reps = Vec::new();
        for v in z.basis() {
            if !span.contains(v) {
                span = span.sum(&QSubspace::from_vectors(span.ambient_dim(), core::slice::from_ref(v)));
                reps.push(v.clone());
            }
        }
        CohomologyResult { p: self.p, q, dim: z.dim() - b.dim(), representatives: reps }
    }

    /// Dimensions of `H^{p,q}` for `q = 0..=top`.
    pub fn betti_row(&self) -> Vec<usize> {
        (0..=self.top())
            .map(|q| {
                let z = self.dim(q) - self.deltas[q].rank();
                let b = self.delta_before(q).map(|d| d.rank()).unwrap_or(0);
                z - b
            })
            .collect()
    }

    pub fn block(&self, q: usize, cell: usize) -> Option<Block> {
        self.blocks.get(q)?.iter().find(|b| b.cell == cell).copied()
    }
}

fn total(blocks: &[Block]) -> usize {
    blocks.last().map(|b| b.offset + b.dim).unwrap_or(0)
}

pub fn build_cochain_complex(cx: &TropComplex, p: usize) -> Result<CochainComplex> {
    CochainComplex::build(cx, p, &[])
}

pub fn cohomology(cx: &TropComplex, p: usize, q: usize) -> Result<CohomologyResult> {
    Ok(build_cochain_complex(cx, p)?.cohomology(q))
}

/// Cohomology of the cochains vanishing on the closed subcomplex `a`.
pub fn relative_cohomology(cx: &TropComplex, a: &[usize], p: usize, q: usize) -> Result<CohomologyResult> {
    if !cx.is_closed_subset(a) {
        return Err(Error::NotASubcomplex);
    }
    Ok(CochainComplex::build(cx, p, a)?.cohomology(q))
}

/// `h[p][q] = dim H^{p,q}` for `0 ≤ p, q ≤ rank`.
pub fn betti_table(cx: &TropComplex) -> Result<Vec<Vec<usize>>> {
    (0..=cx.fan().rank()).map(|p| Ok(build_cochain_complex(cx, p)?.betti_row())).collect()
}

/// Ranks describing the long exact sequence of the pair `(Λ, A)` in degree `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSequence {
    pub relative: Vec<usize>,
    pub absolute: Vec<usize>,
    pub sub: Vec<usize>,
    /// Rank of `H^q(Λ, A) → H^q(Λ)`.
    pub rank_extend: Vec<usize>,
    /// Rank of `H^q(Λ) → H^q(A)`.
    pub rank_restrict: Vec<usize>,
}

impl PairSequence {
    /// Exactness at every term, read off from ranks.
    pub fn is_exact(&self) -> bool {
        let top = self.absolute.len();
        // Rank of the connecting map H^q(A) → H^{q+1}(Λ, A).
        let conn = |q: usize| self.sub[q] - self.rank_restrict[q];
        (0..top).all(|q| {
            let incoming = if q == 0 { 0 } else { conn(q - 1) };
            self.rank_extend[q] + self.rank_restrict[q] == self.absolute[q]
                && self.relative[q] - self.rank_extend[q] == incoming
        }) && conn(top - 1) == 0
    }
}

pub fn pair_sequence(cx: &TropComplex, a: &[usize], p: usize) -> Result<PairSequence> {
    if !cx.is_closed_subset(a) {
        return Err(Error::NotASubcomplex);
    }
    let table = TangentTable::new(cx, p)?;
    let aset: BTreeSet<usize> = a.iter().copied().collect();
    let whole = CochainComplex::from_table(cx, &table, |_| true);
    let rel = CochainComplex::from_table(cx, &table, |c| !aset.contains(&c));
    let sub = CochainComplex::from_table(cx, &table, |c| aset.contains(&c));
    let top = whole.top();
    let mut out = PairSequence {
        relative: rel.betti_row(),
        absolute: whole.betti_row(),
        sub: sub.betti_row(),
        rank_extend: Vec::new(),
        rank_restrict: Vec::new(),
    };
    for q in 0..=top {
        let ext = block_map(&rel, &whole, q);
        out.rank_extend.push(induced_rank(&rel, &whole, &ext, q));
        let res = block_map(&whole, &sub, q);
        out.rank_restrict.push(induced_rank(&whole, &sub, &res, q));
    }
    Ok(out)
}

/// The matrix copying common cell blocks from `from` to `to` in degree `q`.
fn block_map(from: &CochainComplex, to: &CochainComplex, q: usize) -> QMatrix {
    let mut m = QMatrix::zeros(to.dim(q), from.dim(q));
    for b in &from.blocks[q] {
        if let Some(t) = to.block(q, b.cell) {
            m.set_block(t.offset, b.offset, &QMatrix::identity(b.dim));
        }
    }
    m
}

fn induced_rank(from: &CochainComplex, to: &CochainComplex, f: &QMatrix, q: usize) -> usize {
    let b = to.coboundaries(q);
    let z = from.cocycles(q);
    let image = z.image_under(f);
    image.sum(&b).dim() - b.dim()
}

#[cfg(test)]
mod tests;
