use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::exactla::{QMatrix, QSubspace};
use crate::tropspace::{TangentTable, TropComplex};
use crate::{Error, Result};

/// Largest complex accepted by [`cech_oracle`].
pub const CECH_CELL_LIMIT: usize = 50;

/// `dim H^q` of the sheaf `F^p`, from the Čech complex of the cover by open vertex stars.
///
/// Sections over an intersection of open stars are the compatible families of
/// stalks over the cells it contains; with a least cell this is that cell's `F^p`.
/// Covers with a disconnected intersection are rejected.
pub fn cech_oracle(cx: &TropComplex, p: usize, q: usize) -> Result<usize> {
    Ok(cech_dims(cx, p)?.get(q).copied().unwrap_or(0))
}

struct Sections {
    cells: Vec<usize>,
    /// Start of each cell's stalk inside `⊕_P F^p(P)`.
    offsets: Vec<usize>,
    space: QSubspace,
}

impl Sections {
    fn new(cx: &TropComplex, table: &TangentTable, cells: Vec<usize>) -> Result<Sections> {
        let mut offsets = Vec::with_capacity(cells.len());
        let mut total = 0;
        for &c in &cells {
            offsets.push(total);
            total += table.dim(c);
        }
        let mut constraints = QMatrix::zeros(0, total);
        for (i, &a) in cells.iter().enumerate() {
            for (j, &b) in cells.iter().enumerate() {
                if a == b || !cx.is_face(a, b) {
                    continue;
                }
                let restriction = table.map(cx, a, b)?.transpose();
                let mut rows = QMatrix::zeros(table.dim(b), total);
                rows.set_block(0, offsets[i], &restriction.neg());
                rows.set_block(0, offsets[j], &QMatrix::identity(table.dim(b)));
                constraints = constraints.vstack(&rows);
            }
        }
        Ok(Sections { cells, offsets, space: constraints.kernel_basis() })
    }

    /// Matrix of the restriction from `self` to the smaller open set `to`.
    fn restrict(&self, table: &TangentTable, to: &Sections) -> QMatrix {
        let mut m = QMatrix::zeros(to.space.dim(), self.space.dim());
        for (col, v) in self.space.basis().iter().enumerate() {
            let mut w = Vec::new();
            for &c in &to.cells {
                let i = self.cells.binary_search(&c).expect("smaller set of cells");
                w.extend_from_slice(&v[self.offsets[i]..self.offsets[i] + table.dim(c)]);
            }
            let coords = to.space.coordinates(&w).expect("restriction of a section is a section");
            for (row, x) in coords.into_iter().enumerate() {
                m.set(row, col, x);
            }
        }
        m
    }
}

/// All Čech cohomology dimensions of `F^p`, indexed by `q`.
pub fn cech_dims(cx: &TropComplex, p: usize) -> Result<Vec<usize>> {
    if cx.len() > CECH_CELL_LIMIT {
        return Err(Error::OversizedInput { cells: cx.len(), limit: CECH_CELL_LIMIT });
    }
    let table = TangentTable::new(cx, p)?;
    let vertices = cx.cells_of_dim(0);
    let stars: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| {
            let mut s: Vec<usize> = cx.cofaces(v).to_vec();
            s.push(v);
            s.sort_unstable();
            s
        })
        .collect();

    // Nerve simplices (as vertex positions) with the cells of each intersection.
    let mut simplices: Vec<BTreeMap<Vec<usize>, Sections>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> =
        (0..vertices.len()).rev().map(|i| (alloc::vec![i], stars[i].clone())).collect();
    while let Some((simplex, common)) = stack.pop() {
        if !connected(cx, &common) {
            return Err(Error::CoverNotGood(format!("stars of vertices {simplex:?} meet in a disconnected set")));
        }
        let last = *simplex.last().expect("nonempty simplex");
        for j in (last + 1..vertices.len()).rev() {
            let meet: Vec<usize> = common.iter().copied().filter(|c| stars[j].contains(c)).collect();
            if !meet.is_empty() {
                let mut s = simplex.clone();
                s.push(j);
                stack.push((s, meet));
            }
        }
        let k = simplex.len() - 1;
        if simplices.len() <= k {
            simplices.resize_with(k + 1, BTreeMap::new);
        }
        simplices[k].insert(simplex, Sections::new(cx, &table, common)?);
    }

    let offsets: Vec<BTreeMap<&Vec<usize>, usize>> = simplices
        .iter()
        .map(|level| {
            let mut off = 0;
            level
                .iter()
                .map(|(s, sec)| {
                    let entry = (s, off);
                    off += sec.space.dim();
                    entry
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> =
        simplices.iter().map(|level| level.values().map(|sec| sec.space.dim()).sum()).collect();

    let mut ranks = Vec::with_capacity(simplices.len());
    for k in 0..simplices.len() {
        let rows = dims.get(k + 1).copied().unwrap_or(0);
        let mut d = QMatrix::zeros(rows, dims[k]);
        if k + 1 < simplices.len() {
            for (s, sec) in &simplices[k + 1] {
                let row = offsets[k + 1][s];
                for i in 0..s.len() {
                    let mut sub = s.clone();
                    sub.remove(i);
                    let col = offsets[k][&sub];
                    let restriction = simplices[k][&sub].restrict(&table, sec);
                    let block = if i % 2 == 0 { restriction } else { restriction.neg() };
                    d.set_block(row, col, &block);
                }
            }
        }
        ranks.push(d.rank());
    }
    Ok((0..simplices.len())
        .map(|k| dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect())
}

/// Whether the cells form one component under the face relation.
fn connected(cx: &TropComplex, cells: &[usize]) -> bool {
    let mut seen = alloc::vec![false; cells.len()];
    let mut stack = alloc::vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..cells.len() {
            if !seen[j] && (cx.is_face(cells[i], cells[j]) || cx.is_face(cells[j], cells[i])) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}
