use alloc::vec::Vec;

use crate::exactla::{binomial, compound, wedge_power, QMatrix, QSubspace};
use crate::{Error, Result};

use super::{FaceCase, TropComplex};

/// The coefficient spaces of a cell in degree `p`.
///
/// `f_lower` lives in `∧^p N_σ ⊗ Q` in lexicographic wedge coordinates. The dual
/// space is presented as a quotient of `∧^p (M ∩ σ^⊥) ⊗ Q` by `f_upper_kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTangent {
    pub cell: usize,
    pub p: usize,
    pub f_lower: QSubspace,
    pub f_upper_kernel: QSubspace,
}

impl MultiTangent {
    pub fn dim(&self) -> usize {
        self.f_lower.dim()
    }

    /// Dimension of the dual space `F^p`.
    pub fn dual_dim(&self) -> usize {
        self.f_upper_kernel.ambient_dim() - self.f_upper_kernel.dim()
    }
}

impl TropComplex {
    /// `F_p(P)`: the sum of `∧^p Span(P')` over the cofaces `P'` of `P` in its stratum.
    pub fn f_lower(&self, id: usize, p: usize) -> MultiTangent {
        let k = self.stratum_rank(id);
        let f_lower = if self.whole_strata {
            QSubspace::full(binomial(k, p))
        } else {
            let sed = self.cells[id].sedentarity;
            let mut acc = wedge_power(&self.span(id), p);
            for &c in &self.cofaces[id] {
                if self.cells[c].sedentarity == sed {
                    acc = acc.sum(&wedge_power(&self.span(c), p));
                }
            }
            acc
        };
        let f_upper_kernel = f_lower.annihilator();
        MultiTangent { cell: id, p, f_lower, f_upper_kernel }
    }

    /// The map `F_p(coface) → F_p(face)` in the canonical bases of both spaces.
    pub fn face_map(&self, face: usize, coface: usize, p: usize) -> Result<QMatrix> {
        let src = self.f_lower(coface, p).f_lower;
        let dst = self.f_lower(face, p).f_lower;
        self.face_map_between(face, coface, p, &src, &dst)
    }

    pub(crate) fn face_map_between(&self, face: usize, coface: usize, p: usize, src: &QSubspace, dst: &QSubspace) -> Result<QMatrix> {
        let case = self.face_case(face, coface).ok_or(Error::NotAFace { face, coface })?;
        let ambient = match case {
            FaceCase::Same => None,
            FaceCase::Projection => {
                let t = self
                    .projection(self.cells[coface].sedentarity, self.cells[face].sedentarity)
                    .expect("strata of a face pair are nested");
                Some(compound(t, p))
            }
            FaceCase::Composite => {
                let q = self.intermediate_cell(face, coface)?;
                let upper = self.face_map(q, coface, p)?;
                let lower = self.face_map(face, q, p)?;
                return Ok(&lower * &upper);
            }
        };
        let mut columns = Vec::with_capacity(src.dim());
        for v in src.basis() {
            let image = match &ambient {
                Some(m) => m.mul_vec(v),
                None => v.clone(),
            };
            let c = dst.coordinates(&image).ok_or_else(|| {
                Error::InvalidComplex(alloc::format!("face map {coface} → {face} leaves the target space"))
            })?;
            columns.push(c);
        }
        Ok(QMatrix::from_fn(dst.dim(), src.dim(), |i, j| columns[j][i].clone()))
    }

    /// The cell `Q = P₁ ∩ Trop(O(σ_{P₂}))` through which a composite face map factors.
    pub fn intermediate_cell(&self, face: usize, coface: usize) -> Result<usize> {
        let t = self.cells[face].sedentarity;
        self.faces[coface]
            .iter()
            .find(|&&(f, c)| c == FaceCase::Projection && self.cells[f].sedentarity == t)
            .map(|&(f, _)| f)
            .ok_or_else(|| Error::MissingIntermediateCell(alloc::format!("between cells {face} and {coface}")))
    }
}

/// All coefficient spaces and codimension-one face maps of a complex in degree `p`.
///
/// Built once and read-only afterwards, so it can be shared across threads.
#[derive(Clone, Debug)]
pub struct TangentTable {
    pub p: usize,
    spaces: Vec<QSubspace>,
    facet_maps: Vec<Vec<QMatrix>>,
}

impl TangentTable {
    pub fn new(cx: &TropComplex, p: usize) -> Result<TangentTable> {
        let spaces: Vec<QSubspace> = (0..cx.len()).map(|i| cx.f_lower(i, p).f_lower).collect();
        let mut facet_maps = Vec::with_capacity(cx.len());
        for q in 0..cx.len() {
            let mut maps = Vec::new();
            for &(f, _) in cx.facets(q) {
                let m = match cx.face_case(f, q) {
                    Some(FaceCase::Composite) => cx.face_map(f, q, p)?,
                    _ => cx.face_map_between(f, q, p, &spaces[q], &spaces[f])?,
                };
                maps.push(m);
            }
            facet_maps.push(maps);
        }
        Ok(TangentTable { p, spaces, facet_maps })
    }

    pub fn space(&self, id: usize) -> &QSubspace {
        &self.spaces[id]
    }

    pub fn dim(&self, id: usize) -> usize {
        self.spaces[id].dim()
    }

    /// `F_p(coface) → F_p(face)` for any face pair, using the cached spaces.
    pub fn map(&self, cx: &TropComplex, face: usize, coface: usize) -> Result<QMatrix> {
        match cx.face_case(face, coface) {
            Some(FaceCase::Composite) => {
                let q = cx.intermediate_cell(face, coface)?;
                Ok(&self.map(cx, face, q)? * &self.map(cx, q, coface)?)
            }
            _ => cx.face_map_between(face, coface, self.p, &self.spaces[coface], &self.spaces[face]),
        }
    }

    /// Face map for the `k`-th facet of `coface`, in the order of `TropComplex::facets`.
    pub fn facet_map(&self, coface: usize, k: usize) -> &QMatrix {
        &self.facet_maps[coface][k]
    }
}
