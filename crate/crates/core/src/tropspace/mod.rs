//! The partial compactification `Trop(T_Σ) = ⊔_σ N_σ` as a cell complex.
//!
//! A cell is a pair `(σ, D)`: a sedentarity cone `σ` of the base fan and a
//! rational cone `D` written in the coordinates of `N_σ`. Complexes are built by
//! closing a set of generating cells under taking faces, including the faces
//! that appear in deeper strata at infinity.

mod tangent;

pub use tangent::{MultiTangent, TangentTable};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactla::{sign, QMatrix, QSubspace, Rational};
use crate::fans::{to_q, Cone, Fan, OrbitLattice};
use crate::{Error, Result};

/// How a face sits inside a coface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceCase {
    /// Both cells live in the same stratum.
    Same,
    /// The face is the part of the coface's closure lying in a deeper stratum.
    Projection,
    /// A face of the projection face.
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    /// Index of the sedentarity cone in the base fan.
    pub sedentarity: usize,
    /// The cell as a cone in `N_σ` coordinates.
    pub shape: Cone,
    /// Whether the closure of the cell in `Trop(T_Σ)` is compact.
    pub compact: bool,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.shape.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRelation {
    pub face: usize,
    pub coface: usize,
    pub case: FaceCase,
    /// Incidence number `[coface : face]` for codimension-one pairs, zero otherwise.
    pub incidence: i32,
}

#[derive(Clone, Debug)]
struct Stratum {
    lattice: OrbitLattice,
    /// Images `τ/σ` of the cones `τ ⪰ σ`, keyed by cone index.
    star: Vec<(usize, Cone)>,
}

impl Stratum {
    fn rank(&self) -> usize {
        self.lattice.n_sigma_rank()
    }

    fn star_cone(&self, tau: usize) -> &Cone {
        &self.star.iter().find(|(t, _)| *t == tau).expect("cone in the star").1
    }
}

type CellKey = (usize, Vec<Vec<i64>>);

/// A fan structure on (a closed part of) `Trop(T_Σ)`.
#[derive(Clone, Debug)]
pub struct TropComplex {
    fan: Fan,
    strata: Vec<Stratum>,
    proj: BTreeMap<(usize, usize), (QMatrix, Vec<Vec<i64>>)>,
    cells: Vec<Cell>,
    index: BTreeMap<CellKey, usize>,
    relations: Vec<FaceRelation>,
    faces: Vec<Vec<(usize, FaceCase)>>,
    cofaces: Vec<Vec<usize>>,
    facets: Vec<Vec<(usize, i32)>>,
    whole_strata: bool,
}

impl TropComplex {
    /// The complex with cells `C_{σ,τ}` for all `σ ⪯ τ`.
    ///
    /// Every stratum is treated as fully present, so the coefficient spaces at a
    /// cell of sedentarity `σ` are `∧^p N_σ` even where the fan does not cover
    /// `N_σ`; the cells then form a compact core of `Trop(T_Σ)`.
    pub fn tautological(fan: &Fan) -> TropComplex {
        let gens = fan.maximal_cones().iter().map(|&m| (0, fan.cone(m).rays().to_vec())).collect();
        Self::build(fan, gens, true, false).expect("tautological complexes are valid")
    }

    /// Closure in `Trop(T_Σ)` of the cones of `structure`, a fan in `N_R`.
    ///
    /// Coefficient spaces come from cofaces, so `structure` should cover the
    /// part of `N_R` that matters (for instance a complete fan containing `Σ`).
    pub fn fan_structure(fan: &Fan, structure: &Fan) -> Result<TropComplex> {
        if structure.rank() != fan.rank() {
            return Err(Error::WrongRank { expected: fan.rank(), found: structure.rank() });
        }
        let gens = structure
            .maximal_cones()
            .iter()
            .map(|&m| (0, structure.cone(m).rays().to_vec()))
            .collect();
        Self::build(fan, gens, false, false)
    }

    /// A user-described complex: each cell is a sedentarity cone (by ray indices of
    /// `fan`) and generating rays given in `N` coordinates. Faces are added
    /// automatically and the complex is checked for proper intersections.
    pub fn from_cells(fan: &Fan, cells: &[(Vec<usize>, Vec<Vec<i64>>)]) -> Result<TropComplex> {
        let mut gens = Vec::new();
        for (sed, rays) in cells {
            let sigma = fan
                .find(sed)
                .ok_or_else(|| Error::InvalidComplex(format!("sedentarity {sed:?} is not a cone of the fan")))?;
            let lattice = fan.orbit_lattice(sigma);
            let mut projected = Vec::new();
            for r in rays {
                if r.len() != fan.rank() {
                    return Err(Error::DimensionMismatch { expected: fan.rank(), found: r.len() });
                }
                projected.push(lattice.project(r));
            }
            gens.push((sigma, projected));
        }
        Self::build(fan, gens, false, true)
    }

    fn build(fan: &Fan, gens: Vec<(usize, Vec<Vec<i64>>)>, whole_strata: bool, validate: bool) -> Result<TropComplex> {
        let strata: Vec<Stratum> = (0..fan.num_cones())
            .map(|s| {
                let lattice = fan.orbit_lattice(s);
                let star = fan
                    .star(s)
                    .into_iter()
                    .map(|t| {
                        let rays: Vec<Vec<i64>> = fan.cone(t).rays().iter().map(|r| lattice.project(r)).collect();
                        (t, Cone::new(lattice.n_sigma_rank(), &rays).expect("quotient of a fan cone is pointed"))
                    })
                    .collect();
                Stratum { lattice, star }
            })
            .collect();
        let mut proj = BTreeMap::new();
        for s in 0..fan.num_cones() {
            for t in fan.star(s) {
                let m = fan.projection_between(s, t);
                let ints = (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| rational_to_i64(m.get(i, j))).collect())
                    .collect();
                proj.insert((s, t), (m, ints));
            }
        }
        let mut cx = TropComplex {
            fan: fan.clone(),
            strata,
            proj,
            cells: Vec::new(),
            index: BTreeMap::new(),
            relations: Vec::new(),
            faces: Vec::new(),
            cofaces: Vec::new(),
            facets: Vec::new(),
            whole_strata,
        };

        // Close the generators under faces.
        let mut shapes: BTreeMap<CellKey, Cone> = BTreeMap::new();
        let mut face_keys: BTreeMap<CellKey, Vec<(CellKey, FaceCase)>> = BTreeMap::new();
        let mut work: Vec<(usize, Cone)> = Vec::new();
        for (s, rays) in gens {
            let shape = Cone::new(cx.strata[s].rank(), &rays)
                .map_err(|e| Error::InvalidComplex(format!("cell in stratum {s}: {e}")))?;
            work.push((s, shape));
        }
        while let Some((s, shape)) = work.pop() {
            let key = (s, shape.rays().to_vec());
            if face_keys.contains_key(&key) {
                continue;
            }
            let faces = cx.faces_of_shape(s, &shape)?;
            for (fs, fshape, _) in &faces {
                let fkey = (*fs, fshape.rays().to_vec());
                if !face_keys.contains_key(&fkey) {
                    work.push((*fs, fshape.clone()));
                }
            }
            face_keys.insert(
                key.clone(),
                faces.into_iter().map(|(fs, fshape, case)| ((fs, fshape.rays().to_vec()), case)).collect(),
            );
            shapes.insert(key, shape);
        }

        let mut order: Vec<CellKey> = shapes.keys().cloned().collect();
        order.sort_by(|a, b| (a.0, shapes[a].dim(), &a.1).cmp(&(b.0, shapes[b].dim(), &b.1)));
        for (id, key) in order.iter().enumerate() {
            let shape = shapes[key].clone();
            let st = &cx.strata[key.0];
            let compact = st.star.iter().any(|(_, c)| c.contains_cone(&shape));
            cx.cells.push(Cell { id, sedentarity: key.0, shape, compact });
            cx.index.insert(key.clone(), id);
        }
        let ncells = cx.cells.len();
        cx.faces = alloc::vec![Vec::new(); ncells];
        cx.cofaces = alloc::vec![Vec::new(); ncells];
        cx.facets = alloc::vec![Vec::new(); ncells];
        for (id, key) in order.iter().enumerate() {
            let mut fs: Vec<(usize, FaceCase)> = face_keys[key]
                .iter()
                .filter(|(k, _)| k != key)
                .map(|(k, c)| (cx.index[k], *c))
                .collect();
            fs.sort_unstable();
            fs.dedup_by_key(|x| x.0);
            for &(f, _) in &fs {
                cx.cofaces[f].push(id);
            }
            cx.faces[id] = fs;
        }
        for id in 0..ncells {
            let d = cx.cells[id].dim();
            for k in 0..cx.faces[id].len() {
                let (f, case) = cx.faces[id][k];
                let mut incidence = 0;
                if cx.cells[f].dim() + 1 == d {
                    incidence = cx.incidence_sign(f, id, case)?;
                    cx.facets[id].push((f, incidence));
                }
                cx.relations.push(FaceRelation { face: f, coface: id, case, incidence });
            }
        }
        if validate {
            cx.check_intersections()?;
        }
        Ok(cx)
    }

    /// Faces of the cell `(s, shape)`, including itself, as (sedentarity, shape, case).
    fn faces_of_shape(&self, s: usize, shape: &Cone) -> Result<Vec<(usize, Cone, FaceCase)>> {
        let st = &self.strata[s];
        let mut out = Vec::new();
        let full = shape.face_ray_sets().pop().unwrap_or_default();
        let mut projections: BTreeMap<usize, Vec<Vec<i64>>> = BTreeMap::new();
        for g in shape.face_ray_sets() {
            let gc = shape.subcone(&g);
            for &(t, ref tc) in &st.star {
                if t == s || !meets_relint(&gc, tc) {
                    continue;
                }
                let ints = &self.proj[&(s, t)].1;
                let rays: Vec<Vec<i64>> = gc.rays().iter().map(|r| apply(ints, r)).collect();
                let image = Cone::new(self.strata[t].rank(), &rays).map_err(|_| {
                    Error::InvalidComplex(format!("closure at infinity of a cell in stratum {s} is not a cone"))
                })?;
                let case = if g == full {
                    projections.insert(t, image.rays().to_vec());
                    FaceCase::Projection
                } else {
                    FaceCase::Composite
                };
                out.push((t, image, case));
            }
            out.push((s, gc, FaceCase::Same));
        }
        // A composite face that coincides with the projection face is that face.
        for (t, image, case) in out.iter_mut() {
            if *case == FaceCase::Composite && projections.get(t).map(|r| r == image.rays()).unwrap_or(false) {
                *case = FaceCase::Projection;
            }
        }
        Ok(out)
    }

    fn check_intersections(&self) -> Result<()> {
        for a in 0..self.cells.len() {
            for b in a + 1..self.cells.len() {
                let (ca, cb) = (&self.cells[a], &self.cells[b]);
                if ca.sedentarity != cb.sedentarity {
                    continue;
                }
                let common: Vec<Vec<i64>> =
                    ca.shape.rays().iter().filter(|r| cb.shape.rays().contains(r)).cloned().collect();
                let shared = Cone::new(ca.shape.ambient_rank(), &common).expect("subset of a pointed cone");
                let ok = shared.is_face_of(&ca.shape)
                    && shared.is_face_of(&cb.shape)
                    && ca.shape.intersection_rays(&cb.shape).iter().all(|r| shared.contains_int(r));
                if !ok {
                    return Err(Error::InvalidComplex(format!("cells {a} and {b} do not meet in a common face")));
                }
            }
        }
        Ok(())
    }

    fn incidence_sign(&self, face: usize, coface: usize, case: FaceCase) -> Result<i32> {
        let p = &self.cells[coface];
        let f = &self.cells[face];
        let o_p = p.shape.span();
        let coords = |v: &[Rational]| o_p.coordinates(v).expect("vector in the span of the cell");
        let mut columns: Vec<Vec<Rational>> = Vec::new();
        match case {
            FaceCase::Same => {
                let w = p
                    .shape
                    .rays()
                    .iter()
                    .find(|r| !f.shape.rays().contains(r))
                    .expect("a facet misses some ray");
                let outward: Vec<Rational> = to_q(w).iter().map(|x| -x).collect();
                columns.push(coords(&outward));
                for v in f.shape.span().basis() {
                    columns.push(coords(v));
                }
            }
            FaceCase::Projection | FaceCase::Composite => {
                let t = f.sedentarity;
                let tc = self.strata[p.sedentarity].star_cone(t);
                let meet = p.shape.intersection_rays(tc);
                let mut w = alloc::vec![Rational::zero(); p.shape.ambient_rank()];
                for r in &meet {
                    for (x, y) in w.iter_mut().zip(to_q(r)) {
                        *x += y;
                    }
                }
                columns.push(coords(&w));
                let tb = &self.proj[&(p.sedentarity, t)].0 * &o_p.basis_matrix().transpose();
                for y in f.shape.span().basis() {
                    let c = tb.solve(y).ok_or_else(|| Error::InvalidComplex("face not in the image".into()))?;
                    columns.push(c);
                }
            }
        }
        let d = columns.len();
        let det = QMatrix::from_columns(d, &columns).det();
        match sign(&det) {
            0 => Err(Error::InvalidComplex(format!("degenerate incidence between cells {face} and {coface}"))),
            s => Ok(s),
        }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cell::dim).max().unwrap_or(0)
    }

    pub fn whole_strata(&self) -> bool {
        self.whole_strata
    }

    /// Rank of the stratum `N_σ` containing the cell.
    pub fn stratum_rank(&self, id: usize) -> usize {
        self.strata[self.cells[id].sedentarity].rank()
    }

    pub fn face_poset(&self) -> &[FaceRelation] {
        &self.relations
    }

    /// Proper faces of a cell with their case tags.
    pub fn faces(&self, id: usize) -> &[(usize, FaceCase)] {
        &self.faces[id]
    }

    /// Proper cofaces of a cell.
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    /// Codimension-one faces with incidence numbers.
    pub fn facets(&self, id: usize) -> &[(usize, i32)] {
        &self.facets[id]
    }

    pub fn face_case(&self, face: usize, coface: usize) -> Option<FaceCase> {
        if face == coface {
            return Some(FaceCase::Same);
        }
        self.faces[coface].iter().find(|(f, _)| *f == face).map(|(_, c)| *c)
    }

    pub fn is_face(&self, face: usize, coface: usize) -> bool {
        self.face_case(face, coface).is_some()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim() == d).collect()
    }

    /// Looks up the cell with the given sedentarity and generators in `N_σ` coordinates.
    pub fn find_cell(&self, sedentarity: usize, rays: &[Vec<i64>]) -> Option<usize> {
        let shape = Cone::new(self.strata[sedentarity].rank(), rays).ok()?;
        self.index.get(&(sedentarity, shape.rays().to_vec())).copied()
    }

    /// The cell `C_{σ,τ}`: the closure of the image of `τ` in `N_σ`.
    pub fn cell_of_pair(&self, sigma: usize, tau: usize) -> Option<usize> {
        if !self.fan.is_face(sigma, tau) {
            return None;
        }
        let lattice = &self.strata[sigma].lattice;
        let rays: Vec<Vec<i64>> = self.fan.cone(tau).rays().iter().map(|r| lattice.project(r)).collect();
        self.find_cell(sigma, &rays)
    }

    /// The projection `N_σ → N_τ` between two strata.
    pub fn projection(&self, sigma: usize, tau: usize) -> Option<&QMatrix> {
        self.proj.get(&(sigma, tau)).map(|x| &x.0)
    }

    /// `Span(P)` inside `N_σ ⊗ Q`.
    pub fn span(&self, id: usize) -> QSubspace {
        self.cells[id].shape.span()
    }

    /// Orientation of a cell: the canonical basis of its span.
    pub fn orientation(&self, id: usize) -> Vec<Vec<Rational>> {
        self.span(id).basis().to_vec()
    }

    /// Whether `cells` is closed under taking faces.
    pub fn is_closed_subset(&self, cells: &[usize]) -> bool {
        let set: BTreeSet<usize> = cells.iter().copied().collect();
        cells.iter().all(|&c| c < self.cells.len() && self.faces[c].iter().all(|(f, _)| set.contains(f)))
    }
}

fn rational_to_i64(x: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    assert!(x.is_integer(), "lattice projection is integral");
    x.to_integer().to_i64().expect("small lattice coefficient")
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Whether `g` meets the relative interior of the (nonzero) cone `t`.
fn meets_relint(g: &Cone, t: &Cone) -> bool {
    let rays = g.intersection_rays(t);
    if rays.is_empty() {
        return false;
    }
    let mut sum = alloc::vec![Rational::zero(); g.ambient_rank()];
    for r in &rays {
        for (x, y) in sum.iter_mut().zip(to_q(r)) {
            *x += y;
        }
    }
    t.in_relint(&sum)
}


#[cfg(test)]
pub(crate) mod tests_support {
    pub(crate) use super::tests::tropical_line;
}
