//! Balanced weights, tropical cycle classes and the pairing with cohomology.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cohomology::CochainComplex;
use crate::exactla::{primitive_integer, wedge_of, QMatrix, QSubspace, Rational};
use crate::fans::{primitive, to_q, Fan};
use crate::tropspace::{TangentTable, TropComplex};
use crate::{Error, Result};

/// What the weighted cones of a [`MinkowskiWeight`] stand for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightKind {
    /// A function on the codimension-`p` cones, subject to balancing.
    #[default]
    Minkowski,
    /// A combination of orbit closures `V(τ)` over the `p`-dimensional cones `τ`.
    /// Unlisted cones count as zero.
    Orbit,
}

#[derive(Clone, Debug)]
pub struct MinkowskiWeight {
    pub fan: Fan,
    pub codim: usize,
    pub kind: WeightKind,
    /// Weights keyed by cone index.
    pub weights: BTreeMap<usize, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balancing {
    /// Cones at which the balancing sum does not vanish.
    pub violations: Vec<usize>,
}

impl Balancing {
    pub fn is_balanced(&self) -> bool {
        self.violations.is_empty()
    }
}

impl MinkowskiWeight {
    /// Weights given by ray-index sets. Every listed cone must carry a weight of this kind.
    pub fn new(fan: &Fan, codim: usize, kind: WeightKind, weights: &[(Vec<usize>, Rational)]) -> Result<Self> {
        if codim > fan.rank() {
            return Err(Error::DimensionMismatch { expected: fan.rank(), found: codim });
        }
        let w = MinkowskiWeight { fan: fan.clone(), codim, kind, weights: BTreeMap::new() };
        let want = w.cone_dim();
        let mut map = BTreeMap::new();
        for (rays, value) in weights {
            let c = fan
                .find(rays)
                .ok_or_else(|| Error::InvalidFan(format!("{rays:?} is not a cone of the fan")))?;
            if fan.cone_dim(c) != want {
                return Err(Error::DimensionMismatch { expected: want, found: fan.cone_dim(c) });
            }
            map.insert(c, value.clone());
        }
        Ok(MinkowskiWeight { weights: map, ..w })
    }

    /// Dimension of the weighted cones.
    pub fn cone_dim(&self) -> usize {
        match self.kind {
            WeightKind::Minkowski => self.fan.rank() - self.codim,
            WeightKind::Orbit => self.codim,
        }
    }

    /// Dimension of the cycle: `n − codim`.
    pub fn cycle_dim(&self) -> usize {
        self.fan.rank() - self.codim
    }

    pub fn weight(&self, cone: usize) -> Result<&Rational> {
        self.weights.get(&cone).ok_or(Error::MissingWeight(cone))
    }

    pub fn is_zero(&self) -> bool {
        self.weights.values().all(Zero::is_zero)
    }
}

/// Primitive generator of `τ/σ` in `N_σ` for a face `σ` of codimension one in `τ`.
fn primitive_normal(fan: &Fan, sigma: usize, tau: usize) -> Vec<i64> {
    let lattice = fan.orbit_lattice(sigma);
    let r = fan.cones()[tau]
        .iter()
        .find(|r| !fan.cones()[sigma].contains(r))
        .expect("τ has a ray outside σ");
    primitive(&lattice.project(&fan.rays()[*r])).expect("ray outside σ is nonzero in N_σ")
}

/// Checks the balancing condition at every cone of codimension `codim + 1`.
///
/// Orbit combinations are closed cycles by construction and always pass.
pub fn balancing_check(w: &MinkowskiWeight) -> Result<Balancing> {
    let fan = &w.fan;
    let n = fan.rank();
    let d = w.cone_dim();
    if w.kind == WeightKind::Orbit {
        return Ok(Balancing { violations: Vec::new() });
    }
    for c in fan.cones_of_dim(d) {
        w.weight(c)?;
    }
    if d == 0 {
        return Ok(Balancing { violations: Vec::new() });
    }
    let mut violations = Vec::new();
    for s in fan.cones_of_dim(d - 1) {
        let k = n - (d - 1);
        let mut sum = alloc::vec![Rational::zero(); k];
        for t in fan.star(s) {
            if fan.cone_dim(t) != d {
                continue;
            }
            let nv = to_q(&primitive_normal(fan, s, t));
            let c = w.weight(t)?;
            for (x, y) in sum.iter_mut().zip(nv) {
                *x += c * y;
            }
        }
        if sum.iter().any(|x| !x.is_zero()) {
            violations.push(s);
        }
    }
    Ok(Balancing { violations })
}

fn balancing_matrix(fan: &Fan, codim: usize) -> QMatrix {
    let n = fan.rank();
    let d = n - codim;
    let unknowns = fan.cones_of_dim(d);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    if d > 0 {
        for s in fan.cones_of_dim(d - 1) {
            let k = n - (d - 1);
            let mut block = alloc::vec![alloc::vec![Rational::zero(); unknowns.len()]; k];
            for (j, &t) in unknowns.iter().enumerate() {
                if fan.is_face(s, t) {
                    for (i, x) in primitive_normal(fan, s, t).into_iter().enumerate() {
                        block[i][j] = crate::exactla::q(x);
                    }
                }
            }
            rows.extend(block);
        }
    }
    QMatrix::from_rows(unknowns.len(), &rows)
}

/// Dimension of the space of balanced weights of codimension `p`.
pub fn chow_dim(fan: &Fan, p: usize) -> Result<usize> {
    if !fan.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if p > fan.rank() {
        return Ok(0);
    }
    let m = balancing_matrix(fan, p);
    Ok(m.cols() - m.rank())
}

/// A cellular `(d, d)`-chain: for each `d`-cell, a vector of `F_d` in its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropCycle {
    pub p: usize,
    pub chain: Vec<(usize, Vec<Rational>)>,
}

impl TropCycle {
    /// The chain laid out like the degree-`p` cochains of `cc` in cell dimension `p`.
    pub fn to_vector(&self, cc: &CochainComplex) -> Result<Vec<Rational>> {
        if cc.p != self.p {
            return Err(Error::DegreeMismatch(format!("cycle of degree {} against cochains of degree {}", self.p, cc.p)));
        }
        let mut v = alloc::vec![Rational::zero(); cc.dim(self.p)];
        for (cell, coords) in &self.chain {
            let b = cc
                .block(self.p, *cell)
                .ok_or_else(|| Error::CellsMissing(format!("cell {cell} carries no cochains")))?;
            for (i, x) in coords.iter().enumerate() {
                v[b.offset + i] = x.clone();
            }
        }
        Ok(v)
    }

    /// Whether the cellular boundary vanishes.
    pub fn is_cycle(&self, cc: &CochainComplex) -> Result<bool> {
        if self.p == 0 {
            return Ok(true);
        }
        let v = self.to_vector(cc)?;
        let boundary = cc.deltas[self.p - 1].transpose().mul_vec(&v);
        Ok(boundary.iter().all(Zero::is_zero))
    }

    /// Whether the chain is the boundary of a `(p, p+1)`-chain.
    pub fn is_boundary(&self, cc: &CochainComplex) -> Result<bool> {
        let v = self.to_vector(cc)?;
        Ok(cc.deltas[self.p].transpose().solve(&v).is_some())
    }
}

/// The tropical cycle of a balanced weight inside the complex `cx` of the same fan.
///
/// Each weighted cell gets `(−1)^{d(d−1)/2} · m` times the primitive volume element of
/// its span, oriented by the cell's canonical basis.
pub fn cycle_class(w: &MinkowskiWeight, cx: &TropComplex) -> Result<TropCycle> {
    let bal = balancing_check(w)?;
    if !bal.is_balanced() {
        return Err(Error::Unbalanced(bal.violations));
    }
    let fan = cx.fan();
    let d = w.cycle_dim();
    let table = TangentTable::new(cx, d)?;
    let mut sign = Rational::one();
    if (d * d.saturating_sub(1) / 2) % 2 == 1 {
        sign = -sign;
    }
    let mut cells: Vec<(usize, Rational)> = Vec::new();
    for (&cone, m) in &w.weights {
        if m.is_zero() {
            continue;
        }
        match w.kind {
            WeightKind::Minkowski => {
                let c = cx
                    .cell_of_pair(0, cone)
                    .ok_or_else(|| Error::CellsMissing(format!("no cell for cone {cone}")))?;
                cells.push((c, m.clone()));
            }
            WeightKind::Orbit => {
                for u in fan.star(cone) {
                    if fan.cone_dim(u) != fan.cone_dim(cone) + d {
                        continue;
                    }
                    let c = cx
                        .cell_of_pair(cone, u)
                        .ok_or_else(|| Error::CellsMissing(format!("no cell for the pair ({cone}, {u})")))?;
                    cells.push((c, m.clone()));
                }
            }
        }
    }
    let mut acc: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
    for (c, m) in cells {
        if !cx.cell(c).compact {
            return Err(Error::CellsMissing(format!("cell {c} is not compact")));
        }
        let vol: Vec<Rational> = primitive_integer(&wedge_of(cx.stratum_rank(c), &cx.orientation(c)))
            .map(|v| v.into_iter().map(Rational::from_integer).collect())
            .unwrap_or_else(|| alloc::vec![Rational::one()]);
        let coords = table
            .space(c)
            .coordinates(&vol)
            .ok_or_else(|| Error::InvalidComplex(format!("volume element of cell {c} is outside F_p")))?;
        let entry = acc.entry(c).or_insert_with(|| alloc::vec![Rational::zero(); coords.len()]);
        for (x, y) in entry.iter_mut().zip(coords) {
            *x += &sign * &m * y;
        }
    }
    Ok(TropCycle { p: d, chain: acc.into_iter().collect() })
}

/// `⟨α, c⟩ = Σ_P α_P(c_P)` for a cocycle `α` of `cc` in cell dimension `p`.
pub fn pair(cocycle: &[Rational], cycle: &TropCycle, cc: &CochainComplex) -> Result<Rational> {
    let v = cycle.to_vector(cc)?;
    if cocycle.len() != v.len() {
        return Err(Error::DegreeMismatch(format!("cocycle has {} entries, chains have {}", cocycle.len(), v.len())));
    }
    Ok(cocycle.iter().zip(&v).map(|(a, b)| a * b).sum())
}

/// `D_i · D_j` for the invariant divisors of a smooth complete toric surface, by ray index.
pub fn surface_intersection_matrix(fan: &Fan) -> Result<QMatrix> {
    if fan.rank() != 2 {
        return Err(Error::WrongRank { expected: 2, found: fan.rank() });
    }
    if !fan.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let r = fan.rays().len();
    let adjacent = |i: usize, j: usize| fan.find(&[i, j]).is_some();
    let mut m = QMatrix::zeros(r, r);
    for i in 0..r {
        let nbrs: Vec<usize> = (0..r).filter(|&j| j != i && adjacent(i, j)).collect();
        for &j in &nbrs {
            m.set(i, j, Rational::one());
        }
        let v = &fan.rays()[i];
        let s: Vec<i64> = (0..2).map(|k| nbrs.iter().map(|&j| fan.rays()[j][k]).sum()).collect();
        // v_{i−1} + v_{i+1} = b·v_i; read b off a nonzero coordinate of v_i.
        let k = if v[0] != 0 { 0 } else { 1 };
        let b = s[k] / v[k];
        debug_assert_eq!(s, alloc::vec![b * v[0], b * v[1]]);
        m.set(i, i, crate::exactla::q(-b));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalReport {
    /// Ray weights whose divisor has zero class in `H_{1,1}`.
    pub cycle_kernel: QSubspace,
    /// Kernel of the intersection matrix.
    pub intersection_kernel: QSubspace,
}

impl NumericalReport {
    pub fn pass(&self) -> bool {
        self.cycle_kernel == self.intersection_kernel
    }
}

/// Orbit cycle of a single invariant divisor `D_ρ`.
pub fn divisor_cycle(fan: &Fan, ray: usize, cx: &TropComplex) -> Result<TropCycle> {
    let w = MinkowskiWeight::new(fan, 1, WeightKind::Orbit, &[(alloc::vec![ray], Rational::one())])?;
    cycle_class(&w, cx)
}

pub fn numerical_kernel_check(fan: &Fan) -> Result<NumericalReport> {
    let inter = surface_intersection_matrix(fan)?;
    let cx = TropComplex::tautological(fan);
    let cc = CochainComplex::build(&cx, 1, &[])?;
    let r = fan.rays().len();
    let mut columns = Vec::with_capacity(r);
    for ray in 0..r {
        columns.push(divisor_cycle(fan, ray, &cx)?.to_vector(&cc)?);
    }
    let chains = QMatrix::from_columns(cc.dim(1), &columns);
    let boundary = cc.deltas[1].transpose();
    let system = chains.hstack(&boundary.neg());
    let projected: Vec<Vec<Rational>> = system.kernel_basis().basis().iter().map(|v| v[..r].to_vec()).collect();
    Ok(NumericalReport {
        cycle_kernel: QSubspace::from_vectors(r, &projected),
        intersection_kernel: inter.kernel_basis(),
    })
}
