//! The weight spectral sequence of a smooth toric variety.
//!
//! `E₁^{p,q} = ⊕_{σ ∈ Σ(p)} ∧^{q−p}(M ∩ σ^⊥)_Q`, with `∧^l(M ∩ σ^⊥)` written in the
//! lexicographic wedge basis built from the Hermite basis of `M ∩ σ^⊥`. The
//! differential `d₁` contracts with the image of the new ray in `N_σ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::betti_table;
use crate::exactla::{binomial, compound, contraction, QMatrix};
use crate::fans::{to_q, Fan};
use crate::tropspace::TropComplex;
use crate::{Error, Result};

/// Sign attached to the block of `d₁` from `σ` to `τ = σ + ρ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// Every block carries `+1`. Contractions anticommute, so `d₁² = 0`.
    #[default]
    Unit,
    /// `(−1)^k` where `k` is the position of `ρ` among the sorted rays of `τ`.
    RayPosition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageBlock {
    pub cone: usize,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    /// Per-cone summands; listed on the first page only.
    pub blocks: Vec<PageBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSPage {
    pub level: u8,
    pub rank: usize,
    /// All `(p, q)` with `0 ≤ p, q ≤ rank`, sorted by `p` then `q`.
    pub entries: Vec<PageEntry>,
    /// `d₁ : E₁^{p,q} → E₁^{p+1,q}` keyed by `(p, q)`; first page only.
    pub differentials: Vec<((usize, usize), QMatrix)>,
}

impl SSPage {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.entries.iter().find(|e| e.p == p && e.q == q).map(|e| e.dim).unwrap_or(0)
    }

    pub fn differential(&self, p: usize, q: usize) -> Option<&QMatrix> {
        self.differentials.iter().find(|(k, _)| *k == (p, q)).map(|(_, m)| m)
    }

    /// Whether consecutive differentials compose to zero.
    pub fn d1_squares_to_zero(&self) -> bool {
        self.differentials.iter().all(|((p, q), a)| match self.differential(p + 1, *q) {
            Some(b) if b.cols() == a.rows() && a.rows() > 0 => (b * a).is_zero(),
            _ => true,
        })
    }
}

fn require_smooth(fan: &Fan) -> Result<()> {
    if fan.is_smooth() {
        Ok(())
    } else {
        Err(Error::NotSmooth)
    }
}

fn blocks(fan: &Fan, p: usize, q: usize) -> Vec<PageBlock> {
    let mut out = Vec::new();
    if q < p {
        return out;
    }
    let mut offset = 0;
    for s in fan.cones_of_dim(p) {
        let dim = binomial(fan.rank() - p, q - p);
        out.push(PageBlock { cone: s, offset, dim });
        offset += dim;
    }
    out
}

pub fn e1_page(fan: &Fan) -> Result<SSPage> {
    e1_page_with(fan, SignConvention::Unit)
}

pub fn e1_page_with(fan: &Fan, sign: SignConvention) -> Result<SSPage> {
    require_smooth(fan)?;
    let n = fan.rank();
    let mut entries = Vec::new();
    let mut differentials = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let b = blocks(fan, p, q);
            entries.push(PageEntry { p, q, dim: b.iter().map(|x| x.dim).sum(), blocks: b });
            differentials.push(((p, q), d1_unchecked(fan, p, q, sign)));
        }
    }
    Ok(SSPage { level: 1, rank: n, entries, differentials })
}

pub fn d1(fan: &Fan, p: usize, q: usize) -> Result<QMatrix> {
    d1_with(fan, p, q, SignConvention::Unit)
}

pub fn d1_with(fan: &Fan, p: usize, q: usize, sign: SignConvention) -> Result<QMatrix> {
    require_smooth(fan)?;
    Ok(d1_unchecked(fan, p, q, sign))
}

fn d1_unchecked(fan: &Fan, p: usize, q: usize, sign: SignConvention) -> QMatrix {
    let src = blocks(fan, p, q);
    let dst = blocks(fan, p + 1, q);
    let rows = dst.iter().map(|b| b.dim).sum();
    let cols = src.iter().map(|b| b.dim).sum();
    let mut m = QMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return m;
    }
    let l = q - p;
    for a in &src {
        let lattice = fan.orbit_lattice(a.cone);
        let k = lattice.n_sigma_rank();
        for b in &dst {
            if !fan.is_face(a.cone, b.cone) {
                continue;
            }
            let tau = &fan.cones()[b.cone];
            let sigma = &fan.cones()[a.cone];
            let pos = tau.iter().position(|r| !sigma.contains(r)).expect("τ has one more ray");
            let normal = to_q(&lattice.project(&fan.rays()[tau[pos]]));
            let contracted = contraction(k, l, &normal);
            // Express the result in the wedge basis of M ∩ τ^⊥ sitting inside ∧(M ∩ σ^⊥).
            let t = fan.projection_between(a.cone, b.cone);
            let embed = compound(&t.transpose(), l - 1);
            let mut block = embed.solve_matrix(&contracted).expect("contraction lands in ∧(M∩τ⊥)");
            if sign == SignConvention::RayPosition && pos % 2 == 1 {
                block = block.neg();
            }
            m.set_block(b.offset, a.offset, &block);
        }
    }
    m
}

pub fn e2_page(fan: &Fan) -> Result<SSPage> {
    e2_page_with(fan, SignConvention::Unit)
}

/// `E₂^{p,q} = ker d₁(p,q) / im d₁(p−1,q)`.
pub fn e2_page_with(fan: &Fan, sign: SignConvention) -> Result<SSPage> {
    let e1 = e1_page_with(fan, sign)?;
    let n = fan.rank();
    let rank_of = |p: usize, q: usize| e1.differential(p, q).map(|m| m.rank()).unwrap_or(0);
    let mut entries = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let incoming = if p > 0 { rank_of(p - 1, q) } else { 0 };
            let kernel = e1.dim(p, q) - rank_of(p, q);
            // With a wrong sign the incoming image need not lie in the kernel.
            let dim = kernel.saturating_sub(incoming);
            entries.push(PageEntry { p, q, dim, blocks: Vec::new() });
        }
    }
    Ok(SSPage { level: 2, rank: n, entries, differentials: Vec::new() })
}

/// One row of a comparison table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonEntry {
    pub p: usize,
    pub q: usize,
    pub e2: usize,
    /// `dim H^{q,p}`.
    pub trop: usize,
}

impl ComparisonEntry {
    pub fn pass(&self) -> bool {
        self.e2 == self.trop
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub entries: Vec<ComparisonEntry>,
}

impl Comparison {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(ComparisonEntry::pass)
    }
}

/// Compares `E₂^{p,q}` with `H^{q,p}` of the tautological complex.
pub fn compare_with_trop(fan: &Fan) -> Result<Comparison> {
    let e2 = e2_page(fan)?;
    let h = betti_table(&TropComplex::tautological(fan))?;
    Ok(compare_tables(&e2, &h))
}

/// Comparison against a precomputed table `h[p][q] = dim H^{p,q}`.
pub fn compare_tables(e2: &SSPage, h: &[Vec<usize>]) -> Comparison {
    let n = e2.rank;
    let mut entries = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            entries.push(ComparisonEntry { p, q, e2: e2.dim(p, q), trop: h[q][p] });
        }
    }
    Comparison { entries }
}

/// `h_k = Σ_{i ≥ k} (−1)^{i−k} C(i,k) f_{n−i}` where `f_j` counts `j`-dimensional cones.
pub fn h_vector(fan: &Fan) -> Vec<i64> {
    let n = fan.rank();
    let f: Vec<i64> = (0..=n).map(|d| fan.cones_of_dim(d).len() as i64).collect();
    (0..=n)
        .map(|k| {
            (k..=n)
                .map(|i| {
                    let term = binomial(i, k) as i64 * f[n - i];
                    if (i - k) % 2 == 0 { term } else { -term }
                })
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `Σ_{p+q=k} dim E₂^{p,q}` for `k = 0..=2n`.
    pub from_e2: Vec<i64>,
    /// Betti numbers from the h-vector.
    pub from_h_vector: Vec<i64>,
}

impl EulerReport {
    pub fn pass(&self) -> bool {
        self.from_e2 == self.from_h_vector
    }
}

pub fn euler_consistency(fan: &Fan) -> Result<EulerReport> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let e2 = e2_page(fan)?;
    Ok(euler_report(fan, &e2))
}

pub fn euler_report(fan: &Fan, e2: &SSPage) -> EulerReport {
    let n = fan.rank();
    let mut from_e2 = vec![0i64; 2 * n + 1];
    for e in &e2.entries {
        from_e2[e.p + e.q] += e.dim as i64;
    }
    let mut from_h_vector = vec![0i64; 2 * n + 1];
    for (k, h) in h_vector(fan).into_iter().enumerate() {
        from_h_vector[2 * k] = h;
    }
    EulerReport { from_e2, from_h_vector }
}

/// Alternating sums around the sequence of the open complement `T_Ξ` of a
/// boundary divisor `D_ρ ≅ T_Λ` in `T_Σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySequence {
    /// `χ_p(Σ) − χ_p(Ξ) + χ_{p−1}(Λ)` from `E₂`, per `p`, where `χ_p = Σ_q (−1)^q h^{p,q}`.
    pub e2_defects: Vec<i64>,
    /// The same sums from tropical cohomology.
    pub trop_defects: Vec<i64>,
}

impl BoundarySequence {
    pub fn pass(&self) -> bool {
        self.e2_defects.iter().chain(&self.trop_defects).all(|&x| x == 0)
    }
}

pub fn boundary_sequence(fan: &Fan, ray: usize) -> Result<BoundarySequence> {
    let rho = fan
        .find(&[ray])
        .ok_or_else(|| Error::InvalidFan(alloc::format!("no ray with index {ray}")))?;
    let open = fan.without_star(rho);
    let divisor = fan.star_fan(rho);
    let n = fan.rank();
    let from_e2 = |f: &Fan| -> Result<Vec<Vec<usize>>> {
        let e2 = e2_page(f)?;
        Ok((0..=f.rank()).map(|p| (0..=f.rank()).map(|q| e2.dim(q, p)).collect()).collect())
    };
    let from_trop = |f: &Fan| betti_table(&TropComplex::tautological(f));
    let defects = |whole: &[Vec<usize>], open: &[Vec<usize>], div: &[Vec<usize>]| -> Vec<i64> {
        (0..=n)
            .map(|p| {
                let d = if p > 0 { chi(div, p - 1) } else { 0 };
                chi(whole, p) - chi(open, p) + d
            })
            .collect()
    };
    Ok(BoundarySequence {
        e2_defects: defects(&from_e2(fan)?, &from_e2(&open)?, &from_e2(&divisor)?),
        trop_defects: defects(&from_trop(fan)?, &from_trop(&open)?, &from_trop(&divisor)?),
    })
}

fn chi(h: &[Vec<usize>], p: usize) -> i64 {
    h.get(p)
        .map(|row| row.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::builtin;

    fn dims(page: &SSPage) -> Vec<(usize, usize, usize)> {
        page.entries.iter().filter(|e| e.dim > 0).map(|e| (e.p, e.q, e.dim)).collect()
    }

    #[test]
    fn first_pages() {
        let p1 = builtin("p1").unwrap();
        assert_eq!(dims(&e1_page(&p1).unwrap()), vec![(0, 0, 1), (0, 1, 1), (1, 1, 2)]);
        let p2 = e1_page(&builtin("p2").unwrap()).unwrap();
        assert_eq!(
            dims(&p2),
            vec![(0, 0, 1), (0, 1, 2), (0, 2, 1), (1, 1, 3), (1, 2, 3), (2, 2, 3)]
        );
        let t = e1_page(&builtin("torus(3)").unwrap()).unwrap();
        assert_eq!(dims(&t), vec![(0, 0, 1), (0, 1, 3), (0, 2, 3), (0, 3, 1)]);
    }

    #[test]
    fn differentials() {
        let p1 = builtin("p1").unwrap();
        let d = d1(&p1, 0, 1).unwrap();
        assert_eq!((d.rows(), d.cols(), d.rank()), (2, 1, 1));
        assert_eq!(d.get(0, 0), &-d.get(1, 0).clone());
        let p2 = builtin("p2").unwrap();
        assert_eq!(d1(&p2, 0, 1).unwrap().rank(), 2);
        assert!((&d1(&p2, 1, 2).unwrap() * &d1(&p2, 0, 2).unwrap()).is_zero());
    }

    #[test]
    fn second_pages() {
        assert_eq!(dims(&e2_page(&builtin("p1").unwrap()).unwrap()), vec![(0, 0, 1), (1, 1, 1)]);
        assert_eq!(
            dims(&e2_page(&builtin("p2").unwrap()).unwrap()),
            vec![(0, 0, 1), (1, 1, 1), (2, 2, 1)]
        );
        assert_eq!(
            dims(&e2_page(&builtin("torus(2)").unwrap()).unwrap()),
            vec![(0, 0, 1), (0, 1, 2), (0, 2, 1)]
        );
    }

    #[test]
    fn ray_position_sign_breaks_square() {
        let p2 = builtin("p2").unwrap();
        let a = d1_with(&p2, 0, 2, SignConvention::RayPosition).unwrap();
        let b = d1_with(&p2, 1, 2, SignConvention::RayPosition).unwrap();
        assert!(!(&b * &a).is_zero());
        assert!(!e1_page_with(&p2, SignConvention::RayPosition).unwrap().d1_squares_to_zero());
        assert!(e1_page(&p2).unwrap().d1_squares_to_zero());
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_vector(&builtin("p2").unwrap()), vec![1, 1, 1]);
        assert_eq!(h_vector(&builtin("p1xp1").unwrap()), vec![1, 2, 1]);
        assert_eq!(h_vector(&builtin("blowup_p2").unwrap()), vec![1, 2, 1]);
        let r = euler_consistency(&builtin("p2").unwrap()).unwrap();
        assert_eq!(r.from_h_vector, vec![1, 0, 1, 0, 1]);
        assert!(r.pass());
        assert_eq!(euler_consistency(&builtin("affine_space(2)").unwrap()), Err(Error::NotComplete));
    }

    #[test]
    fn rejects_singular() {
        let f = Fan::new(2, vec![vec![1, 0], vec![1, 2]], &[vec![0, 1]]).unwrap();
        assert_eq!(e1_page(&f), Err(Error::NotSmooth));
    }

    #[test]
    fn comparisons() {
        for name in ["p1", "p2", "affine_space(2)", "torus(2)"] {
            assert!(compare_with_trop(&builtin(name).unwrap()).unwrap().pass(), "{name}");
        }
    }

    #[test]
    fn boundary_sequences() {
        for name in ["p1", "p2", "p1xp1", "hirzebruch(2)"] {
            let f = builtin(name).unwrap();
            for r in 0..f.rays().len() {
                let s = boundary_sequence(&f, r).unwrap();
                assert!(s.pass(), "{name} ray {r}: {s:?}");
            }
        }
    }
}
