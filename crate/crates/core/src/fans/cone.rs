use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactla::{integer_kernel, q, sign, smith_normal_form, subsets, QMatrix, QSubspace, Rational, ZMatrix};
use crate::{Error, Result};

/// A facet of a cone: an inward normal together with the rays it vanishes on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub rays: Vec<usize>,
}

/// A strongly convex rational polyhedral cone, stored by its extremal rays.
///
/// Rays are primitive and sorted lexicographically; the H-representation
/// (linear equations of the span plus facet inequalities) is computed once.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<i64>>,
    equations: Vec<Vec<Rational>>,
    facets: Vec<Facet>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.rays == other.rays
    }
}

impl Eq for Cone {}

pub(crate) fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    Some(v.iter().map(|&x| x / g).collect())
}

pub(crate) fn bigint_vec_to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("lattice coordinate overflows i64")).collect()
}

impl Cone {
    pub fn zero(ambient_rank: usize) -> Self {
        Cone {
            ambient_rank,
            rays: Vec::new(),
            equations: QSubspace::full(ambient_rank).basis().to_vec(),
            facets: Vec::new(),
        }
    }

    /// Cone generated by `generators`, reduced to its primitive extremal rays.
    ///
    /// Fails if a generator has the wrong length or the cone contains a line.
    pub fn new(ambient_rank: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut prims = BTreeSet::new();
        for g in generators {
            if g.len() != ambient_rank {
                return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
            }
            if let Some(p) = primitive(g) {
                prims.insert(p);
            }
        }
        let all: Vec<Vec<i64>> = prims.into_iter().collect();
        let hrep = Self::hrep(ambient_rank, &all);
        let cone = Cone { ambient_rank, rays: all, equations: hrep.0, facets: hrep.1 };
        if !cone.is_pointed() {
            return Err(Error::InvalidCone("cone contains a line".into()));
        }
        let extremal: Vec<Vec<i64>> = (0..cone.rays.len())
            .filter(|&i| cone.is_extremal(i))
            .map(|i| cone.rays[i].clone())
            .collect();
        if extremal.len() == cone.rays.len() {
            return Ok(cone);
        }
        let hrep = Self::hrep(ambient_rank, &extremal);
        Ok(Cone { ambient_rank, rays: extremal, equations: hrep.0, facets: hrep.1 })
    }

    fn hrep(n: usize, rays: &[Vec<i64>]) -> (Vec<Vec<Rational>>, Vec<Facet>) {
        let qrays: Vec<Vec<Rational>> = rays.iter().map(|r| to_q(r)).collect();
        let span = QSubspace::from_vectors(n, &qrays);
        let equations = span.annihilator().basis().to_vec();
        let d = span.dim();
        let mut facets: Vec<Facet> = Vec::new();
        if d == 0 {
            return (equations, facets);
        }
        for s in subsets(rays.len(), d - 1) {
            let mut rows: Vec<Vec<Rational>> = s.iter().map(|&i| qrays[i].clone()).collect();
            if QSubspace::from_vectors(n, &rows).dim() != d - 1 {
                continue;
            }
            rows.extend(equations.iter().cloned());
            let k = QMatrix::from_rows(n, &rows).kernel_basis();
            debug_assert_eq!(k.dim(), 1);
            let mut u = k.basis()[0].clone();
            let signs: Vec<i32> = qrays.iter().map(|r| sign(&dot(&u, r))).collect();
            if signs.iter().any(|&x| x > 0) && signs.iter().any(|&x| x < 0) {
                continue;
            }
            if signs.iter().all(|&x| x <= 0) {
                u = u.iter().map(|x| -x).collect();
            }
            let tight: Vec<usize> = (0..rays.len()).filter(|&i| signs[i] == 0).collect();
            if tight.len() == rays.len() {
                continue;
            }
            if facets.iter().all(|f| f.rays != tight) {
                facets.push(Facet { normal: u, rays: tight });
            }
        }
        (equations, facets)
    }

    fn is_pointed(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        let mut rows = self.equations.clone();
        rows.extend(self.facets.iter().map(|f| f.normal.clone()));
        QMatrix::from_rows(self.ambient_rank, &rows).rank() == self.ambient_rank
    }

    fn is_extremal(&self, i: usize) -> bool {
        let mut rows = self.equations.clone();
        rows.extend(self.facets.iter().filter(|f| f.rays.contains(&i)).map(|f| f.normal.clone()));
        QMatrix::from_rows(self.ambient_rank, &rows).rank() + 1 == self.ambient_rank
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn rays_q(&self) -> Vec<Vec<Rational>> {
        self.rays.iter().map(|r| to_q(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Linear forms cutting out the span.
    pub fn equations(&self) -> &[Vec<Rational>] {
        &self.equations
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn span(&self) -> QSubspace {
        QSubspace::from_vectors(self.ambient_rank, &self.rays_q())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(&f.normal, x).is_negative())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.contains(&to_q(x))
    }

    /// Whether `x` lies in the relative interior.
    pub fn in_relint(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(&f.normal, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_int(r))
    }

    /// All faces as sets of indices into `rays()`, sorted by size then lexicographically.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        if self.is_simplicial() {
            for k in 0..=self.rays.len() {
                out.extend(subsets(self.rays.len(), k).into_iter().map(|s| (s.len(), s)));
            }
        } else {
            for chosen in 0..(1u64 << self.facets.len()) {
                let set: Vec<usize> = (0..self.rays.len())
                    .filter(|i| {
                        (0..self.facets.len())
                            .filter(|k| chosen >> k & 1 == 1)
                            .all(|k| self.facets[k].rays.contains(i))
                    })
                    .collect();
                out.insert((set.len(), set));
            }
        }
        out.into_iter().map(|(_, s)| s).collect()
    }

    /// All faces, including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        self.face_ray_sets().iter().map(|s| self.subcone(s)).collect()
    }

    /// The face spanned by the given rays (which must form a face).
    pub(crate) fn subcone(&self, idx: &[usize]) -> Cone {
        let rays: Vec<Vec<i64>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
        let (equations, facets) = Self::hrep(self.ambient_rank, &rays);
        Cone { ambient_rank: self.ambient_rank, rays, equations, facets }
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        let Some(idx) = self
            .rays
            .iter()
            .map(|r| other.rays.iter().position(|s| s == r))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let mut idx = idx;
        idx.sort_unstable();
        other.face_ray_sets().contains(&idx)
    }

    /// Whether the rays extend to a Z-basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        let rows: Vec<Vec<BigInt>> =
            self.rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&ZMatrix::from_rows(self.ambient_rank, &rows));
        let divs = snf.divisors();
        divs.len() == self.rays.len() && divs.iter().all(|d| d.is_one())
    }

    pub fn orbit_lattice(&self) -> OrbitLattice {
        let rows: Vec<Vec<BigInt>> =
            self.rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let m = ZMatrix::from_rows(self.ambient_rank, &rows);
        let basis = integer_kernel(&m).iter().map(|v| bigint_vec_to_i64(v)).collect();
        OrbitLattice { ambient_rank: self.ambient_rank, m_perp_basis: basis }
    }

    /// Extreme rays of the intersection with `other`, as primitive vectors.
    pub fn intersection_rays(&self, other: &Cone) -> Vec<Vec<i64>> {
        let n = self.ambient_rank;
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let lin = QMatrix::from_rows(n, &eqs).kernel_basis();
        let k = lin.dim();
        if k == 0 {
            return Vec::new();
        }
        let ineqs: Vec<&Vec<Rational>> =
            self.facets.iter().chain(other.facets.iter()).map(|f| &f.normal).collect();
        let feasible = |x: &[Rational]| ineqs.iter().all(|u| !dot(u, x).is_negative());
        let mut found = BTreeSet::new();
        for s in subsets(ineqs.len(), k - 1) {
            let mut rows = eqs.clone();
            rows.extend(s.iter().map(|&i| ineqs[i].clone()));
            let ker = QMatrix::from_rows(n, &rows).kernel_basis();
            if ker.dim() != 1 {
                continue;
            }
            let v = ker.basis()[0].clone();
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            for cand in [v, neg] {
                if feasible(&cand) {
                    let ints = crate::exactla::primitive_integer(&cand).expect("nonzero kernel vector");
                    found.insert(bigint_vec_to_i64(&ints));
                }
            }
        }
        found.into_iter().collect()
    }
}

/// The lattice `M ∩ σ^⊥` of a cone σ and the dual quotient `N_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLattice {
    ambient_rank: usize,
    m_perp_basis: Vec<Vec<i64>>,
}

impl OrbitLattice {
    /// Z-basis of `M ∩ σ^⊥`, in Hermite normal form.
    pub fn m_perp_basis(&self) -> &[Vec<i64>] {
        &self.m_perp_basis
    }

    /// Rank of `N_σ`, which equals the rank of `M ∩ σ^⊥`.
    pub fn n_sigma_rank(&self) -> usize {
        self.m_perp_basis.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Basis rows as a rational matrix; it maps `N` onto `N_σ` in these coordinates.
    pub fn projection(&self) -> QMatrix {
        QMatrix::from_rows(self.ambient_rank, &self.m_perp_basis.iter().map(|r| to_q(r)).collect::<Vec<_>>())
    }

    /// Image of a vector of `N` in `N_σ`.
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        self.m_perp_basis.iter().map(|m| m.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn faces_of_simplicial_cones() {
        let c = Cone::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(c.faces().len(), 4);
        assert_eq!(Cone::zero(2).faces().len(), 1);
        let c3 = Cone::new(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(c3.faces().len(), 8);
    }

    #[test]
    fn square_based_cone() {
        let c = Cone::new(
            3,
            &[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        // 0, 4 rays, 4 edges-faces, itself
        assert_eq!(c.faces().len(), 10);
    }

    #[test]
    fn rejects_lines() {
        assert!(Cone::new(2, &[vec![1, 0], vec![-1, 0]]).is_err());
        assert!(Cone::new(2, &[vec![1, 0], vec![-1, 1], vec![0, -1]]).is_err());
    }

    #[test]
    fn smoothness() {
        assert!(Cone::new(2, &[vec![1, 0], vec![0, 1]]).unwrap().is_smooth());
        assert!(!Cone::new(2, &[vec![1, 0], vec![1, 2]]).unwrap().is_smooth());
        assert!(Cone::zero(2).is_smooth());
    }

    #[test]
    fn orbit_lattices() {
        assert_eq!(Cone::zero(2).orbit_lattice().m_perp_basis(), &[vec![1, 0], vec![0, 1]]);
        let c = Cone::new(2, &[vec![1, 0]]).unwrap();
        assert_eq!(c.orbit_lattice().m_perp_basis(), &[vec![0, 1]]);
        let c = Cone::new(2, &[vec![1, 1]]).unwrap();
        assert_eq!(c.orbit_lattice().m_perp_basis(), &[vec![1, -1]]);
    }

    #[test]
    fn intersections() {
        let a = Cone::new(2, &[vec![1, 0], vec![1, 2]]).unwrap();
        let b = Cone::new(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.intersection_rays(&b), vec![vec![1, 1], vec![1, 2]]);
        let c = Cone::new(2, &[vec![-1, 0]]).unwrap();
        assert!(a.intersection_rays(&c).is_empty());
    }

    #[test]
    fn membership() {
        let c = Cone::new(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(c.contains_int(&[2, 3]));
        assert!(!c.contains_int(&[-1, 3]));
        assert!(c.in_relint(&to_q(&[1, 1])));
        assert!(!c.in_relint(&to_q(&[1, 0])));
        let r = Cone::new(2, &[vec![1, 0]]).unwrap();
        assert!(r.in_relint(&to_q(&[3, 0])));
        assert!(!r.contains_int(&[1, 1]));
    }
}
