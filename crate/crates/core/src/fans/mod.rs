//! Rational polyhedral fans, their orbit lattices and a zoo of standard examples.

mod cone;
mod zoo;

pub use cone::{primitive, Cone, Facet, OrbitLattice};
pub use zoo::{affine_space, blowup_p2, builtin, hirzebruch, projective_space, torus};

pub(crate) use cone::to_q;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::exactla::{QMatrix, Rational};
use crate::{Error, Result};

/// A fan: a finite set of cones closed under faces, meeting along common faces.
///
/// Cones are stored as sorted index sets into the global ray list, ordered by
/// dimension and then lexicographically. Index 0 is always the zero cone.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    geometry: Vec<Cone>,
    index: BTreeMap<Vec<usize>, usize>,
    maximal: Vec<usize>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Builds a fan from rays and generating cones (usually the maximal ones).
    ///
    /// All faces are generated and the fan axioms are checked.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, generators: &[Vec<usize>]) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::InvalidFan(format!("ray {i} has length {}, expected {rank}", r.len())));
            }
            if primitive(r).as_ref() != Some(r) {
                return Err(Error::InvalidFan(format!("ray {i} is not a primitive nonzero vector")));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("ray {i} is repeated")));
            }
        }
        let mut gens: Vec<(Vec<usize>, Cone)> = Vec::new();
        for g in generators {
            let mut set = g.clone();
            set.sort_unstable();
            set.dedup();
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone refers to missing ray {bad}")));
            }
            let gen_rays: Vec<Vec<i64>> = set.iter().map(|&i| rays[i].clone()).collect();
            let cone = Cone::new(rank, &gen_rays)
                .map_err(|e| Error::InvalidFan(format!("cone {set:?}: {e}")))?;
            if cone.rays().len() != set.len() {
                return Err(Error::InvalidFan(format!("cone {set:?} lists a ray that is not extremal")));
            }
            // Re-index so that local ray order matches the cone's sorted rays.
            let global: Vec<usize> = cone
                .rays()
                .iter()
                .map(|r| rays.iter().position(|s| s == r).expect("ray comes from the list"))
                .collect();
            gens.push((global, cone));
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                check_pair(&gens[i], &gens[j])?;
            }
        }
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        all.insert((0, Vec::new()));
        for (global, cone) in &gens {
            for face in cone.face_ray_sets() {
                let mut set: Vec<usize> = face.iter().map(|&k| global[k]).collect();
                set.sort_unstable();
                all.insert((set.len(), set));
            }
        }
        let cones: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
        if used.len() != rays.len() {
            let unused = (0..rays.len()).find(|i| !used.contains(i)).unwrap_or(0);
            return Err(Error::InvalidFan(format!("ray {unused} belongs to no cone")));
        }
        let geometry: Vec<Cone> = cones
            .iter()
            .map(|s| {
                let rs: Vec<Vec<i64>> = s.iter().map(|&i| rays[i].clone()).collect();
                Cone::new(rank, &rs).expect("faces of valid cones are valid")
            })
            .collect();
        let index: BTreeMap<Vec<usize>, usize> =
            cones.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let maximal = (0..cones.len())
            .filter(|&i| !cones.iter().any(|t| t.len() > cones[i].len() && is_subset(&cones[i], t)))
            .collect();
        Ok(Fan { rank, rays, cones, geometry, index, maximal })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// All cones as sorted ray-index sets.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.geometry[i]
    }

    pub fn cone_dim(&self, i: usize) -> usize {
        self.geometry[i].dim()
    }

    pub fn dim(&self) -> usize {
        self.maximal.iter().map(|&i| self.cone_dim(i)).max().unwrap_or(0)
    }

    /// Index of the cone with exactly these rays.
    pub fn find(&self, rays: &[usize]) -> Option<usize> {
        let mut s = rays.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    pub fn maximal_cones(&self) -> &[usize] {
        &self.maximal
    }

    pub fn cones_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cone_dim(i) == d).collect()
    }

    /// Whether cone `a` is a face of cone `b`.
    pub fn is_face(&self, a: usize, b: usize) -> bool {
        is_subset(&self.cones[a], &self.cones[b])
    }

    /// Cones having `a` as a face, including `a` itself.
    pub fn star(&self, a: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&b| self.is_face(a, b)).collect()
    }

    /// Number of cones of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.cones_of_dim(d).len()).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.geometry.iter().all(Cone::is_simplicial)
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|&i| self.geometry[i].is_smooth())
    }

    /// Whether the support is all of `N_R`: the fan is pure of full dimension and
    /// every codimension-one cone lies in exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        let n = self.rank;
        if self.maximal.iter().any(|&i| self.cone_dim(i) != n) {
            return false;
        }
        if n == 0 {
            return true;
        }
        self.cones_of_dim(n - 1).iter().all(|&w| {
            self.maximal.iter().filter(|&&m| self.is_face(w, m)).count() == 2
        })
    }

    /// Smallest cone containing `x`, i.e. the cone with `x` in its relative interior.
    pub fn locate(&self, x: &[Rational]) -> Option<usize> {
        (0..self.cones.len()).find(|&i| self.geometry[i].in_relint(x))
    }

    pub fn orbit_lattice(&self, i: usize) -> OrbitLattice {
        self.geometry[i].orbit_lattice()
    }

    /// Matrix `T` with `B_b = T·B_a` for faces `a ⪯ b`, i.e. the projection `N_a → N_b`.
    pub fn projection_between(&self, a: usize, b: usize) -> QMatrix {
        debug_assert!(self.is_face(a, b));
        let ba = self.orbit_lattice(a).projection();
        let bb = self.orbit_lattice(b).projection();
        ba.transpose()
            .solve_matrix(&bb.transpose())
            .expect("M∩b⊥ is a sublattice of M∩a⊥")
            .transpose()
    }

    /// Star subdivision at a primitive vector of the support.
    pub fn star_subdivision(&self, v: &[i64]) -> Result<Fan> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: v.len() });
        }
        let Some(v) = primitive(v) else {
            return Err(Error::RayOutsideSupport(v.to_vec()));
        };
        if self.rays.contains(&v) {
            return Ok(self.clone());
        }
        let Some(tau) = self.locate(&to_q(&v)) else {
            return Err(Error::RayOutsideSupport(v));
        };
        let mut rays = self.rays.clone();
        rays.push(v);
        let new = rays.len() - 1;
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for &m in &self.maximal {
            if !self.is_face(tau, m) {
                gens.push(self.cones[m].clone());
                continue;
            }
            let dm = self.cone_dim(m);
            for f in 0..self.cones.len() {
                if self.cone_dim(f) + 1 == dm && self.is_face(f, m) && !self.is_face(tau, f) {
                    let mut g = self.cones[f].clone();
                    g.push(new);
                    gens.push(g);
                }
            }
        }
        Fan::new(self.rank, rays, &gens)
    }

    /// The subfan of cones that do not contain cone `c`.
    pub fn without_star(&self, c: usize) -> Fan {
        let kept: Vec<usize> = (0..self.cones.len()).filter(|&s| !self.is_face(c, s)).collect();
        let used: Vec<usize> = kept.iter().flat_map(|&s| self.cones[s].iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let rays = used.iter().map(|&i| self.rays[i].clone()).collect();
        let gens: Vec<Vec<usize>> = kept
            .iter()
            .filter(|&&s| !kept.iter().any(|&t| t != s && self.is_face(s, t)))
            .map(|&s| self.cones[s].iter().map(|r| used.binary_search(r).expect("ray is used")).collect())
            .collect();
        Fan::new(self.rank, rays, &gens).expect("subfan of a fan")
    }

    /// The star of cone `c` as a fan in `N_c`.
    pub fn star_fan(&self, c: usize) -> Fan {
        let lattice = self.orbit_lattice(c);
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut gens = Vec::new();
        for &m in &self.maximal {
            if !self.is_face(c, m) {
                continue;
            }
            let mut g = Vec::new();
            for &r in &self.cones[m] {
                if self.cones[c].contains(&r) {
                    continue;
                }
                let v = primitive(&lattice.project(&self.rays[r])).expect("ray outside the face projects to a nonzero vector");
                let k = match rays.iter().position(|x| *x == v) {
                    Some(k) => k,
                    None => {
                        rays.push(v);
                        rays.len() - 1
                    }
                };
                g.push(k);
            }
            gens.push(g);
        }
        Fan::new(lattice.n_sigma_rank(), rays, &gens).expect("star of a cone is a fan")
    }

    /// Product fan in `N ⊕ N'`.
    pub fn product(&self, other: &Fan) -> Fan {
        let n = self.rank + other.rank;
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for r in &self.rays {
            let mut v = r.clone();
            v.resize(n, 0);
            rays.push(v);
        }
        for r in &other.rays {
            let mut v = alloc::vec![0; self.rank];
            v.extend(r.iter().copied());
            rays.push(v);
        }
        let off = self.rays.len();
        let mut gens = Vec::new();
        for &a in &self.maximal {
            for &b in &other.maximal {
                let mut g = self.cones[a].clone();
                g.extend(other.cones[b].iter().map(|i| i + off));
                gens.push(g);
            }
        }
        Fan::new(n, rays, &gens).expect("product of fans is a fan")
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn check_pair(a: &(Vec<usize>, Cone), b: &(Vec<usize>, Cone)) -> Result<()> {
    let common: Vec<usize> = a.0.iter().copied().filter(|x| b.0.contains(x)).collect();
    let local = |g: &(Vec<usize>, Cone)| {
        let mut v: Vec<usize> = common.iter().map(|x| g.0.iter().position(|y| y == x).unwrap()).collect();
        v.sort_unstable();
        v
    };
    let bad = || Error::InvalidFan(format!("cones {:?} and {:?} do not meet in a common face", a.0, b.0));
    if !a.1.face_ray_sets().contains(&local(a)) || !b.1.face_ray_sets().contains(&local(b)) {
        return Err(bad());
    }
    let shared = a.1.subcone(&local(a));
    if a.1.intersection_rays(&b.1).iter().all(|r| shared.contains_int(r)) {
        Ok(())
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn completeness() {
        assert!(builtin("projective_space(2)").unwrap().is_complete());
        let half_line = Fan::new(2, vec![vec![1, 0]], &[vec![0]]).unwrap();
        assert!(!half_line.is_complete());
        assert!(!builtin("affine_space(2)").unwrap().is_complete());
    }

    #[test]
    fn overlapping_cones_rejected() {
        let r = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]], &[vec![0, 1], vec![0, 2]]);
        assert!(matches!(r, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn lattice_rank_matches_dimension() {
        let f = builtin("hirzebruch(2)").unwrap();
        for i in 0..f.num_cones() {
            assert_eq!(f.orbit_lattice(i).n_sigma_rank() + f.cone_dim(i), f.rank());
        }
    }

    #[test]
    fn subdivisions() {
        let a2 = builtin("affine_space(2)").unwrap();
        let bl = a2.star_subdivision(&[1, 1]).unwrap();
        assert_eq!(bl.maximal_cones().len(), 2);
        assert!(bl.is_smooth());
        assert_eq!(a2.star_subdivision(&[1, 0]).unwrap(), a2);
        assert!(matches!(a2.star_subdivision(&[-1, 0]), Err(Error::RayOutsideSupport(_))));
        let p2 = builtin("p2").unwrap();
        let b = p2.star_subdivision(&[1, 1]).unwrap();
        assert_eq!((b.rays().len(), b.maximal_cones().len()), (4, 4));
        assert!(b.is_smooth() && b.is_complete());
    }

    #[test]
    fn stars_and_complements() {
        let p2 = builtin("p2").unwrap();
        let rho = p2.find(&[0]).unwrap();
        let open = p2.without_star(rho);
        assert_eq!((open.rays().len(), open.maximal_cones().len()), (2, 1));
        let star = p2.star_fan(rho);
        assert_eq!(star, builtin("p1").unwrap());
        let corner = p2.find(&[0, 1]).unwrap();
        assert_eq!(p2.star_fan(corner).num_cones(), 1);
    }

    #[test]
    fn projections_compose() {
        let f = builtin("p3").unwrap();
        let zero = 0;
        for b in 0..f.num_cones() {
            for c in f.star(b) {
                let direct = f.projection_between(zero, c);
                let composed = &f.projection_between(b, c) * &f.projection_between(zero, b);
                assert_eq!(direct, composed);
            }
        }
    }
}
