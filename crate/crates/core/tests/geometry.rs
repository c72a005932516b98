use proptest::prelude::*;
use trophodge_core::cohomology::{betti_table, build_cochain_complex, cech_dims, CECH_CELL_LIMIT};
use trophodge_core::cycles::{chow_dim, numerical_kernel_check, surface_intersection_matrix};
use trophodge_core::exactla::q;
use trophodge_core::fans::builtin;
use trophodge_core::tropspace::TropComplex;
use trophodge_core::weightss::{compare_with_trop, e1_page, euler_consistency, h_vector};
use trophodge_core::Fan;

/// Blows up along faces chosen by `picks`: each pick selects a maximal cone and a subset of
/// at least two of its rays, and the fan is subdivided at the sum of those rays.
fn subdivide(fan: &Fan, picks: &[(usize, u32)]) -> Fan {
    let mut f = fan.clone();
    for &(cone, mask) in picks {
        let top = &f.cones()[f.maximal_cones()[cone % f.maximal_cones().len()]];
        let mut chosen: Vec<usize> = top.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
        if chosen.len() < 2 {
            chosen = top.clone();
        }
        let v: Vec<i64> = (0..f.rank()).map(|k| chosen.iter().map(|&r| f.rays()[r][k]).sum()).collect();
        f = f.star_subdivision(&v).unwrap();
    }
    f
}

fn picks(max: usize) -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..64, 0u32..16), 1..=max)
}

fn euler_characteristic_of_link(fan: &Fan) -> i64 {
    fan.f_vector().iter().enumerate().skip(1).map(|(d, &c)| if d % 2 == 1 { c as i64 } else { -(c as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subdivisions_stay_smooth_and_complete(base in prop::sample::select(vec!["p2", "p1xp1", "p3", "hirzebruch(2)"]), ps in picks(3)) {
        let f = subdivide(&builtin(base).unwrap(), &ps);
        prop_assert!(f.is_smooth());
        prop_assert!(f.is_complete());
        // The link of the origin is a sphere.
        let n = f.rank() as i64;
        prop_assert_eq!(euler_characteristic_of_link(&f), 1 + if n % 2 == 0 { -1 } else { 1 });
        // Dehn-Sommerville symmetry.
        let h = h_vector(&f);
        let mut rev = h.clone();
        rev.reverse();
        prop_assert_eq!(h, rev);
        for c in 0..f.num_cones() {
            let cone = f.cone(c);
            prop_assert_eq!(f.orbit_lattice(c).n_sigma_rank() + cone.dim(), f.rank());
            let rays = &f.cones()[c];
            for mask in 0u32..1 << rays.len() {
                let face: Vec<usize> = rays.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
                prop_assert!(f.find(&face).is_some_and(|i| f.is_face(i, c)));
            }
            prop_assert_eq!(cone.faces().len(), 1 << rays.len());
        }
    }

    #[test]
    fn refinement_invariance(base in prop::sample::select(vec!["p2", "hirzebruch(1)", "p1xp1"]), ps in picks(2)) {
        let f = builtin(base).unwrap();
        let expected = betti_table(&TropComplex::tautological(&f)).unwrap();
        let refined = TropComplex::fan_structure(&f, &subdivide(&f, &ps)).unwrap();
        let h = betti_table(&refined).unwrap();
        prop_assert_eq!(&h, &expected);
        if refined.len() <= CECH_CELL_LIMIT {
            for (p, row) in h.iter().enumerate() {
                let dims = cech_dims(&refined, p).unwrap();
                let padded: Vec<usize> = (0..row.len()).map(|q| dims.get(q).copied().unwrap_or(0)).collect();
                prop_assert_eq!(&padded, row);
            }
        }
    }

    #[test]
    fn face_maps_compose_and_delta_squares_to_zero(base in prop::sample::select(vec!["p2", "affine_space(2)", "torus(2)"]), ps in picks(2)) {
        let f = builtin(base).unwrap();
        let structure = if f.is_complete() { f.clone() } else { builtin("p1xp1").unwrap() };
        let cx = TropComplex::fan_structure(&f, &subdivide(&structure, &ps)).unwrap();
        for c in 0..cx.len() {
            for &(b, _) in cx.faces(c) {
                for &(a, _) in cx.faces(b) {
                    for p in 0..=2 {
                        let via = &cx.face_map(a, b, p).unwrap() * &cx.face_map(b, c, p).unwrap();
                        prop_assert_eq!(cx.face_map(a, c, p).unwrap(), via);
                    }
                }
            }
        }
        for p in 0..=2 {
            let cc = build_cochain_complex(&cx, p).unwrap();
            for w in cc.deltas.windows(2) {
                if w[0].rows() > 0 && w[1].cols() == w[0].rows() {
                    prop_assert!((&w[1] * &w[0]).is_zero());
                }
            }
        }
    }

    #[test]
    fn non_complete_refinement_invariance(base in prop::sample::select(vec!["affine_space(2)", "torus(2)"]), ps in picks(2)) {
        let f = builtin(base).unwrap();
        let expected = betti_table(&TropComplex::tautological(&f)).unwrap();
        let cube = subdivide(&builtin("p1xp1").unwrap(), &ps);
        prop_assert_eq!(betti_table(&TropComplex::fan_structure(&f, &cube).unwrap()).unwrap(), expected);
    }

    #[test]
    fn comparison_on_random_blowups(base in prop::sample::select(vec!["p2", "p1xp1", "hirzebruch(3)"]), ps in picks(3)) {
        let f = subdivide(&builtin(base).unwrap(), &ps);
        prop_assert!(compare_with_trop(&f).unwrap().pass());
        prop_assert!(euler_consistency(&f).unwrap().pass());
        prop_assert!(e1_page(&f).unwrap().d1_squares_to_zero());
        let rays = f.rays().len();
        prop_assert_eq!(chow_dim(&f, 1).unwrap(), rays - 2);
        let h = betti_table(&TropComplex::tautological(&f)).unwrap();
        prop_assert_eq!(h[1][1], rays - 2);
    }

    #[test]
    fn intersection_matrix_oracles(base in prop::sample::select(vec!["p2", "p1xp1", "hirzebruch(2)"]), ps in picks(3)) {
        let f = subdivide(&builtin(base).unwrap(), &ps);
        let m = surface_intersection_matrix(&f).unwrap();
        let r = f.rays().len();
        // Principal divisors are numerically trivial.
        for e in [[1i64, 0], [0, 1]] {
            let d: Vec<_> = f.rays().iter().map(|v| q(v[0] * e[0] + v[1] * e[1])).collect();
            prop_assert!(m.mul_vec(&d).iter().all(|x| x == &q(0)));
        }
        // Noether: K² + e = 12 with K = −ΣD_i and e = #rays.
        let mut k2 = q(0);
        for i in 0..r {
            for j in 0..r {
                k2 += m.get(i, j);
            }
        }
        prop_assert_eq!(k2 + q(r as i64), q(12));
        prop_assert!(numerical_kernel_check(&f).unwrap().pass());
    }
}

#[test]
fn blowup_of_p2_by_command() {
    let bl = builtin("p2").unwrap().star_subdivision(&[1, 1]).unwrap();
    assert_eq!(bl, builtin("blowup_p2").unwrap());
    assert_eq!(bl.f_vector(), vec![1, 4, 4]);
}
