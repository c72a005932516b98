use super::*;
use crate::exactla::binomial;
use crate::fans::{builtin, Fan};
use alloc::vec;

fn table(name: &str) -> Vec<Vec<usize>> {
    betti_table(&TropComplex::tautological(&builtin(name).unwrap())).unwrap()
}

fn line() -> TropComplex {
    crate::tropspace::tests_support::tropical_line()
}

#[test]
fn projective_line() {
    assert_eq!(table("p1"), vec![vec![1, 0], vec![0, 1]]);
}

#[test]
fn projective_plane() {
    assert_eq!(table("p2"), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
}

#[test]
fn tori() {
    for n in 1..=3 {
        let h = table(&alloc::format!("torus({n})"));
        for p in 0..=n {
            assert_eq!(h[p][0], binomial(n, p));
            assert!(h[p][1..].iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn line_blocks() {
    let cx = line();
    let c = build_cochain_complex(&cx, 1).unwrap();
    assert_eq!((c.dim(0), c.dim(1)), (2, 3));
    assert_eq!(c.deltas[0].rank(), 2);
    assert_eq!(c.betti_row(), vec![0, 1, 0]);
    for q in 0..=2 {
        assert_eq!(cech_oracle(&cx, 1, q).unwrap(), c.betti_row()[q]);
    }
}

#[test]
fn p1_blocks() {
    let cx = TropComplex::tautological(&builtin("p1").unwrap());
    let c = build_cochain_complex(&cx, 1).unwrap();
    assert_eq!(c.blocks[0].iter().map(|b| b.dim).collect::<Vec<_>>(), vec![1, 0, 0]);
    assert_eq!((c.deltas[0].rows(), c.deltas[0].cols()), (2, 1));
}

#[test]
fn coboundary_squares_to_zero() {
    for name in ["p1", "p2", "p3", "p1xp1", "hirzebruch(3)", "blowup_p2", "affine_space(3)", "p1xp1xp1"] {
        let cx = TropComplex::tautological(&builtin(name).unwrap());
        for p in 0..=cx.fan().rank() {
            let c = build_cochain_complex(&cx, p).unwrap();
            for q in 0..c.top() {
                assert!((&c.deltas[q + 1] * &c.deltas[q]).is_zero(), "{name} p={p} q={q}");
            }
        }
    }
}

#[test]
fn representatives_are_cocycles() {
    let cx = TropComplex::tautological(&builtin("p1xp1").unwrap());
    let c = build_cochain_complex(&cx, 1).unwrap();
    let h = c.cohomology(1);
    assert_eq!(h.dim, 2);
    assert_eq!(h.representatives.len(), 2);
    for r in &h.representatives {
        assert!(c.deltas[1].mul_vec(r).iter().all(num_traits::Zero::is_zero));
    }
}

#[test]
fn connected_p0() {
    for name in ["p2", "affine_space(2)", "torus(2)", "hirzebruch(1)"] {
        let cx = TropComplex::tautological(&builtin(name).unwrap());
        assert_eq!(cohomology(&cx, 0, 0).unwrap().dim, 1);
        assert_eq!(cech_oracle(&cx, 0, 0).unwrap(), 1);
    }
}

#[test]
fn relative_groups() {
    let cx = TropComplex::tautological(&builtin("p1").unwrap());
    let all: Vec<usize> = (0..cx.len()).collect();
    for p in 0..=1 {
        for q in 0..=1 {
            assert_eq!(relative_cohomology(&cx, &all, p, q).unwrap().dim, 0);
            assert_eq!(relative_cohomology(&cx, &[], p, q).unwrap().dim, cohomology(&cx, p, q).unwrap().dim);
        }
    }
    let points: Vec<usize> = cx.cells().iter().filter(|c| c.sedentarity != 0).map(|c| c.id).collect();
    assert_eq!(relative_cohomology(&cx, &points, 1, 1).unwrap().dim, 1);
    let ray = cx.cell_of_pair(0, 1).unwrap();
    assert_eq!(relative_cohomology(&cx, &[ray], 1, 1), Err(Error::NotASubcomplex));
}

#[test]
fn pair_sequences_are_exact() {
    let f = builtin("p2").unwrap();
    let cx = TropComplex::tautological(&f);
    let rho = f.find(&[0]).unwrap();
    // The closed boundary divisor: every cell whose sedentarity contains the first ray.
    let divisor: Vec<usize> =
        cx.cells().iter().filter(|c| f.is_face(rho, c.sedentarity)).map(|c| c.id).collect();
    let origin = vec![cx.cell_of_pair(0, 0).unwrap()];
    for a in [divisor, origin] {
        for p in 0..=2 {
            let seq = pair_sequence(&cx, &a, p).unwrap();
            assert!(seq.is_exact(), "{seq:?}");
        }
    }
}

fn completion(f: &Fan) -> TropComplex {
    let cube = builtin(&vec!["p1"; f.rank()].join("x")).unwrap();
    TropComplex::fan_structure(f, &cube).unwrap()
}

#[test]
fn cech_matches_cellular() {
    for name in ["p1", "p2", "p1xp1", "hirzebruch(0)", "hirzebruch(2)", "blowup_p2"] {
        let cx = TropComplex::tautological(&builtin(name).unwrap());
        check_cech(&cx, name);
    }
    for name in ["torus(1)", "torus(2)", "torus(3)", "affine_space(1)", "affine_space(2)"] {
        let f = builtin(name).unwrap();
        let taut = betti_table(&TropComplex::tautological(&f)).unwrap();
        let cx = completion(&f);
        check_cech(&cx, name);
        assert_eq!(betti_table(&cx).unwrap(), taut, "{name}");
    }
    check_cech(&line(), "line");
}

fn check_cech(cx: &TropComplex, name: &str) {
    let h = betti_table(cx).unwrap();
    for p in 0..=cx.fan().rank() {
        let dims = cech::cech_dims(cx, p).unwrap();
        for q in 0..=cx.fan().rank() {
            assert_eq!(dims.get(q).copied().unwrap_or(0), h[p][q], "{name} p={p} q={q}");
        }
    }
}

#[test]
fn cech_rejects_large() {
    let cx = TropComplex::tautological(&builtin("p3").unwrap());
    assert!(matches!(cech_oracle(&cx, 0, 0), Err(Error::OversizedInput { .. })));
}
