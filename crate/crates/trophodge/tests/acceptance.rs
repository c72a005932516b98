//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero on failure.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use trophodge::report::{betti_table_par, ZOO};
use trophodge_core::cohomology::{build_cochain_complex, cech_dims, CochainComplex, CECH_CELL_LIMIT};
use trophodge_core::cycles::{
    chow_dim, cycle_class, divisor_cycle, numerical_kernel_check, pair, MinkowskiWeight, TropCycle, WeightKind,
};
use trophodge_core::exactla::q;
use trophodge_core::fans::builtin;
use trophodge_core::tropspace::TropComplex;
use trophodge_core::weightss::{compare_tables, e1_page, e2_page, euler_report, SSPage};
use trophodge_core::{Fan, Rational};

const SURFACES: &[&str] =
    &["p2", "p1xp1", "hirzebruch(0)", "hirzebruch(1)", "hirzebruch(2)", "hirzebruch(3)", "blowup_p2"];

struct Member {
    name: &'static str,
    fan: Fan,
    cx: TropComplex,
    h: Vec<Vec<usize>>,
    e1: SSPage,
    e2: SSPage,
}

fn build_zoo() -> Vec<Member> {
    ZOO.par_iter()
        .map(|&name| {
            let fan = builtin(name).unwrap();
            let cx = TropComplex::tautological(&fan);
            let h = betti_table_par(&cx).unwrap();
            let e1 = e1_page(&fan).unwrap();
            let e2 = e2_page(&fan).unwrap();
            Member { name, fan, cx, h, e1, e2 }
        })
        .collect()
}

fn complete(zoo: &[Member]) -> impl Iterator<Item = &Member> {
    zoo.iter().filter(|m| m.fan.is_complete())
}

fn criterion_1(zoo: &[Member], elapsed: Duration) -> Vec<String> {
    let mut out = Vec::new();
    for m in zoo {
        for e in compare_tables(&m.e2, &m.h).entries.iter().filter(|e| !e.pass()) {
            out.push(format!("{}: E2^{{{},{}}}={} vs h^{{{},{}}}={}", m.name, e.p, e.q, e.e2, e.q, e.p, e.trop));
        }
    }
    if elapsed >= Duration::from_secs(60) {
        out.push(format!("full zoo took {elapsed:?}"));
    }
    out
}

fn criterion_2(zoo: &[Member]) -> Vec<String> {
    let mut out = Vec::new();
    for m in complete(zoo) {
        for p in 0..=m.fan.rank() {
            let c = chow_dim(&m.fan, p).unwrap();
            if m.h[p][p] != c {
                out.push(format!("{}: h^{{{p},{p}}}={} vs chow_dim={c}", m.name, m.h[p][p]));
            }
        }
    }
    for (name, spot) in [("p2", [1, 1, 1]), ("p1xp1", [1, 2, 1]), ("blowup_p2", [1, 2, 1])] {
        let m = zoo.iter().find(|m| m.name == name).unwrap();
        let diag: Vec<usize> = (0..3).map(|p| m.h[p][p]).collect();
        if diag != spot {
            out.push(format!("{name}: diagonal {diag:?}, expected {spot:?}"));
        }
    }
    out
}

fn criterion_3(zoo: &[Member]) -> Vec<String> {
    let mut out = Vec::new();
    for m in zoo {
        let n = m.fan.rank();
        for p in 0..=n {
            for q in p + 1..=n {
                if m.h[p][q] != 0 {
                    out.push(format!("{}: h^{{{p},{q}}}={}", m.name, m.h[p][q]));
                }
            }
            if p >= 1 && m.fan.is_complete() && m.h[p][0] != 0 {
                out.push(format!("{}: h^{{{p},0}}={}", m.name, m.h[p][0]));
            }
        }
    }
    out
}

fn criterion_4(zoo: &[Member]) -> Vec<String> {
    complete(zoo)
        .filter(|m| m.fan.is_smooth())
        .map(|m| (m.name, euler_report(&m.fan, &m.e2)))
        .filter(|(_, r)| !r.pass())
        .map(|(name, r)| format!("{name}: E2 sums {:?} vs Betti {:?}", r.from_e2, r.from_h_vector))
        .collect()
}

fn criterion_5() -> Vec<String> {
    let mut out = Vec::new();
    for name in SURFACES {
        let r = numerical_kernel_check(&builtin(name).unwrap()).unwrap();
        if !r.pass() {
            out.push(format!("{name}: kernels differ ({} vs {})", r.cycle_kernel.dim(), r.intersection_kernel.dim()));
        }
    }
    out
}

fn principal_divisor(fan: &Fan, m: &[i64], cx: &TropComplex) -> TropCycle {
    let weights: Vec<(Vec<usize>, Rational)> = fan
        .rays()
        .iter()
        .enumerate()
        .map(|(i, v)| (vec![i], q(v.iter().zip(m).map(|(a, b)| a * b).sum())))
        .collect();
    let w = MinkowskiWeight::new(fan, 1, WeightKind::Orbit, &weights).unwrap();
    cycle_class(&w, cx).unwrap()
}

fn criterion_6() -> Vec<String> {
    let mut out = Vec::new();
    let p2 = builtin("p2").unwrap();
    let cx = TropComplex::tautological(&p2);
    let cc = build_cochain_complex(&cx, 1).unwrap();
    let ones: Vec<(Vec<usize>, Rational)> = (0..3).map(|i| (vec![i], q(1))).collect();
    let line = cycle_class(&MinkowskiWeight::new(&p2, 1, WeightKind::Minkowski, &ones).unwrap(), &cx).unwrap();
    let h11 = cc.cohomology(1);
    if h11.dim != 1 {
        out.push(format!("P2: dim H^{{1,1}} = {}", h11.dim));
    } else {
        let v = pair(&h11.representatives[0], &line, &cc).unwrap();
        if v != q(1) && v != q(-1) {
            out.push(format!("P2: line pairs to {v}"));
        }
    }
    for name in SURFACES {
        let fan = builtin(name).unwrap();
        let cx = TropComplex::tautological(&fan);
        let cc = build_cochain_complex(&cx, 1).unwrap();
        let cocycles = cc.cocycles(1);
        for m in [[1, 0], [0, 1], [2, -3]] {
            let c = principal_divisor(&fan, &m, &cx);
            for z in cocycles.basis() {
                let v = pair(z, &c, &cc).unwrap();
                if v != q(0) {
                    out.push(format!("{name}: div(χ^{m:?}) pairs to {v}"));
                }
            }
        }
    }
    out
}

fn refinement(fan: &Fan) -> TropComplex {
    let base = if fan.is_complete() { fan.clone() } else { builtin(&vec!["p1"; fan.rank()].join("x")).unwrap() };
    let top = &base.cones()[base.maximal_cones()[0]];
    let v: Vec<i64> = (0..fan.rank()).map(|k| top.iter().map(|&r| base.rays()[r][k]).sum()).collect();
    TropComplex::fan_structure(fan, &base.star_subdivision(&v).unwrap()).unwrap()
}

fn delta_squared(cc: &CochainComplex) -> bool {
    cc.deltas.windows(2).all(|w| w[1].cols() != w[0].rows() || w[0].rows() == 0 || (&w[1] * &w[0]).is_zero())
}

fn functorial(cx: &TropComplex) -> Option<String> {
    for c in 0..cx.len() {
        for &(b, _) in cx.faces(c) {
            for &(a, _) in cx.faces(b) {
                for p in 0..=cx.fan().rank() {
                    let direct = cx.face_map(a, c, p).unwrap();
                    let via = &cx.face_map(a, b, p).unwrap() * &cx.face_map(b, c, p).unwrap();
                    if direct != via {
                        return Some(format!("chain {a} < {b} < {c}, p={p}"));
                    }
                }
            }
        }
    }
    None
}

fn criterion_7(zoo: &[Member]) -> Vec<String> {
    let mut out = Vec::new();
    let line = TropComplex::from_cells(
        &builtin("p2").unwrap(),
        &[(vec![], vec![vec![1, 0]]), (vec![], vec![vec![0, 1]]), (vec![], vec![vec![-1, -1]])],
    )
    .unwrap();
    let mut complexes: Vec<(String, &TropComplex, Option<&Vec<Vec<usize>>>)> = Vec::new();
    let refined: Vec<TropComplex> = zoo.par_iter().map(|m| refinement(&m.fan)).collect();
    for (m, r) in zoo.iter().zip(&refined) {
        complexes.push((m.name.to_string(), &m.cx, None));
        complexes.push((format!("{} refined", m.name), r, Some(&m.h)));
    }
    complexes.push(("tropical line".into(), &line, None));

    let results: Vec<Vec<String>> = complexes
        .par_iter()
        .map(|(name, cx, expected)| {
            let mut out = Vec::new();
            let h = betti_table_par(cx).unwrap();
            for p in 0..=cx.fan().rank() {
                if !delta_squared(&build_cochain_complex(cx, p).unwrap()) {
                    out.push(format!("{name}: δ² ≠ 0 at p={p}"));
                }
            }
            if let Some(e) = functorial(cx) {
                out.push(format!("{name}: face maps not functorial on {e}"));
            }
            if cx.len() <= CECH_CELL_LIMIT {
                for (p, row) in h.iter().enumerate() {
                    match cech_dims(cx, p) {
                        Ok(dims) => {
                            let padded: Vec<usize> = (0..row.len()).map(|q| dims.get(q).copied().unwrap_or(0)).collect();
                            if &padded != row {
                                out.push(format!("{name}: Čech {padded:?} vs cellular {row:?} at p={p}"));
                            }
                        }
                        Err(e) => out.push(format!("{name}: Čech oracle failed: {e}")),
                    }
                }
            }
            if let Some(expected) = expected {
                if &h != *expected {
                    out.push(format!("{name}: {h:?} vs unrefined {expected:?}"));
                }
            }
            out
        })
        .collect();
    out.extend(results.into_iter().flatten());

    for m in zoo {
        if !m.e1.d1_squares_to_zero() {
            out.push(format!("{}: d₁² ≠ 0", m.name));
        }
    }

    let mut rng = StdRng::seed_from_u64(0x7e0b);
    for name in SURFACES {
        let fan = builtin(name).unwrap();
        let cx = TropComplex::tautological(&fan);
        let cc = build_cochain_complex(&cx, 1).unwrap();
        let cycles: Vec<TropCycle> = (0..fan.rays().len()).map(|r| divisor_cycle(&fan, r, &cx).unwrap()).collect();
        let reps = cc.cohomology(1).representatives;
        for _ in 0..20 {
            let beta: Vec<Rational> = (0..cc.dim(0)).map(|_| q(rng.gen_range(-5..=5))).collect();
            let shift = cc.deltas[0].mul_vec(&beta);
            for rep in &reps {
                let moved: Vec<Rational> = rep.iter().zip(&shift).map(|(a, b)| a + b).collect();
                for (r, c) in cycles.iter().enumerate() {
                    let (before, after) = (pair(rep, c, &cc).unwrap(), pair(&moved, c, &cc).unwrap());
                    if before != after {
                        out.push(format!("{name}: pairing with D_{r} moved from {before} to {after}"));
                    }
                }
            }
        }
    }
    out
}

fn main() {
    let start = Instant::now();
    let zoo = build_zoo();
    let elapsed = start.elapsed();
    let criteria: Vec<(&str, Vec<String>)> = vec![
        ("toric comparison E2^{p,q} = h^{q,p} over the zoo", criterion_1(&zoo, elapsed)),
        ("h^{p,p} equals the Minkowski-weight Chow dimension", criterion_2(&zoo)),
        ("vanishing above the diagonal and of h^{p,0}", criterion_3(&zoo)),
        ("E2 diagonal sums equal Betti numbers from the h-vector", criterion_4(&zoo)),
        ("numerical-equivalence kernels agree on surfaces", criterion_5()),
        ("line pairs to ±1, principal divisors pair to 0", criterion_6()),
        ("property suites", criterion_7(&zoo)),
    ];
    let mut all = true;
    for (i, (title, failures)) in criteria.iter().enumerate() {
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict}: {title}", i + 1);
        for f in failures.iter().take(20) {
            println!("    {f}");
        }
        all &= failures.is_empty();
    }
    println!("zoo computed in {:.2?}, total {:.2?}", elapsed, start.elapsed());
    if !all {
        std::process::exit(1);
    }
}
