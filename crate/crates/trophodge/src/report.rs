//! The verification report run by `trophodge verify`.

use rayon::prelude::*;
use serde::Serialize;
use trophodge_core::cohomology::build_cochain_complex;
use trophodge_core::cycles::{chow_dim, numerical_kernel_check};
use trophodge_core::tropspace::TropComplex;
use trophodge_core::weightss::{compare_tables, e1_page_with, e2_page_with, euler_report, SignConvention};
use trophodge_core::{Error, Fan};

/// Built-in fans checked by `verify --all-builtins`.
pub const ZOO: &[&str] = &[
    "p1",
    "p2",
    "p3",
    "p1xp1",
    "p1xp1xp1",
    "hirzebruch(0)",
    "hirzebruch(1)",
    "hirzebruch(2)",
    "hirzebruch(3)",
    "blowup_p2",
    "torus(1)",
    "torus(2)",
    "torus(3)",
    "affine_space(1)",
    "affine_space(2)",
    "affine_space(3)",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>) -> Self {
        Check { name, pass: failures.is_empty(), failures }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub fan: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub fans: Vec<FanReport>,
}

impl VerifyReport {
    pub fn new(fans: Vec<FanReport>) -> Self {
        VerifyReport { pass: fans.iter().all(|f| f.pass), fans }
    }
}

/// `h[p][q] = dim H^{p,q}`, one rayon task per `p`.
pub fn betti_table_par(cx: &TropComplex) -> Result<Vec<Vec<usize>>, Error> {
    (0..=cx.fan().rank())
        .into_par_iter()
        .map(|p| build_cochain_complex(cx, p).map(|c| c.betti_row()))
        .collect()
}

/// Runs every check that applies to `fan`.
///
/// Smooth fans get the `E₂` comparison, `d₁² = 0` and vanishing above the diagonal.
/// Complete ones add vanishing of `h^{p,0}`, the Betti-number count and the Chow
/// comparison; complete surfaces add the numerical-equivalence kernel check.
pub fn verify_fan(name: &str, fan: &Fan, sign: SignConvention) -> Result<FanReport, Error> {
    let n = fan.rank();
    let e1 = e1_page_with(fan, sign)?;
    let e2 = e2_page_with(fan, sign)?;
    let h = betti_table_par(&TropComplex::tautological(fan))?;
    let mut checks = Vec::new();

    let d1 = if e1.d1_squares_to_zero() { vec![] } else { vec!["d1 ∘ d1 ≠ 0".to_string()] };
    checks.push(Check::new("d1_squared", d1));

    let cmp = compare_tables(&e2, &h);
    let bad = cmp
        .entries
        .iter()
        .filter(|e| !e.pass())
        .map(|e| format!("E2^{{{},{}}}={} but h^{{{},{}}}={}", e.p, e.q, e.e2, e.q, e.p, e.trop))
        .collect();
    checks.push(Check::new("comparison", bad));

    let mut above = Vec::new();
    for (p, row) in h.iter().enumerate() {
        for (q, &d) in row.iter().enumerate().skip(p + 1) {
            if d != 0 {
                above.push(format!("h^{{{p},{q}}}={d}"));
            }
        }
    }
    checks.push(Check::new("vanishing_above_diagonal", above));

    if fan.is_complete() {
        let col = (1..=n).filter(|&p| h[p][0] != 0).map(|p| format!("h^{{{p},0}}={}", h[p][0])).collect();
        checks.push(Check::new("vanishing_first_column", col));

        let euler = euler_report(fan, &e2);
        let bad = if euler.pass() {
            vec![]
        } else {
            vec![format!("E2 sums {:?}, Betti numbers {:?}", euler.from_e2, euler.from_h_vector)]
        };
        checks.push(Check::new("euler", bad));

        let mut chow = Vec::new();
        for (p, row) in h.iter().enumerate() {
            let c = chow_dim(fan, p)?;
            if row[p] != c {
                chow.push(format!("h^{{{p},{p}}}={} but chow_dim={c}", row[p]));
            }
        }
        checks.push(Check::new("chow", chow));

        if n == 2 {
            let report = numerical_kernel_check(fan)?;
            let bad = if report.pass() {
                vec![]
            } else {
                vec![format!(
                    "cycle kernel dim {}, intersection kernel dim {}",
                    report.cycle_kernel.dim(),
                    report.intersection_kernel.dim()
                )]
            };
            checks.push(Check::new("numerical_kernel", bad));
        }
    }
    Ok(FanReport { fan: name.to_string(), pass: checks.iter().all(|c| c.pass), checks })
}

/// Verifies several fans in parallel, keeping the input order.
pub fn verify_all(fans: &[(String, Fan)], sign: SignConvention) -> Result<VerifyReport, Error> {
    let reports = fans
        .par_iter()
        .map(|(name, fan)| verify_fan(name, fan, sign))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyReport::new(reports))
}
