//! Release gate. Each test is one numbered criterion checked at its stated
//! tolerance over its stated grid, and prints a single PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeMap;
use std::process::Command;

use pqcalc::{
    beta_pq, check_beta_recurrences, check_gamma_recurrence, check_gauss, check_legendre,
    gamma_classical_euler, gamma_pq, gamma_pq_integer, gamma_q, gamma_q_integral_representation,
    graded_power_sides, pq_factorial, pq_number, q_integral, run_suite, Bound, GridConfig,
    OutputRecord, PQBase, PowerParams, PrecisionPolicy, Suite, TableRow, Tolerances,
    TruncationSemantics,
};

const BASES: [(f64, f64); 4] = [(1.0, 0.5), (0.9, 0.4), (1.5, 0.7), (2.0, 0.3)];

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

fn bases() -> Vec<PQBase> {
    BASES.iter().map(|&(p, q)| PQBase::new(p, q).unwrap()).collect()
}

fn frange(from: f64, to: f64, step: f64) -> Vec<f64> {
    (0..)
        .map(|i| from + f64::from(i) * step)
        .take_while(|&x| x <= to + step * 1e-9)
        .collect()
}

fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn report(criterion: u32, description: &str, worst: f64, tolerance: f64) {
    let pass = worst <= tolerance;
    println!(
        "criterion {criterion}: {} - {description}: worst {worst:.3e}, tolerance {tolerance:.0e}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {description}: {worst:.3e} > {tolerance:.0e}");
}

#[test]
fn criterion_01_gamma_recurrence() {
    let mut worst: f64 = 0.0;
    for base in bases() {
        for x in frange(0.1, 6.0, 0.1) {
            worst = worst.max(check_gamma_recurrence(x, &base, &policy()).unwrap());
        }
    }
    report(1, "Gamma recurrence residual over the x grid on all bases", worst, 1e-10);
}

#[test]
fn criterion_02_integer_values() {
    let mut worst: f64 = 0.0;
    let mut worst_exact: f64 = 0.0;
    for base in bases() {
        for n in 0u32..=12 {
            let reference = pq_factorial(n, &base);
            let interpolated = gamma_pq(f64::from(n) + 1.0, &base, &policy()).unwrap().value();
            worst = worst.max(rel_err(interpolated, reference));
            worst_exact = worst_exact.max(rel_err(gamma_pq_integer(n, &base), reference));
        }
    }
    report(2, "Gamma at integers vs the deformed factorial", worst, 1e-10);
    report(2, "exact integer path vs the deformed factorial", worst_exact, 1e-12);
}

#[test]
fn criterion_03_p_one_reduction() {
    let mut worst: f64 = 0.0;
    for &(_, q) in &BASES {
        let degenerate = PQBase::new(1.0, q).unwrap();
        for x in frange(0.1, 6.0, 0.1) {
            let two_parameter = gamma_pq(x, &degenerate, &policy()).unwrap().value();
            let one_parameter = gamma_q(x, q, &policy()).unwrap().value();
            worst = worst.max(rel_err(two_parameter, one_parameter));
        }
    }
    report(3, "p = 1 collapse of the two-parameter Gamma", worst, 1e-12);
}

#[test]
fn criterion_04_legendre_duplication() {
    let mut worst: f64 = 0.0;
    let mut worst_collapse: f64 = 0.0;
    for base in bases() {
        for x in frange(0.3, 3.0, 0.3) {
            worst = worst.max(check_legendre(x, &base, &policy()).unwrap());
        }
        worst_collapse = worst_collapse.max(check_legendre(0.5, &base, &policy()).unwrap());
    }
    report(4, "duplication formula residual", worst, 1e-8);
    report(4, "duplication collapse at x = 1/2", worst_collapse, 1e-13);
}

#[test]
fn criterion_05_gauss_multiplication() {
    let mut worst: f64 = 0.0;
    for base in bases() {
        for n in [2u32, 3, 4, 5] {
            for x in [0.4, 0.8, 1.3, 2.1] {
                worst = worst.max(check_gauss(x, n, &base, &policy()).unwrap());
            }
        }
    }
    report(5, "multiplication formula residual for n in 2..=5", worst, 1e-7);

    // the n = 2 section must track the duplication residual within 10x
    // (plus an absolute floor: both residuals can be exactly zero)
    let mut comparable = true;
    for base in bases() {
        for x in [0.4, 0.8, 1.3, 2.1] {
            let gauss = check_gauss(x, 2, &base, &policy()).unwrap();
            let legendre = check_legendre(x, &base, &policy()).unwrap();
            comparable &= gauss <= 10.0 * legendre + 1e-13 && legendre <= 10.0 * gauss + 1e-13;
        }
    }
    report(5, "n = 2 section tracks duplication within 10x", if comparable { 0.0 } else { 1.0 }, 0.5);
}

#[test]
fn criterion_06_beta_recurrences() {
    let mut worst: f64 = 0.0;
    for base in bases() {
        for x in [0.7, 1.5, 2.5] {
            for y in [0.7, 1.5, 2.5] {
                for n in 0u32..=3 {
                    let rs = check_beta_recurrences(x, y, n, &base, &policy()).unwrap();
                    worst = worst.max(rs.into_iter().fold(0.0, f64::max));
                }
            }
        }
    }
    report(6, "four Beta recurrences over the x, y, n grid", worst, 1e-9);
}

#[test]
fn criterion_07_power_identity_suite() {
    let report_all = run_suite(Suite::Powers, &GridConfig::default(), &Tolerances::default(), &policy());
    let mut worst_finite: f64 = 0.0;
    let mut worst_mantissa: f64 = 0.0;
    let mut exponents_ok = true;
    for e in &report_all.entries {
        match e.exponent_match {
            Some(matched) => {
                exponents_ok &= matched;
                worst_mantissa = worst_mantissa.max(e.residual);
            }
            None => worst_finite = worst_finite.max(e.residual),
        }
    }
    report(7, "finite power identities 4-12 on the default grid", worst_finite, 1e-12);
    report(7, "graded identities 1-3 mantissa residual", worst_mantissa, 1e-10);
    report(7, "graded identities 1-3 exponent match", if exponents_ok { 0.0 } else { 1.0 }, 0.5);

    // at p = 1 the graded comparison is exactly the splitting property
    let degenerate = PQBase::new(1.0, 0.5).unwrap();
    let mut worst_split: f64 = 0.0;
    for id in 1..=3u32 {
        for a in [0.5, 1.3, 2.0] {
            for b in [0.5, 1.3, 2.0] {
                for n in [0u32, 1, 2, 3, 5] {
                    let params = PowerParams { a, b, n, k: 0, l: 1 };
                    let sides = graded_power_sides(
                        id,
                        &params,
                        &degenerate,
                        &policy(),
                        TruncationSemantics::Telescoped,
                    )
                    .unwrap();
                    assert!(sides.exponent_match());
                    worst_split = worst_split.max(sides.mantissa_residual());
                }
            }
        }
    }
    report(7, "p = 1 specialization reproduces Pochhammer splitting", worst_split, 1e-12);
}

#[test]
fn criterion_08_jackson_integrals() {
    let mut worst: f64 = 0.0;
    for q in [0.3, 0.5, 0.9] {
        for a in [0.5f64, 1.0, 2.0] {
            for k in 0u32..=6 {
                let got = q_integral(
                    |t| t.powi(k as i32),
                    Bound::Finite(0.0),
                    Bound::Finite(a),
                    q,
                    &policy(),
                )
                .unwrap()
                .value;
                let bracket = (1.0 - q.powi(k as i32 + 1)) / (1.0 - q);
                worst = worst.max(rel_err(got, a.powi(k as i32 + 1) / bracket));
            }
        }
    }
    report(8, "monomial law on the a, k, q grid", worst, 1e-12);

    let mut worst_add: f64 = 0.0;
    for q in [0.3, 0.5, 0.9] {
        let f = |t: f64| t * t;
        let spans = [(0.25, 0.75, 2.0), (-1.5, -0.5, 0.5)];
        for (a, m, b) in spans {
            let left = q_integral(f, Bound::Finite(a), Bound::Finite(m), q, &policy()).unwrap();
            let right = q_integral(f, Bound::Finite(m), Bound::Finite(b), q, &policy()).unwrap();
            let whole = q_integral(f, Bound::Finite(a), Bound::Finite(b), q, &policy()).unwrap();
            worst_add = worst_add.max(rel_err(left.value + right.value, whole.value));
        }
        // and across the improper split point
        let g = |t: f64| t * t * (-t).exp();
        let head = q_integral(g, Bound::Finite(0.0), Bound::Finite(1.0), q, &policy()).unwrap();
        let tail = q_integral(g, Bound::Finite(1.0), Bound::PosInf, q, &policy()).unwrap();
        let whole = q_integral(g, Bound::Finite(0.0), Bound::PosInf, q, &policy()).unwrap();
        worst_add = worst_add.max(rel_err(head.value + tail.value, whole.value));
    }
    report(8, "composition additivity across lattice cuts", worst_add, 1e-12);
}

#[test]
fn criterion_09_integral_representation() {
    let mut worst: f64 = 0.0;
    for q in [0.3, 0.5, 0.7] {
        for x in [0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
            let via_integral = gamma_q_integral_representation(x, q, &policy()).unwrap().value;
            let direct = gamma_q(x, q, &policy()).unwrap().value();
            worst = worst.max(rel_err(via_integral, direct));
        }
    }
    report(9, "Gamma by lattice integration vs the product form", worst, 1e-8);
}

#[test]
fn criterion_10_classical_limits() {
    // q -> 1 needs far more than the default term budget
    let wide = PrecisionPolicy::new(1e-14, 500_000).unwrap();
    let mut worst: f64 = 0.0;
    for x in [1.5, 2.0, 3.0] {
        let deformed = gamma_q(x, 0.9999, &wide).unwrap().value();
        let classical = gamma_classical_euler(x, 1_000_000).unwrap();
        worst = worst.max(rel_err(deformed, classical));
    }
    report(10, "Gamma at q = 0.9999 vs the Euler-limit oracle", worst, 1e-2);

    let lattice = PrecisionPolicy::new(1e-14, 50_000).unwrap();
    let got = q_integral(|t| t, Bound::Finite(0.0), Bound::Finite(1.0), 0.999, &lattice)
        .unwrap()
        .value;
    report(10, "unit-interval first moment at q = 0.999 vs 1/2", (got - 0.5).abs(), 1e-3);
}

#[test]
fn criterion_11_cli_conformance() {
    let bin = env!("CARGO_BIN_EXE_pqcalc");

    // eval output must round-trip to the exact library bits
    let out = Command::new(bin)
        .args(["eval", "gammapq", "--p", "1.5", "--q", "0.7", "--x", "2.3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let record: OutputRecord = serde_json::from_slice(&out.stdout).unwrap();
    let base = PQBase::new(1.5, 0.7).unwrap();
    let direct = gamma_pq(2.3, &base, &policy()).unwrap();
    let eval_ok = record.value.unwrap().to_bits() == direct.value().to_bits()
        && record.log_abs.unwrap().to_bits() == direct.log_value.log_abs.to_bits()
        && record.sign.unwrap() == direct.log_value.sign
        && record.terms_used.unwrap() == direct.terms_used;

    // table rows likewise, through the JSON form
    let out = Command::new(bin)
        .args([
            "table", "betapq", "--p", "1.5", "--q", "0.7", "--y", "1.2", "--x-from", "0.5",
            "--x-to", "3", "--step", "0.5", "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows: Vec<TableRow> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 6);
    let table_ok = rows.iter().enumerate().all(|(i, row)| {
        let x = 0.5 + i as f64 * 0.5;
        let direct = beta_pq(x, 1.2, &base, &policy()).unwrap();
        row.x.to_bits() == x.to_bits()
            && row.value.unwrap().to_bits() == direct.value().to_bits()
            && row.log_abs.unwrap().to_bits() == direct.log_value.log_abs.to_bits()
    });

    // pqnum eval against the library, exercising a second record shape
    let out = Command::new(bin)
        .args(["eval", "pqnum", "--p", "2", "--q", "1", "--n", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let record: OutputRecord = serde_json::from_slice(&out.stdout).unwrap();
    let two_one = PQBase::new(2.0, 1.0).unwrap();
    let pqnum_ok = record.value.unwrap().to_bits() == pq_number(3, &two_one).to_bits()
        && record.args == BTreeMap::from([("p".into(), 2.0), ("q".into(), 1.0), ("n".into(), 3.0)]);

    let all_bitwise = eval_ok && table_ok && pqnum_ok;
    report(11, "CLI output equals library bits after JSON round-trip", if all_bitwise { 0.0 } else { 1.0 }, 0.5);

    let report_path = std::env::temp_dir().join(format!("pqcalc-acceptance-{}.json", std::process::id()));
    let status = Command::new(bin)
        .args(["check", "all", "--out"])
        .arg(&report_path)
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&report_path);
    report(11, "check all exits 0 on default tolerances", if status.status.code() == Some(0) { 0.0 } else { 1.0 }, 0.5);
}
