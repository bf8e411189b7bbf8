//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line (visible with `--nocapture`) and then asserts.

use std::time::{Duration, Instant};

use flagcells::cells::{cell_polynomial, euler_characteristic, manifold_dimension};
use flagcells::symbols::{
    d_decomposition, dim_general, enumerate_elementary, enumerate_general, top_symbol, FlagSignature,
};
use flagcells::verifier::{run_suites, SuiteConfig, SuiteReport};
use flagcells::Field;

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    println!("[{}] criterion {id:>2}: {title} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} failed: {detail}");
}

fn signatures(max_ambient: usize) -> Vec<FlagSignature> {
    (2..=max_ambient).flat_map(FlagSignature::all).collect()
}

fn suite(name: &str, trials: usize) -> SuiteReport {
    let cfg = SuiteConfig { suites: vec![name.to_string()], trials, seed: 42, ..SuiteConfig::default() };
    run_suites(&cfg).unwrap()
}

fn summary(r: &SuiteReport) -> String {
    r.checks
        .iter()
        .map(|c| {
            let field = c.field.map_or("-".to_string(), |f| f.to_string());
            format!("{field}: {}/{} failed, worst {:.1e}", c.failures, c.trials, c.worst_residual)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Brute-force count of partitions of `d` with at most `rows` parts of size at most `cols`.
fn partitions(d: usize, rows: usize, cols: usize) -> usize {
    // walk all nonincreasing sequences of length `rows` in 0..=cols
    fn go(d: usize, rows: usize, cap: usize) -> usize {
        if rows == 0 {
            return usize::from(d == 0);
        }
        (0..=cap.min(d)).map(|p| go(d - p, rows - 1, p)).sum()
    }
    go(d, rows, cols)
}

fn binomial(m: usize, n: usize) -> usize {
    (0..n).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

#[test]
fn criterion_01_counting() {
    let start = Instant::now();
    let mut ok = true;
    for m in 1..=8 {
        for n in 1..=m {
            let all = enumerate_elementary(n, m);
            ok &= all.len() == binomial(m, n);
            for d in 0..=n * (m - n) {
                ok &= all.iter().filter(|s| s.dim() == d).count() == partitions(d, n, m - n);
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    report(1, "|S(n,m)| and d-distribution, m <= 8", ok, &format!("{elapsed:.2?}"));
}

#[test]
fn criterion_02_cell_polynomials() {
    let cases: [(&[usize], usize, &[u64], u64); 3] = [
        (&[1], 2, &[1, 0, 1], 2),
        (&[2], 4, &[1, 0, 1, 0, 2, 0, 1, 0, 1], 6),
        (&[1, 2], 3, &[1, 0, 2, 0, 2, 0, 1], 6),
    ];
    let mut ok = true;
    let mut shown = Vec::new();
    for (dims, n, want, cells) in cases {
        let sig = FlagSignature::new(dims.to_vec(), n).unwrap();
        let p = cell_polynomial(&sig, Field::Complex);
        ok &= p.coefficients() == want && p.total() == cells;
        shown.push(format!("{sig}: {p}"));
    }
    report(2, "complex cell polynomials", ok, &shown.join(", "));
}

#[test]
fn criterion_03_quaternionic_vs_complex() {
    let start = Instant::now();
    let sigs = signatures(6);
    let ok_sigs = sigs
        .iter()
        .filter(|sig| {
            cell_polynomial(sig, Field::Quaternion) == cell_polynomial(sig, Field::Complex).substitute_power(2)
                && euler_characteristic(sig, Field::Quaternion) == euler_characteristic(sig, Field::Complex)
        })
        .count();
    let elapsed = start.elapsed();
    let ok = ok_sigs == sigs.len() && elapsed < Duration::from_secs(10);
    report(3, "P_H(t) = P_C(t^2), n <= 6", ok, &format!("{ok_sigs}/{} signatures, {elapsed:.2?}", sigs.len()));
}

#[test]
fn criterion_04_dimension_formulas() {
    let sigs = signatures(6);
    let mut good = 0;
    for sig in &sigs {
        let max = enumerate_general(sig).map(|s| s.dim()).max().unwrap();
        let top = top_symbol(sig).dim();
        if Field::ALL.iter().all(|&f| {
            let d = manifold_dimension(sig, f);
            d == f.real_dim() * top && d == f.real_dim() * max
        }) {
            good += 1;
        }
    }
    report(4, "manifold dimension = top cell = max cell, n <= 6", good == sigs.len(), &format!("{good}/{}", sigs.len()));
}

#[test]
fn criterion_05_dimension_decomposition() {
    let mut total = 0;
    let mut bad = 0;
    for sig in signatures(6) {
        for s in enumerate_general(&sig) {
            total += 1;
            if d_decomposition(&s) != dim_general(&s) {
                bad += 1;
            }
        }
    }
    report(5, "tower decomposition of d, n <= 6", bad == 0, &format!("{bad}/{total} mismatches"));
}

#[test]
fn criterion_06_functoriality() {
    let start = Instant::now();
    let r = suite("functoriality", 1000);
    let elapsed = start.elapsed();
    let ok = r.passed && elapsed < Duration::from_secs(30);
    report(6, "sigma_X^Z = sigma_Y^Z o sigma_X^Y", ok, &format!("{}, {elapsed:.2?}", summary(&r)));
}

#[test]
fn criterion_07_canonical_roundtrip() {
    let r = suite("canonical-roundtrip", 500);
    report(7, "canonical representative round trip", r.passed, &summary(&r));
}

#[test]
fn criterion_08_tower_consistency() {
    let r = suite("tower-consistency", 500);
    report(8, "component symbols follow the composed tower", r.passed, &summary(&r));
}

#[test]
fn criterion_09_boundary_degeneration() {
    let r = suite("boundary-degeneration", 500);
    report(9, "degenerated flags are boundary candidates", r.passed, &summary(&r));
}

#[test]
fn criterion_10_rotation() {
    let r = suite("rotation", 1000);
    let ok = r.passed && r.checks.iter().all(|c| c.worst_residual <= 1e-12);
    report(10, "rotation T(u,v) is an isometry sending u to v", ok, &summary(&r));
}

#[test]
fn criterion_11_real_euler() {
    let sig = FlagSignature::complete(3).unwrap();
    let chi = euler_characteristic(&sig, Field::Real);
    let p = cell_polynomial(&sig, Field::Real);
    let ok = chi == 0 && chi == p.alternating_sum() && p.coefficients() == [1, 2, 2, 1];
    report(11, "Euler characteristic of complete flags in R^3", ok, &format!("chi = {chi}, cells {p}"));
}

#[test]
fn criterion_12_full_verification_time() {
    let start = Instant::now();
    let r = run_suites(&SuiteConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let failures: usize = r.checks.iter().map(|c| c.failures).sum();
    let ok = r.passed && elapsed < Duration::from_secs(60);
    report(12, "full suite, 1000 trials, under a minute", ok, &format!("{failures} failures, {elapsed:.2?}"));
}
