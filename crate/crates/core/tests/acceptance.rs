//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p lipcert-core --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use common::*;
use lipcert_core::disk::{comparison_ratio, random_disk_points};
use lipcert_core::{
    check_star, disk_moment_estimate, extend_complex, greedy_maximal_separated, lipschitz_constant,
    mcshane_extend_real, mcshane_extend_real_min, poincare_disk_space, prop2_constant,
    star_modulus, star_modulus_table, theorem1_approximant, uc_modulus, validate_metric,
    verify_net, Complex64, Error, FiniteMetricSpace, Mode, ModulusTable, RestrictedFunction,
    SampledFunction,
};
use rand::rngs::StdRng;
use rand::Rng;

const LIP_TOL: f64 = 1e-9;

fn report(id: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {id}: {what}");
    } else {
        println!("FAIL criterion {id}: {what} ({} failures)", failures.len());
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn space_corpus(seed: u64, count: usize, max_n: usize) -> Vec<FiniteMetricSpace> {
    let mut rng = rng(seed);
    (0..count)
        .map(|k| random_space(&mut rng, k, max_n))
        .collect()
}

#[test]
fn criterion_1_mcshane_extension_suite() {
    let start = Instant::now();
    let mut rng = rng(101);
    let mut failures = Vec::new();
    for (k, space) in space_corpus(1, 100, 200).into_iter().enumerate() {
        let subset = random_subset(&mut rng, space.len());
        let values: Vec<f64> = subset.iter().map(|_| rng.gen_range(-3.0..3.0)).collect();
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let s = RestrictedFunction::real(subset.clone(), values.clone()).unwrap();
        let c = lipschitz_constant(&space, &s).unwrap();
        let upper = mcshane_extend_real(&space, &s, c).unwrap();
        let lower = mcshane_extend_real_min(&space, &s, c).unwrap();
        let (f_up, f_low) = (upper.real_parts(), lower.real_parts());

        let agreement = subset
            .iter()
            .zip(&values)
            .map(|(&i, v)| (f_up[i] - v).abs())
            .fold(0.0, f64::max);
        if agreement > 1e-12 * scale {
            failures.push(format!("space {k}: agreement error {agreement}"));
        }
        let lip = lipschitz_constant(&space, &upper).unwrap();
        if lip > c + LIP_TOL {
            failures.push(format!("space {k}: Lip(F) = {lip} > C = {c}"));
        }
        // G ≤ F is tight along geodesics through S; compare at the 1e-9
        // data-scale tolerance used for every non-strict check.
        let tol = 1e-9 * scale.max(c * space.diameter());
        if (0..space.len()).any(|x| f_low[x] > f_up[x] + tol) {
            failures.push(format!("space {k}: G exceeds F"));
        }
        for _ in 0..5 {
            let lambda: f64 = rng.gen();
            let dominated = (0..space.len())
                .all(|x| lambda * f_low[x] + (1.0 - lambda) * f_up[x] <= f_up[x] + tol);
            if !dominated {
                failures.push(format!(
                    "space {k}: combination with λ = {lambda} exceeds F"
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?} ≥ 10 s"));
    }
    report(
        1,
        &format!("McShane extension on 100 random spaces in {elapsed:.2?}"),
        &failures,
    );
}

#[test]
fn criterion_2_complex_extension() {
    let mut rng = rng(202);
    let mut failures = Vec::new();
    let mut worst_ratio = 0.0f64;
    for (k, space) in space_corpus(1, 100, 200).into_iter().enumerate() {
        let subset = random_subset(&mut rng, space.len());
        let values: Vec<Complex64> = subset
            .iter()
            .map(|_| Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let s = RestrictedFunction::new(subset, values).unwrap();
        let c = lipschitz_constant(&space, &s).unwrap();
        let f = extend_complex(&space, &s, c).unwrap();
        let lip = lipschitz_constant(&space, &f).unwrap();
        if c > 0.0 {
            worst_ratio = worst_ratio.max(lip / c);
        }
        if lip > SQRT_2 * c + LIP_TOL {
            failures.push(format!("space {k}: Lip(F) = {lip} > √2·C = {}", SQRT_2 * c));
        }
        if lip > 2.0 * c + LIP_TOL {
            failures.push(format!("space {k}: Lip(F) = {lip} > 2C"));
        }
    }
    report(
        2,
        &format!("complex extension, max Lip(F)/C = {worst_ratio:.4}"),
        &failures,
    );
}

#[test]
fn criterion_3_net_suite() {
    let mut rng = rng(303);
    let mut failures = Vec::new();
    for (k, space) in space_corpus(3, 100, 200).into_iter().enumerate() {
        let t = rng.gen_range(0.02..1.1) * space.diameter();
        let net = greedy_maximal_separated(&space, t, &[0]).unwrap();
        let v = verify_net(&space, &net).unwrap();
        if !v.separation_ok {
            failures.push(format!(
                "instance {k}: separation {} < t = {t}",
                v.min_separation
            ));
        }
        if !v.covering_ok {
            failures.push(format!(
                "instance {k}: covering radius {} ≥ t = {t}",
                v.covering_radius
            ));
        }
        let again = greedy_maximal_separated(&space, t, &net.indices).unwrap();
        if again.indices != net.indices {
            failures.push(format!("instance {k}: rescan added points"));
        }
    }
    report(
        3,
        "greedy nets separated, covering and maximal on 100 instances",
        &failures,
    );
}

struct Instance {
    space: FiniteMetricSpace,
    f_complex: SampledFunction,
    f_real: SampledFunction,
    g_lip: f64,
    epsilon: f64,
}

/// Lipschitz `g` plus a perturbation of modulus below `ε/2`.
fn perturbed_lipschitz_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng: StdRng = rng(seed);
    (0..count)
        .map(|k| {
            let space = random_space(&mut rng, k, 200);
            let epsilon = rng.gen_range(0.02..0.5);
            let (g, _) = random_lipschitz(&mut rng, &space, true);
            let g_lip =
                lipschitz_constant(&space, &SampledFunction::new(g.clone()).unwrap()).unwrap();
            let f_complex =
                SampledFunction::new(perturb(&mut rng, &g, epsilon / 2.0, true)).unwrap();
            let g_re: Vec<Complex64> = g.iter().map(|v| Complex64::new(v.re, 0.0)).collect();
            let f_real =
                SampledFunction::new(perturb(&mut rng, &g_re, epsilon / 2.0, false)).unwrap();
            Instance {
                space,
                f_complex,
                f_real,
                g_lip,
                epsilon,
            }
        })
        .collect()
}

#[test]
fn criterion_4_pipeline_certified_error() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst = [0.0f64; 2];
    for (k, inst) in perturbed_lipschitz_instances(404, 50).iter().enumerate() {
        let eps = inst.epsilon;
        for (mode, f, error_bound, lip_factor) in [
            (Mode::Complex, &inst.f_complex, 6.0 * eps, 4.0),
            (Mode::Real, &inst.f_real, 4.0 * eps, 2.0),
        ] {
            let a = theorem1_approximant(&inst.space, f, eps, None, mode).unwrap();
            let cert = &a.certificate;
            // re-measure independently of the certificate
            let achieved = a.values.sup_distance(f).unwrap();
            let ext_lip = pairwise_lipschitz(&inst.space, a.values.values());
            let restricted = f.restrict(&cert.net.indices).unwrap();
            let restriction_lip = lipschitz_constant(&inst.space, &restricted).unwrap();
            let slot = (mode == Mode::Real) as usize;
            worst[slot] = worst[slot].max(achieved / error_bound);
            if achieved > error_bound + 1e-9 {
                failures.push(format!(
                    "{k} {mode:?}: sup error {achieved} > {error_bound}"
                ));
            }
            if restriction_lip > 2.0 * cert.c_used + 1e-9 {
                failures.push(format!(
                    "{k} {mode:?}: restriction constant {restriction_lip}"
                ));
            }
            if ext_lip > lip_factor * cert.c_used + 1e-9 {
                failures.push(format!("{k} {mode:?}: extension constant {ext_lip}"));
            }
            if !cert.holds() {
                failures.push(format!("{k} {mode:?}: certificate check failed"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        failures.push(format!("runtime {elapsed:?} ≥ 30 s"));
    }
    report(
        4,
        &format!(
            "pipeline on 50 instances in {elapsed:.2?}; worst achieved/proven: complex {:.3}, real {:.3}",
            worst[0], worst[1]
        ),
        &failures,
    );
}

#[test]
fn criterion_5_forward_direction() {
    let mut failures = Vec::new();
    for (k, inst) in perturbed_lipschitz_instances(505, 50).iter().enumerate() {
        for f in [&inst.f_complex, &inst.f_real] {
            let c_star = star_modulus(&inst.space, f, inst.epsilon).unwrap().c_star;
            // the real perturbation sits on Re g, whose constant is ≤ Lip(g)
            if c_star > inst.g_lip {
                failures.push(format!(
                    "instance {k}: c_star {c_star} > L = {}",
                    inst.g_lip
                ));
            }
        }
    }
    report(
        5,
        "c_star(f, ε) ≤ L for 50 perturbed Lipschitz functions",
        &failures,
    );
}

#[test]
fn criterion_6_sqrt_targets() {
    let space = grid(1001);
    let f = sqrt_on_grid(1001);
    let mut failures = Vec::new();
    let c_star = star_modulus(&space, &f, 0.1).unwrap().c_star;
    if (c_star - 2.5).abs() > 0.05 {
        failures.push(format!("c_star(0.1) = {c_star}"));
    }
    let uc = uc_modulus(&space, &f, 0.1).unwrap();
    if uc.no_violation || (uc.delta - 0.01).abs() > 0.001 {
        failures.push(format!("delta(0.1) = {}", uc.delta));
    }
    let c = prop2_constant(0.1, uc.delta).unwrap();
    if (c - 10.0).abs() > 1.0 {
        failures.push(format!("prop2_constant = {c}"));
    }
    let check = check_star(&space, &f, 0.1, c).unwrap();
    if !check.holds {
        failures.push(format!(
            "check_star failed on {} pairs",
            check.violations.len()
        ));
    }
    report(
        6,
        &format!(
            "√x grid: c_star = {c_star:.6}, delta = {:.6}, ε/δ = {c:.4}",
            uc.delta
        ),
        &failures,
    );
}

fn table_failures(label: &str, table: &ModulusTable, failures: &mut Vec<String>) {
    if !table.c_star_nonincreasing() {
        failures.push(format!("{label}: c_star increases"));
    }
    if !table.delta_nondecreasing() {
        failures.push(format!("{label}: delta decreases"));
    }
}

#[test]
fn criterion_7_moduli_monotonicity() {
    let mut failures = Vec::new();
    let mut tables = 0;
    for (seed, name) in [(404, "criterion 4"), (505, "criterion 5")] {
        for (k, inst) in perturbed_lipschitz_instances(seed, 50).iter().enumerate() {
            let e = inst.epsilon;
            let epsilons = [e / 8.0, e / 4.0, e / 2.0, e, 2.0 * e, 4.0 * e];
            for f in [&inst.f_complex, &inst.f_real] {
                let table = star_modulus_table(&inst.space, f, &epsilons).unwrap();
                table_failures(&format!("{name} instance {k}"), &table, &mut failures);
                tables += 1;
            }
        }
    }
    let table = star_modulus_table(
        &grid(1001),
        &sqrt_on_grid(1001),
        &[0.02, 0.05, 0.1, 0.2, 0.5],
    )
    .unwrap();
    table_failures("√x grid", &table, &mut failures);
    tables += 1;
    report(
        7,
        &format!("{tables} modulus tables monotone in ε"),
        &failures,
    );
}

#[test]
fn criterion_8_disk_geometry() {
    let mut failures = Vec::new();
    let m = disk_moment_estimate(1.0, 1_000_000, 808).unwrap();
    if (m.mean - 1.0).abs() > 5.0 * m.std_error {
        failures.push(format!("mean β(0,z) = {} ± {}", m.mean, m.std_error));
    }
    let stats = comparison_ratio(100_000, 809);
    if stats.max_ratio > 2.0 {
        failures.push(format!("max |z−w|/β = {}", stats.max_ratio));
    }
    for seed in 0..3 {
        let space = poincare_disk_space(&random_disk_points(200, 810 + seed), 1.0).unwrap();
        let v = validate_metric(&space.to_rows(), space.tolerance()).unwrap();
        if !v.is_metric {
            failures.push(format!("200-point disk space {seed}: {v:?}"));
        }
    }
    report(
        8,
        &format!(
            "E[β(0,z)] = {:.5} ± {:.5}, max |z−w|/β = {:.5}, 3 disk spaces are metrics",
            m.mean, m.std_error, stats.max_ratio
        ),
        &failures,
    );
}

#[test]
fn criterion_9_degeneracies() {
    let mut failures = Vec::new();

    let one = FiniteMetricSpace::from_matrix(&[vec![0.0]], None).unwrap();
    let f = SampledFunction::new(vec![Complex64::new(0.7, -0.2)]).unwrap();
    for mode in [Mode::Complex, Mode::Real] {
        let f = if mode == Mode::Real {
            SampledFunction::real(vec![0.7]).unwrap()
        } else {
            f.clone()
        };
        let a = theorem1_approximant(&one, &f, 0.1, None, mode).unwrap();
        if a.values != f || a.certificate.achieved_sup_error != 0.0 {
            failures.push(format!("one-point space {mode:?}: F ≠ f"));
        }
    }

    let mut rng = rng(909);
    for kind in 0..3 {
        let space = random_space(&mut rng, kind, 100);
        let f = SampledFunction::real(vec![-2.25; space.len()]).unwrap();
        if star_modulus(&space, &f, 0.05).unwrap().c_star != 0.0 {
            failures.push(format!("constant f on space kind {kind}: c_star ≠ 0"));
        }
        for mode in [Mode::Complex, Mode::Real] {
            let a = theorem1_approximant(&space, &f, 0.05, None, mode).unwrap();
            if a.certificate.achieved_sup_error != 0.0 {
                failures.push(format!(
                    "constant f kind {kind} {mode:?}: error {}",
                    a.certificate.achieved_sup_error
                ));
            }
        }
    }

    let line = grid(5);
    let s = RestrictedFunction::real(vec![0, 4], vec![0.0, 1.0]).unwrap();
    match mcshane_extend_real(&line, &s, 0.5) {
        Err(Error::CTooSmall { .. }) => {}
        other => failures.push(format!("C below restriction constant: {other:?}")),
    }
    match greedy_maximal_separated(&line, 0.5, &[0, 1]) {
        Err(Error::SeedsTooClose { i: 0, j: 1 }) => {}
        other => failures.push(format!("seeds closer than t: {other:?}")),
    }
    report(9, "degenerate inputs", &failures);
}
