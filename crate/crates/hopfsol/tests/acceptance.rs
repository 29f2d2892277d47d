//! Acceptance suite: one test per release criterion, each printing a
//! pass line with the measured numbers. Run with
//! `cargo test --test acceptance -- --nocapture` to see the table.

use hopfsol::algebra::{Point4, S2Point};
use hopfsol::fields::{
    boundary, field_strength_analytic, field_strength_numeric, identities, theta_densities,
    ModelParams,
};
use hopfsol::hopf::{
    deformed::analytic_reduction, deformed_invariant, fiber::choose_pole, gauss_linking,
    hopf_invariant_cs, hopf_invariant_forms, omega2_pullback, preimage_circle, DeformedGrid,
    DeformedMapSpec, S3Grid,
};
use hopfsol::solver::{newton_solve, tail_slope, SolveReport, SolverConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::Instant;

/// The λ = 1, r_c = 50, N = 2000 reference solution, shared by the
/// criteria that probe the converged soliton.
fn reference_solution() -> &'static (SolveReport, f64) {
    static SOLUTION: OnceLock<(SolveReport, f64)> = OnceLock::new();
    SOLUTION.get_or_init(|| {
        let start = Instant::now();
        let report = newton_solve(&SolverConfig::default()).expect("reference solve converges");
        (report, start.elapsed().as_secs_f64())
    })
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_unit(rng: &mut ChaCha8Rng) -> Point4 {
    let gauss = |rng: &mut ChaCha8Rng| {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    loop {
        let v = [gauss(rng), gauss(rng), gauss(rng), gauss(rng)];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return Point4([v[0] / n, v[1] / n, v[2] / n, v[3] / n]);
        }
    }
}

fn random_shell_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Point4 {
    let u: f64 = rng.gen_range(0.0..1.0);
    random_unit(rng).scale(lo * (hi / lo).powf(u))
}

#[test]
fn criterion_01_hopf_invariant_by_form_quadrature() {
    let start = Instant::now();
    let grid = S3Grid::cubic(64);
    let h = hopf_invariant_forms(&grid).unwrap();
    let secs = start.elapsed().as_secs_f64();
    assert!((h - 1.0).abs() < 1e-6, "form quadrature H = {h}");
    assert!(secs < 30.0, "form quadrature took {secs:.1} s");
    println!("criterion 01: PASS — forms H = {h:.9} on 64³ in {secs:.2} s");
}

#[test]
fn criterion_02_hopf_invariant_by_chern_simons_quadrature() {
    let grid = S3Grid::cubic(64);
    let cs = hopf_invariant_cs(&grid).unwrap();
    let forms = hopf_invariant_forms(&grid).unwrap();
    assert!((cs - 1.0).abs() < 1e-6, "CS quadrature H = {cs}");
    assert!(
        (cs - forms).abs() <= 1e-8,
        "CS and form routes differ by {:e}",
        cs - forms
    );
    println!(
        "criterion 02: PASS — CS H = {cs:.9}, |CS − forms| = {:.2e}",
        (cs - forms).abs()
    );
}

#[test]
fn criterion_03_gauss_linking_of_polar_fibers() {
    let c1 = preimage_circle(&S2Point([0.0, 0.0, 1.0]), 512).unwrap();
    let c2 = preimage_circle(&S2Point([0.0, 0.0, -1.0]), 512).unwrap();
    let pole = choose_pole(&c1, &c2);
    let lk = gauss_linking(&c1, &c2, &pole).unwrap();
    assert!((lk - 1.0).abs() < 1e-3, "linking number {lk}");
    println!("criterion 03: PASS — linking number = {lk:.6} at 512 samples");
}

#[test]
fn criterion_04_deformed_map_invariant() {
    let spec = DeformedMapSpec::default_map(2000.0).unwrap();
    let h = deformed_invariant(&spec, &DeformedGrid::default()).unwrap();
    let reduced = analytic_reduction(&spec);
    assert!((h.abs() - 1.0).abs() < 1e-4, "|H| = {}", h.abs());
    assert!(
        (h - reduced).abs() < 1e-6,
        "3D quadrature {h} vs 1D reduction {reduced}"
    );
    println!(
        "criterion 04: PASS — deformed H = {h:.9} (signed), |H| − 1 = {:.2e}, vs reduction {:.2e}",
        h.abs() - 1.0,
        (h - reduced).abs()
    );
}

#[test]
fn criterion_05_solver_convergence_and_small_r_exponents() {
    let (report, secs) = reference_solution();
    assert!(report.converged, "reference solve did not converge");
    assert!(
        report.residual_norm <= 1e-10,
        "residual {:e}",
        report.residual_norm
    );
    assert!(report.iterations <= 100, "{} iterations", report.iterations);
    assert!(*secs < 10.0, "solve took {secs:.1} s");
    // Dirichlet rows are exact
    assert_eq!(report.profile.f_nodes()[0], 0.0);
    assert_eq!(report.profile.g_nodes()[0], 0.0);
    assert_eq!(*report.profile.f_nodes().last().unwrap(), 1.0);
    assert_eq!(*report.profile.g_nodes().last().unwrap(), 1.0);
    let s_g_expected = 2.0 * 2.0f64.sqrt();
    assert!(
        (report.s_f - 2.0).abs() / 2.0 < 0.05,
        "s_f = {} (expected 2 ± 5%)",
        report.s_f
    );
    assert!(
        (report.s_g - s_g_expected).abs() / s_g_expected < 0.05,
        "s_g = {} (expected 2√2 ± 5%)",
        report.s_g
    );
    println!(
        "criterion 05: PASS — residual {:.2e} in {} iterations ({secs:.2} s), s_f = {:.4}, s_g = {:.4}",
        report.residual_norm, report.iterations, report.s_f, report.s_g
    );
}

#[test]
fn criterion_06_logarithmic_divergence_of_the_action() {
    // tail window [50, 200] on a converged r_c = 200 solution
    let report = newton_solve(&SolverConfig {
        r_c: 200.0,
        n: 8000,
        ..Default::default()
    })
    .unwrap();
    let params = ModelParams::default();
    let slope = tail_slope(&report.profile, &params, 50.0, 200.0).unwrap();
    assert!(
        (slope - 8.0).abs() / 8.0 < 0.02,
        "tail slope {slope} (expected 8 ± 2%)"
    );
    // synthetic pure-gauge tail: slope exactly 8 up to quadrature error
    let radii: Vec<f64> = (0..3000).map(|i| 1.0 + 299.0 * i as f64 / 2999.0).collect();
    let ones = vec![1.0; 3000];
    let synthetic = hopfsol::RadialProfile::new(radii, ones.clone(), ones).unwrap();
    let exact = tail_slope(&synthetic, &params, 50.0, 200.0).unwrap();
    assert!((exact - 8.0).abs() < 1e-6, "synthetic slope {exact}");
    println!(
        "criterion 06: PASS — tail slope {slope:.4} on the solution, {exact:.10} on f = g ≡ 1"
    );
}

#[test]
fn criterion_07_boundary_hopf_number_and_field_strength() {
    let (report, _) = reference_solution();
    let r_c = report.r_c;
    let grid = S3Grid::cubic(32);
    let h = boundary::boundary_hopf_number(&report.profile, &grid, r_c).unwrap();
    assert!((h - 1.0).abs() < 1e-3, "boundary Hopf number {h}");
    // the U(1)-projected field strength at R = r_c equals the pulled-back
    // area form with the opposite sign to the potential curl
    let mut rng = seeded(2024);
    let mut max_dev: f64 = 0.0;
    for _ in 0..50 {
        let unit = random_unit(&mut rng);
        let x = unit.scale(r_c);
        let proj = boundary::u1_projected_field_strength(&x, &report.profile).unwrap();
        let w2 = omega2_pullback(&unit).unwrap();
        for _ in 0..4 {
            let (u, v) = (tangent(&mut rng, &unit), tangent(&mut rng, &unit));
            // at radius R the pullback scales like 1/R²
            let dev = proj.bilinear(&u, &v) + w2.bilinear(&u, &v) / (r_c * r_c);
            max_dev = max_dev.max(dev.abs());
        }
    }
    assert!(max_dev < 1e-10, "boundary 𝓕 deviates from −ω₂ by {max_dev:e}");
    println!(
        "criterion 07: PASS — boundary H = {h:.6}, max |𝓕_proj + ω₂/R²| = {max_dev:.2e}"
    );
}

fn tangent(rng: &mut ChaCha8Rng, x: &Point4) -> Point4 {
    loop {
        let v = random_unit(rng);
        let c = v.dot(x);
        let t = Point4([
            v.0[0] - c * x.0[0],
            v.0[1] - c * x.0[1],
            v.0[2] - c * x.0[2],
            v.0[3] - c * x.0[3],
        ]);
        if t.norm() > 1e-3 {
            return t;
        }
    }
}

#[test]
fn criterion_08_identity_suite_at_seeded_points() {
    let (report, _) = reference_solution();
    let prof = &report.profile;
    let mut rng = seeded(88);
    let mut worst: f64 = 0.0;
    // Pauli product identities, exhaustive
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                for l in 1..=2 {
                    let (lhs, rhs) = hopfsol::algebra::pauli_identity_p1(i, j, k, l);
                    worst = worst.max((lhs - rhs).abs());
                    for a in 1..=3 {
                        let (lhs, rhs) = hopfsol::algebra::pauli_identity_p2(a, i, j, k, l);
                        worst = worst.max((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    for _ in 0..1000 {
        let x = random_shell_point(&mut rng, 0.05, 45.0);
        let r = x.norm();
        // m-field derivative identities
        worst = worst.max(identities::max_identity_residual(&x).unwrap());
        // kinetic contraction 4 D̄φ·Dφ = 8f²(1−g)²/r² + f′²
        let d = hopfsol::fields::covariant_derivative(&x, prof).unwrap();
        let (f, g, fp, gp) = (prof.f(r), prof.g(r), prof.f_prime(r), prof.g_prime(r));
        let kinetic_expect = 8.0 * f * f * (1.0 - g) * (1.0 - g) / (r * r) + fp * fp;
        worst = worst.max((d.kinetic_contraction() - kinetic_expect).abs());
        // field-strength contraction F_{ī j}F_{i j̄} = 4(2g−g²)²/r⁴ + g′²/r²
        let fs = field_strength_analytic(&x, prof).unwrap();
        let w = 2.0 * g - g * g;
        let mixed_expect = 4.0 * w * w / r.powi(4) + gp * gp / (r * r);
        worst = worst.max((fs.mixed_contraction() - mixed_expect).abs());
    }
    assert!(worst < 1e-8, "worst identity residual {worst:e}");
    println!("criterion 08: PASS — 1000 points, worst identity residual {worst:.2e}");
}

#[test]
fn criterion_09_f_wedge_f_vanishes_on_the_solution() {
    let (report, _) = reference_solution();
    let mut rng = seeded(99);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = random_shell_point(&mut rng, 0.1, 45.0);
        let (fwf, _) = theta_densities(&x, &report.profile).unwrap();
        worst = worst.max(fwf.abs());
    }
    assert!(worst < 1e-10, "ε F F reached {worst:e}");
    println!("criterion 09: PASS — max |ε F F| = {worst:.2e} over 100 points");
}

#[test]
fn criterion_10_field_strength_oracle_agreement() {
    let (report, _) = reference_solution();
    let prof = &report.profile;
    let mut rng = seeded(1010);
    let mut worst_rel: f64 = 0.0;
    for _ in 0..100 {
        let x = random_shell_point(&mut rng, 0.3, 20.0);
        let r = x.norm();
        let fs = field_strength_analytic(&x, prof).unwrap();
        let fd = field_strength_numeric(&x, prof, 1e-5 * r).unwrap();
        let scale = (0..3)
            .map(|a| fs.real[a].max_abs())
            .fold(0.0f64, f64::max)
            .max(1e-30);
        for a in 0..3 {
            worst_rel = worst_rel.max(fs.real[a].sub(&fd[a]).max_abs() / scale);
        }
    }
    assert!(worst_rel < 1e-6, "max relative FD error {worst_rel:e}");
    // observed second-order convergence
    let x = Point4([1.1, -0.6, 0.8, 0.4]);
    let fs = field_strength_analytic(&x, prof).unwrap();
    let err = |h: f64| {
        let fd = field_strength_numeric(&x, prof, h).unwrap();
        (0..3)
            .map(|a| fs.real[a].sub(&fd[a]).max_abs())
            .fold(0.0f64, f64::max)
    };
    let ratio = err(2e-4) / err(1e-4);
    assert!(
        (3.2..=4.8).contains(&ratio),
        "convergence ratio {ratio} outside 4 ± 20%"
    );
    println!(
        "criterion 10: PASS — max relative FD error {worst_rel:.2e}, Richardson ratio {ratio:.2}"
    );
}
