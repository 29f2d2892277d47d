//! Subcommand implementations. Every run records a manifest next to its
//! outputs; re-running with `--manifest` reproduces the outputs byte for
//! byte at the stored worker count.

use clap::{Args, ValueEnum};
use hopfsol::algebra::{Point4, S2Point};
use hopfsol::fields::{
    boundary, field_strength_analytic, field_strength_numeric, identities, theta_densities,
    ModelParams, RadialProfile,
};
use hopfsol::hopf::{
    deformed_invariant, gauss_linking, hopf_invariant_cs, hopf_invariant_forms, preimage_circle,
    DeformedGrid, DeformedMapSpec, S3Grid,
};
use hopfsol::io::{self, RunManifest};
use hopfsol::solver::{newton_solve, GuessKind, MeshKind, SolverConfig, SolverError};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub struct Ctx {
    pub out: PathBuf,
    pub workers: usize,
    pub seed: u64,
    pub manifest: Option<PathBuf>,
}

type CmdResult = Result<u8, Box<dyn std::error::Error>>;

fn write_output(ctx: &Ctx, name: &str, contents: &str) -> std::io::Result<()> {
    std::fs::create_dir_all(&ctx.out)?;
    std::fs::write(ctx.out.join(name), contents)
}

fn load_manifest(path: &Path, expect_cmd: &str) -> Result<RunManifest, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    let m = RunManifest::from_json(&text)?;
    if m.subcommand != expect_cmd {
        return Err(format!(
            "manifest records subcommand {:?}, not {expect_cmd:?}",
            m.subcommand
        )
        .into());
    }
    Ok(m)
}

fn read_profile(path: &Path) -> Result<RadialProfile, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    Ok(io::profile_from_csv(&text)?)
}

// ---------------------------------------------------------------- solve

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    /// Quartic coupling λ
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Cutoff radius replacing infinity
    #[arg(long, default_value_t = 50.0)]
    pub rc: f64,
    /// Interior mesh nodes
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// Residual ∞-norm target
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = GuessChoice::Rational)]
    pub guess: GuessChoice,
    #[arg(long, value_enum, default_value_t = MeshChoice::Uniform)]
    pub mesh: MeshChoice,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum GuessChoice {
    Rational,
    Tanh,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum MeshChoice {
    Uniform,
    Graded,
}

pub fn run_solve(mut args: SolveArgs, ctx: &Ctx) -> CmdResult {
    if let Some(path) = &ctx.manifest {
        let m = load_manifest(path, "solve")?;
        args = SolveArgs {
            lambda: m.get_f64("lambda").ok_or("manifest missing lambda")?,
            rc: m.get_f64("rc").ok_or("manifest missing rc")?,
            n: m.get_u64("n").ok_or("manifest missing n")? as usize,
            tol: m.get_f64("tol").ok_or("manifest missing tol")?,
            guess: match m.get_str("guess") {
                Some("tanh") => GuessChoice::Tanh,
                _ => GuessChoice::Rational,
            },
            mesh: match m.get_str("mesh") {
                Some("graded") => MeshChoice::Graded,
                _ => MeshChoice::Uniform,
            },
        };
    }
    let config = SolverConfig {
        r_c: args.rc,
        n: args.n,
        lambda: args.lambda,
        tol: args.tol,
        guess: match args.guess {
            GuessChoice::Rational => GuessKind::Rational,
            GuessChoice::Tanh => GuessKind::Tanh,
        },
        mesh: match args.mesh {
            MeshChoice::Uniform => MeshKind::Uniform,
            MeshChoice::Graded => MeshKind::Graded,
        },
        ..Default::default()
    };
    config.validate().map_err(|e| e.to_string())?;

    let mut manifest = RunManifest::new("solve");
    manifest.set("lambda", args.lambda);
    manifest.set("rc", args.rc);
    manifest.set("n", args.n as u64);
    manifest.set("tol", args.tol);
    manifest.set(
        "guess",
        match args.guess {
            GuessChoice::Rational => "rational",
            GuessChoice::Tanh => "tanh",
        },
    );
    manifest.set(
        "mesh",
        match args.mesh {
            MeshChoice::Uniform => "uniform",
            MeshChoice::Graded => "graded",
        },
    );
    manifest.seed = ctx.seed;
    manifest.workers = ctx.workers;
    manifest.outputs = vec!["profile.csv".into(), "report.json".into()];

    let (report, code) = match newton_solve(&config) {
        Ok(report) => (report, 0u8),
        Err(SolverError::NonConvergence { report, .. }) => (*report, 2u8),
        Err(e) => return Err(e.to_string().into()),
    };
    write_output(ctx, "profile.csv", &io::profile_to_csv(&report.profile))?;
    write_output(ctx, "report.json", &io::ReportDoc::from_report(&report).to_json())?;
    write_output(ctx, "manifest.json", &manifest.to_json())?;
    println!(
        "solve: converged={} iterations={} residual={:.3e} action={:.12} s_f={:.4} s_g={:.4} tail_slope={:.4}",
        report.converged,
        report.iterations,
        report.residual_norm,
        report.action,
        report.s_f,
        report.s_g,
        report.tail_slope
    );
    Ok(code)
}

// ------------------------------------------------------------ invariant

#[derive(Args, Debug, Clone)]
pub struct InvariantArgs {
    /// Cells per grid dimension
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = MapChoice::Hopf)]
    pub map: MapChoice,
    /// Profile CSV for the boundary Chern-Simons integral
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Evaluation radius (hopf: boundary sphere; deformed: plane cutoff)
    #[arg(long)]
    pub radius: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum MapChoice {
    Hopf,
    Deformed,
}

pub fn run_invariant(mut args: InvariantArgs, ctx: &Ctx) -> CmdResult {
    if let Some(path) = &ctx.manifest {
        let m = load_manifest(path, "invariant")?;
        args = InvariantArgs {
            grid: m.get_u64("grid").ok_or("manifest missing grid")? as usize,
            map: match m.get_str("map") {
                Some("deformed") => MapChoice::Deformed,
                _ => MapChoice::Hopf,
            },
            profile: m.get_str("profile").map(PathBuf::from),
            radius: m.get_f64("radius"),
        };
    }
    let mut manifest = RunManifest::new("invariant");
    manifest.set("grid", args.grid as u64);
    manifest.set(
        "map",
        match args.map {
            MapChoice::Hopf => "hopf",
            MapChoice::Deformed => "deformed",
        },
    );
    if let Some(p) = &args.profile {
        manifest.set("profile", p.display().to_string());
        manifest.inputs.push(p.display().to_string());
    }
    if let Some(r) = args.radius {
        manifest.set("radius", r);
    }
    manifest.seed = ctx.seed;
    manifest.workers = ctx.workers;
    manifest.outputs = vec!["invariant.json".into()];

    let doc = match args.map {
        MapChoice::Hopf => {
            let grid = S3Grid::cubic(args.grid).with_workers(ctx.workers);
            let forms = hopf_invariant_forms(&grid).map_err(|e| e.to_string())?;
            let cs = hopf_invariant_cs(&grid).map_err(|e| e.to_string())?;
            let mut doc = serde_json::json!({
                "forms": forms,
                "cs": cs,
                "diff_forms_cs": (forms - cs).abs(),
                "boundary_cs": serde_json::Value::Null,
            });
            if let Some(path) = &args.profile {
                let prof = read_profile(path)?;
                let radius = args.radius.unwrap_or_else(|| prof.r_max());
                let b = boundary::boundary_hopf_number(&prof, &grid, radius)
                    .map_err(|e| e.to_string())?;
                doc["boundary_cs"] = serde_json::json!(b);
                doc["diff_forms_boundary"] = serde_json::json!((forms - b).abs());
            }
            doc
        }
        MapChoice::Deformed => {
            let r_max = args.radius.unwrap_or(2000.0);
            let spec = DeformedMapSpec::default_map(r_max).map_err(|e| e.to_string())?;
            let grid = DeformedGrid {
                n_psi: args.grid.max(8),
                n_x3: args.grid.max(8),
                workers: ctx.workers,
                ..DeformedGrid::default()
            };
            let h = deformed_invariant(&spec, &grid).map_err(|e| e.to_string())?;
            let reduced = hopfsol::hopf::deformed::analytic_reduction(&spec);
            serde_json::json!({
                "deformed": h,
                "abs": h.abs(),
                "one_d_reduction": reduced,
                "diff_vs_reduction": (h - reduced).abs(),
            })
        }
    };
    let text = serde_json::to_string_pretty(&doc)?;
    write_output(ctx, "invariant.json", &text)?;
    write_output(ctx, "manifest.json", &manifest.to_json())?;
    println!("{text}");
    Ok(0)
}

// ----------------------------------------------------------------- link

#[derive(Args, Debug, Clone)]
pub struct LinkArgs {
    /// First base point on S², e.g. 0,0,1
    #[arg(long)]
    pub p: String,
    /// Second base point on S²
    #[arg(long)]
    pub q: String,
    /// Samples per fiber
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
}

pub fn run_link(mut args: LinkArgs, ctx: &Ctx) -> CmdResult {
    if let Some(path) = &ctx.manifest {
        let m = load_manifest(path, "link")?;
        args = LinkArgs {
            p: m.get_str("p").ok_or("manifest missing p")?.to_string(),
            q: m.get_str("q").ok_or("manifest missing q")?.to_string(),
            samples: m.get_u64("samples").ok_or("manifest missing samples")? as usize,
        };
    }
    let p = unit_s2(&io::parse_vec3(&args.p)?)?;
    let q = unit_s2(&io::parse_vec3(&args.q)?)?;
    let dist = ((p.0[0] - q.0[0]).powi(2) + (p.0[1] - q.0[1]).powi(2) + (p.0[2] - q.0[2]).powi(2))
        .sqrt();
    if dist < 1e-6 {
        return Err("base points coincide; fibers are identical".into());
    }
    let c1 = preimage_circle(&p, args.samples).map_err(|e| e.to_string())?;
    let c2 = preimage_circle(&q, args.samples).map_err(|e| e.to_string())?;
    let pole = hopfsol::hopf::fiber::choose_pole(&c1, &c2);
    let lk = gauss_linking(&c1, &c2, &pole).map_err(|e| e.to_string())?;

    let mut manifest = RunManifest::new("link");
    manifest.set("p", args.p.clone());
    manifest.set("q", args.q.clone());
    manifest.set("samples", args.samples as u64);
    manifest.seed = ctx.seed;
    manifest.workers = ctx.workers;
    let doc = serde_json::json!({ "linking_number": lk, "samples": args.samples });
    let text = serde_json::to_string_pretty(&doc)?;
    write_output(ctx, "link.json", &text)?;
    write_output(ctx, "manifest.json", &manifest.to_json())?;
    println!("{text}");
    Ok(0)
}

fn unit_s2(v: &[f64; 3]) -> Result<S2Point, Box<dyn std::error::Error>> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n < 1e-12 {
        return Err("base point must be a nonzero 3-vector".into());
    }
    Ok(S2Point([v[0] / n, v[1] / n, v[2] / n]))
}

// --------------------------------------------------------------- verify

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Random probe points
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// Optional profile CSV for the field-strength checks
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

struct CheckRow {
    name: &'static str,
    residual: f64,
    threshold: f64,
}

pub fn run_verify(mut args: VerifyArgs, ctx: &Ctx) -> CmdResult {
    let mut seed = ctx.seed;
    if let Some(path) = &ctx.manifest {
        let m = load_manifest(path, "verify")?;
        args = VerifyArgs {
            points: m.get_u64("points").ok_or("manifest missing points")? as usize,
            profile: m.get_str("profile").map(PathBuf::from),
        };
        seed = m.seed;
    }
    let prof = match &args.profile {
        Some(path) => read_profile(path)?,
        None => RadialProfile::from_fn(
            60.0,
            3001,
            |r| r * r / (1.0 + r * r),
            |r| (0.7 * r).tanh().powi(2),
        ),
    };
    let vacuum = RadialProfile::constant(1.0, 10.0, 101);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let npts = args.points.max(10);
    let mut rows = Vec::new();

    // Pauli product identities, exhaustive over index tuples
    let mut res: f64 = 0.0;
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                for l in 1..=2 {
                    let (lhs, rhs) = hopfsol::algebra::pauli_identity_p1(i, j, k, l);
                    res = res.max((lhs - rhs).abs());
                    for a in 1..=3 {
                        let (lhs, rhs) = hopfsol::algebra::pauli_identity_p2(a, i, j, k, l);
                        res = res.max((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    rows.push(CheckRow {
        name: "pauli product identities",
        residual: res,
        threshold: 1e-12,
    });

    // m-field identities on random shells
    let mut res: f64 = 0.0;
    for _ in 0..npts {
        let x = random_point(&mut rng, 0.05, 45.0);
        res = res.max(identities::max_identity_residual(&x).map_err(|e| e.to_string())?);
    }
    rows.push(CheckRow {
        name: "m-field derivative identities",
        residual: res,
        threshold: 1e-8,
    });

    // analytic vs finite-difference field strength (relative)
    let mut res: f64 = 0.0;
    for _ in 0..npts.div_ceil(10) {
        let x = random_point(&mut rng, 0.3, 10.0);
        let r = x.norm();
        let fs = field_strength_analytic(&x, &prof).map_err(|e| e.to_string())?;
        let fd = field_strength_numeric(&x, &prof, 1e-5 * r).map_err(|e| e.to_string())?;
        let scale = (0..3)
            .map(|a| fs.real[a].max_abs())
            .fold(0.0f64, f64::max)
            .max(1e-30);
        for a in 0..3 {
            res = res.max(fs.real[a].sub(&fd[a]).max_abs() / scale);
        }
    }
    rows.push(CheckRow {
        name: "field strength analytic vs numeric",
        residual: res,
        threshold: 1e-6,
    });

    // ε F^a F^a vanishes pointwise
    let mut res: f64 = 0.0;
    for _ in 0..npts {
        let x = random_point(&mut rng, 0.3, 10.0);
        let (fwf, _) = theta_densities(&x, &prof).map_err(|e| e.to_string())?;
        res = res.max(fwf.abs());
    }
    rows.push(CheckRow {
        name: "F wedge F vanishes",
        residual: res,
        threshold: 1e-10,
    });

    // the U(1)-projected field strength matches the pulled-back area form
    // (opposite sign to the potential curl d𝓐) on the asymptotic sphere
    let mut res: f64 = 0.0;
    for _ in 0..npts.div_ceil(10) {
        let x = random_unit(&mut rng);
        let proj = boundary::u1_projected_field_strength(&x, &vacuum).map_err(|e| e.to_string())?;
        let w2 = hopfsol::hopf::omega2_pullback(&x).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            let u = random_tangent(&mut rng, &x);
            let v = random_tangent(&mut rng, &x);
            res = res.max((proj.bilinear(&u, &v) + w2.bilinear(&u, &v)).abs());
        }
    }
    rows.push(CheckRow {
        name: "boundary U(1) strength vs area form",
        residual: res,
        threshold: 1e-8,
    });

    let mut manifest = RunManifest::new("verify");
    manifest.set("points", args.points as u64);
    if let Some(p) = &args.profile {
        manifest.set("profile", p.display().to_string());
        manifest.inputs.push(p.display().to_string());
    }
    manifest.seed = seed;
    manifest.workers = ctx.workers;
    write_output(ctx, "manifest.json", &manifest.to_json())?;

    let mut table = String::new();
    let mut all_pass = true;
    writeln!(table, "{:<42} {:>12} {:>12} {:>7}", "check", "residual", "threshold", "status")?;
    for row in &rows {
        let pass = row.residual < row.threshold;
        all_pass &= pass;
        writeln!(
            table,
            "{:<42} {:>12.3e} {:>12.1e} {:>7}",
            row.name,
            row.residual,
            row.threshold,
            if pass { "pass" } else { "FAIL" }
        )?;
    }
    print!("{table}");
    write_output(ctx, "verify.txt", &table)?;
    Ok(if all_pass { 0 } else { 3 })
}

fn random_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Point4 {
    // log-uniform radius so both the core and the tail get probed
    let u: f64 = rng.gen_range(0.0..1.0);
    let r = lo * (hi / lo).powf(u);
    random_unit(rng).scale(r)
}

fn random_unit(rng: &mut ChaCha8Rng) -> Point4 {
    loop {
        let v = [
            gauss(rng),
            gauss(rng),
            gauss(rng),
            gauss(rng),
        ];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return Point4([v[0] / n, v[1] / n, v[2] / n, v[3] / n]);
        }
    }
}

fn random_tangent(rng: &mut ChaCha8Rng, x: &Point4) -> Point4 {
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

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

// --------------------------------------------------------------- export

#[derive(Args, Debug, Clone)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub what: ExportWhat,
    /// Profile CSV (for fg, density and fields)
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// First fiber base point (for fibers)
    #[arg(long)]
    pub p: Option<String>,
    /// Second fiber base point (for fibers)
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    /// Quartic coupling for the density split
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ExportWhat {
    Fg,
    Density,
    Fibers,
    Fields,
}

pub fn run_export(mut args: ExportArgs, ctx: &Ctx) -> CmdResult {
    if let Some(path) = &ctx.manifest {
        let m = load_manifest(path, "export")?;
        args = ExportArgs {
            what: match m.get_str("what") {
                Some("fg") => ExportWhat::Fg,
                Some("density") => ExportWhat::Density,
                Some("fibers") => ExportWhat::Fibers,
                Some("fields") => ExportWhat::Fields,
                other => return Err(format!("manifest has unknown what={other:?}").into()),
            },
            profile: m.get_str("profile").map(PathBuf::from),
            p: m.get_str("p").map(String::from),
            q: m.get_str("q").map(String::from),
            samples: m.get_u64("samples").unwrap_or(512) as usize,
            lambda: m.get_f64("lambda").unwrap_or(1.0),
        };
    }
    let mut manifest = RunManifest::new("export");
    manifest.seed = ctx.seed;
    manifest.workers = ctx.workers;
    manifest.set("samples", args.samples as u64);
    manifest.set("lambda", args.lambda);
    match args.what {
        ExportWhat::Fg => {
            manifest.set("what", "fg");
            let path = args.profile.as_ref().ok_or("--what fg needs --profile")?;
            manifest.set("profile", path.display().to_string());
            let prof = read_profile(path)?;
            write_output(ctx, "fg_vs_r.csv", &io::profile_to_csv(&prof))?;
            manifest.outputs.push("fg_vs_r.csv".into());
        }
        ExportWhat::Density => {
            manifest.set("what", "density");
            let path = args
                .profile
                .as_ref()
                .ok_or("--what density needs --profile")?;
            manifest.set("profile", path.display().to_string());
            let prof = read_profile(path)?;
            let params = ModelParams::new(args.lambda);
            write_output(
                ctx,
                "density_vs_r.csv",
                &io::density_csv(&prof, &params).map_err(|e| e.to_string())?,
            )?;
            manifest.outputs.push("density_vs_r.csv".into());
        }
        ExportWhat::Fibers => {
            manifest.set("what", "fibers");
            let p = args.p.as_ref().ok_or("--what fibers needs --p")?;
            let q = args.q.as_ref().ok_or("--what fibers needs --q")?;
            manifest.set("p", p.clone());
            manifest.set("q", q.clone());
            for (label, text) in [("p", p), ("q", q)] {
                let base = unit_s2(&io::parse_vec3(text)?)?;
                let curve = preimage_circle(&base, args.samples).map_err(|e| e.to_string())?;
                let name = format!("fiber_{label}.csv");
                write_output(ctx, &name, &io::fiber_to_csv(&curve))?;
                manifest.outputs.push(name);
            }
        }
        ExportWhat::Fields => {
            manifest.set("what", "fields");
            let path = args
                .profile
                .as_ref()
                .ok_or("--what fields needs --profile")?;
            manifest.set("profile", path.display().to_string());
            let prof = read_profile(path)?;
            // sample along a generic ray, skipping the origin guard
            let radii: Vec<f64> = prof
                .radii()
                .iter()
                .copied()
                .filter(|&r| r >= 1e-6)
                .take(args.samples)
                .collect();
            let dir = Point4([0.5, 0.5, 0.5, 0.5]);
            let text =
                io::field_samples_csv(&prof, &radii, &dir).map_err(|e| e.to_string())?;
            write_output(ctx, "field_samples.csv", &text)?;
            manifest.outputs.push("field_samples.csv".into());
        }
    }
    write_output(ctx, "manifest.json", &manifest.to_json())?;
    println!("export: wrote {:?}", manifest.outputs);
    Ok(0)
}
