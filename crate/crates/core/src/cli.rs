//! Command-line front end. [`run`] parses `argv`, writes artifacts and returns
//! the exit code: 0 when every check passes, 1 on a verified violation, 2 on a
//! usage or configuration error.
//!
//! JSON artifacts other than profile files are wrapped in an envelope holding
//! the command, the seed and `format_version`. Each artifact written to disk
//! gets a sidecar `.log` with the wall-clock start time and runtime; payloads
//! never contain timestamps.

use crate::geometry::{
    curvature_report, fd_curvature_oracle_adaptive, oracle_agreement, sample_grid, suggested_step, write_grid_csv,
    ExactCusp, FlatCrossSection, WarpedMetric,
};
use crate::profile::{search, verification_points, verify_with_tolerance, BuilderOptions, WarpProfile, HARD_TOLERANCE};
use crate::quadrature::QuadratureOptions;
use crate::spectral::{obstruction_chain, one_form_suite, poincare_suite, sw_budgets};
use crate::suite::{run_all, SuiteConfig};
use crate::topology::{
    baykur_hamada, enumerate_examples, l2_cohomology_dims, obstruction_verdict, pin2_dimension, ClosedFourManifold,
    MonopoleClassData, MonopoleKind, PinTwoData, TopologyError,
};
use crate::FORMAT_VERSION;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "CUSP_EINSTEIN_OUT_DIR";
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Parser)]
#[command(
    name = "cusp-einstein",
    version,
    about = "Cusp profiles, curvature checks and 4-manifold obstruction bookkeeping"
)]
struct Cli {
    /// Directory for artifacts without an explicit --out [env: CUSP_EINSTEIN_OUT_DIR, default: .]
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build, verify and export warping profiles.
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Closed-form curvature against the finite-difference oracle.
    #[command(subcommand)]
    Curvature(CurvatureCmd),
    /// Poincare, one-form and scalar-curvature budget checks.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Integer invariants, certificates and verdicts.
    #[command(subcommand)]
    Topology(TopologyCmd),
    /// Acceptance suites.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Args)]
struct Source {
    /// Search a profile of this depth.
    #[arg(long, group = "source")]
    j: Option<f64>,
    /// Load a profile JSON file.
    #[arg(long, group = "source")]
    profile: Option<PathBuf>,
    /// Use the exact cusp, truncated at --t-max where a finite domain is needed.
    #[arg(long, group = "source")]
    cusp: bool,
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
}

#[derive(Debug, Args)]
struct Output {
    /// Artifact path; `-` writes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ProfileCmd {
    /// Searches the profile of depth --j and writes it with its constraint report.
    Build {
        #[arg(long)]
        j: f64,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Re-verifies a profile on a grid.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, default_value_t = HARD_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Writes the curvature grid as CSV.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum CurvatureCmd {
    /// Samples curvature on a grid; JSON output compares against the oracle.
    Sample {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        abs_tol: f64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
enum SpectralCmd {
    /// Weighted Poincare inequality on seeded random functions.
    Poincare {
        #[command(flatten)]
        source: Source,
        /// Truncation T; defaults to the middle of the cap, or 5 on the cusp.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Energy/mass ratio of seeded invariant one-forms in the uniform window.
    Oneform {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Scalar-curvature budgets, with the obstruction chain when --c1-sq is given.
    Budgets {
        #[command(flatten)]
        source: Source,
        /// Truncation T; the whole domain when omitted.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, requires_all = ["chi", "sigma"])]
        c1_sq: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Sw,
    Pin2,
}

#[derive(Debug, Subcommand)]
enum TopologyCmd {
    /// Obstruction verdict for an ambient manifold and a monopole class.
    Verdict {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1_sq: i64,
        #[arg(long, value_enum, default_value_t = Kind::Sw)]
        kind: Kind,
        /// Whether the class pairs trivially with every cusp torus; unknown when omitted.
        #[arg(long)]
        adjunction: Option<bool>,
        #[command(flatten)]
        out: Output,
    },
    /// Searches a certificate for a target (chi, sigma).
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Certificate for X_n glued to S^2 x Sigma_g.
    Bh {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        g: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Reduced L^2 cohomology dimensions.
    L2dims {
        /// b0..b4, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        betti: Vec<i64>,
        /// b0..b4 of the pair (X, cusp ends), comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        relative: Vec<i64>,
        /// Torus pairing rows, `;` between rows and `,` between entries.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        pairing: String,
        #[command(flatten)]
        out: Output,
    },
    /// Expected dimension of the Pin(2)-monopole moduli space.
    Pin2 {
        #[arg(long)]
        b0: i64,
        #[arg(long)]
        b1: i64,
        #[arg(long)]
        bplus: i64,
        #[arg(long, allow_hyphen_values = true)]
        c1_sq_e: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
enum SuiteCmd {
    /// Every acceptance criterion; exit 0 iff all pass.
    All {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Verification grid for the profile search and windows.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// Exit status with the message explaining it.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn violation(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

struct Ctx {
    out_dir: PathBuf,
    command: String,
    started: SystemTime,
    clock: Instant,
}

impl Ctx {
    fn target(&self, out: &Output, default_name: &str) -> PathBuf {
        out.out.clone().unwrap_or_else(|| self.out_dir.join(default_name))
    }

    /// Writes `text` to `path` (or standard output for `-`) and a sidecar log.
    fn emit(&self, path: &Path, text: &str, status: &str) -> Result<(), Failure> {
        if path == Path::new("-") {
            print!("{text}");
            return Ok(());
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        }
        std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let started = self.started.duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
        let mut log = path.as_os_str().to_owned();
        log.push(".log");
        let line = format!(
            "command={} started_unix={started:.3} elapsed_s={:.3} status={status}\n",
            self.command,
            self.clock.elapsed().as_secs_f64()
        );
        std::fs::write(&log, line).map_err(|e| usage(format!("{}: {e}", PathBuf::from(&log).display())))?;
        println!("{}: {status}", path.display());
        Ok(())
    }

    fn envelope<T: Serialize>(&self, seed: Option<u64>, result: &T) -> String {
        let v = json!({
            "format_version": FORMAT_VERSION,
            "command": self.command,
            "seed": seed,
            "result": result,
        });
        serde_json::to_string_pretty(&v).expect("artifacts serialize") + "\n"
    }

    /// Envelope, write, then map `ok` to the exit status.
    fn finish<T: Serialize>(
        &self,
        out: &Output,
        name: &str,
        seed: Option<u64>,
        result: &T,
        ok: bool,
        what: &str,
    ) -> Result<(), Failure> {
        let path = self.target(out, name);
        let status = if ok { "pass" } else { "violation" };
        self.emit(&path, &self.envelope(seed, result), status)?;
        if ok {
            Ok(())
        } else {
            Err(violation(format!("{what}: see {}", path.display())))
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out_dir = resolve_out_dir(cli.out_dir.clone(), std::env::var_os(OUT_DIR_ENV));
    let ctx = Ctx { out_dir, command: command_name(&cli.command), started: SystemTime::now(), clock: Instant::now() };
    match dispatch(&ctx, cli.command) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{}: {}", ctx.command, f.message);
            f.code
        }
    }
}

/// `--out-dir`, else the environment variable, else the current directory.
fn resolve_out_dir(flag: Option<PathBuf>, env: Option<OsString>) -> PathBuf {
    flag.or_else(|| env.map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("."))
}

fn command_name(c: &Command) -> String {
    let (a, b) = match c {
        Command::Profile(p) => (
            "profile",
            match p {
                ProfileCmd::Build { .. } => "build",
                ProfileCmd::Verify { .. } => "verify",
                ProfileCmd::Export { .. } => "export",
            },
        ),
        Command::Curvature(_) => ("curvature", "sample"),
        Command::Spectral(s) => (
            "spectral",
            match s {
                SpectralCmd::Poincare { .. } => "poincare",
                SpectralCmd::Oneform { .. } => "oneform",
                SpectralCmd::Budgets { .. } => "budgets",
            },
        ),
        Command::Topology(t) => (
            "topology",
            match t {
                TopologyCmd::Verdict { .. } => "verdict",
                TopologyCmd::Enumerate { .. } => "enumerate",
                TopologyCmd::Bh { .. } => "bh",
                TopologyCmd::L2dims { .. } => "l2dims",
                TopologyCmd::Pin2 { .. } => "pin2",
            },
        ),
        Command::Suite(_) => ("suite", "all"),
    };
    format!("{a} {b}")
}

enum Loaded {
    Cusp(ExactCusp),
    Profile(Box<WarpProfile>),
}

impl Loaded {
    fn metric(&self) -> &dyn WarpedMetric {
        match self {
            Loaded::Cusp(c) => c,
            Loaded::Profile(p) => p.as_ref(),
        }
    }

    fn tag(&self) -> String {
        match self {
            Loaded::Cusp(_) => "exact-cusp".into(),
            Loaded::Profile(p) => format!("j={}", p.j),
        }
    }
}

fn positive(name: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {x}")))
    }
}

fn grid_at_least_two(grid: usize) -> Result<(), Failure> {
    if grid < 2 {
        Err(usage(format!("--grid must be at least 2, got {grid}")))
    } else {
        Ok(())
    }
}

/// `infinite_cusp` keeps the exact cusp unbounded for integrals to infinity.
fn load(source: &Source, grid: usize, infinite_cusp: bool) -> Result<Loaded, Failure> {
    if let Some(path) = &source.profile {
        return WarpProfile::load(path).map(|p| Loaded::Profile(Box::new(p))).map_err(|e| usage(e.to_string()));
    }
    if let Some(j) = source.j {
        let opts = BuilderOptions { verify_grid: grid, ..Default::default() };
        return search(j, &opts).map(|o| Loaded::Profile(Box::new(o.profile))).map_err(|e| usage(e.to_string()));
    }
    if source.cusp {
        positive("t-max", source.t_max)?;
        let cusp = if infinite_cusp {
            ExactCusp::infinite(FlatCrossSection::unit())
        } else {
            ExactCusp::new(FlatCrossSection::unit(), source.t_max)
        };
        return Ok(Loaded::Cusp(cusp));
    }
    Err(usage("one of --j, --profile or --cusp is required"))
}

fn topo(e: TopologyError) -> Failure {
    usage(e.to_string())
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<(), Failure> {
    match command {
        Command::Profile(p) => profile_cmd(ctx, p),
        Command::Curvature(CurvatureCmd::Sample { source, grid, format, rel_tol, abs_tol, out }) => {
            grid_at_least_two(grid)?;
            positive("rel-tol", rel_tol)?;
            positive("abs-tol", abs_tol)?;
            let loaded = load(&source, 10_000, false)?;
            let m = loaded.metric();
            let (ts, _) = verification_points(m, grid).map_err(|e| usage(e.to_string()))?;
            match format {
                Format::Csv => {
                    let rows = sample_grid(m, &ts).map_err(|e| usage(e.to_string()))?;
                    let mut buf = Vec::new();
                    write_grid_csv(&rows, &mut buf).map_err(|e| usage(e.to_string()))?;
                    let path = ctx.target(&out, "curvature-sample.csv");
                    ctx.emit(&path, &String::from_utf8(buf).expect("csv is utf-8"), "pass")
                }
                Format::Json => {
                    let mut points = Vec::with_capacity(ts.len());
                    let mut bad = 0;
                    for &t in &ts {
                        let closed = curvature_report(&m.jet(t)).map_err(|e| usage(e.to_string()))?;
                        if suggested_step(m, t) == 0.0 {
                            points.push(json!({ "t": t, "closed": closed, "skipped": "no centred stencil at a breakpoint or domain end" }));
                            continue;
                        }
                        let row = match fd_curvature_oracle_adaptive(m, t) {
                            Ok((fd, h)) => {
                                let a = oracle_agreement(&closed, &fd, rel_tol, abs_tol);
                                bad += usize::from(!a.ok);
                                json!({ "t": t, "step": h, "closed": closed, "oracle": fd.report, "agree": a.ok, "worst_relative": a.worst_relative, "worst_field": a.worst_field })
                            }
                            Err(e) => {
                                bad += 1;
                                json!({ "t": t, "closed": closed, "error": e.to_string() })
                            }
                        };
                        points.push(row);
                    }
                    let result = json!({ "profile_ref": loaded.tag(), "rel_tol": rel_tol, "abs_tol": abs_tol, "disagreements": bad, "points": points });
                    ctx.finish(&out, "curvature-sample.json", None, &result, bad == 0, "oracle disagreement")
                }
            }
        }
        Command::Spectral(s) => spectral_cmd(ctx, s),
        Command::Topology(t) => topology_cmd(ctx, t),
        Command::Suite(SuiteCmd::All { seed, grid, out }) => {
            grid_at_least_two(grid)?;
            let config = SuiteConfig { seed, verify_grid: grid, ..Default::default() };
            let report = run_all(&config).map_err(usage)?;
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            let path = ctx.target(&out, "suite-all.json");
            ctx.emit(&path, &(report.to_json() + "\n"), if report.passed { "pass" } else { "violation" })?;
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<String> =
                    report.criteria.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
                Err(violation(format!("criteria {} failed", failed.join(", "))))
            }
        }
    }
}

fn profile_cmd(ctx: &Ctx, cmd: ProfileCmd) -> Result<(), Failure> {
    match cmd {
        ProfileCmd::Build { j, grid, out } => {
            grid_at_least_two(grid)?;
            let opts = BuilderOptions { verify_grid: grid, ..Default::default() };
            let outcome = search(j, &opts).map_err(|e| usage(e.to_string()))?;
            let path = ctx.target(&out, &format!("profile-j{j}.json"));
            let ok = outcome.report.pass;
            let status = if ok { "pass" } else { "violation" };
            ctx.emit(&path, &(outcome.profile.save_json() + "\n"), status)?;
            if path != Path::new("-") {
                let mut report_path = path.clone().into_os_string();
                report_path.push(".report.json");
                ctx.emit(Path::new(&report_path), &ctx.envelope(None, &outcome), status)?;
            }
            if ok {
                Ok(())
            } else {
                let w = &outcome.report.worst;
                Err(violation(format!(
                    "best-effort profile written; {} has slack {:e} at t = {}",
                    w.constraint, w.slack, w.t
                )))
            }
        }
        ProfileCmd::Verify { source, grid, tolerance, out } => {
            grid_at_least_two(grid)?;
            positive("tolerance", tolerance)?;
            let loaded = load(&source, grid, false)?;
            let report = verify_with_tolerance(loaded.metric(), grid, tolerance).map_err(|e| usage(e.to_string()))?;
            let result = json!({ "profile_ref": loaded.tag(), "report": report });
            ctx.finish(&out, "profile-verify.json", None, &result, report.pass, "constraint violation")
        }
        ProfileCmd::Export { source, grid, out } => {
            grid_at_least_two(grid)?;
            let loaded = load(&source, 10_000, false)?;
            let m = loaded.metric();
            let (ts, _) = verification_points(m, grid).map_err(|e| usage(e.to_string()))?;
            let rows = sample_grid(m, &ts).map_err(|e| usage(e.to_string()))?;
            let mut buf = Vec::new();
            write_grid_csv(&rows, &mut buf).map_err(|e| usage(e.to_string()))?;
            ctx.emit(&ctx.target(&out, "profile-grid.csv"), &String::from_utf8(buf).expect("csv is utf-8"), "pass")
        }
    }
}

fn spectral_cmd(ctx: &Ctx, cmd: SpectralCmd) -> Result<(), Failure> {
    let opts = QuadratureOptions::default();
    match cmd {
        SpectralCmd::Poincare { source, t, cases, seed, out } => {
            let loaded = load(&source, 10_000, true)?;
            let t = match (t, &loaded) {
                (Some(t), _) => t,
                (None, Loaded::Cusp(_)) => 5.0,
                (None, Loaded::Profile(p)) => p.j + p.epsilon + 0.5 * p.cap_length(),
            };
            let report = poincare_suite(loaded.metric(), &loaded.tag(), seed, cases, t, &opts)
                .map_err(|e| usage(e.to_string()))?;
            ctx.finish(&out, "spectral-poincare.json", Some(seed), &report, report.passed(), "Poincare violation")
        }
        SpectralCmd::Oneform { source, cases, seed, grid, out } => {
            grid_at_least_two(grid)?;
            let loaded = load(&source, grid, false)?;
            let report = one_form_suite(loaded.metric(), &loaded.tag(), seed, cases, grid, &opts)
                .map_err(|e| usage(e.to_string()))?;
            ctx.finish(&out, "spectral-oneform.json", Some(seed), &report, report.passed(), "one-form violation")
        }
        SpectralCmd::Budgets { source, t, c1_sq, chi, sigma, out } => {
            let loaded = load(&source, 10_000, true)?;
            let t = t.unwrap_or_else(|| loaded.metric().domain().1);
            let budget = sw_budgets(loaded.metric(), t, &opts).map_err(|e| usage(e.to_string()))?;
            let chain = match (c1_sq, chi, sigma) {
                (Some(c), Some(x), Some(s)) => Some(obstruction_chain(&budget, c, x, s)),
                _ => None,
            };
            let result = json!({ "profile_ref": loaded.tag(), "budget": budget, "chain": chain });
            ctx.finish(&out, "spectral-budgets.json", None, &result, true, "")
        }
    }
}

fn parse_pairing(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| usage(format!("--pairing entry {x:?}: {e}"))))
                .collect()
        })
        .collect()
}

fn five(name: &str, v: &[i64]) -> Result<[i64; 5], Failure> {
    v.try_into().map_err(|_| usage(format!("--{name} needs exactly 5 values")))
}

fn topology_cmd(ctx: &Ctx, cmd: TopologyCmd) -> Result<(), Failure> {
    match cmd {
        TopologyCmd::Verdict { chi, sigma, c1_sq, kind, adjunction, out } => {
            let ambient = ClosedFourManifold {
                name: "ambient".into(),
                chi,
                sigma,
                b_plus: 0,
                b_one: 0,
                symplectic: false,
                pieces: Vec::new(),
            };
            let kind = match kind {
                Kind::Sw => MonopoleKind::SeibergWitten,
                Kind::Pin2 => MonopoleKind::PinMinus2,
            };
            let alpha = MonopoleClassData { c1_sq, adjunction_trivial: adjunction, kind };
            let verdict = obstruction_verdict(&ambient, &alpha).map_err(topo)?;
            ctx.finish(&out, "topology-verdict.json", None, &verdict, true, "")
        }
        TopologyCmd::Enumerate { chi, sigma, out } => {
            let cert = enumerate_examples(chi, sigma).map_err(topo)?;
            ctx.finish(&out, "topology-enumerate.json", None, &cert, cert.valid, "certificate checks fail")
        }
        TopologyCmd::Bh { n, g, out } => {
            let cert = baykur_hamada(n, g).map_err(topo)?;
            ctx.finish(&out, "topology-bh.json", None, &cert, cert.valid, "certificate checks fail")
        }
        TopologyCmd::L2dims { betti, relative, pairing, out } => {
            let dims =
                l2_cohomology_dims(&five("betti", &betti)?, &parse_pairing(&pairing)?, &five("relative", &relative)?)
                    .map_err(topo)?;
            ctx.finish(&out, "topology-l2dims.json", None, &dims, true, "")
        }
        TopologyCmd::Pin2 { b0, b1, bplus, c1_sq_e, sigma, out } => {
            let data = PinTwoData { b0_l: b0, b1_l: b1, bplus_l: bplus, c1_sq_e };
            let d = pin2_dimension(&data, sigma).map_err(topo)?;
            let result = json!({ "data": data, "sigma": sigma.to_string(), "dimension": d.to_string() });
            ctx.finish(&out, "topology-pin2.json", None, &result, true, "")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn cli(args: &[&str]) -> i32 {
        let mut argv = vec!["cusp-einstein"];
        argv.extend_from_slice(args);
        run(argv)
    }

    fn read_json(path: &Path) -> Value {
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn bh_certificate_is_obstructed() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("bh.json");
        assert_eq!(cli(&["topology", "bh", "--n", "5", "--g", "5", "--out", out.to_str().unwrap()]), 0);
        let v = read_json(&out);
        assert_eq!(v["result"]["checks"]["verdict"]["obstructed"], Value::Bool(true));
        assert_eq!(v["result"]["ambient"]["chi"], "6");
        assert!(dir.path().join("bh.json.log").exists());
        assert_eq!(cli(&["topology", "bh", "--n", "5", "--g", "4", "--out", out.to_str().unwrap()]), 1);
        assert_eq!(cli(&["topology", "bh", "--n", "4", "--g", "5", "--out", out.to_str().unwrap()]), 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(cli(&["profile", "verify", "--grid", "1"]), 2);
        assert_eq!(cli(&["profile", "verify", "--j", "2", "--grid", "1"]), 2);
        assert_eq!(cli(&["no-such-command"]), 2);
        assert_eq!(cli(&["topology", "enumerate", "--chi", "3", "--sigma", "0"]), 2);
        assert_eq!(cli(&["topology", "verdict", "--chi", "6", "--sigma", "0", "--c1-sq", "48"]), 2);
        assert_eq!(cli(&["spectral", "poincare"]), 2);
        assert_eq!(cli(&["profile", "build", "--j", "1"]), 2);
    }

    #[test]
    fn every_subcommand_exists() {
        for path in [
            vec!["profile", "build"],
            vec!["profile", "verify"],
            vec!["profile", "export"],
            vec!["curvature", "sample"],
            vec!["spectral", "poincare"],
            vec!["spectral", "oneform"],
            vec!["spectral", "budgets"],
            vec!["topology", "verdict"],
            vec!["topology", "enumerate"],
            vec!["topology", "bh"],
            vec!["topology", "l2dims"],
            vec!["topology", "pin2"],
            vec!["suite", "all"],
        ] {
            let mut args = path.clone();
            args.push("--help");
            assert_eq!(cli(&args), 0, "{path:?}");
        }
    }

    #[test]
    fn built_profile_round_trips_and_status_follows_the_report() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("p2.json");
        let code = cli(&["profile", "build", "--j", "2", "--grid", "2000", "--out", out.to_str().unwrap()]);
        let report = read_json(&dir.path().join("p2.json.report.json"));
        let pass = report["result"]["report"]["pass"].as_bool().unwrap();
        assert_eq!(code, if pass { 0 } else { 1 });
        let text = std::fs::read_to_string(&out).unwrap();
        let p = WarpProfile::load(&out).unwrap();
        assert_eq!(p.save_json() + "\n", text);
        assert_eq!(p.j, 2.0);

        let csv = dir.path().join("grid.csv");
        assert_eq!(
            cli(&[
                "profile",
                "export",
                "--profile",
                out.to_str().unwrap(),
                "--grid",
                "20",
                "--out",
                csv.to_str().unwrap()
            ]),
            0
        );
        let body = std::fs::read_to_string(&csv).unwrap();
        assert!(body.starts_with("t,phi,dphi,d2phi,psi,dpsi,d2psi,ric_t,"));
        let verify = dir.path().join("v.json");
        let code = cli(&[
            "profile",
            "verify",
            "--profile",
            out.to_str().unwrap(),
            "--grid",
            "2000",
            "--out",
            verify.to_str().unwrap(),
        ]);
        assert_eq!(code, if pass { 0 } else { 1 });
    }

    #[test]
    fn seeded_outputs_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let run_twice = |args: &[&str], name: &str| {
            let a = dir.path().join(format!("{name}-a.json"));
            let b = dir.path().join(format!("{name}-b.json"));
            for p in [&a, &b] {
                let mut full = args.to_vec();
                full.extend_from_slice(&["--out", p.to_str().unwrap()]);
                assert_eq!(cli(&full), 0, "{args:?}");
            }
            let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
            assert_eq!(x, y, "{args:?}");
            read_json(&a)
        };
        let v = run_twice(&["spectral", "poincare", "--cusp", "--cases", "12", "--seed", "7"], "poincare");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["result"]["seed"], 7);
        run_twice(&["spectral", "oneform", "--cusp", "--cases", "6", "--seed", "3", "--grid", "500"], "oneform");
        run_twice(&["spectral", "budgets", "--cusp", "--c1-sq", "48", "--chi", "6", "--sigma", "0"], "budgets");
        run_twice(&["topology", "enumerate", "--chi", "6", "--sigma", "0"], "enumerate");
        run_twice(&["curvature", "sample", "--cusp", "--t-max", "4", "--grid", "40"], "sample");
    }

    #[test]
    fn topology_outputs_use_decimal_strings() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("l2.json");
        let code = cli(&[
            "topology",
            "l2dims",
            "--betti",
            "1,0,4,0,0",
            "--relative",
            "0,0,0,1,0",
            "--pairing",
            "2,4;1,2",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let v = read_json(&out);
        assert_eq!(v["result"]["dims"], serde_json::json!(["1", "0", "3", "1", "0"]));
        let out = dir.path().join("pin2.json");
        let code = cli(&[
            "topology",
            "pin2",
            "--b0",
            "0",
            "--b1",
            "0",
            "--bplus",
            "1",
            "--c1-sq-e",
            "4",
            "--sigma",
            "0",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(read_json(&out)["result"]["dimension"], "0");
        let out = dir.path().join("verdict.json");
        let code = cli(&[
            "topology",
            "verdict",
            "--chi",
            "6",
            "--sigma",
            "0",
            "--c1-sq",
            "48",
            "--adjunction",
            "true",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(read_json(&out)["result"]["threshold"], "16");
    }

    #[test]
    fn default_directory_precedence() {
        let flag = Some(PathBuf::from("a"));
        let env = Some(OsString::from("b"));
        assert_eq!(resolve_out_dir(flag.clone(), env.clone()), PathBuf::from("a"));
        assert_eq!(resolve_out_dir(None, env), PathBuf::from("b"));
        assert_eq!(resolve_out_dir(None, None), PathBuf::from("."));
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(cli(&["--out-dir", dir.path().to_str().unwrap(), "topology", "bh", "--n", "5", "--g", "5"]), 0);
        assert!(dir.path().join("topology-bh.json").exists());
    }
}
