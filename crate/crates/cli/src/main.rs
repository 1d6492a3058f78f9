//! Command-line front end for the `relmodes` library.
//!
//! Subcommands:
//! - `verify`   — run the randomized verification suite (exit 0 iff all pass)
//! - `boost`    — rest-to-moving transmutator of a massive momentum
//! - `witt`     — lightlike transmutator family (Sylvester/Witt charts)
//! - `kernel`   — dump a mode kernel over a time grid, or classify entries
//! - `rep`      — time-development matrices (definite and indefinite metric)
//! - `triangle` — coupling-triangle solver and mass spectrum
//!
//! Exit codes: 0 success / all checks passed, 1 runtime or check failure,
//! 2 usage error (bad flags, bad config file, wrong argument combinations).

mod config;
mod render;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, Vector3};

use relmodes::electroweak::{
    fine_structure_tension, mass_spectrum, solve_triangle_with_branch, weinberg_relations,
    ElectroweakError, MixingBranch, TriangleInput,
};
use relmodes::kernels::{ode_order_check, ModeKernel, OdeOrder, SpinorVariant};
use relmodes::numerics::{format_g, format_g17};
use relmodes::time_reps::{
    oscillator_kernel, two_position_kernel, u11_generator, u11_matrix, IndefiniteRepParams,
    KernelVariant, OscillatorParams, TwoPositionParams,
};
use relmodes::transmutators::{
    lorentz_boost, sylvester_witt, weyl_boost, witt_basis_change, witt_rotation_so3,
    witt_rotation_su2,
};
use relmodes::{
    all_pass, render_report, run_verify, GaugeTriple, LightlikeMomentum, MassiveMomentum,
    ReportFormat, VerifyConfig,
};

use crate::config::FileConfig;
use crate::render::{render_matrix, render_pairs, to_dynamic, Payload};

/// Relativistic mode kernels, little-group transmutators, and the
/// electroweak coupling triangle.
#[derive(Parser)]
#[command(name = "relmodes", version, about, propagate_version = true)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Globals {
    /// Optional key=value config file mirroring the global flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Seed of the verification suite's random streams.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Base number of random cases per check.
    #[arg(long, global = true, value_name = "N")]
    cases: Option<usize>,
    /// Override the tolerance of every absolute-residual check.
    #[arg(long = "tol-abs", global = true, value_name = "X")]
    tol_abs: Option<f64>,
    /// Override the tolerance of every relative-residual check.
    #[arg(long = "tol-rel", global = true, value_name = "X")]
    tol_rel: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, value_name = "FMT")]
    format: Option<FormatArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized verification suite and print per-check residuals.
    Verify,
    /// Print the boost carrying the rest momentum `(m,0,0,0)` to `(q0,q)`.
    Boost(BoostArgs),
    /// Print a lightlike transmutator: the metric-exchanging map or one of
    /// its factors.
    Witt(WittArgs),
    /// Dump a mode kernel over a time grid as CSV, or classify its entries
    /// by resonance order.
    Kernel(KernelArgs),
    /// Print a time-development matrix (oscillator, indefinite-metric, or
    /// coupled two-position form).
    Rep(RepArgs),
    /// Solve the coupling triangle from any two quantities and print the
    /// derived couplings, angles, and masses.
    Triangle(TriangleArgs),
}

#[derive(Args)]
struct BoostArgs {
    /// Mass (positive).
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
    /// Spatial momentum `qx,qy,qz`.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    q: Vector3<f64>,
    /// Print the 2x2 Hermitian spinor representative instead of the 4x4
    /// vector boost.
    #[arg(long)]
    spinor: bool,
}

#[derive(Args)]
struct WittArgs {
    /// Lightlike spatial momentum `qx,qy,qz` (energy is `|q|`).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    q: Vector3<f64>,
    /// Which factor to print.
    #[arg(long, value_enum, default_value_t = WittPart::Full)]
    part: WittPart,
}

#[derive(Clone, Copy, ValueEnum)]
enum WittPart {
    /// Full metric-exchanging transmutator `H(q)`.
    Full,
    /// 2x2 rotation diagonalizing the helicity projectors.
    Su2,
    /// 4x4 rotation taking the z-axis to the momentum direction.
    So3,
    /// Constant change of basis between the two metric forms.
    Basis,
}

#[derive(Args)]
struct KernelArgs {
    /// Kernel family.
    #[arg(long, value_enum)]
    species: SpeciesArg,
    /// Mass (massive families).
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Coupling constant (massive families; defaults to the mass-normalized
    /// value).
    #[arg(long, allow_negative_numbers = true)]
    coupling: Option<f64>,
    /// Spatial momentum `qx,qy,qz` (massive, spinor, and rest families).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    q: Option<Vector3<f64>>,
    /// Energy (witt family; positive).
    #[arg(long, allow_negative_numbers = true)]
    q0: Option<f64>,
    /// Gauge normalization `mu^2 > 0` (rest and witt families).
    #[arg(long, allow_negative_numbers = true)]
    mu2: Option<f64>,
    /// Gauge-fixing weight (rest and witt families; nonzero).
    #[arg(long = "eps-sigma2", allow_negative_numbers = true)]
    eps_sigma2: Option<f64>,
    /// Use the resonance-free gauge point (weight = -mu^2).
    #[arg(long, conflicts_with = "eps_sigma2")]
    feynman: bool,
    /// Bracket variant; defaults to the family's canonical bracket.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Grid start.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t0: f64,
    /// Grid end.
    #[arg(long, default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
    t1: f64,
    /// Number of grid points (at least 2).
    #[arg(long, default_value_t = 25)]
    steps: usize,
    /// Print the per-entry resonance classification instead of the dump.
    #[arg(long)]
    classify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpeciesArg {
    /// Massive vector, 4x4 embedded form.
    Massive,
    /// Massive vector, 3x3 spin block.
    Spin,
    /// Massless Weyl spinor, 2x2.
    Spinor,
    /// Massless vector in the rest-type basis, 4x4.
    Rest,
    /// Massless vector in the lightlike (Witt) basis, 4x4.
    Witt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Commutator,
    Anticommutator,
    Fock,
}

#[derive(Args)]
struct RepArgs {
    /// Representation family.
    #[arg(long, value_enum)]
    kind: RepKind,
    /// Frequency (u11 family).
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Indefinite-metric mass scale, nonzero (u11 family).
    #[arg(long, allow_negative_numbers = true)]
    m0: Option<f64>,
    /// Mass (oscillator and two-position families).
    #[arg(long, allow_negative_numbers = true)]
    mass: Option<f64>,
    /// Second mass, same sign as the first (two-position family).
    #[arg(long = "mass-prime", allow_negative_numbers = true)]
    mass_prime: Option<f64>,
    /// Spring constant (oscillator and two-position families).
    #[arg(long, allow_negative_numbers = true)]
    spring: Option<f64>,
    /// Time argument.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    /// Bracket variant (oscillator family).
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Print the generator instead of the finite matrix (u11 family).
    #[arg(long)]
    generator: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepKind {
    /// Indefinite-metric time development with a nilpotent part.
    U11,
    /// Harmonic oscillator position/momentum kernel.
    Oscillator,
    /// Coupled pair of positions with only one momentum.
    TwoPosition,
}

#[derive(Args)]
struct TriangleArgs {
    /// Hypercharge coupling (leg).
    #[arg(long)]
    gy: Option<f64>,
    /// Isospin coupling (leg).
    #[arg(long)]
    gw: Option<f64>,
    /// Neutral coupling (hypotenuse).
    #[arg(long)]
    gz: Option<f64>,
    /// Electromagnetic coupling (altitude).
    #[arg(long)]
    ge: Option<f64>,
    /// Mixing angle in radians.
    #[arg(long = "theta-w", allow_negative_numbers = true)]
    theta_w: Option<f64>,
    /// Hypercharge boson mass (requires --fermi-mass).
    #[arg(long)]
    my: Option<f64>,
    /// Charged boson mass (requires --fermi-mass).
    #[arg(long)]
    mw: Option<f64>,
    /// Neutral boson mass (requires --fermi-mass).
    #[arg(long)]
    mz: Option<f64>,
    /// Electromagnetic mass unit (requires --fermi-mass).
    #[arg(long)]
    me: Option<f64>,
    /// Common mass scale converting couplings to masses.
    #[arg(long = "fermi-mass")]
    fermi_mass: Option<f64>,
    /// Mixing branch for the (g_z, g_e) input pair.
    #[arg(long, value_enum, default_value_t = BranchArg::Lower)]
    branch: BranchArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    /// Mixing angle at or below pi/4 (g_Y <= g_W).
    Lower,
    /// Mixing angle at or above pi/4 (g_Y >= g_W).
    Upper,
}

/// A failed invocation: usage errors exit with 2, runtime errors with 1.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => m,
        }
    }
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl Display) -> Failure {
    Failure::Runtime(e.to_string())
}

/// Print a line to stdout. A closed pipe (e.g. piping into `head`) is not
/// an error; any other write failure is.
fn emit(text: &str) -> Result<(), Failure> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(runtime(format!("cannot write to stdout: {e}"))),
    }
}

fn parse_vec3(s: &str) -> Result<Vector3<f64>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected `x,y,z` with three numbers, got `{s}`"));
    }
    let mut v = [0.0f64; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad component `{}`: {e}", part.trim()))?;
    }
    Ok(Vector3::new(v[0], v[1], v[2]))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

/// Resolved global options: the verification configuration and the output
/// format shared by the evaluation subcommands.
struct Effective {
    verify: VerifyConfig,
    format: ReportFormat,
}

fn resolve_globals(globals: &Globals) -> Result<Effective, Failure> {
    let file = match &globals.config {
        Some(path) => config::load(path).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let format = globals
        .format
        .map(ReportFormat::from)
        .or(file.format)
        .unwrap_or_default();
    let defaults = VerifyConfig::default();
    Ok(Effective {
        verify: VerifyConfig {
            seed: globals.seed.or(file.seed).unwrap_or(defaults.seed),
            cases: globals.cases.or(file.cases).unwrap_or(defaults.cases),
            tol_abs: globals.tol_abs.or(file.tol_abs),
            tol_rel: globals.tol_rel.or(file.tol_rel),
            format,
        },
        format,
    })
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let eff = resolve_globals(&cli.globals)?;
    match &cli.command {
        Command::Verify => {
            let reports = run_verify(&eff.verify).map_err(usage)?;
            emit(&render_report(&eff.verify, &reports))?;
            Ok(if all_pass(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Boost(args) => cmd_boost(args, eff.format),
        Command::Witt(args) => cmd_witt(args, eff.format),
        Command::Kernel(args) => cmd_kernel(args, eff.format),
        Command::Rep(args) => cmd_rep(args, eff.format),
        Command::Triangle(args) => cmd_triangle(args, eff.format),
    }
}

fn cmd_boost(args: &BoostArgs, format: ReportFormat) -> Result<ExitCode, Failure> {
    let p = MassiveMomentum::new(args.m, args.q).map_err(runtime)?;
    let label = format!(
        "boost for m = {}, q = ({}, {}, {})",
        format_g(p.m(), 6),
        format_g(args.q.x, 6),
        format_g(args.q.y, 6),
        format_g(args.q.z, 6)
    );
    let payload = if args.spinor {
        Payload::Complex(to_dynamic(&weyl_boost(&p)))
    } else {
        Payload::Real(to_dynamic(&lorentz_boost(&p)))
    };
    emit(&render_matrix(format, &label, &payload))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_witt(args: &WittArgs, format: ReportFormat) -> Result<ExitCode, Failure> {
    let q = LightlikeMomentum::new(args.q).map_err(runtime)?;
    let point = format!(
        "q = ({}, {}, {})",
        format_g(args.q.x, 6),
        format_g(args.q.y, 6),
        format_g(args.q.z, 6)
    );
    let (label, payload) = match args.part {
        WittPart::Full => (
            format!("metric-exchanging transmutator at {point}"),
            Payload::Real(to_dynamic(&sylvester_witt(&q).map_err(runtime)?)),
        ),
        WittPart::Su2 => (
            format!("helicity-diagonalizing rotation at {point}"),
            Payload::Complex(to_dynamic(&witt_rotation_su2(&q).map_err(runtime)?)),
        ),
        WittPart::So3 => (
            format!("axis-aligning rotation at {point}"),
            Payload::Real(to_dynamic(&witt_rotation_so3(&q).map_err(runtime)?)),
        ),
        WittPart::Basis => (
            "constant basis change between the metric forms".to_owned(),
            Payload::Real(to_dynamic(&witt_basis_change())),
        ),
    };
    emit(&render_matrix(format, &label, &payload))?;
    Ok(ExitCode::SUCCESS)
}

/// Build the requested kernel plus the resonance frequency used by the
/// classification probe.
fn build_kernel(args: &KernelArgs) -> Result<(ModeKernel, f64), Failure> {
    let gauge = |args: &KernelArgs| -> Result<GaugeTriple, Failure> {
        let mu2 = args
            .mu2
            .ok_or_else(|| usage("this species requires --mu2"))?;
        if args.feynman {
            GaugeTriple::feynman(mu2).map_err(runtime)
        } else {
            let eps = args.eps_sigma2.ok_or_else(|| {
                usage("this species requires --eps-sigma2 (or --feynman)")
            })?;
            GaugeTriple::new(mu2, eps).map_err(runtime)
        }
    };
    let need_q = |args: &KernelArgs| -> Result<Vector3<f64>, Failure> {
        args.q.ok_or_else(|| usage("this species requires --q"))
    };
    match args.species {
        SpeciesArg::Massive | SpeciesArg::Spin => {
            let m = args.m.ok_or_else(|| usage("this species requires --m"))?;
            let q = need_q(args)?;
            let p = match args.coupling {
                Some(lambda) => {
                    relmodes::kernels::MassiveVectorParams::new(m, lambda).map_err(runtime)?
                }
                None => {
                    relmodes::kernels::MassiveVectorParams::with_default_coupling(m)
                        .map_err(runtime)?
                }
            };
            let variant = match args.variant {
                None | Some(VariantArg::Commutator) => KernelVariant::Commutator,
                Some(VariantArg::Fock) => KernelVariant::Fock,
                Some(VariantArg::Anticommutator) => {
                    return Err(usage(
                        "massive vector kernels take --variant commutator or fock",
                    ))
                }
            };
            let q0 = MassiveMomentum::new(m, q).map_err(runtime)?.q0();
            let kernel = match args.species {
                SpeciesArg::Massive => ModeKernel::massive_vector(p, q, variant),
                _ => ModeKernel::massive_vector_spin(p, q, variant),
            }
            .map_err(runtime)?;
            Ok((kernel, q0))
        }
        SpeciesArg::Spinor => {
            let q = LightlikeMomentum::new(need_q(args)?).map_err(runtime)?;
            let variant = match args.variant {
                None | Some(VariantArg::Anticommutator) => SpinorVariant::Anticommutator,
                Some(VariantArg::Commutator) => SpinorVariant::Commutator,
                Some(VariantArg::Fock) => {
                    return Err(usage(
                        "spinor kernels take --variant anticommutator or commutator",
                    ))
                }
            };
            let q0 = q.q0();
            Ok((ModeKernel::massless_spinor(q, variant), q0))
        }
        SpeciesArg::Rest => {
            if !matches!(args.variant, None | Some(VariantArg::Commutator)) {
                return Err(usage("this species only has the commutator variant"));
            }
            let q = LightlikeMomentum::new(need_q(args)?).map_err(runtime)?;
            let g = gauge(args)?;
            let q0 = q.q0();
            Ok((ModeKernel::massless_vector_rest(q, g), q0))
        }
        SpeciesArg::Witt => {
            if !matches!(args.variant, None | Some(VariantArg::Commutator)) {
                return Err(usage("this species only has the commutator variant"));
            }
            let q0 = args
                .q0
                .ok_or_else(|| usage("this species requires --q0"))?;
            let g = gauge(args)?;
            let kernel = ModeKernel::massless_vector_witt(q0, g).map_err(runtime)?;
            Ok((kernel, q0))
        }
    }
}

fn cmd_kernel(args: &KernelArgs, format: ReportFormat) -> Result<ExitCode, Failure> {
    let (kernel, q0) = build_kernel(args)?;
    if args.classify {
        let table = ode_order_check(&kernel, q0).map_err(runtime)?;
        emit(&render_classification(format, q0, &table))?;
        return Ok(ExitCode::SUCCESS);
    }
    if args.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    if !(args.t1.is_finite() && args.t0.is_finite()) {
        return Err(usage("--t0 and --t1 must be finite"));
    }
    emit(&kernel_csv(&kernel, args.t0, args.t1, args.steps))?;
    Ok(ExitCode::SUCCESS)
}

/// Time grid dump: columns `x0`, then `re`/`im` of every entry in row-major
/// order, one header row naming the entries, floats at 17 significant
/// digits.
fn kernel_csv(kernel: &ModeKernel, t0: f64, t1: f64, steps: usize) -> String {
    let dim = kernel.dim();
    let mut out = String::from("x0");
    for i in 0..dim {
        for j in 0..dim {
            out.push_str(&format!(",re_{i}{j},im_{i}{j}"));
        }
    }
    for k in 0..steps {
        let x0 = t0 + (t1 - t0) * (k as f64) / ((steps - 1) as f64);
        let m = kernel.evaluate(x0);
        out.push('\n');
        out.push_str(&format_g17(x0));
        for i in 0..dim {
            for j in 0..dim {
                let z = m[(i, j)];
                out.push_str(&format!(",{},{}", format_g17(z.re), format_g17(z.im)));
            }
        }
    }
    out
}

fn render_classification(format: ReportFormat, q0: f64, table: &[Vec<OdeOrder>]) -> String {
    let word = |o: &OdeOrder| match o {
        OdeOrder::Zero => "zero",
        OdeOrder::Pole => "pole",
        OdeOrder::Dipole => "dipole",
    };
    match format {
        ReportFormat::Text => {
            let mut out = format!("resonance orders at q0 = {}:", format_g(q0, 6));
            for row in table {
                out.push_str("\n  ");
                let cells: Vec<String> =
                    row.iter().map(|o| format!("{:<6}", word(o))).collect();
                out.push_str(cells.join(" ").trim_end());
            }
            out
        }
        ReportFormat::Json => {
            let mut out = String::from("{\n");
            out.push_str(&format!("  \"q0\": {},\n", format_g17(q0)));
            out.push_str("  \"orders\": [\n");
            for (i, row) in table.iter().enumerate() {
                let cells: Vec<String> =
                    row.iter().map(|o| format!("\"{}\"", word(o))).collect();
                out.push_str(&format!("    [{}]", cells.join(", ")));
                out.push_str(if i + 1 == table.len() { "\n" } else { ",\n" });
            }
            out.push_str("  ]\n}");
            out
        }
        ReportFormat::Csv => {
            let rows: Vec<String> = table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|o| word(o).to_owned())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            rows.join("\n")
        }
    }
}

fn cmd_rep(args: &RepArgs, format: ReportFormat) -> Result<ExitCode, Failure> {
    if args.generator && args.kind != RepKind::U11 {
        return Err(usage("--generator only applies to --kind u11"));
    }
    let (label, matrix): (String, DMatrix<_>) = match args.kind {
        RepKind::U11 => {
            let omega = args
                .omega
                .ok_or_else(|| usage("--kind u11 requires --omega"))?;
            let m0 = args.m0.ok_or_else(|| usage("--kind u11 requires --m0"))?;
            let p = IndefiniteRepParams::new(omega, m0).map_err(runtime)?;
            if args.generator {
                (
                    format!(
                        "indefinite-metric generator for omega = {}, m0 = {}",
                        format_g(omega, 6),
                        format_g(m0, 6)
                    ),
                    to_dynamic(&u11_generator(&p)),
                )
            } else {
                (
                    format!(
                        "indefinite-metric development at t = {} (omega = {}, m0 = {})",
                        format_g(args.t, 6),
                        format_g(omega, 6),
                        format_g(m0, 6)
                    ),
                    to_dynamic(&u11_matrix(args.t, &p)),
                )
            }
        }
        RepKind::Oscillator => {
            let mass = args
                .mass
                .ok_or_else(|| usage("--kind oscillator requires --mass"))?;
            let spring = args
                .spring
                .ok_or_else(|| usage("--kind oscillator requires --spring"))?;
            let p = OscillatorParams::new(mass, spring).map_err(runtime)?;
            let variant = match args.variant {
                None | Some(VariantArg::Commutator) => KernelVariant::Commutator,
                Some(VariantArg::Fock) => KernelVariant::Fock,
                Some(VariantArg::Anticommutator) => {
                    return Err(usage(
                        "oscillator kernels take --variant commutator or fock",
                    ))
                }
            };
            (
                format!(
                    "oscillator kernel at t = {} (omega = {})",
                    format_g(args.t, 6),
                    format_g(p.omega(), 6)
                ),
                to_dynamic(&oscillator_kernel(args.t, &p, variant)),
            )
        }
        RepKind::TwoPosition => {
            if args.variant.is_some() {
                return Err(usage("--kind two-position has no --variant"));
            }
            let mass = args
                .mass
                .ok_or_else(|| usage("--kind two-position requires --mass"))?;
            let mass_prime = args
                .mass_prime
                .ok_or_else(|| usage("--kind two-position requires --mass-prime"))?;
            let spring = args
                .spring
                .ok_or_else(|| usage("--kind two-position requires --spring"))?;
            let p = TwoPositionParams::new(mass, mass_prime, spring).map_err(runtime)?;
            (
                format!(
                    "two-position kernel at t = {} (omega = {})",
                    format_g(args.t, 6),
                    format_g(p.omega(), 6)
                ),
                to_dynamic(&two_position_kernel(args.t, &p)),
            )
        }
    };
    emit(&render_matrix(format, &label, &Payload::Complex(matrix)))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_triangle(args: &TriangleArgs, format: ReportFormat) -> Result<ExitCode, Failure> {
    if let Some(fermi) = args.fermi_mass {
        if !(fermi.is_finite() && fermi > 0.0) {
            return Err(usage("--fermi-mass must be positive and finite"));
        }
    }
    // Convert each mass flag to its coupling via the common scale; reject
    // giving the same quantity both ways.
    let slot = |coupling: Option<f64>, mass: Option<f64>, name: &str| -> Result<Option<f64>, Failure> {
        match (coupling, mass) {
            (Some(_), Some(_)) => Err(usage(format!(
                "give --g{name} or --m{name}, not both"
            ))),
            (Some(g), None) => Ok(Some(g)),
            (None, Some(m)) => {
                let fermi = args
                    .fermi_mass
                    .ok_or_else(|| usage(format!("--m{name} requires --fermi-mass")))?;
                Ok(Some(m / fermi))
            }
            (None, None) => Ok(None),
        }
    };
    let input = TriangleInput {
        g_y: slot(args.gy, args.my, "y")?,
        g_w: slot(args.gw, args.mw, "w")?,
        g_z: slot(args.gz, args.mz, "z")?,
        g_e: slot(args.ge, args.me, "e")?,
        theta_w: args.theta_w,
    };
    let branch = match args.branch {
        BranchArg::Lower => MixingBranch::Lower,
        BranchArg::Upper => MixingBranch::Upper,
    };
    let couplings = solve_triangle_with_branch(&input, branch).map_err(|e| match e {
        ElectroweakError::Underdetermined | ElectroweakError::Overdetermined => usage(e),
        other => runtime(other),
    })?;
    let tension = fine_structure_tension(&couplings);
    let alpha_e = couplings.g_e() * couplings.g_e() / (4.0 * std::f64::consts::PI);
    let mut pairs: Vec<(&str, Option<f64>)> = vec![
        ("g_y", Some(couplings.g_y())),
        ("g_w", Some(couplings.g_w())),
        ("g_z", Some(couplings.g_z())),
        ("g_e", Some(couplings.g_e())),
        ("theta_w", Some(couplings.theta_w())),
        ("sin_2theta", Some((2.0 * couplings.theta_w()).sin())),
        ("alpha_e", Some(alpha_e)),
        ("alpha_inverse", Some(1.0 / alpha_e)),
        ("g_e_reference", Some(tension.g_e_reference)),
        ("relative_gap", Some(tension.relative_gap)),
    ];
    if let Some(fermi) = args.fermi_mass {
        let masses = mass_spectrum(&couplings, fermi).map_err(runtime)?;
        let relations = weinberg_relations(&masses).map_err(runtime)?;
        pairs.push(("fermi_mass", Some(masses.fermi_mass())));
        pairs.push(("m_y", Some(masses.m_y())));
        pairs.push(("m_w", Some(masses.m_w())));
        pairs.push(("m_z", Some(masses.m_z())));
        pairs.push(("m_e", Some(masses.m_e())));
        pairs.push(("mass_ratio_sin_2theta", Some(relations.sin_2theta)));
    } else {
        pairs.push(("fermi_mass", None));
        pairs.push(("m_y", None));
        pairs.push(("m_w", None));
        pairs.push(("m_z", None));
        pairs.push(("m_e", None));
        pairs.push(("mass_ratio_sin_2theta", None));
    }
    emit(&render_pairs(format, "coupling triangle", &pairs))?;
    Ok(ExitCode::SUCCESS)
}
