//! `splitseq`: command-line front end for the splitting, factorization,
//! Heegaard and support computations.
//!
//! Exit codes: 0 success, 1 domain failure, 2 unreadable or malformed input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use splitseq::arcdiagram::{factorize, h1_action, SpecialMark};
use splitseq::bounds::BoundReport;
use splitseq::heegaard::{
    attach_tube_cutting, build_diagram, count_generators, dual_graph, normalize_basis, parse_basis, sigma_prime,
    verify_bound, BoundVerdict, HeegaardError,
};
use splitseq::lattice::{determinant, trace};
use splitseq::splitting::{cycle_to_text, find_agol_cycle, maximal_split, parse_cycle, split, SplitError};
use splitseq::support::{parse_complex, support_report, Degeneracy, Method, PointDim, SupportError};
use splitseq::traintrack::{parse_track, validate_text, Measure, TrackError, TrainTrack};

#[derive(Parser, Debug)]
#[command(name = "splitseq", version, about = "Train-track splitting sequences and their invariants")]
struct Cli {
    /// Directory against which relative input paths are resolved.
    #[arg(long, global = true)]
    fixtures_dir: Option<PathBuf>,
    /// Worker threads for point counting.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the primary output here (and the manifest next to it) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check genericity, filling, switch conditions and recurrence.
    Validate { track: PathBuf },
    /// Split one large branch, or all branches of maximal weight.
    Split {
        track: PathBuf,
        /// Branch name; defaults to a maximal split.
        #[arg(long)]
        branch: Option<String>,
    },
    /// Find the periodic tail of the maximal splitting sequence.
    Cycle {
        track: PathBuf,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
    },
    /// Complexity quantities and the generator bound of a cycle.
    Bounds { cycle: PathBuf },
    /// Arcslide loop realizing a cycle.
    Factorize {
        cycle: PathBuf,
        /// Starred switches, comma-separated names or a file of names.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Bordered-sutured diagram of a compression-body basis and its generators.
    Heegaard {
        track: PathBuf,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        sigma: Option<String>,
        /// List generators explicitly.
        #[arg(long)]
        enumerate: bool,
        /// Output of `bounds` to verify the generator count against.
        #[arg(long)]
        bound_report: Option<PathBuf>,
    },
    /// Support dimension of a twisted complex.
    Support {
        complex: PathBuf,
        #[arg(long, default_value_t = splitseq::support::DEFAULT_KMAX)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Tangent,
    Points,
    Both,
}

enum Failure {
    /// Exit 1: the input is well formed but the computation says no.
    Domain(String),
    /// Exit 2: the input could not be read or parsed.
    Input(String),
}

type Outcome = Result<String, Failure>;

/// Output with a domain verdict: printed either way, exit 1 when false.
struct Report {
    text: String,
    ok: bool,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Report { text, ok: true }
    }
}

struct Ctx {
    base: Option<PathBuf>,
    threads: usize,
    inputs: Vec<PathBuf>,
}

impl Ctx {
    fn resolve(&self, p: &Path) -> PathBuf {
        match &self.base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn read(&mut self, p: &Path) -> Result<String, Failure> {
        let path = self.resolve(p);
        self.inputs.push(path.clone());
        std::fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn track_failure(e: TrackError) -> Failure {
    match e {
        TrackError::NotFilling => Failure::Domain(e.to_string()),
        _ => Failure::Input(e.to_string()),
    }
}

fn split_failure(e: SplitError) -> Failure {
    match e {
        SplitError::CorruptCycle(_) | SplitError::Track(_) | SplitError::Field(_) => Failure::Input(e.to_string()),
        _ => Failure::Domain(e.to_string()),
    }
}

fn read_track(ctx: &mut Ctx, p: &Path) -> Result<(TrainTrack, Option<Measure>), Failure> {
    let text = ctx.read(p)?;
    parse_track(&text).map_err(track_failure)
}

fn measured(ctx: &mut Ctx, p: &Path) -> Result<(TrainTrack, Measure), Failure> {
    let (t, m) = read_track(ctx, p)?;
    let m = m.ok_or_else(|| Failure::Input(format!("{}: no measure", p.display())))?;
    Ok((t, m))
}

/// Names from `--sigma`: a file of names if one exists at that path, else the value itself.
fn parse_sigma(ctx: &mut Ctx, t: &TrainTrack, arg: Option<&str>) -> Result<SpecialMark, Failure> {
    let Some(arg) = arg.filter(|a| !a.trim().is_empty()) else {
        return Ok(SpecialMark::canonical(t));
    };
    let path = ctx.resolve(Path::new(arg));
    let text = if path.is_file() { ctx.read(Path::new(arg))? } else { arg.to_string() };
    let names: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split([',', ' ', '\t']))
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Ok(SpecialMark::canonical(t));
    }
    let mut ids = Vec::new();
    for n in names {
        let w = t
            .switch_names()
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| Failure::Domain(format!("unknown switch `{n}` in sigma")))?;
        ids.push(w);
    }
    SpecialMark::new(t, ids).map_err(|e| Failure::Domain(e.to_string()))
}

fn cmd_validate(ctx: &mut Ctx, track: &Path) -> Result<Report, Failure> {
    let text = ctx.read(track)?;
    let rep = validate_text(&text).map_err(track_failure)?;
    Ok(Report { ok: rep.is_valid(), text: rep.to_string() })
}

fn cmd_split(ctx: &mut Ctx, track: &Path, branch: Option<&str>) -> Outcome {
    let (t, m) = measured(ctx, track)?;
    let (t2, m2, note) = match branch {
        Some(name) => {
            let e = t.branch_by_name(name).ok_or_else(|| Failure::Input(format!("unknown branch `{name}`")))?;
            let out = split(&t, &m, e).map_err(split_failure)?;
            (out.track, out.measure, format!("# split {name}: {:?}\n", out.event.case))
        }
        None => {
            let out = maximal_split(&t, &m).map_err(split_failure)?;
            let evs: Vec<String> =
                out.events.iter().map(|ev| format!("{}:{:?}", t.branch_name(ev.branch), ev.case)).collect();
            (out.track, out.measure, format!("# maximal split {}\n", evs.join(" ")))
        }
    };
    Ok(note + &t2.to_text(Some(&m2)))
}

fn cmd_cycle(ctx: &mut Ctx, track: &Path, max_iters: usize) -> Outcome {
    let (t, m) = measured(ctx, track)?;
    let c = find_agol_cycle(&t, &m, max_iters).map_err(split_failure)?;
    Ok(cycle_to_text(&t, &m, &c))
}

fn cmd_bounds(ctx: &mut Ctx, cycle: &Path) -> Outcome {
    let text = ctx.read(cycle)?;
    let (_, _, c) = parse_cycle(&text).map_err(split_failure)?;
    let mut rep = BoundReport::compute(&c).map_err(|e| Failure::Domain(e.to_string()))?;
    rep.m = Some(c.period);
    Ok(rep.to_text())
}

fn cmd_factorize(ctx: &mut Ctx, cycle: &Path, sigma: Option<&str>) -> Outcome {
    let text = ctx.read(cycle)?;
    let (_, _, c) = parse_cycle(&text).map_err(split_failure)?;
    let start = c.start().0.clone();
    let sigma = parse_sigma(ctx, &start, sigma)?;
    let seq = factorize(&c, &sigma).map_err(|e| Failure::Domain(e.to_string()))?;
    let act = h1_action(&seq).map_err(|e| Failure::Domain(e.to_string()))?;
    let mut s = String::new();
    let stars: Vec<&str> = sigma.switches.iter().map(|&w| start.switch_name(w)).collect();
    let _ = writeln!(s, "# sigma {}", stars.join(","));
    let _ = writeln!(s, "# slides {}", seq.len());
    let _ = writeln!(s, "# loop {}", seq.is_loop());
    let _ = writeln!(s, "# capped_h1_trace {}", trace(&act.capped));
    let _ = writeln!(s, "# capped_h1_det {}", determinant(&act.capped));
    for row in &act.capped {
        let r: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "# capped_h1 {}", r.join(" "));
    }
    s += &seq.to_text();
    Ok(s)
}

fn heegaard_failure(e: HeegaardError) -> Failure {
    match e {
        HeegaardError::Parse(_) => Failure::Input(e.to_string()),
        _ => Failure::Domain(e.to_string()),
    }
}

fn cmd_heegaard(
    ctx: &mut Ctx,
    track: &Path,
    basis: &Path,
    sigma: Option<&str>,
    enumerate: bool,
    bound_report: Option<&Path>,
) -> Result<Report, Failure> {
    let (t, _) = read_track(ctx, track)?;
    let btext = ctx.read(basis)?;
    let curves = parse_basis(&t, &btext).map_err(heegaard_failure)?;
    let sigma = parse_sigma(ctx, &t, sigma)?;
    let report = match bound_report {
        Some(p) => {
            let text = ctx.read(p)?;
            Some(BoundReport::from_text(&text).map_err(|e| Failure::Input(e.to_string()))?)
        }
        None => None,
    };
    let b = normalize_basis(&t, &curves).map_err(heegaard_failure)?;
    let g = dual_graph(&t, &b).map_err(heegaard_failure)?;
    let sp = sigma_prime(&g).map_err(heegaard_failure)?;
    let d = build_diagram(&t, &b, &g, &sigma, &sp).map_err(heegaard_failure)?;
    let gens = count_generators(&d, enumerate);
    let tube = attach_tube_cutting(&d, &gens);

    let mut s = d.to_text();
    let _ = writeln!(s, "basis_curves {}", b.len());
    let _ = writeln!(s, "basis_length {}", b.length());
    let _ = writeln!(s, "alpha_arcs {}", d.alpha.len());
    let _ = writeln!(s, "beta_arcs {}", d.num_beta_arcs());
    let _ = writeln!(s, "beta_circles {}", d.num_beta_circles());
    let _ = writeln!(s, "region_audit {}", g.audit_passed());
    let _ = writeln!(s, "generators {}", gens.count);
    let sizes: Vec<String> = gens.by_size.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "generators_by_size {}", sizes.join(" "));
    let _ = writeln!(s, "generators_after_tube_cutting {}", tube.count);
    if enumerate {
        match &gens.generators {
            Some(list) => {
                for gen in list {
                    let pts: Vec<String> = gen.iter().map(|(a, b, k)| format!("a{a}b{b}#{k}")).collect();
                    let _ = writeln!(s, "generator {}", pts.join(" "));
                }
            }
            None => {
                let _ = writeln!(s, "# too many generators to list");
            }
        }
    }
    let mut ok = true;
    if let Some(rep) = report {
        let verdict = verify_bound(&tube, &rep, b.length());
        match &verdict {
            BoundVerdict::Pass { count, bound } => {
                let _ = writeln!(s, "bound pass {count} <= {bound}");
            }
            BoundVerdict::Fail { count, bound, reason } => {
                let _ = writeln!(s, "bound fail {count} vs {bound}: {reason}");
                ok = false;
            }
        }
    }
    Ok(Report { text: s, ok })
}

fn support_failure(e: SupportError) -> Failure {
    match e {
        SupportError::Parse(_)
        | SupportError::NotADifferential(..)
        | SupportError::NotSquare
        | SupportError::VarMismatch(..)
        | SupportError::NotInvertible(_) => Failure::Input(e.to_string()),
        _ => Failure::Domain(e.to_string()),
    }
}

fn cmd_support(ctx: &mut Ctx, complex: &Path, kmax: u32, method: MethodArg) -> Result<Report, Failure> {
    let text = ctx.read(complex)?;
    let c = parse_complex(&text).map_err(support_failure)?;
    let method = match method {
        MethodArg::Tangent => Method::Tangent,
        MethodArg::Points => Method::Points,
        MethodArg::Both => Method::Both,
    };
    let r = support_report(&c, method, kmax, ctx.threads).map_err(support_failure)?;
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |d| d.to_string());
    let mut s = String::new();
    let _ = writeln!(s, "vars {}", r.n_vars);
    let _ = writeln!(s, "rank {}", r.rank);
    let _ = writeln!(s, "parity_full {}", r.parity_full);
    let _ = writeln!(s, "minor_count {}", r.minor_count);
    let _ = writeln!(s, "dim_tangent {}", opt(r.dim_tangent));
    if let Some(note) = &r.tangent_note {
        let _ = writeln!(s, "# {note}");
    }
    if let Some(p) = &r.dim_pointcount {
        let counts: Vec<String> = p.counts.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "point_counts {}", counts.join(" "));
        let est = match p.estimate {
            PointDim::Dim(d) => d.to_string(),
            PointDim::Empty => "empty".into(),
            PointDim::Inconclusive => "inconclusive".into(),
        };
        let _ = writeln!(s, "dim_pointcount {est}");
    }
    let flag = match &r.degeneracy {
        None => "none".to_string(),
        Some(Degeneracy::SquareGenerator(f)) => format!("square generator {f}"),
        Some(Degeneracy::FlatGenerator(f)) => format!("flat generator {f}"),
        Some(Degeneracy::Disagreement) => "unexplained disagreement".into(),
    };
    let _ = writeln!(s, "degeneracy {flag}");
    let _ = writeln!(s, "agreement {}", r.agreement);
    let _ = writeln!(s, "dimension {}", opt(r.dimension));
    // a disagreement no generator accounts for is an internal error
    let ok = r.degeneracy != Some(Degeneracy::Disagreement);
    Ok(Report { text: s, ok })
}

fn manifest(cli: &Cli, ctx: &Ctx, elapsed_ms: u128, code: u8) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# run manifest");
    let _ = writeln!(s, "tool splitseq {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "command {:?}", cli.command);
    for p in &ctx.inputs {
        let _ = writeln!(s, "input {}", p.display());
    }
    let _ = writeln!(s, "threads {}", cli.threads);
    if let Some(o) = &cli.output {
        let _ = writeln!(s, "output {}", o.display());
    }
    let _ = writeln!(s, "exit {code}");
    let _ = writeln!(s, "elapsed_ms {elapsed_ms}");
    s
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { track } => cmd_validate(ctx, track),
        Command::Split { track, branch } => cmd_split(ctx, track, branch.as_deref()).map(Report::from),
        Command::Cycle { track, max_iters } => cmd_cycle(ctx, track, *max_iters).map(Report::from),
        Command::Bounds { cycle } => cmd_bounds(ctx, cycle).map(Report::from),
        Command::Factorize { cycle, sigma } => cmd_factorize(ctx, cycle, sigma.as_deref()).map(Report::from),
        Command::Heegaard { track, basis, sigma, enumerate, bound_report } => {
            cmd_heegaard(ctx, track, basis, sigma.as_deref(), *enumerate, bound_report.as_deref())
        }
        Command::Support { complex, kmax, method } => cmd_support(ctx, complex, *kmax, *method),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut ctx = Ctx { base: cli.fixtures_dir.clone(), threads: cli.threads, inputs: Vec::new() };
    let (body, code) = match run(&cli, &mut ctx) {
        Ok(r) => (Some(r.text), if r.ok { 0 } else { 1 }),
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            (None, 1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            (None, 2)
        }
    };
    let man = manifest(&cli, &ctx, started.elapsed().as_millis(), code);
    match (&cli.output, body) {
        (Some(path), body) => {
            let written = body.as_ref().map_or(Ok(()), |b| std::fs::write(path, b));
            let mut man_path = path.clone().into_os_string();
            man_path.push(".manifest");
            if let Err(e) = written.and_then(|()| std::fs::write(&man_path, &man)) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        (None, body) => {
            if let Some(b) = body {
                print!("{b}");
            }
            eprint!("{man}");
        }
    }
    ExitCode::from(code)
}
