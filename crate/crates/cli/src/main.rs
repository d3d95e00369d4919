use std::fmt::Write as _;
use std::fs;
use std::hash::Hasher;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use psim::birkhoff::{psim_dirichlet, psim_radau, PsimMatrix};
use psim::colloc::{self, loglog_slope, poisson};
use psim::evolve::{kdv_run, KdvConfig};
use psim::registry::{self, Problem};
use psim::{psdm, BcVariant, BasisFamily, NodeFamily, OddPattern, ProblemSpec, Scheme};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "psim", version, about = "Well-conditioned spectral collocation with Birkhoff bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quadrature nodes and weights as CSV.
    Nodes {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a differentiation or integration matrix as CSV.
    Matrix {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value = "dirichlet")]
        bc: Bc,
        #[arg(long)]
        n: usize,
        /// Mixed coefficients `a-,b-,a+,b+`.
        #[arg(long, default_value = "1,-1,1,1", allow_hyphen_values = true)]
        mixed: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the deviation of the boundary-modified PSDM times B from I.
        #[arg(long)]
        verify: bool,
    },
    /// Regenerate a condition-number table as CSV.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip N = 1024.
        #[arg(long)]
        quick: bool,
    },
    /// Solve a registry problem.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value = "bcol")]
        scheme: String,
        /// lgl, cgl, lgr, cgr, or legendre / chebyshev (grid type follows the problem).
        #[arg(long, default_value = "legendre")]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated N list; reports the log-log error slope.
        #[arg(long)]
        sweep: Option<String>,
        /// Solution CSV (or sweep CSV).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List registry ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Run the KdV soliton tests.
    Kdv {
        #[arg(long, value_parser = ["3", "5"])]
        order: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        family: Option<String>,
        /// Drop the nonlinear term.
        #[arg(long)]
        linear: bool,
        /// Steps between error records.
        #[arg(long)]
        record_every: Option<usize>,
        /// Steps between snapshots (0: first and last only).
        #[arg(long)]
        snapshot_every: Option<usize>,
        /// Comma-separated N list: one run per N, final errors compared.
        #[arg(long)]
        sweep_n: Option<String>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Solve Δu - γu = f on the square.
    Poisson2d {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value = "poisson2d-sin4pi")]
        problem: String,
        #[arg(long, default_value = "lgl")]
        family: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Compare against the dense Kronecker solve.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    D,
    D2,
    Dtilde2,
    B,
    B1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bc {
    Dirichlet,
    Mixed,
    Neumann,
    Radau,
    Third,
    Fifth,
}

/// Bad input that passed clap's own checks.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<psim::Error>() {
        Some(
            psim::Error::InvalidArgument(_)
            | psim::Error::GridTooSmall { .. }
            | psim::Error::Unsupported(_)
            | psim::Error::NeumannEvenN(_)
            | psim::Error::DegenerateMixed
            | psim::Error::Dimension(_),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Shortest decimal that reads back to the same f64.
fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_row(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(",")
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

/// FNV-1a of the command words, as 16 hex digits.
fn config_hash(words: &[String]) -> String {
    let mut h = fnv::FnvHasher::default();
    for w in words {
        h.write(w.as_bytes());
        h.write_u8(0);
    }
    format!("{:016x}", h.finish())
}

#[derive(Serialize)]
struct RunReport<T: Serialize> {
    schema: u32,
    command: Vec<String>,
    config_hash: String,
    wall_time_s: f64,
    #[serde(flatten)]
    body: T,
}

fn write_report<T: Serialize>(path: &Path, body: T, start: Instant) -> Result<()> {
    let command = command_echo();
    let report = RunReport {
        schema: 1,
        config_hash: config_hash(&command),
        command,
        wall_time_s: start.elapsed().as_secs_f64(),
        body,
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    emit(Some(path), &text)
}

fn parse_family(s: &str) -> Result<NodeFamily> {
    s.parse::<NodeFamily>().map_err(|e| usage(e.to_string()))
}

/// Node family for a problem: explicit grids pass through, basis names pick
/// the Lobatto or Radau grid the boundary conditions need.
fn family_for(s: &str, bc: BcVariant) -> Result<NodeFamily> {
    let basis = match s.to_ascii_lowercase().as_str() {
        "legendre" => BasisFamily::Legendre,
        "chebyshev" => BasisFamily::Chebyshev,
        _ => return parse_family(s),
    };
    Ok(match bc {
        BcVariant::RadauInitial => NodeFamily::radau(basis),
        _ => NodeFamily::lobatto(basis),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| usage(format!("bad {what} entry '{t}'"))))
        .collect()
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Nodes { family, n, out } => cmd_nodes(&family, n, out.as_deref()),
        Command::Matrix {
            what,
            family,
            bc,
            n,
            mixed,
            out,
            verify,
        } => cmd_matrix(what, &family, bc, n, &mixed, out.as_deref(), verify),
        Command::Table { which, out, quick } => cmd_table(which, out.as_deref(), quick),
        Command::Solve {
            problem,
            scheme,
            family,
            n,
            sweep,
            out,
            report,
            list,
        } => {
            if list {
                let mut text = String::new();
                for e in registry::all() {
                    writeln!(text, "{:<18} N >= {:<3} {}", e.id, e.min_n, e.description)?;
                }
                return emit(None, &text);
            }
            cmd_solve(&problem, &scheme, &family, n, sweep.as_deref(), out.as_deref(), report.as_deref())
        }
        Command::Kdv {
            order,
            n,
            tau,
            t_end,
            l,
            family,
            linear,
            record_every,
            snapshot_every,
            sweep_n,
            out_dir,
        } => {
            let mut cfg = if order == "3" {
                KdvConfig::third_defaults()
            } else {
                KdvConfig::fifth_defaults()
            };
            if let Some(v) = n {
                cfg.n = v;
            }
            if let Some(v) = tau {
                cfg.tau = v;
            }
            if let Some(v) = t_end {
                cfg.t_end = v;
            }
            if let Some(v) = l {
                cfg.l = v;
            }
            if let Some(f) = family {
                cfg.family = parse_family(&f)?;
            }
            if let Some(v) = record_every {
                cfg.record_every = v;
            }
            if let Some(v) = snapshot_every {
                cfg.snapshot_every = v;
            }
            cfg.nonlinear = !linear;
            cfg.validate()?;
            let ns = match sweep_n {
                Some(s) => parse_list(&s, "N")?,
                None => vec![cfg.n],
            };
            cmd_kdv(&cfg, &ns, &out_dir)
        }
        Command::Poisson2d {
            n,
            gamma,
            problem,
            family,
            out_dir,
            verify,
        } => cmd_poisson2d(n, gamma, &problem, &family, &out_dir, verify),
    }
}

fn cmd_nodes(family: &str, n: usize, out: Option<&Path>) -> Result<()> {
    let nodes = parse_family(family)?.build(n)?;
    let mut text = String::from("index,node,weight\n");
    for (i, (x, w)) in nodes.nodes().iter().zip(nodes.weights()).enumerate() {
        writeln!(text, "{i},{}", csv_row(&[*x, *w]))?;
    }
    emit(out, &text)
}

fn variant(bc: Bc, mixed: &str) -> Result<BcVariant> {
    Ok(match bc {
        Bc::Dirichlet => BcVariant::Dirichlet,
        Bc::Neumann => BcVariant::NeumannAnchored,
        Bc::Radau => BcVariant::RadauInitial,
        Bc::Third => BcVariant::OddOrder(OddPattern::Third),
        Bc::Fifth => BcVariant::OddOrder(OddPattern::Fifth),
        Bc::Mixed => {
            let c: Vec<f64> = parse_list(mixed, "mixed coefficient")?;
            if c.len() != 4 {
                return Err(usage("--mixed needs four values a-,b-,a+,b+"));
            }
            BcVariant::Mixed {
                a_minus: c[0],
                b_minus: c[1],
                a_plus: c[2],
                b_plus: c[3],
            }
        }
    })
}

fn matrix_csv(m: &DMatrix<f64>) -> String {
    let mut text = String::new();
    for row in m.row_iter() {
        text.push_str(&csv_row(&row.iter().copied().collect::<Vec<_>>()));
        text.push('\n');
    }
    text
}

fn cmd_matrix(what: What, family: &str, bc: Bc, n: usize, mixed: &str, out: Option<&Path>, verify: bool) -> Result<()> {
    let nodes = parse_family(family)?.build(n)?;
    let v = variant(bc, mixed)?;
    let basis = || PsimMatrix::build(&nodes, v);
    let m = match what {
        What::D => psdm(&nodes, 1)?.into_full(),
        What::D2 => psdm(&nodes, 2)?.into_full(),
        What::Dtilde2 => psdm(&nodes, 2)?.dtilde_second()?,
        What::B => basis()?.b().clone(),
        What::B1 => basis()?.b1().clone(),
    };
    emit(out, &matrix_csv(&m))?;
    if verify {
        let (label, dev) = if nodes.family().is_radau() {
            let b = psim_radau(&nodes)?;
            let dt = psdm(&nodes, 1)?.dtilde_first()?;
            ("max|D~ B - I|", (dt * b.b() - DMatrix::identity(n + 1, n + 1)).amax())
        } else {
            let b = psim_dirichlet(&nodes)?;
            let dt = psdm(&nodes, 2)?.dtilde_second()?;
            ("max|D~2 B - I|", (dt * b.b() - DMatrix::identity(n + 1, n + 1)).amax())
        };
        eprintln!("{label} = {}", fmt_f64(dev));
    }
    Ok(())
}

/// Comparison columns quoted from earlier work for the Gaussian-type BVP:
/// `(N, Legendre cond, Legendre error, Chebyshev cond, Chebyshev error)`.
const TABLE1_REFERENCE: [(usize, f64, f64, f64, f64); 5] = [
    (64, 37.2, 9.99e-16, 37.3, 9.99e-16),
    (128, 75.5, 1.33e-15, 73.7, 1.78e-15),
    (256, 146.0, 2.55e-15, 146.0, 2.99e-15),
    (512, 292.0, 3.11e-15, 292.0, 3.89e-15),
    (1024, 582.0, 6.81e-15, 583.0, 7.44e-15),
];

struct TableSpec {
    cases: Vec<&'static str>,
    families: Vec<NodeFamily>,
    schemes: Vec<Scheme>,
    ns: Vec<usize>,
}

fn table_spec(which: u8) -> TableSpec {
    let wide = vec![32, 64, 128, 256, 512, 1024];
    match which {
        1 => TableSpec {
            cases: vec!["gauss-bvp"],
            families: vec![NodeFamily::Lgl, NodeFamily::Cgl],
            schemes: vec![Scheme::Lcol, Scheme::Bcol, Scheme::Plcol],
            ns: vec![64, 128, 256, 512, 1024],
        },
        2 => TableSpec {
            cases: vec!["mixed-s", "mixed-rs"],
            families: vec![NodeFamily::Cgl, NodeFamily::Lgl],
            schemes: vec![Scheme::Bcol, Scheme::Lcol],
            ns: wide,
        },
        3 => TableSpec {
            cases: vec!["ivp-const", "ivp-cubic"],
            families: vec![NodeFamily::Cgr, NodeFamily::Lgr],
            schemes: vec![Scheme::Bcol, Scheme::Lcol],
            ns: wide,
        },
        _ => TableSpec {
            cases: vec!["third-t", "third-st", "third-rt", "third-rst"],
            families: vec![NodeFamily::Cgl],
            schemes: vec![Scheme::Bcol],
            ns: vec![128, 256, 512, 1024],
        },
    }
}

fn cmd_table(which: u8, out: Option<&Path>, quick: bool) -> Result<()> {
    let spec = table_spec(which);
    let ns: Vec<usize> = spec.ns.iter().copied().filter(|&n| !(quick && n >= 1024)).collect();
    let mut text = String::from("case,family,n,scheme,cond2,max_error\n");
    for case in &spec.cases {
        let p = registry::problem(case)?;
        for &fam in &spec.families {
            for &n in &ns {
                let nodes = fam.build(n)?;
                for &s in &spec.schemes {
                    let r = colloc::solve(&p, &nodes, s)?;
                    let err = r.max_error.map(fmt_f64).unwrap_or_default();
                    writeln!(text, "{case},{},{n},{s},{},{err}", fam.name(), fmt_f64(r.cond2))?;
                }
                if which == 1 {
                    if let Some(row) = TABLE1_REFERENCE.iter().find(|r| r.0 == n) {
                        let (c, e) = if fam.basis() == BasisFamily::Legendre {
                            (row.1, row.2)
                        } else {
                            (row.3, row.4)
                        };
                        writeln!(text, "{case},{},{n},reference,{},{}", fam.name(), fmt_f64(c), fmt_f64(e))?;
                    }
                }
            }
        }
    }
    emit(out, &text)
}

#[derive(Serialize)]
struct SolveBody {
    problem: String,
    scheme: String,
    family: String,
    bc: String,
    #[serde(rename = "N")]
    n: usize,
    cond2: f64,
    max_error: Option<f64>,
}

#[derive(Serialize)]
struct SweepBody {
    problem: String,
    scheme: String,
    family: String,
    rows: Vec<SolveBody>,
    slope: Option<f64>,
}

fn one_d(id: &str) -> Result<ProblemSpec> {
    match registry::lookup(id).map_err(|e| usage(e.to_string()))?.problem {
        Problem::OneD(p) => Ok(p),
        Problem::TwoD(_) => Err(usage(format!("'{id}' is a 2D problem; use the poisson2d command"))),
    }
}

fn solve_one(p: &ProblemSpec, fam: NodeFamily, n: usize, scheme: Scheme) -> Result<psim::SolveReport> {
    Ok(colloc::solve(p, &fam.build(n)?, scheme)?)
}

fn cmd_solve(
    id: &str,
    scheme: &str,
    family: &str,
    n: Option<usize>,
    sweep: Option<&str>,
    out: Option<&Path>,
    report: Option<&Path>,
) -> Result<()> {
    let start = Instant::now();
    let p = one_d(id)?;
    let scheme: Scheme = scheme.parse().map_err(|e: psim::Error| usage(e.to_string()))?;
    let fam = family_for(family, p.bc)?;
    let body = |r: &psim::SolveReport| SolveBody {
        problem: id.to_string(),
        scheme: scheme.to_string(),
        family: fam.name().to_string(),
        bc: r.bc.to_string(),
        n: r.n,
        cond2: r.cond2,
        max_error: r.max_error,
    };
    if let Some(list) = sweep {
        let ns: Vec<usize> = parse_list(list, "N")?;
        let mut text = String::from("n,cond2,max_error\n");
        let mut rows = Vec::new();
        for &n in &ns {
            let r = solve_one(&p, fam, n, scheme)?;
            let err = r.max_error.map(fmt_f64).unwrap_or_default();
            writeln!(text, "{n},{},{err}", fmt_f64(r.cond2))?;
            rows.push(body(&r));
        }
        let errs: Option<Vec<f64>> = rows.iter().map(|r| r.max_error).collect();
        let x: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
        let slope = errs.and_then(|e| loglog_slope(&x, &e).ok());
        emit(out, &text)?;
        match slope {
            Some(s) => eprintln!("log-log error slope: {}", fmt_f64(s)),
            None => eprintln!("log-log error slope: unavailable"),
        }
        if let Some(path) = report {
            let b = SweepBody {
                problem: id.to_string(),
                scheme: scheme.to_string(),
                family: fam.name().to_string(),
                rows,
                slope,
            };
            write_report(path, b, start)?;
        }
        return Ok(());
    }
    let n = n.ok_or_else(|| usage("--n or --sweep is required"))?;
    let r = solve_one(&p, fam, n, scheme)?;
    let exact = p.exact.as_ref();
    let mut text = String::from(if exact.is_some() { "x,u_n,u_exact,abs_err\n" } else { "x,u_n\n" });
    for (&x, &u) in r.nodes.iter().zip(&r.solution) {
        match exact {
            Some(e) => {
                let ue = e.eval(x);
                text.push_str(&csv_row(&[x, u, ue, (u - ue).abs()]));
            }
            None => text.push_str(&csv_row(&[x, u])),
        }
        text.push('\n');
    }
    emit(out, &text)?;
    let err = r.max_error.map(fmt_f64).unwrap_or_else(|| "n/a".into());
    eprintln!("{id} {scheme} {} N={n}: cond2 {} max_error {err}", fam.name(), fmt_f64(r.cond2));
    if let Some(path) = report {
        write_report(path, body(&r), start)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct KdvBody {
    order: usize,
    #[serde(rename = "N")]
    n: usize,
    tau: f64,
    t_end: f64,
    l: f64,
    family: String,
    nonlinear: bool,
    final_t: f64,
    final_error: f64,
}

fn cmd_kdv(base: &KdvConfig, ns: &[usize], dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut finals = Vec::new();
    for &n in ns {
        let start = Instant::now();
        let mut cfg = base.clone();
        cfg.n = n;
        let run = kdv_run(&cfg)?;
        let tag = format!("kdv{}_n{n}", cfg.order());
        let mut errors = String::from("t,max_error\n");
        for (t, e) in &run.errors {
            errors.push_str(&csv_row(&[*t, *e]));
            errors.push('\n');
        }
        emit(Some(&dir.join(format!("{tag}_errors.csv"))), &errors)?;
        let mut snaps = String::from("t");
        for j in 0..run.nodes.len() {
            write!(snaps, ",x_{j}")?;
        }
        snaps.push('\n');
        writeln!(snaps, "x,{}", csv_row(&run.nodes))?;
        for (t, u) in &run.snapshots {
            snaps.push_str(&csv_row(&std::iter::once(*t).chain(u.iter().copied()).collect::<Vec<_>>()));
            snaps.push('\n');
        }
        emit(Some(&dir.join(format!("{tag}_snapshots.csv"))), &snaps)?;
        let body = KdvBody {
            order: cfg.order(),
            n,
            tau: cfg.tau,
            t_end: cfg.t_end,
            l: cfg.l,
            family: cfg.family.name().to_string(),
            nonlinear: cfg.nonlinear,
            final_t: run.final_t,
            final_error: run.final_error,
        };
        write_report(&dir.join(format!("{tag}_report.json")), body, start)?;
        eprintln!("KdV{} N={n}: t={} max error {}", cfg.order(), fmt_f64(run.final_t), fmt_f64(run.final_error));
        finals.push(run.final_error);
    }
    if ns.len() > 1 {
        let decreasing = finals.windows(2).all(|w| w[1] < w[0]);
        eprintln!("errors decreasing in N: {decreasing}");
    }
    Ok(())
}

#[derive(Serialize)]
struct PoissonBody {
    problem: String,
    #[serde(rename = "N")]
    n: usize,
    gamma: f64,
    family: String,
    max_error: f64,
    kronecker_deviation: Option<f64>,
}

fn cmd_poisson2d(n: usize, gamma: f64, id: &str, family: &str, dir: &Path, verify: bool) -> Result<()> {
    let start = Instant::now();
    let spec = match registry::lookup(id).map_err(|e| usage(e.to_string()))?.problem {
        Problem::TwoD(s) => s,
        Problem::OneD(_) => bail!(usage(format!("'{id}' is a 1D problem; use the solve command"))),
    };
    if gamma != spec.gamma && id != "poisson2d-zero" {
        // the registry forcing is manufactured for its own γ
        return Err(usage(format!("{id} is defined for gamma = {}", spec.gamma)));
    }
    let nodes = parse_family(family)?.build(n)?;
    let sol = poisson::solve_poisson2d(gamma, spec.forcing, &nodes)?;
    let max_error = sol.max_error(spec.exact);
    let mut grid = String::from("x,y,u_n,u_exact,abs_err\n");
    for (i, &x) in sol.nodes.iter().enumerate() {
        for (j, &y) in sol.nodes.iter().enumerate() {
            let u = sol.values[(i, j)];
            let e = (spec.exact)(x, y);
            grid.push_str(&csv_row(&[x, y, u, e, (u - e).abs()]));
            grid.push('\n');
        }
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    emit(Some(&dir.join(format!("{id}_n{n}_grid.csv"))), &grid)?;
    let kronecker_deviation = if verify {
        let k = poisson::poisson2d_kronecker(gamma, spec.forcing, &nodes)?;
        let d = (&sol.values - k.values).amax();
        eprintln!("max deviation from Kronecker solve: {}", fmt_f64(d));
        Some(d)
    } else {
        None
    };
    eprintln!("{id} N={n}: max error {}", fmt_f64(max_error));
    let body = PoissonBody {
        problem: id.to_string(),
        n,
        gamma,
        family: nodes.family().name().to_string(),
        max_error,
        kronecker_deviation,
    };
    write_report(&dir.join(format!("{id}_n{n}_report.json")), body, start)
}
