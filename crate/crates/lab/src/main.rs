//! `bidegree-lab` command line.
//!
//! Exit status: 0 when every expectation is met, 1 on a mismatch, 2 on usage,
//! syntax or configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use bidegree_core::birat::verify_chart_identity;
use bidegree_core::cert::Verdict;
use bidegree_core::classify::{closure_classify, emit_tables, FactBase, Grid, Layout, Rules, TableFormat};
use bidegree_core::groebner::{ideal_member, radical_member, GroebnerError, Interrupt, Limits};
use bidegree_core::ring::{parse_expr, VarTable};
use bidegree_lab::checks::{build_family_spec, load_identity};
use bidegree_lab::polyfile::{PolyFile, DEFAULT_TABLE};
use bidegree_lab::suite::{FamilySpec, RandomSeed};
use bidegree_lab::{run_suite, RunOptions, SuiteConfig};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bidegree-lab", version, about = "Exact checks for bidegree hypersurface degenerations")]
struct Cli {
    /// Wall-clock budget per check (per chart for hyperplane checks).
    #[arg(long, global = true)]
    timeout_secs: Option<u64>,
    /// Cap on reduced S-pairs per Gröbner computation.
    #[arg(long, global = true)]
    max_pairs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite file and compare verdicts with expectations.
    Verify {
        suite: PathBuf,
        /// Also write the report as JSON.
        #[arg(long)]
        json_report: Option<PathBuf>,
        /// Print per-check runtimes.
        #[arg(long)]
        timing: bool,
    },
    /// Verify one chart identity file.
    CheckIdentity {
        #[arg(long = "id")]
        file: PathBuf,
    },
    /// Ideal or radical membership.
    Groebner {
        #[arg(value_enum)]
        mode: MemberMode,
        /// Data file declaring the ideal.
        #[arg(long)]
        ideal: PathBuf,
        /// Ideal name; defaults to the only ideal in the file.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        elem: String,
    },
    /// Degeneration families.
    Families {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Close a fact base under the inference rules and print tables.
    Classify {
        #[arg(long)]
        facts: PathBuf,
        /// `table1`, `table2` or `all`.
        #[arg(long, default_value = "all")]
        emit: String,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Ignore literature and table facts.
        #[arg(long)]
        no_literature: bool,
        /// Enable the conditional cubic rule for `assume-cubic` lines.
        #[arg(long)]
        cubic: bool,
    },
    /// Parse an expression and print its canonical form.
    Parse {
        #[arg(long)]
        expr: String,
        /// Data file whose default table fixes the variables; inferred from names otherwise.
        #[arg(long)]
        vars: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MemberMode {
    Member,
    Radical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Markdown,
    Csv,
}

#[derive(Subcommand)]
enum FamilyAction {
    /// Print the equations, components and chart of a family.
    Build {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        f: u32,
        /// Raised bidegree `D F` for degree raising.
        #[arg(long, num_args = 2)]
        raise: Option<Vec<u32>>,
        /// Data file holding the seed polynomials.
        #[arg(long)]
        seed: Option<PathBuf>,
        /// `ROLE=BINDING`, e.g. `G=Q`.
        #[arg(long = "bind")]
        bind: Vec<String>,
        /// Variable header for a random seed `G`.
        #[arg(long)]
        random_vars: Option<String>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
}

/// Error classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Mismatch,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn limits(cli_timeout: Option<u64>, max_pairs: Option<u64>) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = max_pairs {
        l = l.with_max_pairs(n);
    }
    if let Some(t) = cli_timeout {
        let deadline = std::time::Instant::now() + std::time::Duration::from_secs(t);
        l = l.with_interrupt(Interrupt::new(move || std::time::Instant::now() >= deadline));
    }
    l
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { suite, json_report, timing } => {
            let cfg = SuiteConfig::load(&suite)?;
            let base = suite.parent().unwrap_or(Path::new(".")).to_path_buf();
            let opts = RunOptions { timeout_secs: cli.timeout_secs, max_pairs: cli.max_pairs, ..RunOptions::default() };
            let report = run_suite(&cfg, &base, &opts);
            print!("{}", report.render(timing));
            if let Some(path) = json_report {
                let json = serde_json::to_string_pretty(&report)?;
                std::fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            if report.all_met() {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::CheckIdentity { file } => {
            let id = load_identity(&file)?;
            let cert = verify_chart_identity(&id)?;
            print!("{cert}");
            expect_pass(cert.verdict)
        }
        Command::Groebner { mode, ideal, name, elem } => {
            let file = PolyFile::load(&ideal)?;
            let ideal = match name {
                Some(n) => file.ideal(&n)?,
                None if file.ideals.len() == 1 => file.ideals.values().next().unwrap(),
                None => return Err(anyhow!("{} ideals in file; pick one with --name", file.ideals.len()).into()),
            };
            let f = file.eval_poly(&elem, ideal.vars())?;
            let l = limits(cli.timeout_secs, cli.max_pairs);
            let outcome = match mode {
                MemberMode::Member => ideal_member(&f, ideal, &l).map(|m| {
                    println!("normal form: {}", m.normal_form);
                    println!("stats: {}", m.stats);
                    m.member
                }),
                MemberMode::Radical => radical_member(&f, ideal, &l),
            };
            let verdict = match outcome {
                Ok(b) => Verdict::from_bool(b),
                Err(GroebnerError::ResourceExceeded { .. }) => Verdict::Unknown,
                Err(e) => return Err(anyhow::Error::from(e).into()),
            };
            println!("{verdict}");
            expect_pass(verdict)
        }
        Command::Families { action: FamilyAction::Build { variant, d, f, raise, seed, bind, random_vars, rng_seed } } => {
            let mut roles = std::collections::BTreeMap::new();
            for b in &bind {
                let (role, name) = b.split_once('=').ok_or_else(|| anyhow!("--bind expects ROLE=BINDING, got `{b}`"))?;
                roles.insert(role.to_string(), name.to_string());
            }
            let spec = FamilySpec {
                variant,
                d,
                f,
                raise: raise.map(|v| [v[0], v[1]]),
                seed_file: seed,
                seed: roles,
                random: random_vars.map(|vars| RandomSeed { vars, density: 0.7, height: 5 }),
            };
            let fam = build_family_spec(&spec, Path::new("."), rng_seed, "families-build")?;
            println!("variant: {}", fam.variant);
            println!("{}", fam.vars.header());
            println!("degree: {}", fam.degree);
            for (name, p) in fam.equations() {
                println!("{name} = {p}");
            }
            for c in &fam.components {
                println!("component {} on {}: {}", c.name, c.coord.as_deref().unwrap_or("-"), c.equation);
            }
            if let Some(z) = &fam.intersection {
                println!("intersection Z: {z}");
            }
            for (name, p) in &fam.extra {
                println!("{name} = {p}");
            }
            println!("chart: {}", fam.chart.describe());
            Ok(())
        }
        Command::Classify { facts, emit, format, no_literature, cubic } => {
            let text = std::fs::read_to_string(&facts).with_context(|| format!("reading {}", facts.display()))?;
            let base = FactBase::parse(&text)?;
            let rules = Rules { literature: !no_literature, cubic, ..Rules::default() };
            let result = match closure_classify(&base, Grid::default(), rules) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return Err(Failure::Mismatch);
                }
            };
            let layouts = match emit.as_str() {
                "all" => vec![Layout::table1(), Layout::table2()],
                name => vec![Layout::by_name(name).ok_or_else(|| anyhow!("unknown table `{name}`"))?],
            };
            let format = match format {
                Format::Markdown => TableFormat::Markdown,
                Format::Csv => TableFormat::Csv,
            };
            for layout in &layouts {
                print!("{}", emit_tables(&result, layout, format)?);
            }
            Ok(())
        }
        Command::Parse { expr, vars } => {
            let parsed = parse_expr(&expr)?;
            let table = match vars {
                Some(path) => PolyFile::load(&path)?.table(DEFAULT_TABLE)?.clone(),
                None => VarTable::infer(parsed.identifiers())?,
            };
            let p = parsed.eval_poly(&table, &|_| None)?;
            println!("{p}");
            match p.bidegree() {
                Ok(b) => println!("bidegree {b}"),
                Err(_) => println!("not bihomogeneous"),
            }
            Ok(())
        }
    }
}

fn expect_pass(v: Verdict) -> Result<(), Failure> {
    if v == Verdict::Pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
