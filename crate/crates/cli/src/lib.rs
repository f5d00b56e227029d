//! `crossfam` command-line front end.
//!
//! Exit codes: 0 when every checked bound and classification holds, 2 when
//! one fails, 1 on usage, input or budget errors.

pub mod commands;
pub mod config;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{CommandKind, Construction, GridKind, OutputFormat, PartList, RunConfig, Span};

#[derive(Debug, Parser)]
#[command(
    name = "crossfam",
    version,
    about = "Exact checks on multi-part cross-intersecting families"
)]
pub struct Cli {
    /// Config file of `key = value` lines; flags given here override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for random sweeps; cell `i` of a grid uses `seed + i`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tuple budget of the cross-intersecting search.
    #[arg(long, global = true)]
    pub work_limit: Option<u64>,
    /// Node budget of the independent-set solver.
    #[arg(long, global = true)]
    pub node_limit: Option<u64>,
    /// Largest number of optimal systems or sets kept.
    #[arg(long, global = true)]
    pub max_systems: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence number, imprimitivity and MIS-normality of a product of Kneser graphs.
    Alpha(AlphaArgs),
    /// Largest total size of m cross-intersecting families on one layer.
    Crossmax(CrossmaxArgs),
    /// Largest |A| + |B| for nonempty cross-intersecting A, B on two layers.
    Pairmax(PairmaxArgs),
    /// Fragments, imprimitive shapes and the size estimates behind them.
    Fragments(FragmentsArgs),
    /// Run the command named in the config file.
    Run,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long)]
    pub n: Option<PartList>,
    #[arg(long)]
    pub k: Option<PartList>,
}

#[derive(Debug, Args)]
pub struct CrossmaxArgs {
    #[arg(long)]
    pub n: Option<PartList>,
    #[arg(long)]
    pub k: Option<PartList>,
    #[arg(long)]
    pub m: Option<Span>,
    /// Search every system and classify the optima.
    #[arg(long)]
    pub exhaustive: bool,
    /// Check this many random systems against the bound.
    #[arg(long)]
    pub random: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PairmaxArgs {
    #[arg(long)]
    pub n: Option<PartList>,
    #[arg(long)]
    pub t: Option<PartList>,
    #[arg(long)]
    pub s: Option<PartList>,
    /// Search every closed pair and classify the extremal ones.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum)]
    pub construction: Option<Construction>,
    /// Check this many random pairs against the bound.
    #[arg(long)]
    pub random: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FragmentsArgs {
    #[arg(long)]
    pub n: Option<PartList>,
    #[arg(long)]
    pub t: Option<PartList>,
    #[arg(long)]
    pub s: Option<PartList>,
    /// Sweep every cell satisfying the hypotheses instead of one instance.
    #[arg(long, value_enum)]
    pub grid: Option<GridKind>,
    #[arg(long)]
    pub pmax: Option<u32>,
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Report `H(x)` for the distinguished part `--j`.
    #[arg(long)]
    pub h_poly: bool,
    /// Distinguished part, 1-based.
    #[arg(long)]
    pub j: Option<Span>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn set_opt<T>(slot: &mut Option<T>, v: Option<T>) {
    if v.is_some() {
        *slot = v;
    }
}

impl Cli {
    /// The config file (if any) with every flag given on the command line
    /// applied on top.
    pub fn resolve(&self) -> Result<(CommandKind, RunConfig)> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                RunConfig::parse(&text).with_context(|| format!("in {}", path.display()))?
            }
            None => RunConfig::default(),
        };
        set(&mut c.output, self.output);
        set_opt(&mut c.out, self.out.clone());
        set_opt(&mut c.threads, self.threads);
        set(&mut c.seed, self.seed);
        set_opt(&mut c.work_limit, self.work_limit);
        set_opt(&mut c.node_limit, self.node_limit);
        set_opt(&mut c.max_systems, self.max_systems);
        let kind = match &self.command {
            Command::Alpha(a) => {
                set(&mut c.n, a.n.clone());
                set(&mut c.k, a.k.clone());
                CommandKind::Alpha
            }
            Command::Crossmax(a) => {
                set(&mut c.n, a.n.clone());
                set(&mut c.k, a.k.clone());
                set_opt(&mut c.m, a.m);
                c.exhaustive |= a.exhaustive;
                set(&mut c.random, a.random);
                CommandKind::Crossmax
            }
            Command::Pairmax(a) => {
                set(&mut c.n, a.n.clone());
                set(&mut c.t, a.t.clone());
                set(&mut c.s, a.s.clone());
                c.exhaustive |= a.exhaustive;
                set_opt(&mut c.construction, a.construction);
                set(&mut c.random, a.random);
                CommandKind::Pairmax
            }
            Command::Fragments(a) => {
                set(&mut c.n, a.n.clone());
                set(&mut c.t, a.t.clone());
                set(&mut c.s, a.s.clone());
                set_opt(&mut c.grid, a.grid);
                set_opt(&mut c.pmax, a.pmax);
                set_opt(&mut c.nmax, a.nmax);
                c.h_poly |= a.h_poly;
                set_opt(&mut c.j, a.j);
                CommandKind::Fragments
            }
            Command::Run => c.command.ok_or_else(|| anyhow!("the config file names no command"))?,
        };
        c.command = Some(kind);
        Ok((kind, c))
    }
}

fn command_name(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::Alpha => "alpha",
        CommandKind::Crossmax => "crossmax",
        CommandKind::Pairmax => "pairmax",
        CommandKind::Fragments => "fragments",
    }
}

/// Runs one resolved configuration and renders its report.
pub fn execute(kind: CommandKind, c: &RunConfig) -> Result<(String, commands::Outcome)> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = c.threads {
        pool = pool.num_threads(t);
    }
    let outcome = pool.build()?.install(|| commands::run(kind, c))?;
    let text = render::render(command_name(kind), &outcome, c.output)?;
    Ok((text, outcome))
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = cli.resolve().and_then(|(kind, c)| {
        let (text, outcome) = execute(kind, &c)?;
        match &c.out {
            Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) if outcome.failures.is_empty() => ExitCode::SUCCESS,
        Ok(outcome) => {
            for f in &outcome.failures {
                eprintln!("assertion failed: {f}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
