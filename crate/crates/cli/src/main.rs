mod output;
mod problem;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use linconj::{
    core_edges, dense_realization, enumerate_dyneq, enumerate_linconj, recover_rate_coefficients, simulate,
    ConstraintOptions, Dynamics, EnumerationOptions, Model,
};
use serde_json::json;

use crate::problem::{constraint_options, Overrides, ProblemFile};

/// Linearly conjugate realizations of kinetic polynomial systems.
#[derive(Debug, Parser)]
#[command(name = "linconj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report whether the system has any realization on its complexes.
    Check(Common),
    /// Print the dense structure.
    Dense {
        #[command(flatten)]
        common: Common,
        /// Also print T^-1, A_k and the rate coefficients as JSON.
        #[arg(long)]
        with_params: bool,
    },
    /// Print the reactions present in every realization.
    Core(Common),
    /// Enumerate all realizable structures.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Dynamically equivalent structures (T = I) instead.
        #[arg(long)]
        dyneq: bool,
        /// Write JSON lines here instead of standard output.
        #[arg(long)]
        jsonl: Option<PathBuf>,
        /// Write one DOT file per structure into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        /// Print "edge_count,count" lines at the end.
        #[arg(long)]
        histogram: bool,
        /// Treat every dense reaction as optional.
        #[arg(long)]
        skip_core: bool,
        /// Report progress on standard error.
        #[arg(long)]
        progress: bool,
    },
    /// Integrate the original system or its dense realization with RK4.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Initial state, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, value_enum, default_value_t = Which::Original)]
        realization: Which,
        /// Diagonal of T^-1 for the dense realization, comma separated.
        #[arg(long, value_delimiter = ',')]
        t_inv: Option<Vec<f64>>,
        /// Write the trajectory here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Original,
    Dense,
}

#[derive(Debug, Args)]
struct Common {
    /// Problem file (JSON).
    file: PathBuf,
    /// Add kinetic mass conservation (weights from the file, else all ones).
    #[arg(long)]
    mass: bool,
    /// Forbid a reaction, e.g. "2->6". Repeatable.
    #[arg(long)]
    exclude: Vec<String>,
    /// Forbid reactions between groups of complexes, e.g. "1,2,3,4|5,6".
    #[arg(long)]
    confine: Option<String>,
    #[arg(long, env = "LINCONJ_UPPER_BOUND")]
    upper_bound: Option<f64>,
    #[arg(long, env = "LINCONJ_SUPPORT_TOL")]
    support_tol: Option<f64>,
    #[arg(long, env = "LINCONJ_PIVOT_TOL", hide = true)]
    pivot_tol: Option<f64>,
    #[arg(long, env = "LINCONJ_FEASIBILITY_TOL", hide = true)]
    feasibility_tol: Option<f64>,
}

impl Common {
    fn load(&self, t_inv: Option<Vec<f64>>) -> Result<(Model, ConstraintOptions<f64>)> {
        let problem = ProblemFile::load(&self.file)?;
        let model = problem.model()?;
        let overrides = Overrides {
            mass: self.mass,
            exclude: self.exclude.clone(),
            confine: self.confine.clone(),
            upper_bound: self.upper_bound,
            support_tol: self.support_tol,
            pivot_tol: self.pivot_tol,
            feasibility_tol: self.feasibility_tol,
            t_inv,
        };
        let opts = constraint_options(&problem, &model, &overrides)?;
        Ok((model, opts))
    }
}

fn edge_lines(g: &linconj::GraphStructure) -> String {
    g.iter().map(|e| format!("{e}\n")).collect()
}

fn check(common: &Common) -> Result<()> {
    let (model, opts) = common.load(None)?;
    let dense = dense_realization(&model, &opts)?;
    writeln!(io::stdout(), "dense: {} edges", dense.structure.len())?;
    Ok(())
}

fn dense(common: &Common, with_params: bool) -> Result<()> {
    let (model, opts) = common.load(None)?;
    let dense = dense_realization(&model, &opts)?;
    if with_params {
        let w = &dense.witness;
        let record = json!({
            "edges": output::edges_json(&dense.structure),
            "edge_count": dense.structure.len(),
            "t_inv": output::vector_json(&w.t_inv),
            "a_k": output::matrix_json(&w.a_k),
            "rate_coefficients": output::matrix_json(&recover_rate_coefficients(&model, w)),
        });
        writeln!(io::stdout(), "{record}")?;
    } else {
        write!(
            io::stdout(),
            "dense: {} edges\n{}",
            dense.structure.len(),
            edge_lines(&dense.structure)
        )?;
    }
    Ok(())
}

fn core(common: &Common) -> Result<()> {
    let (model, opts) = common.load(None)?;
    let dense = dense_realization(&model, &opts)?;
    let core = core_edges(&model, &dense.structure, &opts)?;
    write!(io::stdout(), "core: {} edges\n{}", core.len(), edge_lines(&core))?;
    Ok(())
}

struct EnumerateArgs<'a> {
    threads: usize,
    dyneq: bool,
    jsonl: Option<&'a Path>,
    dot_dir: Option<&'a Path>,
    histogram: bool,
    skip_core: bool,
    progress: bool,
}

fn enumerate(common: &Common, args: EnumerateArgs<'_>) -> Result<()> {
    let (model, opts) = common.load(None)?;
    let mut out: Box<dyn Write + Send> = match args.jsonl {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    if let Some(dir) = args.dot_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let eopts = EnumerationOptions {
        workers: args.threads,
        compute_core: !args.skip_core,
        stream_witnesses: false,
        progress: args.progress.then(|| {
            Box::new(|p: linconj::Progress| {
                eprintln!(
                    "{} structures, {} LP solves, {:.1}s",
                    p.found,
                    p.lp_solves,
                    p.elapsed.as_secs_f64()
                )
            }) as linconj::ProgressHook
        }),
    };
    let mut failure: Option<anyhow::Error> = None;
    let sink = |e: linconj::Emission<f64>| {
        if failure.is_some() {
            return;
        }
        let seq = e.seq.to_string();
        let written = serde_json::to_writer(&mut out, &output::StructureRecord::new(seq.clone(), &e.structure))
            .map_err(anyhow::Error::from)
            .and_then(|()| out.write_all(b"\n").map_err(anyhow::Error::from))
            .and_then(|()| match args.dot_dir {
                Some(dir) => {
                    let name = if seq.is_empty() {
                        "core".to_string()
                    } else {
                        seq.clone()
                    };
                    let path = dir.join(format!("{name}.dot"));
                    std::fs::write(&path, output::dot(&model, &name, &e.structure))
                        .with_context(|| format!("writing {}", path.display()))
                }
                None => Ok(()),
            });
        if let Err(err) = written {
            failure = Some(err);
        }
    };
    let summary = if args.dyneq {
        enumerate_dyneq(&model, &opts, eopts, sink)?
    } else {
        enumerate_linconj(&model, &opts, eopts, sink)?
    };
    if let Some(err) = failure {
        return Err(err);
    }
    serde_json::to_writer(&mut out, &output::summary_record(&summary))?;
    out.write_all(b"\n")?;
    out.flush()?;
    drop(out);
    if args.histogram {
        write!(io::stdout(), "{}", output::histogram_csv(&summary))?;
    }
    Ok(())
}

struct SimulateArgs<'a> {
    x0: &'a [f64],
    dt: f64,
    t_end: f64,
    which: Which,
    t_inv: Option<&'a [f64]>,
    csv: Option<&'a Path>,
}

fn run_simulation(common: &Common, args: SimulateArgs<'_>) -> Result<()> {
    let (model, opts) = common.load(args.t_inv.map(<[f64]>::to_vec))?;
    if args.x0.len() != model.num_species() {
        bail!("--x0 needs {} values", model.num_species());
    }
    let trajectory = match args.which {
        Which::Original => simulate(&model, Dynamics::Kinetic, args.x0, &args.dt, &args.t_end)?,
        Which::Dense => {
            let dense = dense_realization(&model, &opts)?;
            let witness = match args.t_inv {
                Some(t) => dense.witness.scaled(&(t[0] / dense.witness.t_inv[0])),
                None => dense.witness,
            };
            eprintln!(
                "t_inv: {}",
                witness
                    .t_inv
                    .iter()
                    .map(|v| output::fmt12(*v))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let rates = recover_rate_coefficients(&model, &witness);
            simulate(&model, Dynamics::MassAction(&rates), args.x0, &args.dt, &args.t_end)?
        }
    };
    let mut out: Box<dyn Write> = match args.csv {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(out, "t,{}", model.species().join(","))?;
    for (t, x) in trajectory.times.iter().zip(&trajectory.states) {
        let row: Vec<String> = std::iter::once(*t)
            .chain(x.iter().copied())
            .map(output::fmt12)
            .collect();
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Check(common) => check(common),
        Command::Dense { common, with_params } => dense(common, *with_params),
        Command::Core(common) => core(common),
        Command::Enumerate {
            common,
            threads,
            dyneq,
            jsonl,
            dot_dir,
            histogram,
            skip_core,
            progress,
        } => enumerate(
            common,
            EnumerateArgs {
                threads: *threads,
                dyneq: *dyneq,
                jsonl: jsonl.as_deref(),
                dot_dir: dot_dir.as_deref(),
                histogram: *histogram,
                skip_core: *skip_core,
                progress: *progress,
            },
        ),
        Command::Simulate {
            common,
            x0,
            dt,
            t_end,
            realization,
            t_inv,
            csv,
        } => run_simulation(
            common,
            SimulateArgs {
                x0,
                dt: *dt,
                t_end: *t_end,
                which: *realization,
                t_inv: t_inv.as_deref(),
                csv: csv.as_deref(),
            },
        ),
    }
}

fn is_infeasible(err: &anyhow::Error) -> bool {
    match err.downcast_ref::<linconj::Error>() {
        Some(linconj::Error::NotRealizable) => true,
        Some(linconj::Error::Interrupted { source, .. }) => matches!(**source, linconj::Error::NotRealizable),
        _ => false,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain()
        .filter_map(|e| e.downcast_ref::<io::Error>())
        .any(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) if is_infeasible(&err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
