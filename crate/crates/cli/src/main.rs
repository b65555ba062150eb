use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use fullgraphic::adversarial::{epsilon_display, XChoice};
use fullgraphic::counting::{boundary_quotient_with, DEFAULT_COUNT_LIMIT};
use fullgraphic::exact::parse_rational;
use fullgraphic::regions::leg;
use fullgraphic::{
    certify, classify, construct_unstable, is_graphic, run_chain, unstable_window, ChainConfig,
    Convention, DegreeSequence, Error, LabeledGraph, RealizationCounter, SimpleRegion,
};

mod scan;

#[derive(Parser)]
#[command(name = "fullgraphic", version, about = "Degree-sequence regions, counting and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    sigma: usize,
    #[arg(long)]
    c1: usize,
    #[arg(long)]
    c2: usize,
}

impl RegionArgs {
    fn region(&self) -> Result<SimpleRegion, Error> {
        SimpleRegion::new(self.n, self.sigma, self.c1, self.c2)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Le,
    Lt,
}

#[derive(Clone, Copy, ValueEnum)]
enum XChoiceArg {
    Least,
    Greatest,
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Erdős–Gallai test with the least failing k.
    Graphic {
        #[arg(long)]
        seq: DegreeSequence,
    },
    /// Least element of a region under the majorization order.
    Leg(RegionArgs),
    /// Region predicates and the Σ-window.
    Classify {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_parser = rational_arg)]
        epsilon: Option<BigRational>,
    },
    /// Exact number of labelled realizations.
    Count {
        #[arg(long)]
        seq: DegreeSequence,
        #[arg(long, default_value_t = DEFAULT_COUNT_LIMIT)]
        limit: usize,
    },
    /// Exact boundary quotient.
    Boundary {
        #[arg(long)]
        seq: DegreeSequence,
        #[arg(long, value_enum, default_value = "le")]
        convention: ConventionArg,
        #[arg(long, default_value_t = DEFAULT_COUNT_LIMIT)]
        limit: usize,
    },
    /// Witness trail or hostile certificate for twin vertices.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// `n,sigma,c1,c2`
        #[arg(long)]
        region: SimpleRegion,
    },
    /// Split composition around a half-graph inside a region.
    Adversarial {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "least")]
        x_choice: XChoiceArg,
    },
    /// Σ-window and ε for the split construction.
    Window {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c1: usize,
        #[arg(long)]
        c2: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = rational_arg)]
        beta: Option<BigRational>,
        /// Emit one CSV row instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Switch chain with exact total-variation diagnostics.
    Mcmc {
        #[arg(long)]
        seq: DegreeSequence,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        burnin: u64,
        #[arg(long, default_value_t = 1)]
        thin: u64,
        /// Write `sample_index,state_key` rows to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// One CSV row per even Σ in `[n*c2, n*c1]`.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c1: usize,
        #[arg(long)]
        c2: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_parser = rational_arg)]
        beta: Option<BigRational>,
        #[arg(long)]
        out: PathBuf,
    },
}

pub(crate) enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

pub(crate) type Outcome = Result<String, Failure>;

pub(crate) fn to_json<T: Serialize>(v: &T) -> Outcome {
    serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Graphic { seq } => {
            #[derive(Serialize)]
            struct Verdict {
                graphic: bool,
                failing_k: Option<usize>,
            }
            let v = is_graphic(&seq)?;
            to_json(&Verdict {
                graphic: v.graphic,
                failing_k: v.failing_k,
            })
        }
        Command::Leg(args) => {
            let region = args.region()?;
            let l = leg(&region)?;
            let fully = is_graphic(&l.sequence)?.graphic;
            to_json(&json!({
                "region": region,
                "leg": l.sequence,
                "alpha_floor": l.alpha_floor,
                "a": l.a,
                "fully_graphic": fully,
            }))
        }
        Command::Classify { region, epsilon } => {
            let region = region.region()?;
            to_json(&classify(&region, epsilon.as_ref())?)
        }
        Command::Count { seq, limit } => {
            let c = RealizationCounter::new(limit).count(&seq)?;
            to_json(&json!({ "sequence": seq, "count": c.to_string() }))
        }
        Command::Boundary {
            seq,
            convention,
            limit,
        } => {
            let conv = match convention {
                ConventionArg::Le => Convention::ILeJ,
                ConventionArg::Lt => Convention::ILtJ,
            };
            to_json(&boundary_quotient_with(&RealizationCounter::new(limit), &seq, conv)?)
        }
        Command::Certify {
            graph,
            p,
            q,
            region,
        } => {
            let text = std::fs::read_to_string(&graph)
                .map_err(|e| Failure::Usage(format!("--graph {}: {e}", graph.display())))?;
            let g: LabeledGraph = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("--graph {}: {e}", graph.display())))?;
            to_json(&certify(&g, p, q, &region)?)
        }
        Command::Adversarial {
            region,
            r,
            x_choice,
        } => {
            let region = region.region()?;
            let choice = match x_choice {
                XChoiceArg::Least => XChoice::Least,
                XChoiceArg::Greatest => XChoice::Greatest,
            };
            let c = construct_unstable(&region, r, choice)?;
            let comp = &c.composition;
            to_json(&json!({
                "region": region,
                "r": r,
                "x_choice": choice,
                "x": comp.x,
                "y": comp.y,
                "e": comp.e,
                "sigma": comp.sigma,
                "sequence": c.sequence,
                "graph": comp.graph,
            }))
        }
        Command::Window {
            n,
            c1,
            c2,
            r,
            beta,
            csv,
        } => {
            let w = unstable_window(n, c1, c2, r, beta.as_ref())?;
            w.require_window()?;
            if csv {
                let mut out = csv::Writer::from_writer(Vec::new());
                out.write_record(scan::WINDOW_HEADER).map_err(csv_failure)?;
                out.write_record(window_row(&w)).map_err(csv_failure)?;
                let bytes = out.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
                Ok(String::from_utf8(bytes)
                    .expect("csv output is utf-8")
                    .trim_end()
                    .to_string())
            } else {
                to_json(&w)
            }
        }
        Command::Mcmc {
            seq,
            steps,
            seed,
            burnin,
            thin,
            trace,
        } => {
            let config = ChainConfig {
                seed,
                steps,
                thin,
                burn_in: burnin,
                record_trace: trace.is_some(),
            };
            let mut report = run_chain(&seq, &config)?;
            if let (Some(path), Some(rows)) = (trace, report.trace.take()) {
                let mut out = csv::Writer::from_path(&path)
                    .map_err(|e| Failure::Usage(format!("--trace {}: {e}", path.display())))?;
                out.write_record(["sample_index", "state_key"]).map_err(csv_failure)?;
                for (i, key) in rows {
                    out.write_record([i.to_string(), key]).map_err(csv_failure)?;
                }
                out.flush().map_err(|e| Failure::Usage(e.to_string()))?;
            }
            to_json(&report)
        }
        Command::Scan {
            n,
            c1,
            c2,
            r,
            beta,
            out,
        } => scan::run(n, c1, c2, r, beta.as_ref(), &out),
    }
}

pub(crate) fn csv_failure(e: csv::Error) -> Failure {
    Failure::Usage(e.to_string())
}

pub(crate) fn window_row(w: &fullgraphic::UnstableWindow) -> Vec<String> {
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let (num, den) = match &w.epsilon {
        Some(eps) => {
            let shown = epsilon_display(eps, 12);
            (shown.numer().to_string(), shown.denom().to_string())
        }
        None => (String::new(), String::new()),
    };
    vec![
        w.n.to_string(),
        w.c1.to_string(),
        w.c2.to_string(),
        w.r.to_string(),
        w.beta.as_ref().map(|b| b.to_string()).unwrap_or_default(),
        opt(w.x_min),
        opt(w.x_max),
        opt(w.sigma_min),
        opt(w.sigma_max),
        num,
        den,
        w.eq8_holds.map(|b| b.to_string()).unwrap_or_default(),
    ]
}

// A closed pipe downstream is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            let body = json!({ "error": { "tag": e.tag(), "message": e.to_string() } });
            emit(&serde_json::to_string_pretty(&body).expect("static shape"));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
