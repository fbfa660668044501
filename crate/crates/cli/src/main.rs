use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qpi::equivalence::{check_equiv_with, EquivOptions, Observation, DEFAULT_DEPTH};
use qpi::runs::{profile_seeded, runs_seeded};
use qpi::{decompose, implement_trace, parse_term, print_term, sync_count, Error, Name, SemiringId, Term, Trace};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "qpi", version, about = "Quantitative testing semantics for the finite πI-calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Outcome semiring: nat, bool01, may or must.
    #[arg(long, global = true, default_value = "nat")]
    semiring: SemiringId,

    /// Nesting depth of the context battery.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,

    /// Comma-separated names the battery acts on (default: free names).
    #[arg(long, global = true, value_delimiter = ',')]
    names: Option<Vec<String>>,

    /// Inline input instead of files; repeat for commands taking two inputs.
    #[arg(short = 'e', long = "expr", global = true)]
    exprs: Vec<String>,

    /// Print JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the search order.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print terms in canonical syntax.
    Parse { files: Vec<String> },
    /// Outcome of each term.
    Outcome { files: Vec<String> },
    /// Runs of a term with their causal order.
    Runs { files: Vec<String> },
    /// Decomposition of a term into traces, as JSON.
    Traces { files: Vec<String> },
    /// Implementation term of a JSON trace.
    Impl { files: Vec<String> },
    /// Number of synchronizations of two JSON traces.
    Sync { files: Vec<String> },
    /// Compare two terms.
    Equiv { files: Vec<String> },
}

enum Failure {
    Usage(String),
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Input(_) => 66,
            Failure::Lib(Error::Parse { .. } | Error::InvalidTrace(_)) => 64,
            Failure::Lib(Error::Carrier { .. }) => 65,
            Failure::Lib(_) => 70,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Input(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

struct Inputs {
    items: Vec<String>,
}

impl Inputs {
    fn gather(files: &[String], exprs: &[String]) -> Result<Inputs, Failure> {
        if !files.is_empty() && !exprs.is_empty() {
            return Err(Failure::Usage("give inputs either as files or with -e, not both".into()));
        }
        if !exprs.is_empty() {
            return Ok(Inputs { items: exprs.to_vec() });
        }
        if files.is_empty() {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            return Ok(Inputs { items: vec![s] });
        }
        let items = files
            .iter()
            .map(|f| {
                if f == "-" {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s).map(|_| s)
                } else {
                    fs::read_to_string(f)
                }
                .map_err(|e| Failure::Input(format!("{f}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        Ok(Inputs { items })
    }

    fn exactly(self, n: usize, what: &str) -> Result<Vec<String>, Failure> {
        if self.items.len() != n {
            return Err(Failure::Usage(format!("expected {n} {what}, got {}", self.items.len())));
        }
        Ok(self.items)
    }

    fn terms(&self) -> Result<Vec<Term>, Failure> {
        Ok(self.items.iter().map(|s| parse_term(s)).collect::<Result<_, _>>()?)
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values print")
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let id = cli.semiring;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(|e| Failure::Input(e.to_string()));
    match &cli.command {
        Command::Parse { files } => {
            let terms = Inputs::gather(files, &cli.exprs)?.terms()?;
            for t in terms {
                let s = print_term(&t);
                w(out, if cli.json { json!({ "term": s }).to_string() } else { s })?;
            }
        }
        Command::Outcome { files } => {
            let terms = Inputs::gather(files, &cli.exprs)?.terms()?;
            for t in terms {
                let v = profile_seeded(&t, Some(cli.seed))?.evaluate(id)?;
                w(
                    out,
                    if cli.json {
                        json!({ "semiring": id.name(), "outcome": v.to_string() }).to_string()
                    } else {
                        v.to_string()
                    },
                )?;
            }
        }
        Command::Runs { files } => {
            let t = parse_term(&Inputs::gather(files, &cli.exprs)?.exactly(1, "term")?[0])?;
            let runs = runs_seeded(&t, Some(cli.seed))?;
            if cli.json {
                let js: Vec<_> = runs
                    .iter()
                    .map(|r| {
                        json!({
                            "labels": r.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                            "order": r.order().hasse().into_iter().map(|(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                w(out, pretty(&json!(js)))?;
            } else {
                for r in runs {
                    w(out, r.to_string())?;
                }
            }
        }
        Command::Traces { files } => {
            let t = parse_term(&Inputs::gather(files, &cli.exprs)?.exactly(1, "term")?[0])?;
            w(out, pretty(&decompose(&t, id)?.to_json()))?;
        }
        Command::Impl { files } => {
            let src = Inputs::gather(files, &cli.exprs)?.exactly(1, "trace")?;
            let t = implement_trace(&Trace::from_json_str(&src[0])?);
            let s = print_term(&t);
            w(out, if cli.json { json!({ "term": s }).to_string() } else { s })?;
        }
        Command::Sync { files } => {
            let src = Inputs::gather(files, &cli.exprs)?.exactly(2, "traces")?;
            let n = sync_count(&Trace::from_json_str(&src[0])?, &Trace::from_json_str(&src[1])?);
            w(out, if cli.json { json!({ "sync_count": n }).to_string() } else { n.to_string() })?;
        }
        Command::Equiv { files } => {
            let src = Inputs::gather(files, &cli.exprs)?.exactly(2, "terms")?;
            let (p, q) = (parse_term(&src[0])?, parse_term(&src[1])?);
            let opts = EquivOptions {
                semiring: id,
                depth: cli.depth,
                names: cli.names.as_ref().map(|ns| ns.iter().map(|n| Name::new(n.trim())).collect::<BTreeSet<_>>()),
                observation: if matches!(id, SemiringId::May | SemiringId::Must) {
                    Observation::Success
                } else {
                    Observation::Exact
                },
            };
            let v = check_equiv_with(&p, &q, &opts)?;
            w(out, if cli.json { pretty(&v.to_json()) } else { v.to_string() })?;
            return Ok(v.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qpi: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
