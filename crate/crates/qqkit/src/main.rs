use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qqkit::error::QqError;
use qqkit::job::{run, Command, Format, JobSpec};

/// Exact qq-characters of decorated quivers.
///
/// Exit codes: 0 success, 1 a check did not pass, 2 invalid input,
/// 3 pole, 4 colliding arguments, 5 Y-monomial collision,
/// 6 limit not defined, 7 internal consistency failure.
#[derive(Parser)]
#[command(name = "qqkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// iWeyl expansion of a weight
    Expand(Common),
    /// Expansion followed by a parameter specialization
    Higgs(Common),
    /// Classical limit q1 -> 1 or q2 -> 1
    Limit(Common),
    /// Hasse diagram of the reflection flow
    Hasse(Common),
    /// Partition-sum character of a cyclic quiver, graded by degree
    AffineExpand(Common),
    /// Compare exact vanishing with the Burge and pit filters
    BurgeCheck(Scan),
    /// Replay the fixture corpus
    Verify(VerifyArgs),
    /// Run a job described by a JSON file
    Job {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Latex,
    Dot,
    Text,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Json => Format::Json,
            Fmt::Latex => Format::Latex,
            Fmt::Dot => Format::Dot,
            Fmt::Text => Format::Text,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Builtin name (A1, A2, BC2, A0hat, Arhat(r)) or inline quiver JSON
    #[arg(long)]
    quiver: String,
    /// Weights in node order ("2,0") or per node ("1=2,2=0")
    #[arg(long)]
    w: Option<String>,
    /// Explicit parameters as JSON, e.g. '{"1": ["x", "x*q1"]}'
    #[arg(long)]
    params: Option<String>,
    /// Substitution JSON, a file holding it, or kr:q1 / kr:q2
    #[arg(long)]
    higgs: Option<String>,
    #[arg(long)]
    limit: Option<String>,
    #[arg(long)]
    max_deg: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Scan {
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    i: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    j: Option<Vec<u32>>,
    #[arg(long, default_value_t = 6)]
    max_size: u32,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directory of fixture JSON files; the bundled corpus by default
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Worker threads (also QQKIT_THREADS)
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn invalid(msg: String) -> QqError {
    QqError::Validation(msg)
}

fn parse_w(s: &str, quiver: &str) -> Result<BTreeMap<String, u32>, QqError> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| invalid(format!("bad weight '{t}'")));
    let mut out = BTreeMap::new();
    if s.contains('=') {
        for part in s.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| invalid(format!("bad weight '{part}'")))?;
            out.insert(k.trim().to_string(), num(v)?);
        }
        return Ok(out);
    }
    let q = qqkit::io::parse_quiver(quiver)?;
    let vals: Vec<&str> = s.split(',').collect();
    if vals.len() != q.nodes.len() {
        return Err(invalid(format!("--w has {} entries, quiver has {} nodes", vals.len(), q.nodes.len())));
    }
    for (n, v) in q.nodes.iter().zip(vals) {
        out.insert(n.id.clone(), num(v)?);
    }
    Ok(out)
}

fn json_arg(s: &str) -> Result<Value, QqError> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| invalid(format!("{s}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| invalid(format!("{s}: {e}")))
}

fn common_job(command: Command, c: Common) -> Result<(JobSpec, Option<PathBuf>), QqError> {
    let w = c.w.as_deref().map(|w| parse_w(w, &c.quiver)).transpose()?;
    let params = match &c.params {
        Some(p) => Some(serde_json::from_value(json_arg(p)?).map_err(|e| invalid(format!("--params: {e}")))?),
        None => None,
    };
    let higgs = match c.higgs.as_deref() {
        Some(h) if h.starts_with("kr:") => Some(Value::String(h.to_string())),
        Some(h) => Some(json_arg(h)?),
        None => None,
    };
    let quiver = if c.quiver.trim_start().starts_with('{') { json_arg(&c.quiver)? } else { Value::String(c.quiver) };
    let job = JobSpec {
        command,
        quiver: Some(quiver),
        w,
        params,
        higgs,
        limit: c.limit,
        max_deg: c.max_deg,
        format: c.format.map(Into::into),
        ..JobSpec::default()
    };
    Ok((job, c.out))
}

fn build(cmd: Cmd) -> Result<(JobSpec, Option<PathBuf>), QqError> {
    Ok(match cmd {
        Cmd::Expand(c) => common_job(Command::Expand, c)?,
        Cmd::Higgs(c) => common_job(Command::Higgs, c)?,
        Cmd::Limit(c) => common_job(Command::Limit, c)?,
        Cmd::Hasse(c) => common_job(Command::Hasse, c)?,
        Cmd::AffineExpand(c) => common_job(Command::AffineExpand, c)?,
        Cmd::BurgeCheck(s) => (
            JobSpec {
                command: Command::BurgeCheck,
                r: Some(s.r),
                i: s.i,
                j: s.j,
                max_size: Some(s.max_size),
                format: s.format.map(Into::into),
                ..JobSpec::default()
            },
            s.out,
        ),
        Cmd::Verify(v) => (
            JobSpec {
                command: Command::Verify,
                corpus: v.corpus,
                threads: v.threads,
                format: v.format.map(Into::into),
                ..JobSpec::default()
            },
            v.out,
        ),
        Cmd::Job { file, out } => {
            let text = std::fs::read_to_string(&file).map_err(|e| invalid(format!("{}: {e}", file.display())))?;
            (JobSpec::from_json(&text)?, out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build(cli.cmd).and_then(|(job, out)| Ok((run(&job)?, out)));
    match result {
        Ok((output, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &output.body).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(output.body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
