//! The `cyclic-lie` command line.
//!
//! Exit codes: 0 success, 1 a property was falsified, 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coinv::{self, tensor_to_json, CoinvElem};
use crate::error::{Error, Result};
use crate::fields2d;
use crate::parse;
use crate::scalar::{FieldSpec, Scalar};
use crate::space::SymplecticSpace;
use crate::verify::{self, Mutation, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cyclic-lie",
    version,
    about = "Exact computations in the Lie algebra of cyclic words over a symplectic space"
)]
pub struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Q,
    Fp,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Coefficient field
    #[arg(long, global = true, value_enum, default_value = "q")]
    field: FieldArg,
    /// Prime for `--field fp`
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Dimension of V [default: 2, or the size of --gram]
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Gram matrix of the form, rows separated by `;`, entries by `,`
    #[arg(long, global = true)]
    gram: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Word-length cap [default: per suite]
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Replay a single trial index
    #[arg(long, global = true)]
    trial: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: OutputArg,
    /// Add the independent quotient-rank column to `dims`
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, hide = true, default_value = "none", value_parser = parse_mutation)]
    mutate: Mutation,
}

fn parse_mutation(s: &str) -> std::result::Result<Mutation, String> {
    s.parse()
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("{e}; known suites: {}", names.join(", "))
    })
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket of two elements
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Run a property suite
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Necklace counts by length
    Dims { l_max: usize },
    /// Derivations, traces and the planar p/q split
    Eval {
        #[command(subcommand)]
        op: EvalOp,
    },
}

#[derive(Subcommand, Debug)]
enum EvalOp {
    /// The cyclic derivative D_x
    Dx {
        letter: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// The trace N, a sum over rotations
    Trace {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// p and q with N = x p - y q (dimension 2)
    Pq {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
}

impl GlobalOpts {
    fn field(&self) -> Result<FieldSpec> {
        match (self.field, self.prime) {
            (FieldArg::Q, None) => Ok(FieldSpec::RATIONALS),
            (FieldArg::Q, Some(_)) => Err(Error::Precondition("--prime needs --field fp".into())),
            (FieldArg::Fp, Some(p)) => FieldSpec::prime(p),
            (FieldArg::Fp, None) => Err(Error::Precondition("--field fp needs --prime".into())),
        }
    }

    fn gram(&self, field: FieldSpec) -> Result<Option<Vec<Vec<Scalar>>>> {
        let Some(text) = &self.gram else {
            return Ok(None);
        };
        let rows = parse::parse_matrix(text, field)?.rows();
        if let Some(d) = self.dim {
            if d != rows.len() {
                return Err(Error::Precondition(format!(
                    "--dim {d} disagrees with a {}x{0} --gram",
                    rows.len()
                )));
            }
        }
        Ok(Some(rows))
    }

    fn suite_config(&self) -> Result<SuiteConfig> {
        let field = self.field()?;
        let gram = self.gram(field)?;
        Ok(SuiteConfig {
            field,
            dim: gram.as_ref().map_or(self.dim.unwrap_or(2), Vec::len),
            gram,
            seed: self.seed,
            trials: self.trials,
            max_len: self.max_len,
            only_trial: self.trial,
            mutation: self.mutate,
        })
    }

    fn space(&self) -> Result<Arc<SymplecticSpace>> {
        self.suite_config()?.space()
    }
}

/// Runs the command line against explicit streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    writeln!(out, "{text}").map_err(|e| Error::Precondition(format!("cannot write output: {e}")))
}

fn emit_text(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::Precondition(format!("cannot write output: {e}")))
}

fn note_short_terms(err: &mut dyn Write, a: &CoinvElem, what: &str) {
    if a.has_short_terms() {
        let _ = writeln!(
            err,
            "note: {what} has terms of length < 2, outside the graded algebra proper"
        );
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let opts = &cli.opts;
    let json = opts.output == OutputArg::Json;
    match &cli.command {
        Command::Bracket { a, b } => {
            let space = opts.space()?;
            let a = parse::parse_element(a, &space)?;
            let b = parse::parse_element(b, &space)?;
            note_short_terms(err, &a, "first argument");
            note_short_terms(err, &b, "second argument");
            let c = a.bracket(&b);
            if json {
                emit(
                    out,
                    &json!({
                        "schema": 1,
                        "command": "bracket",
                        "field": space.field().to_string(),
                        "result": c.to_json(),
                        "degree": c.degree().to_string(),
                    }),
                )?;
            } else {
                emit_text(out, &c.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite } => {
            let cfg = opts.suite_config()?;
            let start = Instant::now();
            let report = verify::run(*suite, &cfg)?;
            let elapsed = start.elapsed();
            if json {
                emit(out, &report.to_json())?;
            } else {
                write!(out, "{report}").map_err(|e| Error::Precondition(e.to_string()))?;
            }
            let _ = writeln!(err, "runtime: {:.3} s", elapsed.as_secs_f64());
            Ok(if report.passed() { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Command::Dims { l_max } => dims(opts, *l_max, json, out),
        Command::Eval { op } => eval(opts, op, json, out, err),
    }
}

fn dims(opts: &GlobalOpts, l_max: usize, json: bool, out: &mut dyn Write) -> Result<i32> {
    if l_max < 2 {
        return Err(Error::Precondition("dims needs l_max >= 2".into()));
    }
    let space = opts.space()?;
    let (r, field) = (space.dim(), space.field());
    let mut rows = Vec::new();
    let mut agree = true;
    for l in 2..=l_max {
        let count = coinv::graded_dimension(r, l);
        let oracle = opts.oracle.then(|| coinv::quotient_dimension(field, r, l));
        agree &= oracle.is_none_or(|q| q == count);
        rows.push((l, count, oracle));
    }
    if json {
        let table: Vec<Value> = rows
            .iter()
            .map(|&(l, count, oracle)| {
                let mut row = json!({ "l": l, "degree": l as i64 - 2, "dim": count });
                if let Some(q) = oracle {
                    row["quotient_rank_dim"] = json!(q);
                }
                row
            })
            .collect();
        emit(
            out,
            &json!({
                "schema": 1,
                "command": "dims",
                "field": field.to_string(),
                "r": r,
                "rows": table,
                "oracle_agrees": opts.oracle.then_some(agree),
            }),
        )?;
    } else {
        let mut text = String::from("l\tdegree\tdim");
        if opts.oracle {
            text.push_str("\toracle");
        }
        for (l, count, oracle) in &rows {
            text.push_str(&format!("\n{l}\t{}\t{count}", *l as i64 - 2));
            if let Some(q) = oracle {
                text.push_str(&format!("\t{q}"));
            }
        }
        emit_text(out, &text)?;
    }
    Ok(if agree { EXIT_OK } else { EXIT_FALSIFIED })
}

fn eval(opts: &GlobalOpts, op: &EvalOp, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let space = opts.space()?;
    let field = space.field().to_string();
    match op {
        EvalOp::Dx { letter, element } => {
            let x = parse::parse_letter(letter, &space)?;
            let a = parse::parse_element(element, &space)?;
            let d = a.derivation(x);
            note_short_terms(err, &d, "the result");
            if json {
                emit(
                    out,
                    &json!({
                        "schema": 1,
                        "command": "dx",
                        "field": field,
                        "letter": space.names()[x as usize],
                        "result": d.to_json(),
                    }),
                )?;
            } else {
                emit_text(out, &d.to_string())?;
            }
        }
        EvalOp::Trace { element } => {
            let a = parse::parse_element(element, &space)?;
            let n = a.trace();
            if json {
                emit(
                    out,
                    &json!({ "schema": 1, "command": "trace", "field": field, "result": tensor_to_json(&n) }),
                )?;
            } else {
                emit_text(out, &n.to_string())?;
            }
        }
        EvalOp::Pq { element } => {
            let a = parse::parse_element(element, &space)?;
            let pq = fields2d::pq_decompose(&a)?;
            if json {
                emit(
                    out,
                    &json!({
                        "schema": 1,
                        "command": "pq",
                        "field": field,
                        "p": tensor_to_json(&pq.p),
                        "q": tensor_to_json(&pq.q),
                    }),
                )?;
            } else {
                emit_text(out, &format!("p = {}\nq = {}", pq.p, pq.q))?;
            }
        }
    }
    Ok(EXIT_OK)
}
