use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sumset::compositions::{self, exact_number, TriangleTable};
use sumset::lunar::{self, LunarNumber};
use sumset::multiset::{self, SetArray};
use sumset::promotion;
use sumset::set::{self, FiniteSet};
use sumset::verify::{self, Status, Target};

/// Sumset divisors, lunar arithmetic and headstrong compositions.
///
/// Sets are written `0,2,3`, `{0,2,3}`, `[k]` (= {0..k}) or `[k+]` (= {1..k});
/// lunar numbers as `digits@base`; set-arrays as `({0,1,2},{0,1},{})@3`.
#[derive(Parser)]
#[command(name = "sumset", version)]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for verification sweeps (default: all cores).
    #[arg(long, global = true, env = "SUMSET_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sumset A + B.
    Sum { a: FiniteSet, b: FiniteSet },
    /// Every divisor of A, in (size, lexicographic) order.
    Divisors {
        a: FiniteSet,
        /// Largest element accepted.
        #[arg(long, default_value_t = set::DEFAULT_ELEMENT_BOUND)]
        bound: u32,
    },
    /// The number of divisors d(A).
    Count {
        a: FiniteSet,
        #[arg(long, default_value_t = set::DEFAULT_ELEMENT_BOUND)]
        bound: u32,
    },
    /// Whether A has no factorization into two sets of size at least 2.
    Irreducible { a: FiniteSet },
    /// Lunar (digitwise max/min) arithmetic.
    Lunar {
        #[command(subcommand)]
        op: LunarOp,
    },
    /// The lunar number of a set (base 2) or set-array (base h+1).
    Beta {
        value: String,
        /// Read a lunar number and print the set or set-array it encodes.
        #[arg(long)]
        inverse: bool,
    },
    /// Promote the factor B of A ⊆ [K] to factors of [K].
    Promote {
        a: FiniteSet,
        k: u32,
        b: FiniteSet,
        /// Promote with this cofactor maximum instead of listing F(B).
        #[arg(long)]
        other_max: Option<u32>,
    },
    /// Headstrong compositions of n.
    Compositions {
        n: u32,
        /// Print only how many there are.
        #[arg(long)]
        count: bool,
    },
    /// Print the F(n,k) or H(n,m) table.
    Table(TableArgs),
    /// Run a theorem check or conjecture probe.
    Verify {
        target: Target,
        /// Sweep bound (defaults to the acceptance bound of the target).
        #[arg(long)]
        k: Option<u32>,
        /// Largest k allowed for this run.
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Write a table to a file.
    Export {
        #[command(flatten)]
        table: TableArgs,
        /// Destination file.
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum LunarOp {
    /// Digitwise maximum.
    Add { x: LunarNumber, y: LunarNumber },
    /// Lunar product (max over min of digit pairs).
    Mul { x: LunarNumber, y: LunarNumber },
    /// Every lunar divisor of X.
    Divisors {
        x: LunarNumber,
        /// Print only the count, which may exceed what enumeration reaches.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Rows (n = 1..rows); defaults to 5 for F and 10 for H.
    #[arg(long)]
    rows: Option<u32>,
    /// Columns for F (k = 1..cols).
    #[arg(long, default_value_t = 10)]
    cols: u32,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_COUNTEREXAMPLE: u8 = 3;

/// Text and JSON renderings of one result, plus the exit code to use.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            code: 0,
        }
    }
}

fn set_json(a: &FiniteSet) -> Value {
    json!(a.to_vec())
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn build_table(args: &TableArgs) -> TriangleTable {
    match args.kind {
        Kind::F => TriangleTable::fibonacci(args.rows.unwrap_or(5), args.cols),
        Kind::H => TriangleTable::headstrong(args.rows.unwrap_or(10)),
    }
}

fn render_table(table: &TriangleTable, format: Format) -> String {
    match format {
        Format::Plain => table.to_plain(),
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn run(command: Command, json_output: bool) -> sumset::Result<Output> {
    Ok(match command {
        Command::Sum { a, b } => {
            let s = set::sum(&a, &b)?;
            Output::new(s.to_string(), set_json(&s))
        }
        Command::Divisors { a, bound } => {
            let ds = set::divisors_bounded(&a, bound)?;
            Output::new(
                lines(&ds),
                json!({ "set": set_json(&a), "divisors": ds.iter().map(set_json).collect::<Vec<_>>() }),
            )
        }
        Command::Count { a, bound } => {
            let d = set::divisor_count_bounded(&a, bound)?;
            Output::new(d.to_string(), json!({ "set": set_json(&a), "divisor_count": d }))
        }
        Command::Irreducible { a } => {
            let irr = set::is_irreducible(&a)?;
            let word = if irr { "irreducible" } else { "reducible" };
            Output::new(word, json!({ "set": set_json(&a), "irreducible": irr }))
        }
        Command::Lunar { op } => match op {
            LunarOp::Add { x, y } => {
                let z = lunar::lunar_add(&x, &y)?;
                Output::new(z.to_string(), json!(z.to_string()))
            }
            LunarOp::Mul { x, y } => {
                let z = lunar::lunar_mul(&x, &y)?;
                Output::new(z.to_string(), json!(z.to_string()))
            }
            LunarOp::Divisors { x, count: true } => {
                let n = lunar::lunar_divisor_count(&x)?;
                Output::new(
                    n.to_string(),
                    json!({ "number": x.to_string(), "divisor_count": exact_number(&n) }),
                )
            }
            LunarOp::Divisors { x, count: false } => {
                let ds = lunar::lunar_divisors(&x)?;
                let names: Vec<String> = ds.iter().map(ToString::to_string).collect();
                Output::new(lines(&names), json!({ "number": x.to_string(), "divisors": names }))
            }
        },
        Command::Beta { value, inverse } => beta(&value, inverse)?,
        Command::Promote {
            a,
            k,
            b,
            other_max: Some(m),
        } => {
            let p = promotion::promote(&a, k, &b, m)?;
            Output::new(p.to_string(), set_json(&p))
        }
        Command::Promote {
            a,
            k,
            b,
            other_max: None,
        } => {
            let family = promotion::promoted_family(&a, k, &b)?;
            let members: Vec<FiniteSet> = family.members.iter().copied().collect();
            Output::new(
                lines(&members),
                json!({
                    "a": set_json(&a),
                    "k": k,
                    "divisor": set_json(&b),
                    "members": members.iter().map(set_json).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Compositions { n, count: true } => {
            let c = compositions::headstrong_count(n);
            Output::new(c.to_string(), json!({ "n": n, "count": exact_number(&c) }))
        }
        Command::Compositions { n, count: false } => {
            let cs = compositions::enumerate_headstrong(n)?;
            Output::new(lines(&cs), json!({ "n": n, "compositions": cs }))
        }
        Command::Table(args) => {
            let table = build_table(&args);
            let format = table_format(args.format, json_output, Format::Plain);
            let value = serde_json::from_str(&table.to_json()).expect("table JSON parses");
            Output::new(render_table(&table, format).trim_end(), value)
        }
        Command::Export { table, output } => {
            let format = table_format(table.format, json_output, Format::Csv);
            let mut body = render_table(&build_table(&table), format);
            if !body.ends_with('\n') {
                body.push('\n');
            }
            std::fs::write(&output, body).map_err(|e| {
                sumset::Error::Precondition(format!("cannot write {}: {e}", output.display()))
            })?;
            let path = output.display().to_string();
            Output::new(format!("wrote {path}"), json!({ "written": path }))
        }
        Command::Verify { target, k, max_k } => {
            let report = verify::verify(target, k, max_k)?;
            let mut out = Output::new(
                report.to_string().trim_end().to_string(),
                serde_json::to_value(&report).expect("report serializes"),
            );
            if report.status() == Status::Fail {
                out.code = EXIT_COUNTEREXAMPLE;
            }
            out
        }
    })
}

fn table_format(explicit: Option<Format>, json_output: bool, fallback: Format) -> Format {
    explicit.unwrap_or(if json_output { Format::Json } else { fallback })
}

fn beta(value: &str, inverse: bool) -> sumset::Result<Output> {
    if inverse {
        let n: LunarNumber = value.parse()?;
        if n.base() == 2 {
            let a = lunar::beta_inv(&n)?;
            return Ok(Output::new(a.to_string(), set_json(&a)));
        }
        let x = SetArray::from_lunar(&n)?;
        return Ok(Output::new(x.to_string(), json!(x.to_string())));
    }
    let n = if value.trim_start().starts_with('(') {
        multiset::beta_b(&value.parse::<SetArray>()?)
    } else {
        lunar::beta(&value.parse::<FiniteSet>()?)
    };
    Ok(Output::new(n.to_string(), json!(n.to_string())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(usize::from(n))
            .build_global();
    }
    match run(cli.command, cli.json) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON"));
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
