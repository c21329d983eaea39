//! Command-line front end. Thin adapter over the library: parsing and
//! formatting only, no numeric logic of its own.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pqcalc::{
    beta_pq, expr, gamma_pq, gamma_q, pq_binomial, pq_factorial, pq_number, pq_number_real,
    pq_power, q_integral, q_pochhammer_finite, q_pochhammer_infinite, run_suite, Bound, Error,
    GammaValue, GridConfig, OutputRecord, PQBase, PowerKind, PrecisionPolicy, Result, Suite,
    TableRow, Tolerances,
};

#[derive(Parser)]
#[command(
    name = "pqcalc",
    version,
    about = "two-parameter deformed calculus: evaluation, identity suites, tables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function at one point, printing a JSON record
    Eval(EvalArgs),
    /// Run an identity suite over a parameter grid
    Check(CheckArgs),
    /// Tabulate a function over a range of x
    Table(TableArgs),
}

#[derive(Args)]
struct BaseOpts {
    /// First deformation parameter
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Second deformation parameter
    #[arg(long)]
    q: f64,
}

impl BaseOpts {
    fn base(&self) -> Result<PQBase> {
        PQBase::new(self.p, self.q)
    }
}

#[derive(Args)]
struct PolicyOpts {
    /// Relative stopping tolerance for truncated series
    #[arg(long, default_value_t = 1e-14)]
    rel_tol: f64,
    /// Hard cap on series terms before giving up
    #[arg(long, default_value_t = 10_000)]
    max_terms: usize,
}

impl PolicyOpts {
    fn policy(&self) -> Result<PrecisionPolicy> {
        PrecisionPolicy::new(self.rel_tol, self.max_terms)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    Pqnum,
    Pqfact,
    Pqbinom,
    Pqpow,
    Gammaq,
    Gammapq,
    Betapq,
    Qint,
    Qpoch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ominus,
    Oplus,
}

impl From<Kind> for PowerKind {
    fn from(k: Kind) -> PowerKind {
        match k {
            Kind::Ominus => PowerKind::Ominus,
            Kind::Oplus => PowerKind::Oplus,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Function to evaluate
    #[arg(value_enum)]
    function: Function,
    #[command(flatten)]
    base: BaseOpts,
    #[command(flatten)]
    policy: PolicyOpts,
    /// Principal argument (gammaq, gammapq, betapq, pqpow)
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    /// Second argument of betapq
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    /// Order (pqnum, pqfact, pqbinom, pqpow, finite qpoch)
    #[arg(long, allow_negative_numbers = true)]
    n: Option<f64>,
    /// Lower index of pqbinom
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    /// Subtracted argument of pqpow
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Pochhammer argument of qpoch
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// Deformed power kind for pqpow
    #[arg(long, value_enum, default_value_t = Kind::Ominus)]
    kind: Kind,
    /// Integrand expression for qint, e.g. "t^2 * Eq(-t)"
    #[arg(long)]
    f: Option<String>,
    /// Lower integration bound: a number, inf, or -inf
    #[arg(long, allow_hyphen_values = true)]
    lower: Option<String>,
    /// Upper integration bound: a number, inf, or -inf
    #[arg(long, allow_hyphen_values = true)]
    upper: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name: powers, gamma, beta, jackson, or all
    suite: String,
    #[command(flatten)]
    policy: PolicyOpts,
    /// Replace every per-family tolerance with one uniform value
    #[arg(long)]
    tol: Option<f64>,
    /// Report destination
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
    /// Restrict the grid's exponent list to a single n
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFunction {
    Pqnum,
    Gammaq,
    Gammapq,
    Betapq,
}

impl TableFunction {
    fn name(self) -> &'static str {
        match self {
            TableFunction::Pqnum => "pqnum",
            TableFunction::Gammaq => "gammaq",
            TableFunction::Gammapq => "gammapq",
            TableFunction::Betapq => "betapq",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Function to tabulate
    #[arg(value_enum)]
    function: TableFunction,
    #[command(flatten)]
    base: BaseOpts,
    #[command(flatten)]
    policy: PolicyOpts,
    /// First x value
    #[arg(long, allow_negative_numbers = true)]
    x_from: f64,
    /// Last x value (inclusive)
    #[arg(long, allow_negative_numbers = true)]
    x_to: f64,
    /// Positive x increment
    #[arg(long)]
    step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit flagged rows at Gamma poles instead of aborting
    #[arg(long)]
    skip_poles: bool,
    /// Second argument for betapq rows
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 5,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Check(args) => cmd_check(args),
        Cmd::Table(args) => cmd_table(args),
    }
}

fn require(opt: Option<f64>, flag: &str, function: &str) -> Result<f64> {
    opt.ok_or_else(|| Error::Parse(format!("{function} requires --{flag}")))
}

fn require_index(v: f64, flag: &str) -> Result<u32> {
    if v.fract() == 0.0 && (0.0..=f64::from(u32::MAX)).contains(&v) {
        Ok(v as u32)
    } else {
        Err(Error::Domain(format!("--{flag} must be a nonnegative integer, got {v}")))
    }
}

fn parse_bound(s: &str) -> Result<Bound> {
    match s {
        "inf" | "+inf" => Ok(Bound::PosInf),
        "-inf" => Ok(Bound::NegInf),
        other => other
            .parse::<f64>()
            .map(Bound::Finite)
            .map_err(|_| Error::Parse(format!("bound must be a number, inf, or -inf, got '{other}'"))),
    }
}

/// Copies the log-scale fields of a Gamma-family value into a record.
fn fill_gamma(rec: &mut OutputRecord, g: &GammaValue) {
    let v = g.value();
    rec.value = v.is_finite().then_some(v);
    rec.log_abs = Some(g.log_value.log_abs);
    rec.sign = Some(g.log_value.sign);
    rec.terms_used = Some(g.terms_used);
    rec.tail_bound = Some(g.tail_bound);
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let policy = args.policy.policy()?;
    let q = args.base.q;
    let mut map = BTreeMap::new();
    let record = match args.function {
        Function::Pqnum => {
            let n = require(args.n, "n", "pqnum")?;
            let base = args.base.base()?;
            map.extend([("p".into(), base.p()), ("q".into(), base.q()), ("n".into(), n)]);
            let mut rec = OutputRecord::new("pqnum", map);
            rec.value = Some(if n.fract() == 0.0 && (0.0..=f64::from(u32::MAX)).contains(&n) {
                pq_number(n as u32, &base)
            } else {
                pq_number_real(n, &base)
            });
            rec
        }
        Function::Pqfact => {
            let n = require_index(require(args.n, "n", "pqfact")?, "n")?;
            let base = args.base.base()?;
            map.extend([("p".into(), base.p()), ("q".into(), base.q()), ("n".into(), f64::from(n))]);
            let mut rec = OutputRecord::new("pqfact", map);
            rec.value = Some(pq_factorial(n, &base));
            rec
        }
        Function::Pqbinom => {
            let n = require_index(require(args.n, "n", "pqbinom")?, "n")?;
            let k = require(args.k, "k", "pqbinom")?;
            if k.fract() != 0.0 {
                return Err(Error::Domain(format!("--k must be an integer, got {k}")));
            }
            let base = args.base.base()?;
            map.extend([
                ("p".into(), base.p()),
                ("q".into(), base.q()),
                ("n".into(), f64::from(n)),
                ("k".into(), k),
            ]);
            let mut rec = OutputRecord::new("pqbinom", map);
            rec.value = Some(pq_binomial(n, k as i64, &base)?);
            rec
        }
        Function::Pqpow => {
            let x = require(args.x, "x", "pqpow")?;
            let a = require(args.a, "a", "pqpow")?;
            let n = require_index(require(args.n, "n", "pqpow")?, "n")?;
            let base = args.base.base()?;
            map.extend([
                ("p".into(), base.p()),
                ("q".into(), base.q()),
                ("x".into(), x),
                ("a".into(), a),
                ("n".into(), f64::from(n)),
                ("kind".into(), if args.kind == Kind::Oplus { 1.0 } else { 0.0 }),
            ]);
            let mut rec = OutputRecord::new("pqpow", map);
            rec.value = Some(pq_power(x, a, n, args.kind.into(), &base));
            rec
        }
        Function::Gammaq => {
            let x = require(args.x, "x", "gammaq")?;
            map.extend([("q".into(), q), ("x".into(), x)]);
            let mut rec = OutputRecord::new("gammaq", map);
            fill_gamma(&mut rec, &gamma_q(x, q, &policy)?);
            rec
        }
        Function::Gammapq => {
            let x = require(args.x, "x", "gammapq")?;
            let base = args.base.base()?;
            map.extend([("p".into(), base.p()), ("q".into(), base.q()), ("x".into(), x)]);
            let mut rec = OutputRecord::new("gammapq", map);
            fill_gamma(&mut rec, &gamma_pq(x, &base, &policy)?);
            rec
        }
        Function::Betapq => {
            let x = require(args.x, "x", "betapq")?;
            let y = require(args.y, "y", "betapq")?;
            let base = args.base.base()?;
            map.extend([
                ("p".into(), base.p()),
                ("q".into(), base.q()),
                ("x".into(), x),
                ("y".into(), y),
            ]);
            let mut rec = OutputRecord::new("betapq", map);
            fill_gamma(&mut rec, &beta_pq(x, y, &base, &policy)?);
            rec
        }
        Function::Qint => {
            let src = args.f.ok_or_else(|| Error::Parse("qint requires --f".into()))?;
            let lower = parse_bound(
                args.lower.as_deref().ok_or_else(|| Error::Parse("qint requires --lower".into()))?,
            )?;
            let upper = parse_bound(
                args.upper.as_deref().ok_or_else(|| Error::Parse("qint requires --upper".into()))?,
            )?;
            let integrand = expr::parse(&src)?;
            map.insert("q".into(), q);
            if let Bound::Finite(a) = lower {
                map.insert("lower".into(), a);
            }
            if let Bound::Finite(b) = upper {
                map.insert("upper".into(), b);
            }
            let tv = q_integral(
                |t| integrand.eval(t, q, &policy).unwrap_or(f64::NAN),
                lower,
                upper,
                q,
                &policy,
            )?;
            let mut rec = OutputRecord::new("qint", map);
            rec.value = Some(tv.value);
            rec.terms_used = Some(tv.terms_used);
            rec.tail_bound = Some(tv.tail_bound);
            rec
        }
        Function::Qpoch => {
            let z = require(args.z, "z", "qpoch")?;
            map.extend([("q".into(), q), ("z".into(), z)]);
            match args.n {
                Some(n) => {
                    let n = require_index(n, "n")?;
                    map.insert("n".into(), f64::from(n));
                    let mut rec = OutputRecord::new("qpoch", map);
                    rec.value = Some(q_pochhammer_finite(z, q, n));
                    rec
                }
                None => {
                    let tv = q_pochhammer_infinite(z, q, &policy)?;
                    let mut rec = OutputRecord::new("qpoch", map);
                    rec.value = Some(tv.value);
                    rec.terms_used = Some(tv.terms_used);
                    rec.tail_bound = Some(tv.tail_bound);
                    rec
                }
            }
        }
    };
    let rendered = serde_json::to_string_pretty(&record).expect("record serialization");
    println!("{rendered}");
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let suite: Suite = args.suite.parse()?;
    let policy = args.policy.policy()?;
    let tol = args.tol.map(Tolerances::uniform).unwrap_or_default();
    let mut grid = GridConfig::default();
    if let Some(n) = args.n {
        grid.n_values = vec![n];
    }
    let report = run_suite(suite, &grid, &tol, &policy);
    let rendered = serde_json::to_string_pretty(&report).expect("report serialization");
    fs::write(&args.out, rendered)
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", args.out.display())))?;
    print!("{report}");
    println!("report: {}", args.out.display());
    Ok(if report.pass { 0 } else { 1 })
}

fn table_row(
    function: TableFunction,
    x: f64,
    y: Option<f64>,
    base: &PQBase,
    policy: &PrecisionPolicy,
) -> Result<TableRow> {
    let mut row = TableRow {
        function: function.name().to_string(),
        x,
        value: None,
        log_abs: None,
        sign: None,
        terms_used: None,
        tail_bound: None,
        status: "ok".to_string(),
    };
    let gamma = match function {
        TableFunction::Pqnum => {
            row.value = Some(pq_number_real(x, base));
            None
        }
        TableFunction::Gammaq => Some(gamma_q(x, base.q(), policy)?),
        TableFunction::Gammapq => Some(gamma_pq(x, base, policy)?),
        TableFunction::Betapq => Some(beta_pq(x, y.expect("validated"), base, policy)?),
    };
    if let Some(g) = gamma {
        let v = g.value();
        row.value = v.is_finite().then_some(v);
        row.log_abs = Some(g.log_value.log_abs);
        row.sign = Some(g.log_value.sign);
        row.terms_used = Some(g.terms_used);
        row.tail_bound = Some(g.tail_bound);
    }
    Ok(row)
}

fn cmd_table(args: TableArgs) -> Result<i32> {
    if !args.step.is_finite() || args.step <= 0.0 {
        return Err(Error::Parse(format!("--step must be positive, got {}", args.step)));
    }
    if !args.x_from.is_finite() || !args.x_to.is_finite() || args.x_from > args.x_to {
        return Err(Error::Parse(format!(
            "empty range: --x-from {} exceeds --x-to {}",
            args.x_from, args.x_to
        )));
    }
    if args.function == TableFunction::Betapq && args.y.is_none() {
        return Err(Error::Parse("betapq tables require --y".into()));
    }
    let base = args.base.base()?;
    let policy = args.policy.policy()?;

    let mut rows = Vec::new();
    let mut i = 0u64;
    loop {
        // index-based stepping keeps the column monotone with no drift
        let x = args.x_from + i as f64 * args.step;
        if x > args.x_to + args.step * 1e-9 {
            break;
        }
        match table_row(args.function, x, args.y, &base, &policy) {
            Ok(row) => rows.push(row),
            Err(Error::Pole { .. }) if args.skip_poles => rows.push(TableRow {
                function: args.function.name().to_string(),
                x,
                value: None,
                log_abs: None,
                sign: None,
                terms_used: None,
                tail_bound: None,
                status: "pole".to_string(),
            }),
            Err(e) => return Err(e),
        }
        i += 1;
    }

    let rendered = match args.format {
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                wtr.serialize(row).expect("row serialization");
            }
            String::from_utf8(wtr.into_inner().expect("csv flush")).expect("csv utf8")
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialization");
            s.push('\n');
            s
        }
    };
    match &args.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(0)
}
