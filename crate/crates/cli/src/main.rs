mod args;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};
use sfd_core::boxcount::sweep_to_csv;
use sfd_core::euler::default_bound;
use sfd_core::local::{fixed_divisor, property_a_witnesses, rho};
use sfd_core::primes::{is_prime, primes_up_to};
use sfd_core::{
    count_squarefree_values, density_sweep, parse, partial_euler_product, squarefree_verdict,
    BoxSpec, Budget, CountOptions, CountReport, Error, EulerReport, Polynomial, ProductMode,
    RhoMethod,
};

use args::{
    AnalyzeArgs, Cli, Command, Common, CountArgs, EulerArgs, Format, Method, RhoArgs, SweepArgs,
};

/// A failure reported as one JSON line on stderr.
#[derive(Debug)]
struct Failure {
    kind: String,
    message: String,
    internal: bool,
}

impl Failure {
    fn user(kind: &str, message: impl Into<String>) -> Self {
        Failure {
            kind: kind.into(),
            message: message.into(),
            internal: false,
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            kind: "invariant".into(),
            message: message.into(),
            internal: true,
        }
    }

    fn exit_code(&self) -> u8 {
        if self.internal {
            2
        } else {
            1
        }
    }

    fn line(&self) -> String {
        json!({"error": self.kind, "message": self.message}).to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind().into(),
            message: e.to_string(),
            internal: e.is_internal(),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

struct Output {
    stdout: String,
    warnings: Vec<String>,
}

fn main() -> ExitCode {
    let (code, out, err) = run(std::env::args_os().collect());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}

/// Runs one invocation and returns `(exit code, stdout, stderr)`.
fn run(argv: Vec<OsString>) -> (u8, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (0, e.to_string(), String::new())
                }
                _ => {
                    let msg = e.kind().to_string();
                    let detail = e.to_string();
                    let first = detail
                        .lines()
                        .find(|l| !l.trim().is_empty())
                        .unwrap_or(&msg)
                        .trim_start_matches("error: ")
                        .to_string();
                    (
                        1,
                        String::new(),
                        Failure::user("usage", first).line() + "\n",
                    )
                }
            };
        }
    };
    if let Err(f) = configure_threads() {
        return (f.exit_code(), String::new(), f.line() + "\n");
    }
    match dispatch(cli.command) {
        Ok(out) => {
            let err: String = out.warnings.iter().map(|w| w.clone() + "\n").collect();
            (0, out.stdout, err)
        }
        Err(f) => (f.exit_code(), String::new(), f.line() + "\n"),
    }
}

fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var("SFD_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::user(
            "invalid_argument",
            format!("SFD_THREADS must be a positive integer, got {raw:?}"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::invariant(format!("thread pool: {e}")))
}

fn dispatch(cmd: Command) -> Outcome<Output> {
    match cmd {
        Command::Parse(c) => cmd_parse(c),
        Command::SquarefreePoly(c) => cmd_squarefree(c),
        Command::Rho(a) => cmd_rho(a),
        Command::Euler(a) => cmd_euler(a),
        Command::PropertyA(c) => cmd_property_a(c),
        Command::Count(a) => cmd_count(a),
        Command::DensitySweep(a) => cmd_sweep(a),
        Command::Analyze(a) => cmd_analyze(a),
    }
}

/// Parsed input plus any warnings it triggers.
struct Input {
    poly: Polynomial,
    budget: Budget,
    format: Format,
    warnings: Vec<String>,
}

impl Input {
    fn new(c: &Common) -> Outcome<Self> {
        let poly = parse(&c.poly, None)?;
        let mut warnings = Vec::new();
        if poly.total_degree() < 2 {
            warnings.push(
                json!({
                    "warning": "degree_below_2",
                    "message": format!("total degree {} is below 2", poly.total_degree()),
                })
                .to_string(),
            );
        }
        Ok(Input {
            poly,
            budget: Budget(c.budget),
            format: c.format,
            warnings,
        })
    }

    fn finish(self, body: Map<String, Value>) -> Output {
        let v = Value::Object(body);
        let stdout = match self.format {
            Format::Json => report::render_json(&v),
            Format::Text => report::render_text(&v),
        };
        Output {
            stdout,
            warnings: self.warnings,
        }
    }
}

fn method(m: Option<Method>) -> Option<RhoMethod> {
    m.map(|m| match m {
        Method::Brute => RhoMethod::Brute,
        Method::Lift => RhoMethod::Lifted,
    })
}

fn write_csv(path: Option<&Path>, contents: &str) -> Outcome {
    if let Some(path) = path {
        std::fs::write(path, contents)
            .map_err(|e| Failure::user("io", format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// `"10,20"`; a single radius is repeated for every variable.
fn parse_box(text: &str, arity: usize) -> Outcome<BoxSpec> {
    let radii = text
        .split(',')
        .map(|t| {
            t.trim().parse::<u64>().map_err(|_| {
                Failure::user("invalid_argument", format!("bad box radius {:?}", t.trim()))
            })
        })
        .collect::<Outcome<Vec<_>>>()?;
    let radii = match radii.len() {
        1 => vec![radii[0]; arity],
        n if n == arity => radii,
        n => {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: n,
            }
            .into())
        }
    };
    Ok(BoxSpec::new(radii)?)
}

fn parse_boxes(text: &str, arity: usize) -> Outcome<Vec<BoxSpec>> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_box(t, arity))
        .collect::<Outcome<Vec<_>>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(Failure::user("invalid_argument", "no boxes given"))
            } else {
                Ok(v)
            }
        })
}

/// Default cube radius for `analyze`: 10^4, 10^2, then the largest `r ≤ 10`
/// with at most 10^5 lattice points.
fn default_radius(arity: usize) -> u64 {
    match arity {
        1 => 10_000,
        2 => 100,
        s => (1..=10u64)
            .rev()
            .find(|r| (2 * r + 1).checked_pow(s as u32).is_some_and(|n| n <= 100_000))
            .unwrap_or(1),
    }
}

fn cmd_parse(c: Common) -> Outcome<Output> {
    let input = Input::new(&c)?;
    let body = report::polynomial(&input.poly);
    Ok(input.finish(body))
}

fn cmd_squarefree(c: Common) -> Outcome<Output> {
    let input = Input::new(&c)?;
    let v = squarefree_verdict(&input.poly)?;
    let mut body = report::polynomial(&input.poly);
    if let Value::Object(m) = report::verdict(&v) {
        body.extend(m);
    }
    Ok(input.finish(body))
}

fn cmd_rho(a: RhoArgs) -> Outcome<Output> {
    let input = Input::new(&a.common)?;
    let primes = if !a.primes.is_empty() {
        for &p in &a.primes {
            if !is_prime(p) {
                return Err(Error::NotPrime(p).into());
            }
        }
        a.primes.clone()
    } else {
        primes_up_to(a.prime_bound.unwrap_or(10))
    };
    let m = method(a.method);
    let data = primes
        .iter()
        .map(|&p| rho(&input.poly, p, m, input.budget).map(|d| report::local_datum(&d)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut body = report::polynomial(&input.poly);
    body.insert("rho".into(), Value::Array(data));
    Ok(input.finish(body))
}

fn euler_report(
    input: &Input,
    bound: Option<u64>,
    exact: bool,
    m: Option<Method>,
) -> Outcome<EulerReport> {
    let bound = bound.unwrap_or_else(|| default_bound(input.poly.arity()));
    let mode = if exact {
        ProductMode::Rational
    } else {
        ProductMode::Float
    };
    let r = partial_euler_product(&input.poly, bound, mode, method(m), input.budget)?;
    r.validate()?;
    Ok(r)
}

fn cmd_euler(a: EulerArgs) -> Outcome<Output> {
    let input = Input::new(&a.common)?;
    let r = euler_report(&input, a.prime_bound, a.exact, a.method)?;
    write_csv(a.csv_out.as_deref(), &r.to_csv())?;
    let mut body = report::polynomial(&input.poly);
    body.insert("euler".into(), report::euler(&r));
    body.insert("property_a".into(), report::witnesses(&r.property_a));
    Ok(input.finish(body))
}

fn cmd_property_a(c: Common) -> Outcome<Output> {
    let input = Input::new(&c)?;
    let fd = fixed_divisor(&input.poly, input.budget)?;
    let ws = property_a_witnesses(&input.poly, input.budget)?;
    let mut body = report::polynomial(&input.poly);
    body.insert("fixed_divisor".into(), json!(fd.to_string()));
    body.insert("property_a".into(), report::witnesses(&ws));
    Ok(input.finish(body))
}

fn count_all(input: &Input, boxes: &[BoxSpec], presieve: bool) -> Outcome<Vec<CountReport>> {
    let opts = CountOptions {
        budget: input.budget,
        presieve,
    };
    Ok(match boxes {
        [one] => vec![count_squarefree_values(&input.poly, one, opts)?],
        many => density_sweep(&input.poly, many, opts)?,
    })
}

fn cmd_count(a: CountArgs) -> Outcome<Output> {
    let input = Input::new(&a.common)?;
    let b = parse_box(&a.box_radii, input.poly.arity())?;
    let reports = count_all(&input, &[b], a.presieve)?;
    write_csv(a.csv_out.as_deref(), &sweep_to_csv(&reports))?;
    let mut body = report::polynomial(&input.poly);
    body.insert("boxes".into(), reports.iter().map(report::count).collect());
    Ok(input.finish(body))
}

fn cmd_sweep(a: SweepArgs) -> Outcome<Output> {
    let input = Input::new(&a.common)?;
    let boxes = parse_boxes(&a.boxes, input.poly.arity())?;
    let reports = count_all(&input, &boxes, a.presieve)?;
    write_csv(a.csv_out.as_deref(), &sweep_to_csv(&reports))?;
    let mut body = report::polynomial(&input.poly);
    body.insert("boxes".into(), reports.iter().map(report::count).collect());
    Ok(input.finish(body))
}

fn cmd_analyze(a: AnalyzeArgs) -> Outcome<Output> {
    let input = Input::new(&a.common)?;
    let arity = input.poly.arity();
    let boxes = match (&a.box_radii, &a.boxes) {
        (Some(b), _) => vec![parse_box(b, arity)?],
        (None, Some(bs)) => parse_boxes(bs, arity)?,
        (None, None) => vec![BoxSpec::cube(arity, default_radius(arity))?],
    };
    let verdict = squarefree_verdict(&input.poly)?;
    let product = euler_report(&input, a.prime_bound, a.exact, a.method)?;
    let counts = count_all(&input, &boxes, a.presieve)?;
    check_consistency(&product, &counts)?;
    write_csv(a.csv_out.as_deref(), &sweep_to_csv(&counts))?;

    let last = counts.last().expect("at least one box");
    let mut body = report::polynomial(&input.poly);
    body.insert("squarefree".into(), report::verdict(&verdict));
    body.insert("property_a".into(), report::witnesses(&product.property_a));
    body.insert("euler".into(), report::euler(&product));
    body.insert("boxes".into(), counts.iter().map(report::count).collect());
    body.insert("comparison".into(), report::comparison(last, &product));
    Ok(input.finish(body))
}

/// A property-(a) witness forces every count to zero and, when the witness
/// prime is in range, the truncated product to zero.
fn check_consistency(product: &EulerReport, counts: &[CountReport]) -> Outcome {
    if product.property_a.is_empty() {
        return Ok(());
    }
    if let Some(c) = counts.iter().find(|c| c.count != 0) {
        return Err(Failure::invariant(format!(
            "property (a) holds but box {:?} has {} squarefree values",
            c.box_spec.radii(),
            c.count
        )));
    }
    if product.property_a.iter().any(|w| w.p <= product.bound) && !product.is_exactly_zero {
        return Err(Failure::invariant(
            "property (a) witness in range but product is nonzero",
        ));
    }
    Ok(())
}
