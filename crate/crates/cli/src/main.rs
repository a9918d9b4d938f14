//! `brjuno`: command-line front end.
//!
//! Exit codes: 0 success or certified, 1 refuted or runtime error,
//! 2 inconclusive, 64 usage error.

mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brjuno::bounds::BoundContext;
use brjuno::certified::{check_w_positive, verify_contraction, Verdict};
use brjuno::eval::{default_depth, eval_enclosure, eval_periodic_exact, eval_rational, EvalReport};
use brjuno::minima::{localize, phase_scan, sigma_star, sigma_star_asymptote, CandidateFamily};
use brjuno::scaling::{fit_exponent, run_orbit, Seed};
use brjuno::{CfSpec, Precision, SigmaParam};
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde_json::{json, Value};

use output::{num, Table};

const EXIT_USAGE: u8 = 64;
const MIN_DIGITS: u32 = 20;

#[derive(Parser, Debug)]
#[command(name = "brjuno", version, about = "Sigma-Brjuno functions: evaluation, bounds, minimizers and certificates")]
struct Cli {
    /// Working precision in significant decimal digits (at least 20).
    #[arg(long, global = true, env = "BRJUNO_PRECISION", default_value_t = Precision::DEFAULT_DIGITS)]
    precision: u32,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate B_sigma at one point. Without --format prints key=value lines.
    ///
    /// CSV columns: point,sigma,lo,hi,method,depth
    Eval {
        #[arg(long)]
        sigma: String,
        /// Point as `[0; a1, ..., (b1, ...)]`, `[0; a1, ..., 0.ddd]` or `0.ddd`.
        #[arg(long)]
        point: String,
        /// Truncation depth for non-periodic points.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Lower enclosures of B_sigma at float-seeded grid midpoints.
    ///
    /// CSV columns: x_repr,sigma,lo,hi,depth
    Graph {
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// The lower bounds g and g_k next to a lower enclosure of B_sigma, where
    /// k = floor(1/x) is the cylinder of x.
    ///
    /// CSV columns: x,g,g_k,B_lo
    Bounds {
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = 500)]
        grid: usize,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Minimizer over purely periodic candidates as sigma varies.
    ///
    /// CSV columns: sigma,argmin_spec,min_lo,min_hi,transition_flag
    Phase {
        #[arg(long, default_value = "0.5")]
        from: String,
        #[arg(long, default_value = "8.5")]
        to: String,
        #[arg(long, default_value_t = 161)]
        steps: usize,
        #[arg(long, default_value_t = 30)]
        max_fixed: u64,
        #[arg(long, default_value_t = 30)]
        max_pair: u64,
        /// Points of the float falsification net per sigma; 0 disables it.
        #[arg(long, default_value_t = 0)]
        net: usize,
    },
    /// Transition values sigma*_n for n (or n..=to).
    ///
    /// CSV columns: n,sigma_star,asymptote,residual
    SigmaStar {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        to: Option<u64>,
    },
    /// Certify B_sigma > B_sigma(eta_(n+1)) on [1/(n+1), 1]; JSON certificate.
    Localize {
        #[arg(long)]
        n: u64,
        /// Defaults to sigma = n.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Interval certificates; JSON output.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Orbit of x -> 1/(n+1+x) and the cusp exponent fit at sigma = n.
    ///
    /// CSV columns: k,x_k,delta_k,E_lo,E_hi,lambda_k
    ///
    /// The fit summary {tau_hat, c_hat, window, ...} goes to <out>.summary.json
    /// when --out is given and to stderr otherwise; --format json emits both
    /// in one document.
    Scaling {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        /// Rational seed such as 3/10; default is [0; n+2, (n+1)].
        #[arg(long)]
        x1: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// max F' <= 1/2 and F(J) inside J on J = [0, 1/10].
    Contraction {
        #[arg(long, default_value_t = 4096)]
        limit: usize,
    },
    /// g(xi_n) > B_n(eta_(n+1)) for n_lo <= n <= n_hi.
    WPositive {
        #[arg(long, default_value_t = 2)]
        n_lo: u64,
        #[arg(long, default_value_t = 800)]
        n_hi: u64,
    },
}

enum Failure {
    Usage(String),
    Lib(brjuno::Error),
    Io(std::io::Error),
}

impl From<brjuno::Error> for Failure {
    fn from(e: brjuno::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// What a command produced and the exit code it asks for.
struct Outcome {
    body: String,
    code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, code: 0 }
    }
}

struct Ctx {
    precision: Precision,
    digits: u32,
    format: Option<Format>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn n(&self, x: &Float) -> Value {
        Value::String(num(x, self.digits))
    }

    fn sigma(&self, text: &str) -> Res<SigmaParam> {
        SigmaParam::parse(text, self.precision).map_err(|e| Failure::Usage(format!("--sigma: {e}")))
    }

    fn render(&self, table: &Table, default: Format) -> Res<String> {
        match self.format.unwrap_or(default) {
            Format::Csv => Ok(table.to_csv()),
            Format::Json => Ok(pretty(&table.to_json_value())),
            Format::Svg => table
                .to_svg()
                .ok_or_else(|| Failure::Usage("this command has no SVG output".into())),
        }
    }

    fn json_only(&self) -> Res<()> {
        match self.format {
            None | Some(Format::Json) => Ok(()),
            Some(f) => Err(Failure::Usage(format!("this command only emits JSON, not {f:?}"))),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Certified => "certified",
        Verdict::Inconclusive => "inconclusive",
        Verdict::Refuted => "refuted",
    }
}

fn parse_spec(text: &str) -> Res<CfSpec> {
    text.parse().map_err(|e| Failure::Usage(format!("--point: {e}")))
}

fn evaluate(spec: &CfSpec, sigma: &SigmaParam, depth: Option<usize>) -> Res<EvalReport> {
    if spec.period().is_some() && depth.is_none() {
        return Ok(eval_periodic_exact(spec, sigma)?);
    }
    let k = depth.unwrap_or_else(|| default_depth(sigma, None));
    match eval_enclosure(spec, sigma, k, None) {
        // the seed is a decimal whose expansion ends, or hits the quotient
        // cap, before depth K: evaluate the rational it denotes
        Err(brjuno::Error::RationalInput { .. } | brjuno::Error::QuotientCap { .. }) if spec.seed().is_some() => {
            Ok(eval_rational(&spec_value(spec), sigma)?)
        }
        r => Ok(r?),
    }
}

/// Exact value of a seeded spec, `[0; a_1, ..., a_k + seed]`.
fn spec_value(spec: &CfSpec) -> Rational {
    let mut x = spec.seed().expect("only seeds terminate").to_rational();
    for &a in spec.prefix().iter().rev() {
        x = Rational::from((x + a).recip_ref());
    }
    x
}

/// `(2i+1)/(2n)` as a decimal seed with `digits` digits after the point.
fn midpoint_seed(i: usize, n: usize, digits: u32) -> CfSpec {
    let scale = Integer::from(10).pow(digits);
    let r = Rational::from((Integer::from(2 * i + 1) * &scale, Integer::from(2 * n)));
    let d = r.floor().numer().to_string();
    let text = format!("0.{d:0>width$}", width = digits as usize);
    text.parse().expect("midpoint lies in (0, 1)")
}

fn cmd_eval(ctx: &Ctx, sigma: &str, point: &str, depth: Option<usize>) -> Res<Outcome> {
    let s = ctx.sigma(sigma)?;
    let spec = parse_spec(point)?;
    if depth == Some(0) {
        return Err(Failure::Usage("--depth must be at least 1".into()));
    }
    let r = evaluate(&spec, &s, depth)?;
    let mut t = Table::new(&["point", "sigma", "lo", "hi", "method", "depth"]);
    t.push(vec![
        json!(spec.to_string()),
        json!(s.to_string()),
        ctx.n(r.value.lo()),
        ctx.n(r.value.hi()),
        json!(r.method.to_string()),
        json!(r.depth_used),
    ]);
    if ctx.format.is_none() {
        let body = format!(
            "point={spec}\nsigma={s}\nlo={}\nhi={}\nmethod={}\ndepth={}\n",
            num(r.value.lo(), ctx.digits),
            num(r.value.hi(), ctx.digits),
            r.method,
            r.depth_used
        );
        return Ok(Outcome::ok(body));
    }
    Ok(Outcome::ok(ctx.render(&t, Format::Csv)?))
}

fn check_grid(grid: usize, depth: usize) -> Res<()> {
    if grid == 0 || depth == 0 {
        return Err(Failure::Usage("--grid and --depth must be positive".into()));
    }
    Ok(())
}

fn cmd_graph(ctx: &Ctx, sigma: &str, grid: usize, depth: usize) -> Res<Outcome> {
    check_grid(grid, depth)?;
    let s = ctx.sigma(sigma)?;
    let rows: Vec<(CfSpec, EvalReport)> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let spec = midpoint_seed(i, grid, ctx.digits);
            let r = evaluate(&spec, &s, Some(depth))?;
            Ok((spec, r))
        })
        .collect::<Res<_>>()?;
    let mut t = Table::new(&["x_repr", "sigma", "lo", "hi", "depth"]);
    for (spec, r) in rows {
        t.push(vec![
            json!(spec.to_string()),
            json!(s.to_string()),
            ctx.n(r.value.lo()),
            ctx.n(r.value.hi()),
            json!(r.depth_used),
        ]);
    }
    t.plot = Some((0, vec![2]));
    Ok(Outcome::ok(ctx.render(&t, Format::Csv)?))
}

fn cmd_bounds(ctx: &Ctx, sigma: &str, grid: usize, depth: usize) -> Res<Outcome> {
    check_grid(grid, depth)?;
    let s = ctx.sigma(sigma)?;
    let bc = BoundContext::new(&s);
    let prec = bc.prec();
    let rows: Vec<Vec<Value>> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let spec = midpoint_seed(i, grid, ctx.digits);
            let x = spec.seed().expect("seeded").to_float(prec);
            let k = Float::with_val(prec, x.recip_ref()).floor().to_f64() as u64;
            let g = bc.g(&x)?;
            let gk = bc.g_k(&x, k)?;
            let b = evaluate(&spec, &s, Some(depth))?;
            Ok(vec![ctx.n(&x), ctx.n(&g), ctx.n(&gk), ctx.n(b.value.lo())])
        })
        .collect::<Res<_>>()?;
    let mut t = Table::new(&["x", "g", "g_k", "B_lo"]);
    for r in rows {
        t.push(r);
    }
    t.plot = Some((0, vec![1, 2, 3]));
    Ok(Outcome::ok(ctx.render(&t, Format::Csv)?))
}

#[allow(clippy::too_many_arguments)]
fn cmd_phase(ctx: &Ctx, from: &str, to: &str, steps: usize, family: CandidateFamily) -> Res<Outcome> {
    let lo = ctx.sigma(from)?;
    let hi = ctx.sigma(to)?;
    if family.max_fixed == 0 || steps < 2 || lo.sigma() >= hi.sigma() {
        return Err(Failure::Usage("need --from < --to, --steps >= 2 and --max-fixed >= 1".into()));
    }
    let rows = phase_scan(lo.sigma(), hi.sigma(), steps, &family, ctx.precision)?;
    let mut t = Table::new(&["sigma", "argmin_spec", "min_lo", "min_hi", "transition_flag"]);
    for r in &rows {
        t.push(vec![
            ctx.n(&Float::with_val(ctx.precision.bits(), r.sigma.sigma())),
            json!(r.argmin_spec.to_string()),
            ctx.n(r.min_value.lo()),
            ctx.n(r.min_value.hi()),
            json!(u8::from(r.transition)),
        ]);
    }
    t.plot = Some((0, vec![2]));
    if ctx.format == Some(Format::Json) {
        let bits = ctx.precision.bits();
        let detail: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "sigma": ctx.n(&Float::with_val(bits, r.sigma.sigma())),
                    "argmin_spec": r.argmin_spec.to_string(),
                    "min_lo": ctx.n(r.min_value.lo()),
                    "min_hi": ctx.n(r.min_value.hi()),
                    "transition_flag": u8::from(r.transition),
                    "bracket": r.bracket.as_ref().map(|(a, b)| json!([
                        ctx.n(&Float::with_val(bits, a)),
                        ctx.n(&Float::with_val(bits, b)),
                    ])),
                    "net_evaluated": r.net.evaluated,
                    "net_pruned": r.net.pruned,
                    "net_beats_family": r.net.beats_family,
                })
            })
            .collect();
        let doc = json!({ "candidate_family": family.to_string(), "rows": detail });
        return Ok(Outcome::ok(pretty(&doc)));
    }
    Ok(Outcome::ok(ctx.render(&t, Format::Csv)?))
}

fn cmd_sigma_star(ctx: &Ctx, n: u64, to: Option<u64>) -> Res<Outcome> {
    let last = to.unwrap_or(n);
    if n == 0 || last < n {
        return Err(Failure::Usage("need 1 <= --n <= --to".into()));
    }
    let mut t = Table::new(&["n", "sigma_star", "asymptote", "residual"]);
    let bits = ctx.precision.bits();
    for k in n..=last {
        let v = sigma_star(k, ctx.precision)?;
        // n - 1/2 + 5/(6n), exactly
        let a = Float::with_val(bits, Rational::from((6 * k * k - 3 * k + 5, 6 * k)));
        debug_assert!((a.to_f64() - sigma_star_asymptote(k)).abs() < 1e-12);
        let res = Float::with_val(bits, &v - &a);
        t.push(vec![json!(k), ctx.n(&v), ctx.n(&a), ctx.n(&res)]);
    }
    t.plot = Some((0, vec![1, 2]));
    Ok(Outcome::ok(ctx.render(&t, Format::Csv)?))
}

fn cmd_localize(ctx: &Ctx, n: u64, sigma: Option<&str>) -> Res<Outcome> {
    ctx.json_only()?;
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let s = match sigma {
        Some(text) => ctx.sigma(text)?,
        None => SigmaParam::from_rational(Rational::from(n), ctx.precision)?,
    };
    let c = localize(n, &s)?;
    let checks: Vec<Value> = c
        .checks
        .iter()
        .map(|k| json!({ "name": k.name, "passed": k.passed, "detail": k.detail }))
        .collect();
    let doc = json!({
        "n": c.n,
        "sigma": s.to_string(),
        "xi_n": ctx.n(&c.xi_n),
        "lhs": ctx.n(&c.lhs),
        "rhs_lo": ctx.n(c.rhs.lo()),
        "rhs_hi": ctx.n(c.rhs.hi()),
        "margin": ctx.n(&c.margin),
        "passed": c.passed,
        "checks": checks,
    });
    Ok(Outcome {
        body: pretty(&doc),
        code: if c.passed { 0 } else { 1 },
    })
}

fn cmd_verify(ctx: &Ctx, what: &Verify) -> Res<Outcome> {
    ctx.json_only()?;
    match *what {
        Verify::Contraction { limit } => {
            if limit == 0 {
                return Err(Failure::Usage("--limit must be positive".into()));
            }
            let c = verify_contraction(limit, ctx.precision)?;
            let pieces: Vec<Value> = c
                .subdivision
                .iter()
                .map(|p| {
                    json!({
                        "lo": ctx.n(p.piece.lo()),
                        "hi": ctx.n(p.piece.hi()),
                        "fprime_lo": ctx.n(p.fprime.lo()),
                        "fprime_hi": ctx.n(p.fprime.hi()),
                        "image_lo": ctx.n(p.image.lo()),
                        "image_hi": ctx.n(p.image.hi()),
                    })
                })
                .collect();
            let doc = json!({
                "domain": [ctx.n(c.domain.lo()), ctx.n(c.domain.hi())],
                "max_fprime": ctx.n(&c.max_fprime),
                "verdict": verdict_name(c.verdict),
                "precision_bits": c.precision_bits,
                "pieces": pieces,
            });
            Ok(Outcome {
                body: pretty(&doc),
                code: c.verdict.exit_code() as u8,
            })
        }
        Verify::WPositive { n_lo, n_hi } => {
            if n_lo < 2 || n_hi < n_lo {
                return Err(Failure::Usage("need 2 <= --n-lo <= --n-hi".into()));
            }
            let c = check_w_positive(n_lo, n_hi, ctx.precision)?;
            let entries: Vec<Value> = c
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "n": e.n,
                        "margin_lo": ctx.n(e.margin.lo()),
                        "margin_hi": ctx.n(e.margin.hi()),
                        "verdict": verdict_name(e.verdict),
                        "precision_bits": e.precision_bits,
                    })
                })
                .collect();
            let doc = json!({
                "n_lo": n_lo,
                "n_hi": n_hi,
                "verdict": verdict_name(c.verdict),
                "failures": c.failures(),
                "entries": entries,
            });
            Ok(Outcome {
                body: pretty(&doc),
                code: c.verdict.exit_code() as u8,
            })
        }
    }
}

fn summary_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}

fn cmd_scaling(ctx: &Ctx, n: u64, steps: usize, x1: Option<&str>) -> Res<Outcome> {
    if n < 2 || steps < 2 {
        return Err(Failure::Usage("need --n >= 2 and --steps >= 2".into()));
    }
    let seed = match x1 {
        None => Seed::Quadratic,
        Some(text) => Seed::Rational(
            brjuno::eval::parse_decimal(text).map_err(|e| Failure::Usage(format!("--x1: {e}")))?,
        ),
    };
    let run = match run_orbit(n, &seed, steps, ctx.precision) {
        Err(e @ brjuno::Error::Domain(_)) => return Err(Failure::Usage(e.to_string())),
        r => r?,
    };
    let mut t = Table::new(&["k", "x_k", "delta_k", "E_lo", "E_hi", "lambda_k"]);
    for k in 1..=run.steps() {
        let lam = if k <= run.lambdas.len() { ctx.n(run.lambda(k)) } else { Value::Null };
        t.push(vec![
            json!(k),
            ctx.n(run.x(k)),
            ctx.n(run.delta(k)),
            ctx.n(run.energy(k).lo()),
            ctx.n(run.energy(k).hi()),
            lam,
        ]);
    }
    t.plot = Some((0, vec![3]));
    let summary = match fit_exponent(&run) {
        Ok(f) => json!({
            "tau_hat": f.tau_hat,
            "c_hat": f.c_hat,
            "window": f.window,
            "ratios": f.ratios,
            "lambda_constant": f.lambda_constant,
            "printed_constant": f.printed_constant,
            "one_sided": run.one_sided,
            "closed_form_error": ctx.n(&run.closed_form_error),
        }),
        Err(e) => json!({
            "error": e.to_string(),
            "one_sided": run.one_sided,
            "closed_form_error": ctx.n(&run.closed_form_error),
        }),
    };
    if ctx.format == Some(Format::Json) {
        let doc = json!({ "rows": t.to_json_value(), "summary": summary });
        return Ok(Outcome::ok(pretty(&doc)));
    }
    let body = ctx.render(&t, Format::Csv)?;
    match &ctx.out {
        Some(p) => std::fs::write(summary_path(p), pretty(&summary))?,
        None => eprint!("{}", pretty(&summary)),
    }
    Ok(Outcome::ok(body))
}

fn run(cli: Cli) -> Res<Outcome> {
    if cli.precision < MIN_DIGITS {
        return Err(Failure::Usage(format!("--precision must be at least {MIN_DIGITS}")));
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let ctx = Ctx {
        precision: Precision::digits(cli.precision).map_err(|e| Failure::Usage(e.to_string()))?,
        digits: cli.precision,
        format: cli.format,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Eval { sigma, point, depth } => cmd_eval(&ctx, sigma, point, *depth),
        Command::Graph { sigma, grid, depth } => cmd_graph(&ctx, sigma, *grid, *depth),
        Command::Bounds { sigma, grid, depth } => cmd_bounds(&ctx, sigma, *grid, *depth),
        Command::Phase {
            from,
            to,
            steps,
            max_fixed,
            max_pair,
            net,
        } => cmd_phase(
            &ctx,
            from,
            to,
            *steps,
            CandidateFamily {
                max_fixed: *max_fixed,
                max_pair: *max_pair,
                net_points: *net,
            },
        ),
        Command::SigmaStar { n, to } => cmd_sigma_star(&ctx, *n, *to),
        Command::Localize { n, sigma } => cmd_localize(&ctx, *n, sigma.as_deref()),
        Command::Verify { what } => cmd_verify(&ctx, what),
        Command::Scaling { n, steps, x1 } => cmd_scaling(&ctx, *n, *steps, x1.as_deref()),
    }
}

fn exit_for(e: &brjuno::Error) -> u8 {
    use brjuno::Error::*;
    match e {
        Parse { .. } | InvalidSpec(_) | QuotientCap { .. } => EXIT_USAGE,
        Inconclusive(_) | InsufficientDecay(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let long_version = format!("{} (MPFR {})", env!("CARGO_PKG_VERSION"), brjuno::mpfr_version());
    let long_version: &'static str = long_version.leak();
    let matches = Cli::command().long_version(long_version).try_get_matches();
    let cli = match matches.and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(o) => {
            let written = match &out {
                Some(p) => std::fs::write(p, &o.body),
                None => std::io::stdout().write_all(o.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(o.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
