use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use jtrace::identity::{self, Caps};
use jtrace::jpoly::parse;
use jtrace::lemmas::{self, LemmaConfig};
use jtrace::qschur::{self, QFunctions, StrictPartition};
use jtrace::{json as wire, random, Error, Expr, Matrix, Rational, Scalar, Value};

#[derive(Parser)]
#[command(name = "jtrace", version, about = "Trace identities of supermatrices over the Grassmann algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest arity accepted by exhaustive routines.
    #[arg(long, global = true, default_value_t = 5)]
    d_max: usize,
    /// Largest matrix size accepted by exhaustive routines.
    #[arg(long, global = true, default_value_t = 2)]
    n_max: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Strict partitions of d in reverse lexicographic order.
    Dp {
        #[arg(short)]
        d: usize,
    },
    /// The staircase partition (n+1, n, ..., 1).
    Staircase {
        #[arg(short)]
        n: usize,
    },
    /// Least degree of a J-trace identity of M(n,n).
    Mindeg {
        #[arg(short)]
        n: usize,
        /// Allow mixed (matrix-valued) identities.
        #[arg(long)]
        mixed: bool,
    },
    /// Expands Q_λ·Q_μ in the Q-function basis. Partitions are written `3,1`.
    Qmul { lambda: String, mu: String },
    /// Evaluates an expression on seeded random matrices.
    Eval {
        #[arg(short)]
        f: String,
        #[arg(short, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        capacity: usize,
    },
    /// Exits 0 iff the expression is a J-trace identity of M(n,n).
    Check {
        #[arg(short)]
        f: String,
        #[arg(short)]
        n: usize,
    },
    /// Basis of the identities in W(d)° for M(n,n).
    Kernel {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
    },
    /// Compares the consequences of degree-d identities in W(e)° with the degree-e identities.
    Closure {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        e: usize,
        #[arg(short)]
        n: usize,
    },
    /// Exits 0 iff the expression is a queer-trace identity of M_n(E).
    QueerCheck {
        #[arg(short)]
        f: String,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        capacity: usize,
    },
    /// Runs the seeded property suites and reports pass counts.
    VerifyLemmas {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        capacity: usize,
    },
}

/// Suites whose failure does not affect the exit code: they pin the sign
/// convention that is known not to hold.
const DIAGNOSTIC: &[&str] = &["conj-clifford-stated"];

struct Output {
    text: String,
    json: Json,
    ok: bool,
}

impl Output {
    fn plain(text: String, json: Json) -> Self {
        Output { text, json, ok: true }
    }
}

fn partition(s: &str) -> jtrace::Result<StrictPartition> {
    let parts = s
        .split(',')
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad part '{p}'") }))
        .collect::<jtrace::Result<Vec<_>>>()?;
    StrictPartition::new(parts)
}

fn partitions_text(ps: &[StrictPartition]) -> String {
    wire::partitions_to_json(ps).to_string()
}

fn value_json(v: &Value<Rational>) -> Json {
    match v {
        Value::Scalar(g) => json!({ "scalar": wire::grassmann_to_json(g) }),
        Value::Matrix(m) => json!({ "matrix": wire::matrix_to_json(m) }),
    }
}

fn value_text(v: &Value<Rational>) -> String {
    match v {
        Value::Scalar(g) => g.to_string(),
        Value::Matrix(m) => m.to_string(),
    }
}

fn run(cmd: Cmd, caps: Caps) -> jtrace::Result<Output> {
    Ok(match cmd {
        Cmd::Dp { d } => {
            let ps = qschur::dp(d);
            Output::plain(partitions_text(&ps), wire::partitions_to_json(&ps))
        }
        Cmd::Staircase { n } => {
            let p = qschur::staircase(n);
            Output::plain(p.to_string(), wire::partition_to_json(&p))
        }
        Cmd::Mindeg { n, mixed } => {
            let k = qschur::min_degree(n, mixed);
            Output::plain(k.to_string(), json!(k))
        }
        Cmd::Qmul { lambda, mu } => {
            let (l, m) = (partition(&lambda)?, partition(&mu)?);
            let mut qf = QFunctions::<Rational>::new((l.height() + m.height()).max(1));
            let prod = qf.qpoly(&l)?.mul(&qf.qpoly(&m)?);
            let terms = qf.expand(&prod)?;
            let text = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.iter().map(|(p, c)| format!("{}·Q{p}", c.to_text())).collect::<Vec<_>>().join(" + ")
            };
            let json = json!({
                "lambda": l.parts(),
                "mu": m.parts(),
                "terms": terms
                    .iter()
                    .map(|(p, c)| json!({ "partition": p.parts(), "coef": c.to_text() }))
                    .collect::<Vec<_>>(),
            });
            Output::plain(text, json)
        }
        Cmd::Eval { f, n, seed, capacity } => {
            let expr: Expr = parse(&f)?;
            let d = expr.check_multilinear()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs: Vec<Matrix> = (0..d)
                .map(|_| {
                    if expr.is_queer() {
                        random::plain_matrix(&mut rng, n, capacity)
                    } else {
                        random::matrix(&mut rng, n, capacity)
                    }
                })
                .collect();
            let v = expr.eval(&xs)?;
            let mut text = String::new();
            for (i, x) in xs.iter().enumerate() {
                text += &format!("x{} = {x}\n", i + 1);
            }
            text += &format!("value = {}", value_text(&v));
            let json = json!({
                "expr": wire::expr_to_json(&expr),
                "inputs": xs.iter().map(wire::matrix_to_json).collect::<Vec<_>>(),
                "value": value_json(&v),
            });
            Output::plain(text, json)
        }
        Cmd::Check { f, n } => {
            let expr: Expr = parse(&f)?;
            verdict(identity::witness_expr(&expr, n, caps)?, n)
        }
        Cmd::QueerCheck { f, n, capacity } => {
            let expr: Expr = parse(&f)?;
            verdict(identity::witness_queer(&expr, n, capacity, caps)?, n)
        }
        Cmd::Kernel { d, n } => {
            let k = identity::kernel::<Rational>(d, n, caps)?;
            let mut text = format!("dim {}", k.dim);
            for w in &k.basis {
                text += &format!("\n{w}");
            }
            Output::plain(text, wire::kernel_to_json(&k))
        }
        Cmd::Closure { d, e, n } => {
            let r = identity::compare_closure::<Rational>(d, e, n, caps)?;
            let text = format!(
                "kernel({d},{n}) dim {}\nclosure in W({e}) dim {}\nkernel({e},{n}) dim {}\nclosure ⊆ kernel: {}\nkernel ⊆ closure: {}\n{}",
                r.kernel_d_dim,
                r.closure_dim,
                r.kernel_e_dim,
                r.closure_in_kernel,
                r.kernel_in_closure,
                if r.equal() { "equal" } else { "not equal" }
            );
            Output { text, json: wire::closure_report_to_json(&r), ok: r.equal() }
        }
        Cmd::VerifyLemmas { seed, trials, capacity } => {
            let cfg = LemmaConfig { seed, trials, capacity, ..LemmaConfig::default() };
            let reports = lemmas::run_all(&cfg)?;
            let mut lines = Vec::new();
            let mut ok = true;
            for r in &reports {
                let diagnostic = DIAGNOSTIC.contains(&r.name);
                if !diagnostic && !r.holds() {
                    ok = false;
                }
                let tag = match (r.holds(), diagnostic) {
                    (true, _) => "PASS",
                    (false, false) => "FAIL",
                    (false, true) => "FAIL (diagnostic)",
                };
                lines.push(format!("{}: {}/{} {tag}", r.name, r.passed, r.total));
                if let Some(c) = &r.counterexample {
                    lines.push(format!("  first counterexample: {c}"));
                }
            }
            let json = json!({
                "seed": seed,
                "trials": trials,
                "suites": reports
                    .iter()
                    .map(|r| json!({
                        "name": r.name,
                        "passed": r.passed,
                        "total": r.total,
                        "diagnostic": DIAGNOSTIC.contains(&r.name),
                        "counterexample": r.counterexample,
                    }))
                    .collect::<Vec<_>>(),
            });
            Output { text: lines.join("\n"), json, ok }
        }
    })
}

fn verdict(witness: Option<Vec<usize>>, n: usize) -> Output {
    match witness {
        None => Output { text: format!("identity of size {n}"), json: json!({ "identity": true }), ok: true },
        Some(w) => Output {
            text: format!("not an identity; witness substitution {w:?}"),
            json: json!({ "identity": false, "witness": w }),
            ok: false,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps { d_max: cli.common.d_max, n_max: cli.common.n_max };
    match run(cli.cmd, caps) {
        Ok(out) => {
            if cli.common.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e @ Error::ResourceCap(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
