//! The `ptk` command line: one JSON document per run on stdout.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported as JSON on
//! stdout), 2 on a usage error (reported on stderr).

use std::ffi::OsString;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::PtkError;
use crate::families::{self, FamilyDesc, Transform};
use crate::json::{FamilyJson, SeqJson, SpaceJson, VectorJson};
use crate::norms::{self, brute_force_norm, parse_rational, Method, NormOptions, Q};
use crate::plegma;
use crate::ramsey::{self, Coloring, SearchStatus};
use crate::setcore::{parse_set_list, FinSet, Window};
use crate::spreading;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "ptk", version, about = "Plegma families, Ramsey searches and norm computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Largest accepted width of a norm interval.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node or evaluation budget of searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Horizon used when no window or bound is given.
    #[arg(long = "max-n", global = true, default_value_t = 30)]
    pub max_n: u64,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    #[command(subcommand)]
    Family(FamilyCmd),
    #[command(subcommand)]
    Plegma(PlegmaCmd),
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    #[command(subcommand)]
    Norm(NormCmd),
    #[command(subcommand)]
    Sm(SmCmd),
    /// Same as `sm cesaro`.
    Cesaro(CesaroArgs),
}

/// Families, vectors and sequences are inline JSON, `@path`, a plain path
/// or `-` for stdin.
#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    Order {
        #[arg(long)]
        family: String,
    },
    Members {
        #[arg(long)]
        family: String,
        /// Elements range over 1..=n; defaults to --max-n.
        #[arg(long)]
        n: Option<u64>,
    },
    Closure {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Thin, hereditary, spreading and regular-thin inside 1..=n.
    Check {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<u64>,
    },
    Transform {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long)]
        window: Option<String>,
        /// The point of `derived-at`.
        #[arg(long)]
        at: Option<u64>,
        /// The initial segment of `section`.
        #[arg(long)]
        t: Option<String>,
        /// Right summand of `direct-sum`.
        #[arg(long)]
        right: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TransformOp {
    Restrict,
    DerivedAt,
    Section,
    Shift,
    Preimage,
    Quotient,
    DirectSum,
}

#[derive(Subcommand, Debug)]
pub enum PlegmaCmd {
    Check {
        /// Sets separated by `;`, elements by `,`.
        #[arg(long)]
        sets: String,
    },
    Enum {
        #[arg(long)]
        family: String,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: Option<u64>,
    },
    Path {
        #[arg(long)]
        family: String,
        #[arg(long)]
        s0: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        window: Option<String>,
        /// Every consecutive triple plegma; sets index the even positions.
        #[arg(long)]
        three: bool,
    },
    Distance {
        #[arg(long)]
        family: String,
        #[arg(long)]
        s0: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        n: Option<u64>,
    },
    Skipped {
        #[arg(long)]
        family: String,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RamseyCmd {
    Mono {
        #[arg(long)]
        family: String,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        target: usize,
    },
    Partition {
        #[arg(long)]
        family: String,
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        target: usize,
    },
    Dense {
        #[arg(long)]
        sets: String,
        #[arg(long)]
        l: usize,
    },
    Embed {
        #[arg(long)]
        family: String,
        #[arg(long)]
        into: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        window: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    Exact,
    BranchBound,
    Brute,
}

#[derive(Subcommand, Debug)]
pub enum NormCmd {
    Eval {
        #[arg(long)]
        vector: String,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
    },
    Brute {
        #[arg(long)]
        vector: String,
    },
    PropertyP {
        #[arg(long)]
        space: String,
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
pub struct CesaroArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Average a `[N]^k`-indexed sequence instead of the basis of the
    /// order-`k` space.
    #[arg(long)]
    seq: Option<String>,
    #[arg(long)]
    window: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum SmCmd {
    Profile {
        #[arg(long)]
        seq: String,
        /// Coefficients separated by `,`.
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long)]
        window: Option<String>,
    },
    Constants {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "1")]
        p: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        window: Option<String>,
    },
    Cesaro(CesaroArgs),
    FCesaro {
        #[arg(long)]
        family: String,
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        window: Option<String>,
    },
    Boost {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        window: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(PtkError),
}

impl From<PtkError> for Failure {
    fn from(e: PtkError) -> Failure {
        Failure::Domain(e)
    }
}

type Out = Result<Value, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_input(arg: &str) -> Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {}", e)))?;
        return Ok(s);
    }
    let path = arg.strip_prefix('@').unwrap_or(arg);
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path, e)))
}

fn load<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("bad {} JSON: {}", what, e)))
}

fn family(arg: &str) -> Result<FamilyDesc, Failure> {
    Ok(load::<FamilyJson>(arg, "family")?.to_desc()?)
}

fn set(arg: &str) -> Result<FinSet, Failure> {
    arg.parse().map_err(|e: PtkError| usage(e.to_string()))
}

fn sets(arg: &str) -> Result<Vec<FinSet>, Failure> {
    parse_set_list(arg).map_err(|e| usage(e.to_string()))
}

fn rational(arg: &str) -> Result<Q, Failure> {
    parse_rational(arg).map_err(|e| usage(e.to_string()))
}

/// `2,4,6`, `a..b` (inclusive) or `a..b:step`; defaults to `1..max_n`.
fn window(arg: Option<&str>, g: &Global) -> Result<Window, Failure> {
    let Some(arg) = arg else {
        return Ok(Window::identity(g.max_n as usize));
    };
    let bad = || usage(format!("bad window {:?}", arg));
    if let Some((a, rest)) = arg.split_once("..") {
        let (b, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        let step: u64 = step.trim().parse().map_err(|_| bad())?;
        if step == 0 {
            return Err(bad());
        }
        return Ok(Window::new((a..=b).step_by(step as usize).collect())?);
    }
    let elems = arg
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<Vec<u64>, Failure>>()?;
    Ok(Window::new(elems)?)
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn run_family(cmd: &FamilyCmd, g: &Global) -> Out {
    Ok(match cmd {
        FamilyCmd::Order { family: f } => {
            let o = families::order(&family(f)?)?;
            json!({ "order": o.value, "inherited": o.inherited })
        }
        FamilyCmd::Members { family: f, n } => {
            let n = n.unwrap_or(g.max_n);
            let m = families::members(&family(f)?, n)?;
            json!({ "n": n, "count": m.len(), "members": m })
        }
        FamilyCmd::Closure { family: f, n } => {
            let n = n.unwrap_or(g.max_n);
            let m = families::closure(&family(f)?, n)?;
            json!({ "n": n, "count": m.len(), "closure": m })
        }
        FamilyCmd::Check { family: f, n } => {
            let n = n.unwrap_or(g.max_n);
            let mut v = to_value(families::predicates(&family(f)?, n)?);
            v["n"] = json!(n);
            v
        }
        FamilyCmd::Transform { family: f, op, window: w, at, t, right } => {
            let base = family(f)?;
            let need_window = || -> Result<Window, Failure> {
                match w {
                    Some(w) => window(Some(w), g),
                    None => Err(usage("--window is required for this operation")),
                }
            };
            let op = match op {
                TransformOp::Restrict => Transform::Restrict(need_window()?),
                TransformOp::Shift => Transform::Shift(need_window()?),
                TransformOp::Preimage => Transform::Preimage(need_window()?),
                TransformOp::Quotient => Transform::Quotient(need_window()?),
                TransformOp::DerivedAt => Transform::DerivedAt(at.ok_or_else(|| usage("--at is required"))?),
                TransformOp::Section => Transform::Section(set(t.as_deref().ok_or_else(|| usage("--t is required"))?)?),
                TransformOp::DirectSum => {
                    Transform::DirectSum(family(right.as_deref().ok_or_else(|| usage("--right is required"))?)?)
                }
            };
            json!({ "family": FamilyJson::from(&families::transform(&base, op)?) })
        }
    })
}

fn run_plegma(cmd: &PlegmaCmd, g: &Global) -> Out {
    Ok(match cmd {
        PlegmaCmd::Check { sets: s } => json!({ "plegma": plegma::is_plegma(&sets(s)?)? }),
        PlegmaCmd::Enum { family: f, l, n } => {
            let n = n.unwrap_or(g.max_n);
            let t = plegma::enumerate_plm(&family(f)?, *l, n)?;
            json!({ "l": l, "n": n, "count": t.len(), "tuples": t })
        }
        PlegmaCmd::Path { family: f, s0, s, window: w, three } => {
            let f = family(f)?;
            let l = window(w.as_deref(), g)?;
            let (s0, s) = (set(s0)?, set(s)?);
            let p = if *three { plegma::three_plegma_path(&f, &l, &s0, &s)? } else { plegma::plegma_path(&f, &l, &s0, &s)? };
            json!({ "length": p.len() - 1, "path": p })
        }
        PlegmaCmd::Distance { family: f, s0, s, n } => {
            let n = n.unwrap_or(g.max_n);
            json!({ "distance": plegma::bfs_distance(&family(f)?, n, &set(s0)?, &set(s)?)? })
        }
        PlegmaCmd::Skipped { family: f, window: w, n } => {
            let n = n.unwrap_or(g.max_n);
            let m = plegma::skipped_restriction(&family(f)?, &window(w.as_deref(), g)?, n)?;
            json!({ "n": n, "count": m.len(), "members": m })
        }
    })
}

fn coloring(name: &str) -> Result<Coloring, Failure> {
    Coloring::named(name).map_err(|e| usage(e.to_string()))
}

fn run_ramsey(cmd: &RamseyCmd, g: &Global) -> Out {
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    Ok(match cmd {
        RamseyCmd::Mono { family: f, l, coloring: c, window: w, target } => {
            let (f, c) = (family(f)?, coloring(c)?);
            let out = ramsey::find_monochromatic(&f, *l, &c, &window(w.as_deref(), g)?, *target, budget)?;
            let revalidated = match &out.witness {
                Some(w) => Some(ramsey::revalidate_monochromatic(&f, *l, &c, w)?.is_ok()),
                None => None,
            };
            let mut v = to_value(&out);
            v["revalidated"] = json!(revalidated);
            v
        }
        RamseyCmd::Partition { family: f, coloring: c, window: w, target } => {
            let (f, c) = (family(f)?, coloring(c)?);
            let out = ramsey::find_homogeneous_partition(&f, &c, &window(w.as_deref(), g)?, *target, budget)?;
            let revalidated = match &out.witness {
                Some(w) => {
                    let m = families::members(&f.clone().restrict(w.clone()), w.max())?;
                    let colors: std::collections::BTreeSet<usize> =
                        m.iter().map(|s| c.color(std::slice::from_ref(s))).collect();
                    Some(colors.len() <= 1)
                }
                None => None,
            };
            let mut v = to_value(&out);
            v["revalidated"] = json!(revalidated);
            v
        }
        RamseyCmd::Dense { sets: s, l } => json!({ "tuple": ramsey::find_plegma_in_dense(&sets(s)?, *l)? }),
        RamseyCmd::Embed { family: f, into, n, window: w } => {
            let (f, gf) = (family(f)?, family(into)?);
            let out = ramsey::find_shift_embedding(&f, &gf, &window(w.as_deref(), g)?, *n, budget)?;
            let revalidated = match (&out.witness, out.status) {
                (Some(w), SearchStatus::Found) => Some(ramsey::revalidate_embedding(&f, &gf, w)?),
                _ => None,
            };
            let mut v = to_value(&out);
            v["revalidated"] = json!(revalidated);
            v
        }
    })
}

fn run_norm(cmd: &NormCmd, g: &Global) -> Out {
    Ok(match cmd {
        NormCmd::Eval { vector, method } => {
            let x = load::<VectorJson>(vector, "vector")?.to_vec()?;
            let method = match method {
                MethodArg::Exact => Method::Exact,
                MethodArg::BranchBound => Method::BranchBound,
                MethodArg::Brute => Method::Brute,
            };
            to_value(norms::norm(&x, &NormOptions { method, tol: g.tol, budget: g.budget })?)
        }
        NormCmd::Brute { vector } => {
            let x = load::<VectorJson>(vector, "vector")?.to_vec()?;
            to_value(brute_force_norm(&x)?)
        }
        NormCmd::PropertyP { space, delta, k } => {
            let space = load::<SpaceJson>(space, "space")?.to_desc()?;
            let delta = rational(delta)?;
            let w = norms::property_p_witness(&space, &delta, *k, g.budget.unwrap_or(DEFAULT_BUDGET))?;
            let blocks = match &w {
                Some(w) => w.blocks(&space)?.iter().map(VectorJson::from).collect(),
                None => Vec::new(),
            };
            json!({ "found": w.is_some(), "witness": w, "blocks": blocks })
        }
    })
}

fn run_cesaro(a: &CesaroArgs, g: &Global) -> Out {
    let m = match &a.window {
        Some(w) => window(Some(w), g)?,
        None => Window::identity((g.max_n as usize).max((a.k + 2) * a.n)),
    };
    match &a.seq {
        None => {
            let r = spreading::cesaro_norm(a.k, &m, a.n, g.budget)?;
            Ok(to_value(&r))
        }
        Some(seq) => {
            let seq = load::<SeqJson>(seq, "sequence")?.to_desc()?;
            match seq.family() {
                FamilyDesc::KSubsets(k) if k == a.k => {}
                _ => return Err(usage(format!("--seq must be indexed by [N]^{}", a.k))),
            }
            let opts = NormOptions { method: Method::Exact, tol: g.tol, budget: g.budget };
            let (v, r) = spreading::k_cesaro_sum(&seq, &m, a.n, &opts)?;
            Ok(json!({ "k": a.k, "n": a.n, "vector": VectorJson::from(&v), "norm": r }))
        }
    }
}

fn coeff_list(arg: &str) -> Result<Vec<Q>, Failure> {
    arg.split(',').map(rational).collect()
}

fn run_sm(cmd: &SmCmd, g: &Global) -> Out {
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    Ok(match cmd {
        SmCmd::Profile { seq, coeffs, steps, window: w } => {
            let seq = load::<SeqJson>(seq, "sequence")?.to_desc()?;
            let a = coeff_list(coeffs)?;
            to_value(spreading::sm_profile(&seq, &a, &window(w.as_deref(), g)?, *steps)?)
        }
        SmCmd::Constants { seq, p, n, window: w } => {
            let seq = load::<SeqJson>(seq, "sequence")?.to_desc()?;
            let p = rational(p)?;
            to_value(spreading::lp_constants(&seq, &p, *n, &window(w.as_deref(), g)?, budget, g.seed)?)
        }
        SmCmd::Cesaro(a) => return run_cesaro(a, g),
        SmCmd::FCesaro { family: f, seq, n, window: w } => {
            let f = family(f)?;
            let seq = load::<SeqJson>(seq, "sequence")?.to_desc()?;
            let opts = NormOptions { method: Method::Exact, tol: g.tol, budget: g.budget };
            let (v, r) = spreading::f_cesaro_sum(&f, &seq, &window(w.as_deref(), g)?, *n, &opts)?;
            json!({ "n": n, "vector": VectorJson::from(&v), "norm": r })
        }
        SmCmd::Boost { seq, family: f, c, eps, window: w } => {
            let seq = load::<SeqJson>(seq, "sequence")?.to_desc()?;
            let f = family(f)?;
            let (c, eps) = (rational(c)?, rational(eps)?);
            let b = spreading::boost_l1(&seq, &f, &window(w.as_deref(), g)?, &c, &eps, budget, g.seed)?;
            json!({
                "seq": SeqJson::from(&b.seq),
                "window": b.window,
                "k": b.k,
                "b": b.b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "eps_prime": b.eps_prime.to_string(),
                "estimate": b.estimate,
            })
        }
    })
}

fn error_doc(e: &PtkError) -> Value {
    let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
    if let PtkError::ToleranceUnreachable { tol, lower, upper } = e {
        err["tol"] = json!(tol);
        err["lower"] = json!(lower);
        err["upper"] = json!(upper);
    }
    json!({ "error": err })
}

fn finish(v: Value) -> String {
    let mut obj = match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    obj.insert("ptk_version".into(), json!(VERSION));
    serde_json::to_string(&Value::Object(obj)).expect("serializable output")
}

/// Runs one command and returns the exit code with stdout and stderr text.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let g = cli.global.clone();
    let work = || match &cli.cmd {
        Cmd::Family(c) => run_family(c, &g),
        Cmd::Plegma(c) => run_plegma(c, &g),
        Cmd::Ramsey(c) => run_ramsey(c, &g),
        Cmd::Norm(c) => run_norm(c, &g),
        Cmd::Sm(c) => run_sm(c, &g),
        Cmd::Cesaro(a) => run_cesaro(a, &g),
    };
    let result = match g.threads {
        Some(0) => return (2, String::new(), "error: --threads must be positive\n".into()),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(work),
            Err(e) => return (2, String::new(), format!("error: {}\n", e)),
        },
        None => work(),
    };
    match result {
        Ok(v) => (0, finish(v) + "\n", String::new()),
        Err(Failure::Domain(e)) => (1, finish(error_doc(&e)) + "\n", String::new()),
        Err(Failure::Usage(msg)) => (2, String::new(), format!("error: {}\n", msg)),
    }
}

/// Entry point of the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = execute(args);
    print!("{}", out);
    eprint!("{}", err);
    code
}
