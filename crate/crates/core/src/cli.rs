//! Command-line front end. `main.rs` only forwards to [`run`].
//!
//! Exit codes: 0 success (or "yes"), 1 verified "no", 2 unknown or refusal,
//! 3 an oracle cross-check disagreed with a plan.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::PackError;
use crate::extremal::{build_g1, build_g2, build_komlos_bottle, certify_no_packing, check_certificate};
use crate::graph::{Graph, GraphExpr};
use crate::invariants::{bottle_from_profile, profile_with, threshold_from_profile, ColoringOptions};
use crate::oracle::{has_perfect_packing, verify_packing, Decision, Mode, SearchOptions};
use crate::packer::{HostSpec, NearBottleOptions, Packer, PackingPlan};
use crate::table::{reference_rows, render, row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "chromapack", version, about = "Chromatic invariants, extremal hosts and perfect H-packings")]
pub struct Cli {
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Vertex limit for exact colouring enumeration.
    #[arg(long, global = true, env = "CHROMAPACK_SIZE_CAP", default_value_t = crate::invariants::DEFAULT_SIZE_CAP)]
    pub size_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Chromatic profile, bottlegraph and optional threshold bounds of a graph.
    Invariants {
        #[command(flatten)]
        input: GraphInput,
        /// Also report the threshold bounds for hosts of this order.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build an extremal host with no perfect H-packing, plus its certificate.
    Construct {
        kind: ConstructKind,
        /// Pattern graph: generator expression or graph6.
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        k: usize,
        /// Write the host in graph6 to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plan a perfect H-packing of a complete multipartite or two-clique host.
    Pack {
        #[arg(long = "H")]
        h: String,
        /// Comma-separated part sizes (the small part last).
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, value_enum, default_value_t = PackMethod::NearBottle)]
        method: PackMethod,
        #[arg(long, default_value = "1/100")]
        beta: Ratio<i64>,
        #[arg(long, default_value = "1/10")]
        d: Ratio<i64>,
        /// Block size D'; chosen automatically when omitted.
        #[arg(long)]
        dprime: Option<i64>,
        /// Print the vertex-level packing.
        #[arg(long)]
        realize: bool,
        /// Verify the realised packing on the materialised host and, when
        /// small enough, compare with the exact search.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Exact perfect-packing decision on a small host.
    Oracle {
        /// Host graph: generator expression, graph6, or `@path` (`@-` for stdin).
        #[arg(long)]
        host: String,
        #[arg(long = "H")]
        h: String,
        /// Print a packing when one exists.
        #[arg(long)]
        find: bool,
        /// Return the lexicographically least packing. The search is always
        /// serial, so this only documents intent.
        #[arg(long)]
        canonical: bool,
        #[arg(long, env = "CHROMAPACK_SEARCH_CAP", default_value_t = crate::oracle::DEFAULT_SEARCH_CAP)]
        search_cap: usize,
        #[arg(long, env = "CHROMAPACK_TIMEOUT_MS")]
        timeout_ms: Option<u64>,
        /// Disable the failed-state cache.
        #[arg(long)]
        no_memo: bool,
    },
    /// The invariants table for the reference graphs.
    Table {
        /// A single row for this graph expression, e.g. `C_7`.
        #[arg(long)]
        row: Option<String>,
        /// Use C_{2k+1} and C_{2k} for the cycle rows.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Generator expression, e.g. `star(2)+cycle(6)` or `K_{1,2}uC_6`.
    #[arg(long)]
    pub gen: Option<String>,
    /// graph6 string.
    #[arg(long)]
    pub g6: Option<String>,
    /// File in graph6 or edge-list format (`-` for stdin).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    G1,
    G2,
    Bottle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PackMethod {
    NearBottle,
    Balanced,
    Bipartite,
    Cliques,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub timing_ms: f64,
    pub version: &'static str,
}

/// What a command produced: exit code, JSON payload and a text rendering.
pub struct Outcome {
    pub code: i32,
    pub result: Value,
    pub text: String,
    pub inputs: BTreeMap<String, String>,
}

impl Outcome {
    fn refused(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_REFUSED,
            result: json!({ "error": msg.to_string() }),
            text: format!("error: {msg}\n"),
            inputs: BTreeMap::new(),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code with everything that should go to stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_REFUSED } else { EXIT_OK };
            return (code, String::new(), e.to_string());
        }
    };
    let start = Instant::now();
    let mut out = execute(&cli);
    let mut stderr = String::new();
    if out.code == EXIT_DISCREPANCY {
        stderr = out.text.clone();
    }
    let stdout = if cli.json {
        let report = RunReport {
            command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
            inputs: std::mem::take(&mut out.inputs),
            result: out.result,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
            version: env!("CARGO_PKG_VERSION"),
        };
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        out.text
    };
    (out.code, stdout, stderr)
}

fn execute(cli: &Cli) -> Outcome {
    let coloring = ColoringOptions {
        size_cap: cli.size_cap,
    };
    let result = match &cli.command {
        Command::Invariants { input, n } => cmd_invariants(input, *n, coloring),
        Command::Construct { kind, h, k, out } => cmd_construct(*kind, h, *k, out.as_ref()),
        Command::Pack {
            h,
            parts,
            method,
            beta,
            d,
            dprime,
            realize,
            oracle_check,
        } => cmd_pack(
            h,
            parts,
            *method,
            NearBottleOptions {
                beta: *beta,
                d: *d,
                d_prime: *dprime,
                check_hypotheses: true,
            },
            *realize,
            *oracle_check,
            coloring,
        ),
        Command::Oracle {
            host,
            h,
            find,
            canonical: _,
            search_cap,
            timeout_ms,
            no_memo,
        } => cmd_oracle(
            host,
            h,
            *find,
            SearchOptions {
                search_cap: *search_cap,
                timeout: timeout_ms.map(Duration::from_millis),
                memoize: no_memo.then_some(false),
            },
        ),
        Command::Table { row, k } => cmd_table(row.as_deref(), *k),
    };
    result.unwrap_or_else(Outcome::refused)
}

/// Graph6 if the text is a single token, an edge list otherwise.
fn graph_from_text(text: &str) -> Result<Graph, String> {
    let body: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let single_token = body.len() == 1 && !body[0].contains(char::is_whitespace);
    let parsed = if single_token {
        Graph::from_graph6(body[0].as_bytes())
    } else {
        Graph::from_edge_list(text)
    };
    parsed.map_err(|e| e.to_string())
}

fn read_source(path: &std::path::Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// A generator expression, `@path`, or a graph6 string.
pub fn parse_graph_arg(arg: &str) -> Result<Graph, String> {
    if let Some(path) = arg.strip_prefix('@') {
        return graph_from_text(&read_source(std::path::Path::new(path))?);
    }
    match arg.parse::<GraphExpr>() {
        Ok(expr) => expr.build().map_err(|e| e.to_string()),
        Err(expr_err) => Graph::from_graph6(arg.trim().as_bytes())
            .map_err(|g6_err| format!("not a generator expression ({expr_err}) nor graph6 ({g6_err})")),
    }
}

fn load_input(input: &GraphInput) -> Result<Graph, String> {
    if let Some(expr) = &input.gen {
        let parsed: GraphExpr = expr.parse().map_err(|e: crate::error::GraphError| e.to_string())?;
        return parsed.build().map_err(|e| e.to_string());
    }
    if let Some(g6) = &input.g6 {
        return Graph::from_graph6(g6.as_bytes()).map_err(|e| e.to_string());
    }
    let path = input.file.as_ref().expect("clap enforces one input");
    graph_from_text(&read_source(path)?)
}

fn inputs(pairs: &[(&str, &Graph)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, g)| (k.to_string(), g.digest())).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_invariants(input: &GraphInput, n: Option<usize>, opts: ColoringOptions) -> Result<Outcome, String> {
    let h = load_input(input)?;
    let p = profile_with(&h, opts).map_err(|e| e.to_string())?;
    let mut text = format!(
        "order    {}\nchi      {}\nsigma    {}\nchi_cr   {}\nvectors  {}\nD(H)     {:?}\nhcf_chi  {}\nhcf_c    {}\nhcf      {}\nchi*     {}\n",
        p.order,
        p.ell,
        p.sigma,
        p.chi_cr,
        p.size_vectors.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
        p.diff_set,
        p.hcf_chi,
        p.hcf_c,
        if p.hcf_is_one { "1" } else { "!=1" },
        p.chi_star,
    );
    let mut result = json!({ "profile": to_value(&p) });
    let mut code = EXIT_OK;
    match bottle_from_profile(&p) {
        Ok(b) => {
            text += &format!("bottle   {:?} (xi = {})\n", b.part_sizes, b.xi);
            result["bottle"] = to_value(&b);
        }
        Err(e) => {
            text += &format!("bottle   error: {e}\n");
            result["bottle"] = json!({ "error": e.to_string() });
            code = EXIT_REFUSED;
        }
    }
    if let Some(n) = n {
        match threshold_from_profile(&p, n) {
            Ok(t) => {
                text += &format!("delta({n}) >= {} (coefficient 1 - 1/{})\n", t.lower, p.chi_star);
                result["threshold"] = to_value(&t);
            }
            Err(e) => {
                text += &format!("threshold error: {e}\n");
                result["threshold"] = json!({ "error": e.to_string() });
                code = EXIT_REFUSED;
            }
        }
    }
    Ok(Outcome {
        code,
        result,
        text,
        inputs: inputs(&[("graph", &h)]),
    })
}

fn cmd_construct(kind: ConstructKind, h_arg: &str, k: usize, out: Option<&PathBuf>) -> Result<Outcome, String> {
    let h = parse_graph_arg(h_arg)?;
    let built = match kind {
        ConstructKind::G1 => build_g1(&h, k),
        ConstructKind::G2 => build_g2(&h, k),
        ConstructKind::Bottle => build_komlos_bottle(&h, k),
    };
    let (host, spec) = built.map_err(|e| e.to_string())?;
    let encoded = host.to_graph6().unwrap_or_else(|_| host.to_edge_list());
    if let Some(path) = out {
        std::fs::write(path, format!("{encoded}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let mut text = format!(
        "kind     {:?}\nsizes    {:?}\ndelta    {}\nhost     {}\n",
        spec.kind, spec.sizes, spec.claimed_min_degree, encoded
    );
    let mut result = json!({ "spec": to_value(&spec), "host": encoded });
    let code = match certify_no_packing(&spec) {
        Ok(cert) => {
            let check = check_certificate(&cert, &spec);
            text += &format!("cert     {}\ncheck    {}\n", serde_json::to_string(&cert).expect("json"), match &check {
                Ok(()) => "ok".to_string(),
                Err(e) => e.to_string(),
            });
            result["certificate"] = to_value(&cert);
            result["certificate_valid"] = json!(check.is_ok());
            if check.is_ok() {
                EXIT_OK
            } else {
                EXIT_REFUSED
            }
        }
        Err(e) => {
            text += &format!("cert     refused: {e}\n");
            result["certificate"] = json!({ "error": e.to_string() });
            EXIT_REFUSED
        }
    };
    Ok(Outcome {
        code,
        result,
        text,
        inputs: inputs(&[("H", &h), ("host", &host)]),
    })
}

fn split_block(parts: &[usize], d_prime: Option<i64>, ell: usize) -> Result<(i64, Vec<i64>), String> {
    if parts.len() != ell {
        return Err(format!("expected {ell} parts, got {}", parts.len()));
    }
    let n: i64 = parts.iter().map(|&p| p as i64).sum();
    let d = match d_prime {
        Some(d) => d,
        None if n % ell as i64 == 0 => n / ell as i64,
        None => return Err(format!("cannot infer D': {n} is not divisible by {ell}")),
    };
    Ok((d, parts.iter().map(|&p| p as i64 - d).collect()))
}

fn cmd_pack(
    h_arg: &str,
    parts: &[usize],
    method: PackMethod,
    opts: NearBottleOptions,
    realize: bool,
    oracle_check: bool,
    coloring: ColoringOptions,
) -> Result<Outcome, String> {
    let h = parse_graph_arg(h_arg)?;
    let packer = Packer::with_options(&h, coloring).map_err(|e| e.to_string())?;
    let refuse = |e: PackError| format!("refused: {e}");
    let mut notes = Vec::new();
    let mut stats = Value::Null;
    let plan: PackingPlan = match method {
        PackMethod::NearBottle => {
            let host = HostSpec::multipartite(parts.to_vec());
            let (plan, s) = match packer.pack_near_bottle(&host, &opts) {
                Err(PackError::Stage { stage: "hypotheses", source }) => {
                    notes.push(format!("hypotheses not met ({source}); packed without them"));
                    let relaxed = NearBottleOptions {
                        check_hypotheses: false,
                        ..opts
                    };
                    packer.pack_near_bottle(&host, &relaxed).map_err(refuse)?
                }
                other => other.map_err(refuse)?,
            };
            stats = to_value(&s);
            plan
        }
        PackMethod::Balanced => {
            let (d, a) = split_block(parts, opts.d_prime, packer.profile().ell)?;
            packer.pack_balanced_shift(d, &a).map_err(refuse)?
        }
        PackMethod::Bipartite | PackMethod::Cliques => {
            let (d, a) = split_block(parts, opts.d_prime, 2)?;
            if a[0] != -a[1] {
                return Err(format!("parts must be D'+a and D'-a for D' = {d}"));
            }
            if method == PackMethod::Bipartite {
                packer.pack_bipartite_shift(d, a[0]).map_err(refuse)?
            } else {
                packer.pack_two_cliques(d, a[0]).map_err(refuse)?
            }
        }
    };
    let mut plan = plan;
    plan.meta.lemma_trace.extend(notes);
    let verdict = packer.verify(&plan);
    let mut text = format!(
        "host       {:?} {:?}\ncopies     {}\nplacements {}\nverified   {}\n",
        plan.host.kind,
        plan.host.sizes,
        plan.copy_count(),
        plan.placements.len(),
        match &verdict {
            Ok(()) => "yes".to_string(),
            Err(v) => format!("no: {v}"),
        }
    );
    for line in &plan.meta.lemma_trace {
        text += &format!("trace      {line}\n");
    }
    let mut result = json!({ "plan": to_value(&plan), "verified": verdict.is_ok() });
    if !stats.is_null() {
        result["stats"] = stats;
    }
    let mut code = if verdict.is_ok() { EXIT_OK } else { EXIT_DISCREPANCY };
    if (realize || oracle_check) && verdict.is_ok() {
        let packing = packer.realize(&plan);
        if realize {
            text += &packing.to_string();
            result["packing"] = json!(packing.to_string());
        }
        if oracle_check {
            let host = plan.host.materialize();
            let direct = verify_packing(&host, &h, &packing);
            let search = (host.vertex_count() <= crate::oracle::DEFAULT_SEARCH_CAP).then(|| {
                has_perfect_packing(&host, &h, Mode::Decide, &SearchOptions::default()).map(|d| d.is_yes())
            });
            let agrees = direct.is_ok() && !matches!(search, Some(Ok(false)));
            text += &format!(
                "oracle     verify_packing {}, search {}\n",
                if direct.is_ok() { "ok" } else { "FAILED" },
                match &search {
                    None => "skipped (host above search cap)".to_string(),
                    Some(Ok(yes)) => if *yes { "yes" } else { "NO" }.to_string(),
                    Some(Err(e)) => e.to_string(),
                }
            );
            result["oracle_check"] = json!({
                "verify_packing": direct.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.to_string()),
                "search": search.map(|s| s.map_err(|e| e.to_string())),
                "agrees": agrees,
            });
            if !agrees {
                code = EXIT_DISCREPANCY;
                text += &format!("--- plan ---\n{}\n--- packing ---\n{packing}", plan.to_json());
            }
        }
    }
    Ok(Outcome {
        code,
        result,
        text,
        inputs: inputs(&[("H", &h)]),
    })
}

fn cmd_oracle(host_arg: &str, h_arg: &str, find: bool, opts: SearchOptions) -> Result<Outcome, String> {
    let g = parse_graph_arg(host_arg)?;
    let h = parse_graph_arg(h_arg)?;
    let mode = if find { Mode::Find } else { Mode::Decide };
    let decision = has_perfect_packing(&g, &h, mode, &opts).map_err(|e| e.to_string())?;
    let (label, packing) = match &decision {
        Decision::Yes(p) => ("yes", p.as_ref()),
        Decision::No => ("no", None),
        Decision::Unknown => ("unknown", None),
    };
    let mut text = format!("{label}\n");
    let mut result = json!({ "decision": label });
    if let Some(p) = packing {
        let verified = verify_packing(&g, &h, p);
        text += &p.to_string();
        result["packing"] = json!(p.to_string());
        result["packing_verified"] = json!(verified.is_ok());
    }
    Ok(Outcome {
        code: decision.exit_code(),
        result,
        text,
        inputs: inputs(&[("host", &g), ("H", &h)]),
    })
}

fn cmd_table(row_expr: Option<&str>, k: Option<usize>) -> Result<Outcome, String> {
    let rows = match row_expr {
        Some(e) => vec![row(e).map_err(|e| e.to_string())?],
        None => reference_rows(k).map_err(|e| e.to_string())?,
    };
    Ok(Outcome {
        code: EXIT_OK,
        result: json!({ "rows": to_value(&rows) }),
        text: render(&rows),
        inputs: BTreeMap::new(),
    })
}
