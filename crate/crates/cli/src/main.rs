use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multiinfo::approx::{self, PairLift, SearchOptions};
use multiinfo::interactions::{
    self, decompose, info_projection, InteractionFamilySpec, ProjectionOptions, RealFunction,
};
use multiinfo::maximizers::{self, DEFAULT_ENUMERATION_CAP};
use multiinfo::poset;
use multiinfo::probspace::{entropy, entropy_of, multi_information, unit_marginal, upper_bound};
use multiinfo::rational;
use multiinfo::{Distribution, Error, ProductSpace};

#[derive(Parser)]
#[command(name = "multiinfo", version, about = "Multi-information maximizers on finite product spaces")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized verbs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance (verb-specific default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Iteration limit (verb-specific default).
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Enumeration cap.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,
    /// Write the primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Entropies, multi-information and the gap to the upper bound.
    Info { file: PathBuf },
    /// n_min and the T-set for the non-hub cardinalities.
    Nmin {
        #[arg(required = true, num_args = 1..)]
        cards: Vec<usize>,
    },
    /// Exact maximizer for the given cardinalities.
    Construct {
        #[arg(required = true, num_args = 2..)]
        cards: Vec<usize>,
    },
    /// Maximizer test with witness; exit 0 iff the distribution is a maximizer.
    Check { file: PathBuf },
    /// Exhaustive existence oracle; exit 0 iff a maximizer exists.
    Exists {
        #[arg(required = true, num_args = 2..)]
        cards: Vec<usize>,
    },
    /// All maximizers for `units` units with `n` states each.
    Enumerate { n: usize, units: usize },
    /// The two-unit stratification poset.
    Poset {
        n1: usize,
        n2: usize,
        /// Emit the cover graph in DOT format.
        #[arg(long)]
        dot: bool,
        /// Emit the cover graph as an edge list.
        #[arg(long)]
        edges: bool,
        /// Emit the JSON node table.
        #[arg(long)]
        nodes: bool,
    },
    /// Norms of the pure interaction components of a function or of ln p.
    Decompose { file: PathBuf },
    /// Information projection onto an interaction family.
    Project {
        file: PathBuf,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// KL trace of an approximation sequence, as CSV.
    Approximate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Pair)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Lift::Exposed)]
        lift: Lift,
        /// Comma-separated increasing m values for the pair sequence.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 4, 8, 16, 32, 64, 128])]
        schedule: Vec<usize>,
        /// The quadratic family uses β = 2^0, …, 2^max_exp.
        #[arg(long, default_value_t = 20)]
        max_exp: u32,
        /// Fail with exit code 4 if the final KL is not below this.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Heuristic mirror-ascent search for a maximizer.
    Search {
        #[arg(required = true, num_args = 2..)]
        cards: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Dimensions of the families involved.
    Report {
        #[arg(required = true, num_args = 2..)]
        cards: Vec<usize>,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct FamilyArgs {
    /// All interactions of at most this order.
    #[arg(long)]
    order: Option<usize>,
    /// The pair interactions through the largest unit.
    #[arg(long)]
    star: bool,
    /// A family JSON file.
    #[arg(long)]
    family: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pair,
    Quadratic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lift {
    Exposed,
    Orthogonal,
}

/// Failure with an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotConverged { .. } | Error::ThresholdNotReached { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

/// Text for stdout (or `--out`) and the exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(format!("cannot read {}: {e}", path.display())))
}

fn read_distribution(path: &Path) -> Result<Distribution, Failure> {
    Ok(Distribution::from_json(&read(path)?)?)
}

fn pretty(v: Value) -> String {
    serde_json::to_string(&v).expect("json value serializes")
}

fn distribution_value(p: &Distribution) -> Value {
    serde_json::to_value(p).expect("distribution serializes")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.verb {
        Verb::Info { file } => info(cli, &read_distribution(file)?),
        Verb::Nmin { cards } => nmin(cli, cards),
        Verb::Construct { cards } => {
            let p = maximizers::construct_maximizer(&ProductSpace::new(cards.clone())?)?;
            Ok(Output::ok(p.to_json()))
        }
        Verb::Check { file } => check(cli, &read_distribution(file)?),
        Verb::Exists { cards } => exists(cli, cards),
        Verb::Enumerate { n, units } => enumerate(cli, *n, *units),
        Verb::Poset {
            n1,
            n2,
            dot,
            edges,
            nodes,
        } => poset_verb(cli, *n1, *n2, *dot, *edges, *nodes),
        Verb::Decompose { file } => decompose_verb(cli, file),
        Verb::Project { file, family } => project(cli, &read_distribution(file)?, family),
        Verb::Approximate {
            file,
            method,
            lift,
            schedule,
            max_exp,
            threshold,
        } => approximate(cli, &read_distribution(file)?, *method, *lift, schedule, *max_exp, *threshold),
        Verb::Search {
            cards,
            restarts,
            step,
        } => search(cli, cards, *restarts, *step),
        Verb::Report { cards } => report(cli, cards),
    }
}

fn info(cli: &Cli, p: &Distribution) -> Result<Output, Failure> {
    let space = p.space();
    let marginals: Vec<f64> = (0..space.units())
        .map(|i| entropy_of(&unit_marginal(p, i)))
        .collect();
    let h = entropy(p);
    let mi = multi_information(p);
    let bound = upper_bound(space);
    if cli.json {
        return Ok(Output::ok(pretty(json!({
            "cards": space.cards(),
            "marginal_entropies": marginals,
            "entropy": h,
            "multi_information": mi,
            "bound": bound,
            "gap": bound - mi,
        }))));
    }
    let mut s = format!("space: {space}\n");
    for (i, hi) in marginals.iter().enumerate() {
        writeln!(s, "H_{} = {hi:.12}", i + 1).unwrap();
    }
    writeln!(s, "H = {h:.12}").unwrap();
    writeln!(s, "I = {mi:.12}").unwrap();
    writeln!(s, "bound = {bound:.12}").unwrap();
    write!(s, "gap = {:.12}", bound - mi).unwrap();
    Ok(Output::ok(s))
}

fn nmin(cli: &Cli, cards: &[usize]) -> Result<Output, Failure> {
    let n = maximizers::n_min(cards)?;
    let t = maximizers::build_tset(cards)?;
    let b = maximizers::n_min_bounds(cards)?;
    if cli.json {
        let points: Vec<String> = t.points.iter().map(rational::format).collect();
        return Ok(Output::ok(pretty(json!({
            "cards": cards,
            "n_min": n,
            "t": points,
            "bounds": b,
        }))));
    }
    Ok(Output::ok(format!(
        "n_min = {n}; T = {}\nbounds: max = {}, 1+sum(n_i-1) = {}, lcm = {}",
        t.format(),
        b.max,
        b.coprime,
        b.lcm
    )))
}

fn check(cli: &Cli, p: &Distribution) -> Result<Output, Failure> {
    let tol = cli.tol.unwrap_or(approx::MAXIMIZER_TOL);
    let witness = maximizers::is_maximizer(p, tol);
    let code = if witness.is_some() { 0 } else { 1 };
    let text = if cli.json {
        let w: Value = match &witness {
            Some(w) => serde_json::from_str(&w.to_json()).expect("witness json"),
            None => Value::Null,
        };
        pretty(json!({ "maximizer": witness.is_some(), "witness": w }))
    } else {
        match &witness {
            Some(w) => format!("maximizer: yes\nwitness: {}", w.to_json()),
            None => "maximizer: no".to_string(),
        }
    };
    Ok(Output { text, code })
}

fn exists(cli: &Cli, cards: &[usize]) -> Result<Output, Failure> {
    let space = ProductSpace::new(cards.to_vec())?;
    let found = maximizers::exists_maximizer_exhaustive(&space)?;
    let (sorted, _) = space.sorted();
    let hub = sorted.card(sorted.units() - 1);
    let n = maximizers::n_min(&sorted.cards()[..sorted.units() - 1])?;
    let text = if cli.json {
        pretty(json!({ "exists": found, "hub": hub, "n_min": n }))
    } else {
        format!("maximizer exists: {} (hub cardinality {hub}, n_min {n})", yes_no(found))
    };
    Ok(Output {
        text,
        code: if found { 0 } else { 1 },
    })
}

fn enumerate(cli: &Cli, n: usize, units: usize) -> Result<Output, Failure> {
    let all = maximizers::enumerate_equal_unit_maximizers(n, units, cli.cap)?;
    if cli.json {
        let list: Vec<Value> = all.iter().map(distribution_value).collect();
        return Ok(Output::ok(pretty(json!({ "count": all.len(), "maximizers": list }))));
    }
    let mut s = format!("{} maximizers", all.len());
    for p in &all {
        write!(s, "\n{}", p.to_json()).unwrap();
    }
    Ok(Output::ok(s))
}

fn poset_verb(
    cli: &Cli,
    n1: usize,
    n2: usize,
    dot: bool,
    edges: bool,
    nodes: bool,
) -> Result<Output, Failure> {
    let graph = poset::cover_graph(n1, n2)?;
    let dims = poset::count_strata_by_dim(n1, n2)?;
    let connected = graph.is_connected();
    if dot {
        return Ok(Output::ok(graph.to_dot()));
    }
    if edges {
        return Ok(Output::ok(graph.edge_list()));
    }
    if nodes {
        return Ok(Output::ok(graph.node_table_json()));
    }
    if cli.json {
        let dims: serde_json::Map<String, Value> =
            dims.iter().map(|(d, c)| (d.to_string(), json!(*c as u64))).collect();
        let nodes: Value = serde_json::from_str(&graph.node_table_json()).expect("node json");
        return Ok(Output::ok(pretty(json!({
            "maps": graph.nodes.len(),
            "dims": dims,
            "connected": connected,
            "components": graph.components(),
            "edges": graph.edges,
            "nodes": nodes,
        }))));
    }
    let dim_list: Vec<String> = dims.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    let mut s = format!(
        "{} maps; dims {{{}}}; connected: {}\n",
        graph.nodes.len(),
        dim_list.join(", "),
        yes_no(connected)
    );
    s.push_str("dim count");
    for (d, c) in &dims {
        write!(s, "\n{d:>3} {c:>5}").unwrap();
    }
    Ok(Output::ok(s))
}

fn read_function(path: &Path) -> Result<RealFunction, Failure> {
    let text = read(path)?;
    let raw: Value = serde_json::from_str(&text).map_err(Error::from)?;
    if raw.get("probs").is_some() {
        let p = Distribution::from_json(&text)?;
        return Ok(RealFunction::log_of(&p)?);
    }
    let cards: Vec<usize> = serde_json::from_value(raw.get("cards").cloned().unwrap_or(Value::Null))
        .map_err(|_| fail("function JSON needs \"cards\""))?;
    let values: Vec<f64> = serde_json::from_value(raw.get("values").cloned().unwrap_or(Value::Null))
        .map_err(|_| fail("function JSON needs numeric \"values\""))?;
    Ok(RealFunction::new(ProductSpace::with_units(cards)?, values)?)
}

fn decompose_verb(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let f = read_function(path)?;
    let parts = decompose(&f);
    let space = f.space().clone();
    if cli.json {
        let rows: Vec<Value> = parts
            .iter()
            .map(|(set, g)| {
                json!({
                    "set": set.iter().map(|u| u + 1).collect::<Vec<_>>(),
                    "dim": interactions::pure_dim(&space, *set),
                    "norm": g.norm(),
                })
            })
            .collect();
        return Ok(Output::ok(pretty(Value::Array(rows))));
    }
    let mut s = String::from("set dim norm");
    for (set, g) in &parts {
        write!(s, "\n{set} {} {:.12}", interactions::pure_dim(&space, *set), g.norm()).unwrap();
    }
    Ok(Output::ok(s))
}

fn project(cli: &Cli, p: &Distribution, family: &FamilyArgs) -> Result<Output, Failure> {
    let space = p.space().clone();
    let spec = if let Some(k) = family.order {
        InteractionFamilySpec::order(space, k)
    } else if family.star {
        InteractionFamilySpec::default_star(space)
    } else {
        let path = family.family.as_ref().expect("clap enforces one family flag");
        InteractionFamilySpec::from_json(&read(path)?)?
    };
    let defaults = ProjectionOptions::default();
    let opts = ProjectionOptions {
        tol: cli.tol.unwrap_or(defaults.tol),
        max_iter: cli.max_iter.unwrap_or(defaults.max_iter),
    };
    let result = info_projection(p, &spec, opts)?;
    if cli.json {
        return Ok(Output::ok(pretty(json!({
            "divergence": result.divergence.to_f64(),
            "iterations": result.iterations,
            "residual": result.residual,
            "q": distribution_value(&result.q),
        }))));
    }
    Ok(Output::ok(format!(
        "D = {}\niterations = {}\nresidual = {:e}\nq = {}",
        result.divergence,
        result.iterations,
        result.residual,
        result.q.to_json()
    )))
}

fn approximate(
    cli: &Cli,
    p: &Distribution,
    method: Method,
    lift: Lift,
    schedule: &[usize],
    max_exp: u32,
    threshold: Option<f64>,
) -> Result<Output, Failure> {
    let exec = multiinfo::Exec::default();
    let trace = match method {
        Method::Pair => {
            let lift = match lift {
                Lift::Exposed => PairLift::Exposed,
                Lift::Orthogonal => PairLift::Orthogonal,
            };
            approx::pair_sequence_trace(p, schedule, lift, false, exec)?
        }
        Method::Quadratic => {
            let phi = approx::make_general_position(p.space(), cli.seed, 16)?;
            approx::quadratic_trace(p, &phi, &approx::doubling_betas(max_exp), exec)?
        }
    };
    let last = trace.last_kl().unwrap_or(f64::INFINITY);
    let text = if cli.json {
        pretty(serde_json::to_value(&trace).expect("trace serializes"))
    } else {
        trace.to_csv()
    };
    let code = match threshold {
        Some(t) if last.is_nan() || last >= t => {
            eprintln!("error: final KL {last:e} is not below the threshold {t:e}");
            4
        }
        _ => 0,
    };
    Ok(Output { text, code })
}

fn search(cli: &Cli, cards: &[usize], restarts: usize, step: f64) -> Result<Output, Failure> {
    let space = ProductSpace::new(cards.to_vec())?;
    if step.is_nan() || step <= 0.0 {
        return Err(fail("--step must be positive"));
    }
    let opts = SearchOptions {
        iters: cli.max_iter.unwrap_or(SearchOptions::default().iters),
        restarts,
        step,
    };
    let (p, value) = approx::search_local_maximizer(&space, cli.seed, opts);
    let bound = upper_bound(&space);
    if cli.json {
        return Ok(Output::ok(pretty(json!({
            "multi_information": value,
            "bound": bound,
            "p": distribution_value(&p),
        }))));
    }
    Ok(Output::ok(format!(
        "I = {value:.12}\nbound = {bound:.12}\np = {}",
        p.to_json()
    )))
}

fn report(cli: &Cli, cards: &[usize]) -> Result<Output, Failure> {
    let space = ProductSpace::new(cards.to_vec())?;
    let r = approx::dimension_report(&space);
    if cli.json {
        return Ok(Output::ok(pretty(serde_json::to_value(&r).expect("report serializes"))));
    }
    let quad = r
        .quadratic_bound
        .map_or_else(|| "n/a (unequal units)".to_string(), |q| q.to_string());
    Ok(Output::ok(format!(
        "space: {space}\n\
         dim simplex = {}\n\
         hub unit = {}\n\
         dim star family = {} (formula {})\n\
         quadratic generating set = {quad}\n\
         3*sum(n_i-1)+2 = {}",
        r.simplex, r.hub, r.star, r.star_formula, r.general_bound
    )))
}
