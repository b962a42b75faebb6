//! Command-line front end.
//!
//! Exit codes: `0` for a positive answer (S-IC, member, valid, success),
//! `1` for a negative one, `2` for errors. Settings resolve as flag, then
//! `KSGRAPH_*` environment variable, then built-in default, and the
//! effective values are echoed in every report. JSON reports carry no
//! timings, so identical inputs give identical bytes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{chromatic_number, clique_number, SearchLimits, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{
    catalog_get, catalog_names, format::read_ograph, CatalogEntry, EnumerationLimits, Graph, Known,
    DEFAULT_ENUMERATION_CAP,
};
use crate::polytope::{
    fractional_chromatic_number, qstab_membership, sic_test, stab_membership, uniform_point, verify_certificate,
    Certificate, StabMembership,
};
use crate::quantum::io::{projectors_to_json, read_projectors, read_state};
use crate::quantum::realizations::seed_realization;
use crate::quantum::{
    contextuality_measure_fixed, contextuality_measure_search, DensityMatrix, MeasureOptions, SearchOptions,
};
use crate::rational::Rational;

const DECIMALS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "ksgraph", version, about = "State-independent contextuality of orthogonality graphs")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, env = "KSGRAPH_FORMAT", default_value = "text")]
    format: Format,
    /// Worker threads for parallel sections (1 = serial).
    #[arg(long, global = true, env = "KSGRAPH_THREADS", default_value_t = 1)]
    threads: usize,
    /// Cap on enumerated independent sets or cliques.
    #[arg(long, global = true, env = "KSGRAPH_MAX_SETS", default_value_t = DEFAULT_ENUMERATION_CAP)]
    max_sets: u64,
    /// Node budget for the exact colouring and clique searches.
    #[arg(long, global = true, env = "KSGRAPH_MAX_NODES", default_value_t = DEFAULT_NODE_BUDGET)]
    max_nodes: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Catalog graph, e.g. G_YO, J_GYO_GYO, K4, C5.
    #[arg(long)]
    catalog: Option<String>,
    /// Graph file in the `p ograph` format.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct PointSource {
    /// Comma-separated rationals, one per vertex.
    #[arg(long)]
    point: Option<String>,
    /// The same rational on every vertex.
    #[arg(long)]
    uniform: Option<Rational>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StateSource {
    /// Density matrix JSON file.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Use the maximally mixed state of the projectors' dimension.
    #[arg(long)]
    maximally_mixed: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clique number, chromatic number and fractional chromatic number.
    Invariants {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Test state-independent contextuality for rank-r projectors in dimension d.
    Sic {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, env = "KSGRAPH_DIM")]
        dim: u64,
        #[arg(long, env = "KSGRAPH_RANK", default_value_t = 1)]
        rank: u64,
        /// Write the certificate JSON here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Membership of a point in the stable-set polytope.
    Stab {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        point: PointSource,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Membership of a point in the clique-constrained polytope.
    Qstab {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        point: PointSource,
    },
    /// Re-check a certificate against a graph.
    Verify {
        /// Certificate JSON written by `sic --cert` or `stab --cert`, or a convex decomposition.
        certificate: PathBuf,
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Relative-entropy contextuality measure of a state.
    Measure {
        #[command(flatten)]
        graph: GraphSource,
        /// Projector JSON file; defaults to the catalog's known realization.
        #[arg(long)]
        projectors: Option<PathBuf>,
        #[command(flatten)]
        state: StateSource,
        #[arg(long, env = "KSGRAPH_TOL", default_value = "1e-9")]
        tol: f64,
        #[arg(long, env = "KSGRAPH_MAX_ITERS", default_value_t = 200_000)]
        max_iters: usize,
        #[arg(long, env = "KSGRAPH_P_FLOOR", default_value = "1e-300")]
        p_floor: f64,
        /// Search the unitary orbit of the projectors for a larger value.
        #[arg(long)]
        search: bool,
        #[arg(long, env = "KSGRAPH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "KSGRAPH_RESTARTS", default_value_t = 4)]
        restarts: usize,
        /// Measure evaluations per restart.
        #[arg(long, env = "KSGRAPH_EVALUATIONS", default_value_t = 60)]
        evaluations: usize,
        /// Write the best projectors found by the search here.
        #[arg(long, requires = "search")]
        save_projectors: Option<PathBuf>,
    },
    /// Catalog of named graphs.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// List catalog names with reference values.
    List,
}

/// A finished command: the exit code and both renderings of its report.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

struct Context {
    format: Format,
    threads: usize,
    enumeration: EnumerationLimits,
    search: SearchLimits,
}

impl Context {
    fn settings(&self) -> Value {
        json!({
            "format": self.format,
            "threads": self.threads,
            "max_sets": self.enumeration.max_sets,
            "max_nodes": self.search.max_nodes,
        })
    }
}

/// Parses `args` (including the program name), runs the command, prints the
/// report, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let ctx = Context {
        format: cli.format,
        threads: cli.threads.max(1),
        enumeration: EnumerationLimits { max_sets: cli.max_sets },
        search: SearchLimits { max_nodes: cli.max_nodes },
    };
    if ctx.threads > 1 {
        // only fails if a pool exists already, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(ctx.threads).build_global();
    }
    let start = Instant::now();
    match execute(&ctx, cli.command) {
        Ok(mut report) => {
            let rendered = match ctx.format {
                Format::Json => {
                    report.json["settings"] = ctx.settings();
                    serde_json::to_string_pretty(&report.json).expect("report serializes") + "\n"
                }
                Format::Text => format!(
                    "{}settings: {}\nruntime: {:.3} s\n",
                    report.text,
                    ctx.settings(),
                    start.elapsed().as_secs_f64()
                ),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            report.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(ctx: &Context, command: Command) -> Result<Report> {
    match command {
        Command::Invariants { graph } => invariants(ctx, &graph),
        Command::Sic { graph, dim, rank, cert } => sic(ctx, &graph, dim, rank, cert),
        Command::Stab { graph, point, cert } => stab(ctx, &graph, &point, cert),
        Command::Qstab { graph, point } => qstab(ctx, &graph, &point),
        Command::Verify { certificate, graph } => verify(ctx, &graph, certificate),
        Command::Measure {
            graph,
            projectors,
            state,
            tol,
            max_iters,
            p_floor,
            search,
            seed,
            restarts,
            evaluations,
            save_projectors,
        } => {
            let measure = MeasureOptions { tol, max_iters, p_floor, limits: ctx.enumeration, ..Default::default() };
            let search = search.then_some(SearchOptions {
                seed,
                restarts,
                evaluations,
                parallel: ctx.threads > 1,
                measure,
                ..Default::default()
            });
            measure_cmd(&graph, projectors, &state, measure, search, save_projectors)
        }
        Command::Catalog { command: CatalogCommand::List } => catalog_list(),
    }
}

struct Loaded {
    graph: Graph,
    description: Value,
    text: String,
    entry: Option<CatalogEntry>,
}

fn load(source: &GraphSource) -> Result<Loaded> {
    let (graph, source_json, source_text, entry) = match (&source.catalog, &source.file) {
        (Some(name), _) => {
            let entry = catalog_get(name)?;
            (entry.graph.clone(), json!({ "catalog": name }), format!("catalog {name}"), Some(entry))
        }
        (None, Some(path)) => {
            let g = read_ograph(path)?;
            (g, json!({ "file": path.display().to_string() }), format!("file {}", path.display()), None)
        }
        (None, None) => unreachable!("clap requires a graph source"),
    };
    let description = json!({ "source": source_json, "vertices": graph.n(), "edges": graph.edge_count() });
    let text = format!("graph: {source_text} ({} vertices, {} edges)\n", graph.n(), graph.edge_count());
    Ok(Loaded { graph, description, text, entry })
}

fn rational_json(q: &Rational) -> Value {
    json!({ "fraction": q.to_string(), "decimal": q.to_decimal(DECIMALS) })
}

fn rational_text(q: &Rational) -> String {
    format!("{q} ≈ {}", q.to_decimal(DECIMALS))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn reference<T: PartialEq + Serialize>(known: &Option<Known<T>>, actual: &T) -> Value {
    match known {
        Some(k) => json!({ "value": k.value, "provenance": k.provenance, "agrees": k.value == *actual }),
        None => Value::Null,
    }
}

fn invariants(ctx: &Context, source: &GraphSource) -> Result<Report> {
    let loaded = load(source)?;
    let g = &loaded.graph;
    let omega = clique_number(g, ctx.search)?;
    let chi = chromatic_number(g, ctx.search)?;
    let chi_f = fractional_chromatic_number(g, ctx.enumeration)?;
    let mut json = json!({
        "command": "invariants",
        "graph": loaded.description,
        "clique_number": omega,
        "chromatic_number": chi.chromatic_number,
        "coloring_search_nodes": chi.nodes,
        "fractional_chromatic_number": rational_json(&chi_f.value),
    });
    let mut text = loaded.text.clone();
    let _ = writeln!(text, "clique number: {omega}");
    let _ = writeln!(text, "chromatic number: {} ({} search nodes)", chi.chromatic_number, chi.nodes);
    let _ = writeln!(text, "fractional chromatic number: {}", rational_text(&chi_f.value));
    if let Some(entry) = &loaded.entry {
        let m = &entry.metadata;
        let refs = json!({
            "clique_number": reference(&m.clique_number, &(omega as u64)),
            "chromatic_number": reference(&m.chromatic_number, &(chi.chromatic_number as u64)),
            "fractional_chromatic_number": reference(&m.fractional_chromatic_number, &chi_f.value),
        });
        let disagreements: Vec<&str> = ["clique_number", "chromatic_number", "fractional_chromatic_number"]
            .into_iter()
            .filter(|k| refs[*k]["agrees"] == Value::Bool(false))
            .collect();
        let _ = writeln!(
            text,
            "catalog reference values: {}",
            if disagreements.is_empty() { "agree".to_string() } else { format!("DISAGREE on {disagreements:?}") }
        );
        json["reference"] = refs;
    }
    Ok(Report { code: 0, json, text })
}

fn sic(ctx: &Context, source: &GraphSource, dim: u64, rank: u64, cert: Option<PathBuf>) -> Result<Report> {
    let loaded = load(source)?;
    let verdict = sic_test(&loaded.graph, dim, rank, ctx.enumeration)?;
    let certificate = Certificate::sic(&loaded.graph, &verdict);
    if let Some(path) = &cert {
        write_file(path, &certificate.to_json())?;
    }
    let relation = if verdict.is_sic { ">" } else { "<=" };
    let mut text = loaded.text.clone();
    let _ = writeln!(text, "dimension {dim}, rank {rank}, threshold d/r = {}", rational_text(&verdict.threshold()));
    let _ = writeln!(text, "fractional chromatic number: {}", rational_text(&verdict.fractional_chromatic_number));
    let _ = writeln!(
        text,
        "{}: chi_f {relation} d/r",
        if verdict.is_sic { "state-independent contextual" } else { "not state-independent contextual" }
    );
    if let Some(dec) = &verdict.decomposition {
        let _ = writeln!(
            text,
            "uniform point {} is a convex combination of {} independent sets",
            Rational::new(rank as i64, dim as i64),
            dec.terms.len()
        );
    }
    if let Some(path) = &cert {
        let _ = writeln!(text, "certificate written to {}", path.display());
    }
    let json = json!({
        "command": "sic",
        "graph": loaded.description,
        "dimension": dim,
        "rank": rank,
        "threshold": rational_json(&verdict.threshold()),
        "fractional_chromatic_number": rational_json(&verdict.fractional_chromatic_number),
        "is_sic": verdict.is_sic,
        "certificate": serde_json::to_value(&certificate)?,
    });
    Ok(Report { code: if verdict.is_sic { 0 } else { 1 }, json, text })
}

fn parse_point(g: &Graph, source: &PointSource) -> Result<Vec<Rational>> {
    match (&source.point, &source.uniform) {
        (_, Some(q)) => Ok(uniform_point(g.n(), q)),
        (Some(list), None) => list
            .split(',')
            .map(|s| s.trim().parse::<Rational>().map_err(|e| Error::Domain(format!("point entry `{s}`: {e}"))))
            .collect(),
        (None, None) => unreachable!("clap requires a point"),
    }
}

fn point_text(point: &[Rational]) -> String {
    point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn stab(ctx: &Context, source: &GraphSource, point: &PointSource, cert: Option<PathBuf>) -> Result<Report> {
    let loaded = load(source)?;
    let point = parse_point(&loaded.graph, point)?;
    let membership = stab_membership(&loaded.graph, &point, ctx.enumeration)?;
    let certificate = Certificate::stab(&loaded.graph, &point, &membership);
    if let Some(path) = &cert {
        write_file(path, &certificate.to_json())?;
    }
    let mut text = loaded.text.clone();
    let _ = writeln!(text, "point: ({})", point_text(&point));
    match &membership {
        StabMembership::Member(dec) => {
            let _ = writeln!(text, "in STAB: convex combination of {} independent sets", dec.terms.len());
        }
        StabMembership::Separated(h) => {
            let _ = writeln!(
                text,
                "not in STAB: normal·z <= {} on every independent set, normal·point = {}",
                h.offset,
                h.value(&point)
            );
        }
    }
    if let Some(path) = &cert {
        let _ = writeln!(text, "certificate written to {}", path.display());
    }
    let json = json!({
        "command": "stab",
        "graph": loaded.description,
        "member": membership.is_member(),
        "certificate": serde_json::to_value(&certificate)?,
    });
    Ok(Report { code: if membership.is_member() { 0 } else { 1 }, json, text })
}

fn qstab(ctx: &Context, source: &GraphSource, point: &PointSource) -> Result<Report> {
    let loaded = load(source)?;
    let point = parse_point(&loaded.graph, point)?;
    let violated = qstab_membership(&loaded.graph, &point, ctx.enumeration)?;
    let mut text = loaded.text.clone();
    let _ = writeln!(text, "point: ({})", point_text(&point));
    let violated_json = match &violated {
        None => {
            let _ = writeln!(text, "in QSTAB: every maximal clique sums to at most 1");
            Value::Null
        }
        Some(c) => {
            let sum: Rational = c.members().iter().map(|&v| &point[v]).sum();
            let _ = writeln!(text, "not in QSTAB: clique {:?} sums to {}", c.to_one_based(), rational_text(&sum));
            json!({ "clique": c.to_one_based(), "sum": rational_json(&sum) })
        }
    };
    let json = json!({
        "command": "qstab",
        "graph": loaded.description,
        "point": point.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "member": violated.is_none(),
        "violated_clique": violated_json,
    });
    Ok(Report { code: if violated.is_none() { 0 } else { 1 }, json, text })
}

fn verify(ctx: &Context, source: &GraphSource, path: PathBuf) -> Result<Report> {
    let loaded = load(source)?;
    let certificate = Certificate::read(&path)?;
    let check = verify_certificate(&loaded.graph, &certificate, ctx.enumeration)?;
    let mut text = loaded.text.clone();
    let _ = writeln!(text, "certificate: {}", path.display());
    match check.failure() {
        None => {
            let _ = writeln!(text, "valid");
        }
        Some(reason) => {
            let _ = writeln!(text, "invalid: {reason}");
        }
    }
    let json = json!({
        "command": "verify",
        "graph": loaded.description,
        "certificate": path.display().to_string(),
        "valid": check.is_valid(),
        "failure": check.failure(),
    });
    Ok(Report { code: if check.is_valid() { 0 } else { 1 }, json, text })
}

fn measure_cmd(
    source: &GraphSource,
    projectors: Option<PathBuf>,
    state: &StateSource,
    measure: MeasureOptions,
    search: Option<SearchOptions>,
    save_projectors: Option<PathBuf>,
) -> Result<Report> {
    let loaded = load(source)?;
    let ps = match (&projectors, &source.catalog) {
        (Some(path), _) => read_projectors(path)?,
        (None, Some(name)) => seed_realization(name)?,
        (None, None) => return Err(Error::NoSeedRealization("a graph read from a file".into())),
    };
    let rho = match &state.state {
        Some(path) => read_state(path)?,
        None => DensityMatrix::maximally_mixed(ps.dim()),
    };
    let mut settings = json!({
        "tol": measure.tol,
        "max_iters": measure.max_iters,
        "p_floor": measure.p_floor,
        "projectors": projectors.as_ref().map_or("catalog realization".to_string(), |p| p.display().to_string()),
        "state": state.state.as_ref().map_or("maximally mixed".to_string(), |p| p.display().to_string()),
    });
    let mut text = loaded.text.clone();
    let _ = writeln!(text, "projectors: dimension {}, rank {}", ps.dim(), ps.rank());
    let mut json = json!({ "command": "measure", "graph": loaded.description });
    let result = match search {
        None => contextuality_measure_fixed(&loaded.graph, &ps, &rho, &measure)?,
        Some(opts) => {
            let found = contextuality_measure_search(&loaded.graph, &ps, &rho, &opts)?;
            if let Some(path) = &save_projectors {
                write_file(path, &projectors_to_json(&found.projectors))?;
            }
            settings["seed"] = json!(opts.seed);
            settings["restarts"] = json!(opts.restarts);
            settings["evaluations"] = json!(opts.evaluations);
            json["search"] = json!({
                "bound": found.bound,
                "seed": found.seed,
                "seed_value_nats": found.seed_value_nats,
                "best_restart": found.best_restart,
                "evaluations": found.evaluations,
            });
            let _ = writeln!(
                text,
                "unitary-orbit search (seed {}, {} restarts, {} evaluations): value is a lower bound",
                found.seed, found.restarts, found.evaluations
            );
            let _ = writeln!(text, "value at the supplied projectors: {:.12e} nats", found.seed_value_nats);
            found.result
        }
    };
    let _ = writeln!(text, "measure: {:.12e} nats = {:.12e} bits", result.value_nats, result.value_bits);
    let _ = writeln!(
        text,
        "Frank-Wolfe: {} iterations, gap {:.3e}, floor activations {}",
        result.convergence.iterations, result.convergence.gap, result.convergence.floor_activations
    );
    let _ = writeln!(
        text,
        "{} contexts, {} independent sets in the optimal mixture",
        result.contexts.len(),
        result.noncontextual_weights.len()
    );
    json["value_nats"] = json!(result.value_nats);
    json["value_bits"] = json!(result.value_bits);
    json["result"] = serde_json::to_value(&result)?;
    json["measure_settings"] = settings;
    Ok(Report { code: 0, json, text })
}

fn catalog_list() -> Result<Report> {
    let mut entries = Vec::new();
    let mut text = String::new();
    for name in catalog_names() {
        match catalog_get(&name) {
            Ok(entry) => {
                let _ = writeln!(text, "{name}: {} vertices, {} edges", entry.graph.n(), entry.graph.edge_count());
                entries.push(json!({
                    "name": name,
                    "vertices": entry.graph.n(),
                    "edges": entry.graph.edge_count(),
                    "metadata": serde_json::to_value(&entry.metadata)?,
                }));
            }
            Err(_) => {
                let _ = writeln!(text, "{name}: family");
                entries.push(json!({ "name": name, "family": true }));
            }
        }
    }
    Ok(Report { code: 0, json: json!({ "command": "catalog list", "entries": entries }), text })
}
