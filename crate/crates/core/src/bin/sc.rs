use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use source_communities::clustering::{
    binary_search_hierarchy, complete_hierarchy_with, modularity, Hierarchy, HierarchyOptions,
};
use source_communities::communities::{find_source, is_extreme_set, is_source_community, is_web_community};
use source_communities::export::{
    clustering_to_dot, hierarchy_to_json, looks_like_tree_json, sc_clustering_to_json, tree_from_json,
    tree_to_dot, tree_to_json, RunReport,
};
use source_communities::parse::{parse_graph, Format};
use source_communities::queries::{maximal_sc_clustering, overlay_clustering, ClusterKind, SCClustering, Validation};
use source_communities::tree::{build_sc_tree_with, CommunityCutTree, TreeMode, TreeOptions};
use source_communities::{Cost, Error, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "sc", version, about = "Source communities, cut-clustering hierarchies and community-cut trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete cut-clustering hierarchy.
    Hierarchy(HierarchyArgs),
    /// Build the community-cut tree.
    Tree(TreeArgs),
    /// Clustering queries on a community-cut tree.
    #[command(subcommand)]
    Query(QueryCommand),
    /// Check whether a set is a web community, extreme set or source community.
    Validate(ValidateArgs),
    /// Parametric against binary search, as CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Input {
    /// Graph file (edge list, GML or METIS).
    graph: PathBuf,
    /// Input format; guessed from the extension by default.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Edges,
    Gml,
    Metis,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Parametric,
    Binary,
}

#[derive(Args)]
struct HierarchyArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "parametric")]
    mode: Mode,
    /// Grid step of the binary search, e.g. `1/100`; defaults to 1/n².
    #[arg(long)]
    step: Option<Cost>,
    /// Score every level and report the one of highest modularity.
    #[arg(long)]
    best_modularity: bool,
    /// Hierarchy JSON destination, `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one DOT file per level into this directory.
    #[arg(long)]
    dot_dir: Option<PathBuf>,
    /// Worker threads for independent CutC calls.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct TreeArgs {
    #[command(flatten)]
    input: Input,
    /// Tree JSON destination, `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Build one tree per connected component instead of rejecting
    /// disconnected graphs.
    #[arg(long)]
    forest: bool,
}

#[derive(Subcommand)]
enum QueryCommand {
    /// Maximal clustering of source communities containing the anchor.
    MaxClustering(QueryArgs),
    /// Overlay of the maximal clusterings of disjoint anchors.
    Overlay(QueryArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// Tree JSON written by `sc tree`, or a graph file.
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
    /// Comma separated labels or `@file` with one label per line.
    #[arg(long = "anchor", visible_alias = "anchors", required = true)]
    anchors: Vec<String>,
    /// Source of each anchor, in order; searched for when omitted.
    #[arg(long = "source")]
    sources: Vec<String>,
    /// Skip the flow that checks each anchor.
    #[arg(long)]
    trust: bool,
    /// Build a forest when the input is a disconnected graph.
    #[arg(long)]
    forest: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommunityType {
    Wc,
    Es,
    Sc,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: Input,
    /// Comma separated labels or `@file`.
    #[arg(long)]
    set: String,
    #[arg(long = "type", value_enum)]
    kind: CommunityType,
    /// Source for `--type sc`; any member is accepted when omitted.
    #[arg(long)]
    source: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Graph files.
    #[arg(required = true)]
    graphs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
    /// Binary search step; defaults to 1/n² per instance.
    #[arg(long)]
    step: Option<Cost>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hierarchy(a) => hierarchy(a),
        Command::Tree(a) => tree(a),
        Command::Query(QueryCommand::MaxClustering(a)) => query(a, false),
        Command::Query(QueryCommand::Overlay(a)) => query(a, true),
        Command::Validate(a) => validate(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sc: {e}");
            ExitCode::FAILURE
        }
    }
}

type CliResult = std::result::Result<(), Box<dyn std::error::Error>>;

fn format_of(f: Option<InputFormat>, path: &Path) -> Format {
    match f {
        Some(InputFormat::Edges) => Format::EdgeList,
        Some(InputFormat::Gml) => Format::Gml,
        Some(InputFormat::Metis) => Format::Metis,
        None => Format::from_path(path),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Graph, Error> {
    parse_graph(&read(&input.graph)?, format_of(input.format, &input.graph))
}

fn emit(path: &Option<PathBuf>, text: &str) -> CliResult {
    match path {
        Some(p) if p.as_os_str() == "-" => print!("{text}"),
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))?,
        None => {}
    }
    Ok(())
}

fn to_stdout(path: &Option<PathBuf>) -> bool {
    path.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Box<dyn std::error::Error>> {
    if jobs <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(f))
}

fn default_step(g: &Graph) -> Cost {
    let n = g.n().max(1) as i64;
    Cost::ratio(1, n * n)
}

fn run_hierarchy(g: &Graph, mode: Mode, step: Option<&Cost>, jobs: usize) -> Result<Hierarchy, Box<dyn std::error::Error>> {
    let options = HierarchyOptions { parallel: jobs > 1 };
    Ok(match mode {
        Mode::Parametric => with_jobs(jobs, || complete_hierarchy_with(g, options))??,
        Mode::Binary => {
            let step = step.cloned().unwrap_or_else(|| default_step(g));
            binary_search_hierarchy(g, &step)?
        }
    })
}

fn hierarchy(a: HierarchyArgs) -> CliResult {
    let g = load(&a.input)?;
    let start = Instant::now();
    let h = run_hierarchy(&g, a.mode, a.step.as_ref(), a.jobs)?;
    let report = RunReport {
        flows: h.flows,
        cutc_calls: h.cutc_calls,
        levels: h.h(),
        wall_time: 0.0,
    }
    .with_time(start.elapsed());
    let scores = if a.best_modularity {
        let scores = h
            .levels
            .iter()
            .map(|l| modularity(&g, &l.clustering))
            .collect::<Result<Vec<_>, _>>()?;
        let best = h.best_modularity_level(&g)?;
        Some((scores, best))
    } else {
        None
    };
    let mode = match a.mode {
        Mode::Parametric => "parametric",
        Mode::Binary => "binary",
    };
    let json = hierarchy_to_json(
        &g,
        &h,
        mode,
        scores.as_ref().map(|(s, b)| (s.as_slice(), *b)),
        Some(&report),
    );
    emit(&a.out, &json)?;
    if let Some(dir) = &a.dot_dir {
        fs::create_dir_all(dir)?;
        for (i, level) in h.levels.iter().enumerate() {
            fs::write(dir.join(format!("level_{i:03}.dot")), clustering_to_dot(&g, &level.clustering))?;
        }
    }
    if !to_stdout(&a.out) {
        println!("h = {}", h.h());
        println!("cutc_calls = {}", h.cutc_calls);
        println!("flows = {}", h.flows);
        let bps: Vec<String> = h.breakpoints.iter().map(Cost::to_string).collect();
        println!("breakpoints = [{}]", bps.join(", "));
        for (i, level) in h.levels.iter().enumerate() {
            println!("level {i}: alpha = {}, clusters = {}", level.alpha, level.clustering.len());
        }
        if let Some((scores, best)) = &scores {
            println!("best_modularity_level = {best} (Q = {})", scores[*best]);
        }
    }
    Ok(())
}

fn tree_options(forest: bool) -> TreeOptions {
    TreeOptions {
        mode: if forest { TreeMode::Forest } else { TreeMode::Strict },
        ..TreeOptions::default()
    }
}

fn tree(a: TreeArgs) -> CliResult {
    let g = load(&a.input)?;
    let start = Instant::now();
    let t = build_sc_tree_with(&g, tree_options(a.forest))?;
    let report = RunReport {
        flows: t.flow_count(),
        ..RunReport::default()
    }
    .with_time(start.elapsed());
    emit(&a.out, &tree_to_json(&t, Some(&report)))?;
    if let Some(p) = &a.dot {
        fs::write(p, tree_to_dot(&t))?;
    }
    if !to_stdout(&a.out) {
        println!("flow_count = {}", t.flow_count());
        println!("invalidated_opposites = {}", t.invalidated_opposites());
        let roots: Vec<&str> = t.roots().iter().map(|&r| g.label(r)).collect();
        println!("roots = [{}]", roots.join(", "));
    }
    Ok(())
}

/// Labels from `a,b,c` or from `@file` (one per line, `#` comments).
fn label_list(spec: &str) -> Result<Vec<String>, Error> {
    let labels: Vec<String> = match spec.strip_prefix('@') {
        Some(path) => read(Path::new(path))?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
        None => spec
            .split(',')
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
    };
    if labels.is_empty() {
        return Err(Error::Validation(format!("empty vertex list {spec:?}")));
    }
    Ok(labels)
}

fn vertex(g: &Graph, label: &str) -> Result<usize, Error> {
    g.vertex(label)
        .ok_or_else(|| Error::Validation(format!("unknown vertex {label:?}")))
}

fn load_tree(a: &QueryArgs) -> Result<CommunityCutTree, Error> {
    let text = read(&a.input)?;
    if looks_like_tree_json(&text) {
        return tree_from_json(&text);
    }
    let g = parse_graph(&text, format_of(a.format, &a.input))?;
    build_sc_tree_with(&g, tree_options(a.forest))
}

fn query(a: QueryArgs, overlay: bool) -> CliResult {
    let start = Instant::now();
    let t = load_tree(&a)?;
    let g = t.graph();
    if !overlay && a.anchors.len() != 1 {
        return Err("max-clustering takes exactly one anchor".into());
    }
    if !a.sources.is_empty() && a.sources.len() != a.anchors.len() {
        return Err("give one --source per --anchor, or none".into());
    }
    let validation = if a.trust { Validation::Trust } else { Validation::Check };
    let mut anchors = Vec::new();
    let mut search_flows = 0;
    for (i, spec) in a.anchors.iter().enumerate() {
        let set = g.set_of(&label_list(spec)?)?;
        let source = match a.sources.get(i) {
            Some(label) => vertex(g, label)?,
            None => {
                search_flows += set.len();
                find_source(g, &set)?.ok_or_else(|| {
                    format!("anchor {spec} is not a source community of any of its members")
                })?
            }
        };
        anchors.push((set, source));
    }
    let result: SCClustering = if overlay {
        overlay_clustering(&t, &anchors, validation)?
    } else {
        maximal_sc_clustering(&t, &anchors[0].0, anchors[0].1, validation)?
    };
    let report = RunReport {
        flows: result.flows + search_flows,
        ..RunReport::default()
    }
    .with_time(start.elapsed());
    emit(&a.out, &sc_clustering_to_json(g, &result, Some(&report)))?;
    if let Some(p) = &a.dot {
        fs::write(p, clustering_to_dot(g, &result.clustering))?;
    }
    if !to_stdout(&a.out) {
        for (cluster, kind) in result.clustering.clusters().iter().zip(&result.kinds) {
            let kind = match kind {
                ClusterKind::Given => "given",
                ClusterKind::Derived => "derived",
                ClusterKind::OverlayIntersection => "intersection",
            };
            println!("{kind}\t{}", g.labels_of(&cluster.members).join(","));
        }
    }
    Ok(())
}

fn validate(a: ValidateArgs) -> CliResult {
    let g = load(&a.input)?;
    let set: VertexSet = g.set_of(&label_list(&a.set)?)?;
    let answer = match a.kind {
        CommunityType::Wc => is_web_community(&g, &set)?,
        CommunityType::Es => is_extreme_set(&g, &set)?,
        CommunityType::Sc => match &a.source {
            Some(label) => is_source_community(&g, &set, vertex(&g, label)?)?,
            None => find_source(&g, &set)?.is_some(),
        },
    };
    println!("{answer}");
    Ok(())
}

fn bench(a: BenchArgs) -> CliResult {
    println!("instance,n,m,h,cutc_calls_param,cutc_calls_binary,time_param,time_binary,factor");
    for path in &a.graphs {
        let g = parse_graph(&read(path)?, format_of(a.format, path))?;
        let start = Instant::now();
        let param = run_hierarchy(&g, Mode::Parametric, None, a.jobs)?;
        let time_param = start.elapsed().as_secs_f64();
        let step = a.step.clone().unwrap_or_else(|| default_step(&g));
        let start = Instant::now();
        let binary = binary_search_hierarchy(&g, &step)?;
        let time_binary = start.elapsed().as_secs_f64();
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("?");
        let factor = if time_param > 0.0 { time_binary / time_param } else { f64::NAN };
        println!(
            "{name},{},{},{},{},{},{time_param:.3},{time_binary:.3},{factor:.2}",
            g.n(),
            g.m(),
            param.h(),
            param.cutc_calls,
            binary.cutc_calls
        );
    }
    Ok(())
}
