use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use castnet::community::{
    girvan_newman, label_propagation, leading_eigenvector, modularity, multilevel, walktrap, Seed,
};
use castnet::compare::{adjusted_rand, embeddedness, mixing_report, nmi};
use castnet::export;
use castnet::graph::{MultiGraph, Partition};
use castnet::ingest::{Corpus, LoadOptions, SliceSpec};
use castnet::metrics;
use castnet::report::{PartitionFile, Report, ReportRow, RowValue, RunConfig};
use castnet::Error;

/// Analyze character-interaction networks: structural metrics, centrality,
/// community detection, and partition comparison over episode slices.
#[derive(Parser)]
#[command(name = "castnet", version)]
struct Cli {
    /// Directory of per-episode interaction files (sSSeEE.txt)
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Slices config mapping names to episode lists (name = s1e9 s2e8 ...)
    #[arg(long, global = true)]
    slices: Option<PathBuf>,
    /// Field separator inside episode files
    #[arg(long, global = true, default_value_t = '\t')]
    separator: char,
    /// Seed for stochastic methods
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format (reports: csv|json; export: dot|graphml|edge-csv)
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-slice structure: order, edge total, diameter, clique number,
    /// clustering coefficient
    Stats {
        /// Slice to report on; repeat for a multi-slice table
        #[arg(long = "slice", required = true)]
        slice: Vec<String>,
        /// Use mean local clustering instead of global transitivity
        #[arg(long)]
        local_clustering: bool,
    },
    /// Per-vertex centrality, sorted descending
    Centrality {
        #[arg(long)]
        slice: String,
        #[arg(long, value_enum)]
        measure: Measure,
        /// Normalize degree by N-1 and betweenness by (N-1)(N-2)/2
        #[arg(long)]
        normalized: bool,
        /// Only report these characters (comma separated)
        #[arg(long)]
        subjects: Option<String>,
        /// Measure within components instead of failing when disconnected
        #[arg(long)]
        restrict_component: bool,
        /// Closeness numerator N-1 instead of N
        #[arg(long)]
        conventional_closeness: bool,
    },
    /// Interaction counts for character pairs
    Pairs {
        #[arg(long)]
        slice: String,
        /// Characters to pair up (comma separated; defaults to the six
        /// main cast names)
        #[arg(long)]
        characters: Option<String>,
        /// Divide counts by the number of seasons in the slice
        #[arg(long)]
        per_season: bool,
    },
    /// Detect communities and report membership, modularity, mixing, and
    /// per-community embeddedness
    Communities {
        #[arg(long)]
        slice: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Random-walk length for walktrap
        #[arg(long, default_value_t = 4)]
        walk_length: usize,
        /// Cap on recorded dendrogram levels for girvan-newman
        #[arg(long)]
        max_levels: Option<usize>,
        /// Where partition JSON files are persisted
        #[arg(long, default_value = "partitions")]
        partition_dir: PathBuf,
    },
    /// Pairwise partition similarity between methods
    Compare {
        #[arg(long)]
        slice: String,
        /// At least two methods, comma separated
        #[arg(long)]
        methods: String,
        #[arg(long, value_enum, default_value_t = CompareMetric::Nmi)]
        metric: CompareMetric,
        #[arg(long, default_value_t = 4)]
        walk_length: usize,
        #[arg(long)]
        max_levels: Option<usize>,
        /// Reuse partitions persisted here instead of recomputing
        #[arg(long)]
        partition_dir: Option<PathBuf>,
    },
    /// Write the slice graph as dot, graphml, or edge-csv
    Export {
        #[arg(long)]
        slice: String,
        /// Partition JSON whose communities color the vertices
        #[arg(long)]
        partition: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
    Dot,
    Graphml,
    #[value(name = "edge-csv")]
    EdgeCsv,
}

#[derive(ValueEnum, Clone, Copy)]
enum Measure {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Method {
    Multilevel,
    #[value(name = "label_propagation", alias = "label-propagation")]
    LabelPropagation,
    #[value(name = "girvan_newman", alias = "girvan-newman", alias = "edge_betweenness")]
    GirvanNewman,
    #[value(name = "leading_eigenvector", alias = "leading-eigenvector")]
    LeadingEigenvector,
    Walktrap,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Multilevel => "multilevel",
            Method::LabelPropagation => "label_propagation",
            Method::GirvanNewman => "girvan_newman",
            Method::LeadingEigenvector => "leading_eigenvector",
            Method::Walktrap => "walktrap",
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum CompareMetric {
    Nmi,
    Ari,
}

const DEFAULT_CAST: [&str; 6] = ["Monica", "Chandler", "Ross", "Rachel", "Joey", "Phoebe"];

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let corpus_dir = cli
        .corpus
        .as_ref()
        .ok_or_else(|| Error::Usage("--corpus is required".into()))?;
    let options = LoadOptions {
        separator: cli.separator,
        slices_file: cli.slices.clone(),
    };
    let corpus = Corpus::load(corpus_dir, &options)?;
    for warning in corpus.warnings() {
        eprintln!("warning: {warning}");
    }
    let corpus_hash = corpus.fingerprint();
    let mut config = RunConfig {
        corpus: corpus_dir.display().to_string(),
        slices: cli.slices.as_ref().map(|p| p.display().to_string()),
        separator: cli.separator,
        seed: cli.seed,
        format: format_name(cli.format).into(),
        ..RunConfig::default()
    };

    match &cli.command {
        Command::Stats {
            slice,
            local_clustering,
        } => {
            config.local_clustering = *local_clustering;
            let mut report = Report::new(config, corpus_hash);
            for slice_name in slice {
                stats_rows(&corpus, slice_name, *local_clustering, &mut report)?;
            }
            emit_report(&cli, &report)
        }
        Command::Centrality {
            slice,
            measure,
            normalized,
            subjects,
            restrict_component,
            conventional_closeness,
        } => {
            config.normalized = *normalized;
            config.restrict_component = *restrict_component;
            config.conventional_closeness = *conventional_closeness;
            let graph = slice_graph(&corpus, slice)?;
            let scores = match measure {
                Measure::Degree => metrics::degree_scores(&graph, *normalized)?,
                Measure::Closeness => metrics::closeness_scores(
                    &graph,
                    metrics::ClosenessOptions {
                        restrict_component: *restrict_component,
                        conventional: *conventional_closeness,
                    },
                )?,
                Measure::Betweenness => metrics::betweenness_scores(&graph, *normalized)?,
                Measure::Eigenvector => {
                    metrics::eigenvector_centrality(&graph, *restrict_component)?
                }
            };
            let filter: Option<Vec<String>> = subjects
                .as_ref()
                .map(|list| parse_names(&graph, list))
                .transpose()?;
            let mut report = Report::new(config, corpus_hash);
            for (v, score) in scores.ranked() {
                let name = graph.label(v);
                if let Some(wanted) = &filter {
                    if !wanted.iter().any(|n| n == name) {
                        continue;
                    }
                }
                report.push(ReportRow::new(
                    slice.clone(),
                    scores.measure,
                    name,
                    RowValue::Float(score),
                ));
            }
            emit_report(&cli, &report)
        }
        Command::Pairs {
            slice,
            characters,
            per_season,
        } => {
            let spec: SliceSpec = parse_slice(slice)?;
            let keys = corpus.resolve(&spec)?;
            let graph = corpus.slice(&spec)?;
            let names = match characters {
                Some(list) => parse_names(&graph, list)?,
                None => {
                    let names: Vec<String> =
                        DEFAULT_CAST.iter().map(|s| s.to_string()).collect();
                    for name in &names {
                        if graph.vertex(name).is_none() {
                            return Err(Error::Data(format!(
                                "unknown character {name:?} in slice {slice}"
                            )));
                        }
                    }
                    names
                }
            };
            let seasons: std::collections::BTreeSet<u8> =
                keys.iter().map(|k| k.season).collect();
            let mut report = Report::new(config, corpus_hash);
            for i in 0..names.len() {
                for j in (i + 1)..names.len() {
                    let count = graph.multiplicity_by_name(&names[i], &names[j]);
                    let subject = format!("{}|{}", names[i], names[j]);
                    if *per_season {
                        report.push(ReportRow::new(
                            slice.clone(),
                            "interactions_per_season",
                            subject,
                            RowValue::Float(f64::from(count) / seasons.len() as f64),
                        ));
                    } else {
                        report.push(ReportRow::new(
                            slice.clone(),
                            "interactions",
                            subject,
                            RowValue::Int(i64::from(count)),
                        ));
                    }
                }
            }
            emit_report(&cli, &report)
        }
        Command::Communities {
            slice,
            method,
            walk_length,
            max_levels,
            partition_dir,
        } => {
            config.walk_length = *walk_length;
            config.max_levels = *max_levels;
            let graph = slice_graph(&corpus, slice)?;
            let partition = detect(
                &graph,
                *method,
                Seed(cli.seed),
                *walk_length,
                *max_levels,
            )?;
            let file = PartitionFile::from_partition(
                &config,
                &corpus_hash,
                slice,
                method.name(),
                &graph,
                &partition,
            );
            fs::create_dir_all(partition_dir)?;
            let path = partition_dir.join(PartitionFile::file_name(
                &corpus_hash,
                slice,
                method.name(),
                cli.seed,
            ));
            fs::write(&path, serde_json::to_string_pretty(&file)?)?;
            eprintln!("partition persisted to {}", path.display());

            let mut report = Report::new(config, corpus_hash);
            community_rows(&graph, &partition, slice, method.name(), &mut report)?;
            emit_report(&cli, &report)
        }
        Command::Compare {
            slice,
            methods,
            metric,
            walk_length,
            max_levels,
            partition_dir,
        } => {
            config.walk_length = *walk_length;
            config.max_levels = *max_levels;
            let methods = parse_methods(methods)?;
            let graph = slice_graph(&corpus, slice)?;
            let mut partitions = Vec::new();
            for &method in &methods {
                partitions.push(load_or_detect(
                    &graph,
                    method,
                    Seed(cli.seed),
                    *walk_length,
                    *max_levels,
                    partition_dir.as_deref(),
                    &corpus_hash,
                    slice,
                )?);
            }
            let mut report = Report::new(config, corpus_hash);
            for i in 0..methods.len() {
                for j in (i + 1)..methods.len() {
                    let value = match metric {
                        CompareMetric::Nmi => nmi(&partitions[i], &partitions[j])?,
                        CompareMetric::Ari => adjusted_rand(&partitions[i], &partitions[j])?,
                    };
                    let metric_name = match metric {
                        CompareMetric::Nmi => "nmi",
                        CompareMetric::Ari => "ari",
                    };
                    report.push(ReportRow::new(
                        slice.clone(),
                        metric_name,
                        format!("{}|{}", methods[i].name(), methods[j].name()),
                        RowValue::Float(value),
                    ));
                }
            }
            emit_report(&cli, &report)
        }
        Command::Export { slice, partition } => {
            let graph = slice_graph(&corpus, slice)?;
            let coloring = partition
                .as_ref()
                .map(|path| -> Result<Partition, Error> {
                    let text = fs::read_to_string(path)?;
                    let file: PartitionFile = serde_json::from_str(&text)
                        .map_err(|e| Error::Data(format!("partition file: {e}")))?;
                    file.to_partition(&graph)
                })
                .transpose()?;
            let mut payload = Vec::new();
            match cli.format {
                OutputFormat::Dot => {
                    export::write_dot(&graph, slice, coloring.as_ref(), &mut payload)?
                }
                OutputFormat::Graphml => {
                    export::write_graphml(&graph, slice, coloring.as_ref(), &mut payload)?
                }
                OutputFormat::EdgeCsv => export::write_edge_csv(&graph, &mut payload)?,
                OutputFormat::Csv | OutputFormat::Json => {
                    return Err(Error::Usage(
                        "export needs --format dot, graphml, or edge-csv".into(),
                    ))
                }
            }
            write_output(&cli, &payload)
        }
    }
}

fn format_name(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
        OutputFormat::Dot => "dot",
        OutputFormat::Graphml => "graphml",
        OutputFormat::EdgeCsv => "edge-csv",
    }
}

fn parse_slice(text: &str) -> Result<SliceSpec, Error> {
    text.parse::<SliceSpec>().map_err(Error::Ingest)
}

fn slice_graph(corpus: &Corpus, slice: &str) -> Result<MultiGraph, Error> {
    Ok(corpus.slice(&parse_slice(slice)?)?)
}

fn parse_names(graph: &MultiGraph, list: &str) -> Result<Vec<String>, Error> {
    let mut names = Vec::new();
    for raw in list.split(',') {
        let name = raw.trim();
        if name.is_empty() {
            continue;
        }
        if graph.vertex(name).is_none() {
            return Err(Error::Data(format!("unknown character {name:?}")));
        }
        names.push(name.to_string());
    }
    if names.is_empty() {
        return Err(Error::Usage("no character names given".into()));
    }
    Ok(names)
}

fn parse_methods(list: &str) -> Result<Vec<Method>, Error> {
    let mut methods = Vec::new();
    for raw in list.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            continue;
        }
        let method = Method::from_str(token, true)
            .map_err(|_| Error::Usage(format!("unknown method {token:?}")))?;
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    if methods.len() < 2 {
        return Err(Error::Usage("compare needs at least two methods".into()));
    }
    Ok(methods)
}

fn detect(
    graph: &MultiGraph,
    method: Method,
    seed: Seed,
    walk_length: usize,
    max_levels: Option<usize>,
) -> Result<Partition, Error> {
    let partition = match method {
        Method::Multilevel => multilevel(graph, seed)?,
        Method::LabelPropagation => label_propagation(graph, seed)?,
        Method::GirvanNewman => girvan_newman(graph, max_levels)?.best_partition().clone(),
        Method::LeadingEigenvector => leading_eigenvector(graph)?,
        Method::Walktrap => walktrap(graph, walk_length)?.best_partition().clone(),
    };
    Ok(partition)
}

#[allow(clippy::too_many_arguments)]
fn load_or_detect(
    graph: &MultiGraph,
    method: Method,
    seed: Seed,
    walk_length: usize,
    max_levels: Option<usize>,
    partition_dir: Option<&std::path::Path>,
    corpus_hash: &str,
    slice: &str,
) -> Result<Partition, Error> {
    if let Some(dir) = partition_dir {
        let path = dir.join(PartitionFile::file_name(
            corpus_hash,
            slice,
            method.name(),
            seed.0,
        ));
        if path.is_file() {
            let text = fs::read_to_string(&path)?;
            let file: PartitionFile = serde_json::from_str(&text)
                .map_err(|e| Error::Data(format!("partition file {}: {e}", path.display())))?;
            return file.to_partition(graph);
        }
    }
    detect(graph, method, seed, walk_length, max_levels)
}

fn stats_rows(
    corpus: &Corpus,
    slice_name: &str,
    local_clustering: bool,
    report: &mut Report,
) -> Result<(), Error> {
    let graph = slice_graph(corpus, slice_name)?;
    let clustering = if local_clustering {
        metrics::clustering_local_mean(&graph)
    } else {
        metrics::clustering_coefficient(&graph)
    };
    let rows = [
        ReportRow::new(slice_name, "order", "graph", RowValue::Int(graph.order() as i64)),
        ReportRow::new(
            slice_name,
            "edge_total",
            "graph",
            RowValue::Int(graph.edge_total() as i64),
        ),
        ReportRow::new(
            slice_name,
            "diameter",
            "graph",
            RowValue::Int(i64::from(metrics::diameter(
                &graph,
                metrics::DisconnectedPolicy::IgnoreInfinite,
            )?)),
        ),
        ReportRow::new(
            slice_name,
            "clique_number",
            "graph",
            RowValue::Int(metrics::clique_number(&graph)? as i64),
        ),
        ReportRow::new(slice_name, "clustering", "graph", RowValue::Float(clustering)),
    ];
    for row in rows {
        report.push(row);
    }
    Ok(())
}

fn community_rows(
    graph: &MultiGraph,
    partition: &Partition,
    slice: &str,
    method: &str,
    report: &mut Report,
) -> Result<(), Error> {
    let q = modularity(graph, partition)?;
    let mixing = mixing_report(graph, partition)?;
    if mixing.excluded > 0 {
        eprintln!(
            "warning: {} isolated vertices excluded from the mixing mean",
            mixing.excluded
        );
    }
    report.push(ReportRow::new(
        slice,
        "communities",
        method,
        RowValue::Int(partition.community_count() as i64),
    ));
    report.push(ReportRow::new(slice, "modularity", method, RowValue::Float(q)));
    report.push(ReportRow::new(
        slice,
        "mixing_parameter",
        method,
        RowValue::Float(mixing.mean),
    ));
    report.push(ReportRow::new(
        slice,
        "mixing_excluded",
        method,
        RowValue::Int(mixing.excluded as i64),
    ));
    let sizes = partition.community_sizes();
    for (c, size) in sizes.iter().enumerate() {
        report.push(ReportRow::new(
            slice,
            "community_size",
            format!("community:{c}"),
            RowValue::Int(*size as i64),
        ));
        let value = match embeddedness(graph, partition, c as u32) {
            Ok(e) => RowValue::Float(e),
            Err(_) => RowValue::Text("undefined".into()),
        };
        report.push(ReportRow::new(
            slice,
            "embeddedness",
            format!("community:{c}"),
            value,
        ));
    }
    for v in graph.vertices() {
        report.push(ReportRow::new(
            slice,
            "member",
            graph.label(v),
            RowValue::Int(i64::from(partition.community_of(v))),
        ));
    }
    Ok(())
}

fn emit_report(cli: &Cli, report: &Report) -> Result<(), Error> {
    let mut payload = Vec::new();
    match cli.format {
        OutputFormat::Csv => report.write_csv(&mut payload)?,
        OutputFormat::Json => report.write_json(&mut payload)?,
        _ => {
            return Err(Error::Usage(
                "reports support --format csv or json".into(),
            ))
        }
    }
    write_output(cli, &payload)
}

fn write_output(cli: &Cli, payload: &[u8]) -> Result<(), Error> {
    match &cli.out {
        Some(path) => fs::write(path, payload)?,
        None => std::io::stdout().write_all(payload)?,
    }
    Ok(())
}
