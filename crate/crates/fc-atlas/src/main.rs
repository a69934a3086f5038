//! Command-line front end: closure, FC check, classification, generation,
//! counting, coloring, census, lemma sweep, closure planarity.
//!
//! Exit codes: 0 success; 1 mathematically significant finding (catalog
//! gap, coloring proof gap, missing interior path, census mismatch, lemma
//! failure); 2 invalid input or out-of-scale request.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fc_atlas::catalog::{self, CatalogClass, CatalogError, SubdividerTriple};
use fc_atlas::coloring::{self, ColorError};
use fc_atlas::counting;
use fc_atlas::embed::{embed_abstract, PlaneGraph};
use fc_atlas::io;
use fc_atlas::facial_closure;
use fc_atlas::verify::{self, CensusConnectivity};

#[derive(Parser)]
#[command(
    name = "fc-atlas",
    version,
    about = "Facially complete plane graphs: closure, catalog, counts, coloring, census"
)]
struct Cli {
    /// Output format for command payloads
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ColorMethod {
    /// Exact chromatic number of the facial closure
    Exact,
    /// Constructive five-coloring for q <= 4 with at most two quads
    Quad5,
}

#[derive(Subcommand)]
enum Command {
    /// Facial closure of an embedding: q, W(q), added pairs
    Closure {
        /// Plane-graph JSON, graph6, or edge list (abstract inputs are embedded first)
        input: PathBuf,
        /// Also write the closure as a DOT file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Is the embedding facially complete?
    Check { input: PathBuf },
    /// Match a facially complete embedding against the catalog
    Classify { input: PathBuf },
    /// Emit a catalog graph as plane-graph JSON
    Generate {
        /// Catalog type 1-7
        #[arg(long = "type")]
        kind: Option<u8>,
        /// Subdivider triple a,b,c (types 1-3)
        #[arg(long)]
        subdividers: Option<String>,
        /// Rim length (type 4)
        #[arg(long)]
        rim: Option<usize>,
        /// Radii positions, comma-separated (type 4)
        #[arg(long)]
        radii: Option<String>,
        /// Cycle length (type 5)
        #[arg(long)]
        cycle: Option<usize>,
        /// Diagonals as a-b pairs, comma-separated (type 5)
        #[arg(long)]
        diagonals: Option<String>,
        /// Full class description as JSON (any type, required for 6 and 7)
        #[arg(long, conflicts_with_all = ["kind", "subdividers", "rim", "radii", "cycle", "diagonals"])]
        class: Option<String>,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the graph as a DOT file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Count 2-connected catalog graphs by type
    Count {
        /// Single catalog type 1-5 (all five when omitted)
        #[arg(long = "type")]
        kind: Option<u8>,
        /// Single vertex count
        #[arg(long, conflicts_with = "all")]
        n: Option<usize>,
        /// Table for n = 3..=max-n
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
    },
    /// Color the facial closure
    Color {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ColorMethod::Exact)]
        method: ColorMethod,
    },
    /// Exhaustive FC census over all n-vertex graphs
    Census {
        #[arg(long)]
        n: usize,
        /// "2" for 2-connected only, "all" for every graph
        #[arg(long, default_value = "2")]
        connectivity: String,
        /// Directory holding vendored graph lists (graphs_n<k>.g6, one graph6 per line)
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Interior-path lemma sweep over all 2-connected embeddings
    Lemma {
        #[arg(long)]
        n: usize,
    },
    /// Is the facial closure planar?
    PlanarClosure { input: PathBuf },
}

/// 2 = invalid input, 1 = mathematically significant finding.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(msg: impl Display) -> Self {
        Failure {
            code: 2,
            message: msg.to_string(),
        }
    }

    fn finding(msg: impl Display) -> Self {
        Failure {
            code: 1,
            message: msg.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

/// Plane-graph JSON loads as-is; graph6 / edge lists are embedded first.
fn load_graph(path: &Path) -> Result<PlaneGraph, Failure> {
    let text = read_file(path)?;
    if text.trim_start().starts_with('{') {
        io::parse_plane_json(&text).map_err(Failure::invalid)
    } else {
        let (n, edges) = io::parse_abstract(&text).map_err(Failure::invalid)?;
        embed_abstract(n, &edges).map_err(Failure::invalid)
    }
}

/// Writes a payload to stdout, exiting quietly when the reader has gone away
/// (`fc-atlas count --all | head` must not panic on the broken pipe).
fn write_stdout(payload: &str, newline: bool) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = if newline {
        writeln!(out, "{payload}")
    } else {
        write!(out, "{payload}")
    };
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn emit(format: Format, json: serde_json::Value, text: String) {
    match format {
        Format::Json => write_stdout(&serde_json::to_string_pretty(&json).unwrap(), true),
        Format::Text => write_stdout(&text, true),
    }
}

fn parse_triple(s: &str) -> Result<SubdividerTriple, Failure> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::invalid(format!("bad subdivider triple '{s}', want a,b,c")))?;
    if parts.len() != 3 {
        return Err(Failure::invalid(format!(
            "subdivider triple '{s}' must have exactly three entries"
        )));
    }
    Ok(SubdividerTriple::new(parts[0], parts[1], parts[2]))
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::invalid(format!("bad position list '{s}'")))
}

fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            let (a, b) = p
                .trim()
                .split_once('-')
                .ok_or_else(|| Failure::invalid(format!("bad pair '{p}', want a-b")))?;
            Ok((
                a.trim()
                    .parse()
                    .map_err(|_| Failure::invalid(format!("bad pair '{p}'")))?,
                b.trim()
                    .parse()
                    .map_err(|_| Failure::invalid(format!("bad pair '{p}'")))?,
            ))
        })
        .collect()
}

fn catalog_failure(e: CatalogError) -> Failure {
    match e {
        CatalogError::CatalogGap(_) | CatalogError::NoPathFound(_) => Failure::finding(e),
        other => Failure::invalid(other),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Closure { input, dot } => {
            let g = load_graph(input)?;
            let rep = facial_closure(&g);
            if let Some(path) = dot {
                let d = io::to_dot(rep.n, &rep.closure_edges, g.labels());
                fs::write(path, d).map_err(Failure::invalid)?;
            }
            let added = rep
                .added
                .iter()
                .map(|&(u, v)| format!("{u}-{v}"))
                .collect::<Vec<_>>()
                .join(", ");
            emit(
                cli.format,
                serde_json::to_value(&rep).unwrap(),
                format!(
                    "q={}, W={}, complete={}, added=[{}]",
                    rep.q, rep.w, rep.complete, added
                ),
            );
        }
        Command::Check { input } => {
            let g = load_graph(input)?;
            let rep = facial_closure(&g);
            emit(
                cli.format,
                json!({ "fc": rep.complete, "n": g.vertex_count(), "q": rep.q, "w": rep.w }),
                format!(
                    "FC: {}, n={}, q={}, W={}",
                    rep.complete,
                    g.vertex_count(),
                    rep.q,
                    rep.w
                ),
            );
        }
        Command::Classify { input } => {
            let g = load_graph(input)?;
            let class = catalog::classify(&g).map_err(catalog_failure)?;
            let tag = catalog::extremal_tag(&class);
            let mut value = serde_json::to_value(&class).unwrap();
            if let Some(t) = tag {
                value["extremal"] = serde_json::to_value(t).unwrap();
            }
            let text = match tag {
                Some(t) => format!("{class:?} (extremal: {t:?})"),
                None => format!("{class:?}"),
            };
            emit(cli.format, value, text);
        }
        Command::Generate {
            kind,
            subdividers,
            rim,
            radii,
            cycle,
            diagonals,
            class,
            output,
            dot,
        } => {
            let class = resolve_class(kind, subdividers, rim, radii, cycle, diagonals, class)?;
            let g = catalog::generate(&class).map_err(catalog_failure)?;
            let payload = io::plane_to_json(&g);
            match output {
                Some(path) => fs::write(path, payload).map_err(Failure::invalid)?,
                None => write_stdout(&payload, false),
            }
            if let Some(path) = dot {
                fs::write(path, io::plane_to_dot(&g)).map_err(Failure::invalid)?;
            }
        }
        Command::Count { kind, n, all, max_n } => run_count(cli.format, *kind, *n, *all, *max_n)?,
        Command::Color { input, method } => {
            let g = load_graph(input)?;
            let (witness, chi) = match method {
                ColorMethod::Exact => {
                    let (chi, w) = coloring::cyclic_chromatic(&g).map_err(color_failure)?;
                    (w, chi)
                }
                ColorMethod::Quad5 => {
                    let w = coloring::color_quad5(&g).map_err(color_failure)?;
                    let c = w.color_count;
                    (w, c)
                }
            };
            let lines = witness
                .assignment
                .iter()
                .enumerate()
                .map(|(v, c)| format!("{v} {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                cli.format,
                json!({ "colors": chi, "assignment": witness.assignment }),
                lines,
            );
        }
        Command::Census {
            n,
            connectivity,
            fixtures,
        } => {
            let mode = match connectivity.as_str() {
                "2" | "two" | "two_connected" => CensusConnectivity::TwoConnected,
                "all" => CensusConnectivity::All,
                other => {
                    return Err(Failure::invalid(format!(
                        "connectivity must be '2' or 'all', got '{other}'"
                    )))
                }
            };
            let report = match fixtures {
                Some(dir) => {
                    let path = dir.join(format!("graphs_n{n}.g6"));
                    let text = read_file(&path)?;
                    let graphs = text
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| {
                            let (gn, edges) = io::parse_graph6(l).map_err(Failure::invalid)?;
                            if gn != *n {
                                return Err(Failure::invalid(format!(
                                    "{} holds a graph on {gn} vertices, expected {n}",
                                    path.display()
                                )));
                            }
                            Ok(edges)
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    verify::fc_census_from(*n, mode, &graphs).map_err(Failure::invalid)?
                }
                None => verify::fc_census(*n, mode).map_err(Failure::invalid)?,
            };
            let mut text = format!(
                "n={} base_graphs={} embeddings={} fc={} histogram={:?}",
                report.n,
                report.base_graphs,
                report.embeddings_examined,
                report.fc_found,
                report.histogram
            );
            for m in &report.mismatches {
                text.push_str(&format!("\nmismatch [{}]: {}", m.context, m.problem));
            }
            emit(cli.format, serde_json::to_value(&report).unwrap(), text);
            if !report.ok() {
                return Err(Failure::finding(format!(
                    "census found {} mismatch(es)",
                    report.mismatches.len()
                )));
            }
        }
        Command::Lemma { n } => {
            let report = verify::lemma_sweep(*n).map_err(Failure::invalid)?;
            let mut text = format!(
                "n={} embeddings={} faces={} failures={}",
                report.n,
                report.embeddings_checked,
                report.faces_checked,
                report.failures.len()
            );
            for f in &report.failures {
                text.push_str(&format!("\nfailure: {f}"));
            }
            emit(cli.format, serde_json::to_value(&report).unwrap(), text);
            if !report.ok() {
                return Err(Failure::finding(format!(
                    "lemma sweep found {} failure(s)",
                    report.failures.len()
                )));
            }
        }
        Command::PlanarClosure { input } => {
            let g = load_graph(input)?;
            let planar = coloring::closure_is_planar(&g);
            emit(
                cli.format,
                json!({ "planar": planar }),
                format!("planar: {planar}"),
            );
        }
    }
    Ok(())
}

fn color_failure(e: ColorError) -> Failure {
    match e {
        ColorError::ProofGap(_) => Failure::finding(e),
        other => Failure::invalid(other),
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_class(
    kind: &Option<u8>,
    subdividers: &Option<String>,
    rim: &Option<usize>,
    radii: &Option<String>,
    cycle: &Option<usize>,
    diagonals: &Option<String>,
    class: &Option<String>,
) -> Result<CatalogClass, Failure> {
    if let Some(text) = class {
        return serde_json::from_str(text)
            .map_err(|e| Failure::invalid(format!("bad --class JSON: {e}")));
    }
    let need = |opt: &Option<String>, name: &str| {
        opt.clone()
            .ok_or_else(|| Failure::invalid(format!("--{name} is required for this type")))
    };
    match kind {
        Some(k @ 1..=3) => {
            let t = parse_triple(&need(subdividers, "subdividers")?)?;
            Ok(match k {
                1 => CatalogClass::Type1(t),
                2 => CatalogClass::Type2(t),
                _ => CatalogClass::Type3(t),
            })
        }
        Some(4) => {
            let rim = rim.ok_or_else(|| Failure::invalid("--rim is required for type 4"))?;
            let radii = parse_usize_list(&need(radii, "radii")?)?;
            Ok(CatalogClass::Type4 { rim, radii })
        }
        Some(5) => {
            let cycle = cycle.ok_or_else(|| Failure::invalid("--cycle is required for type 5"))?;
            let diagonals = parse_pairs(&diagonals.clone().unwrap_or_default())?;
            Ok(CatalogClass::Type5 { cycle, diagonals })
        }
        Some(k @ (6 | 7)) => Err(Failure::invalid(format!(
            "type {k} needs a full --class JSON description"
        ))),
        Some(k) => Err(Failure::invalid(format!("unknown catalog type {k}"))),
        None => Err(Failure::invalid("either --type or --class is required")),
    }
}

fn run_count(
    format: Format,
    kind: Option<u8>,
    n: Option<usize>,
    all: bool,
    max_n: usize,
) -> Result<(), Failure> {
    let ns: Vec<usize> = if all {
        (3..=max_n).collect()
    } else {
        vec![n.ok_or_else(|| Failure::invalid("pass --n N or --all"))?]
    };
    if let Some(k) = kind {
        let mut rows = Vec::new();
        for &n in &ns {
            let c = counting::count_by_type(k, n).map_err(Failure::invalid)?;
            rows.push((n, c));
        }
        let text = rows
            .iter()
            .map(|(n, c)| format!("{n}\t{c}"))
            .collect::<Vec<_>>()
            .join("\n");
        let value = json!(rows
            .iter()
            .map(|(n, c)| json!({ "n": n, "count": c }))
            .collect::<Vec<_>>());
        emit(format, value, format!("n\ttype{k}\n{text}"));
    } else {
        let tables = ns
            .iter()
            .map(|&n| counting::count_totals(n).map_err(Failure::invalid))
            .collect::<Result<Vec<_>, _>>()?;
        let header = "n\ttype1\ttype2\ttype3\ttype4\ttype5\ttotal\tnonouterplanar";
        let body = tables
            .iter()
            .map(|t| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    t.n,
                    t.type1,
                    t.type2,
                    t.type3,
                    t.type4,
                    t.type5,
                    t.total_2connected,
                    t.total_nonouterplanar
                )
            })
            .collect::<Vec<_>>()
            .join("\n");
        emit(
            format,
            serde_json::to_value(&tables).unwrap(),
            format!("{header}\n{body}"),
        );
    }
    Ok(())
}
