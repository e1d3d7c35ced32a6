//! Command-line front end: chordality checks, streaming generation, exact
//! counting, cyclicity reports, oracle verification, object encodings, flip
//! graph export and instrumented benchmarks.
//!
//! Exit codes: 0 success (cyclic code where that applies), 3 success with an
//! acyclic code, 4 non-chordal input rejected, 5 oracle size guard exceeded,
//! 1 other errors, 2 usage errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use elimtrees::analysis::{count_forests, predict_cyclic};
use elimtrees::encoders::{detect_shape, encode, shape_canonical_graph, ShapeKind};
use elimtrees::error::Error;
use elimtrees::families;
use elimtrees::forest::ElimForest;
use elimtrees::generator::{run_algorithm_r, Generator, Termination};
use elimtrees::graph::max_star_sigma;
use elimtrees::insertion::sigma_encode;
use elimtrees::rotation::Direction;
use elimtrees::verification::{build_flip_graph, differ_by_one_rotation, verify_gray_code};
use elimtrees::{Graph, PeoGraph};

#[derive(Parser)]
#[command(name = "elimtrees", version, about = "Elimination forests of chordal graphs by tree rotations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recognize the graph: chordality, a perfect elimination ordering,
    /// star number, components, filledness.
    Check { file: PathBuf },
    /// Stream all elimination forests in Gray-code order (chordal only).
    Generate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Parents)]
        format: Format,
        /// Stop after this many forests.
        #[arg(long)]
        limit: Option<usize>,
        /// Append the rotation that produced each forest.
        #[arg(long)]
        annotate: bool,
    },
    /// Print the exact number of elimination forests.
    Count { file: PathBuf },
    /// Predict whether the generated code is cyclic; JSON report.
    Cyclicity { file: PathBuf },
    /// Run the oracle suite against the generated sequence, or the greedy
    /// reference algorithm on an arbitrary graph.
    Verify {
        file: PathBuf,
        /// Run the history-based reference algorithm instead (works on any
        /// graph; reports visited count and termination cause).
        #[arg(long)]
        reference: bool,
    },
    /// Stream the object encoding of a recognized shape (permutations,
    /// binary trees, partial permutations, bitstrings, signed permutations).
    Encode {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Export the flip graph in DOT format.
    ExportDot {
        file: PathBuf,
        /// Output path (stdout if omitted).
        #[arg(long)]
        dot_out: Option<PathBuf>,
        /// Mark the generated Hamilton path with bold edges.
        #[arg(long)]
        highlight: bool,
    },
    /// Instrumented benchmark of the generators.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// Graph file to benchmark.
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Built-in family to sweep.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Sizes for the family sweep.
    #[arg(long, value_delimiter = ',', default_value = "6,8,10")]
    sizes: Vec<usize>,
    /// Seed for the random families.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Cap on generation steps per run.
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Parents,
    Sigma,
    Object,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Complete,
    Path,
    Star,
    RandomTree,
    RandomChordal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            if let Some(io) = err.downcast_ref::<std::io::Error>() {
                if io.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::from(0);
                }
            }
            eprintln!("error: {err}");
            match err.downcast_ref::<Error>() {
                Some(Error::SizeGuard(_)) => 5,
                Some(Error::NotChordal) => 4,
                _ => 1,
            }
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::Generate {
            file,
            format,
            limit,
            annotate,
        } => cmd_generate(&file, format, limit, annotate),
        Command::Count { file } => cmd_count(&file),
        Command::Cyclicity { file } => cmd_cyclicity(&file),
        Command::Verify { file, reference } => cmd_verify(&file, reference),
        Command::Encode { file, limit } => cmd_encode(&file, limit),
        Command::ExportDot {
            file,
            dot_out,
            highlight,
        } => cmd_export_dot(&file, dot_out.as_deref(), highlight),
        Command::Bench(args) => cmd_bench(&args),
    }
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    Ok(Graph::parse(&text)?)
}

fn cmd_check(file: &Path) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    let peo = g.chordal_peo();
    println!("chordal: {}", if peo.is_some() { "yes" } else { "no" });
    match &peo {
        Some(order) => {
            let strs: Vec<String> = order.iter().map(|v| v.to_string()).collect();
            println!("peo: {}", strs.join(" "));
        }
        None => println!("peo: -"),
    }
    let sigma = max_star_sigma(&g);
    if sigma.exact {
        println!("sigma: {}", sigma.value);
    } else {
        println!("sigma: {} (upper bound)", sigma.value);
    }
    println!("components: {}", g.connected_components().len());
    println!("filled: {}", if g.is_filled() { "yes" } else { "no" });
    Ok(0)
}

fn certify(g: Graph) -> anyhow::Result<PeoGraph> {
    if g.chordal_peo().is_none() {
        anyhow::bail!(Error::NotChordal);
    }
    Ok(PeoGraph::from_chordal(g)?)
}

fn rotation_string(pg: &PeoGraph, rot: Option<(usize, Direction)>) -> String {
    match rot {
        None => "-".into(),
        Some((j, dir)) => format!("{}{}", pg.original_label(j), dir),
    }
}

fn cmd_generate(
    file: &Path,
    format: Format,
    limit: Option<usize>,
    annotate: bool,
) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    if !g.is_chordal() {
        eprintln!("error: graph is not chordal; try `elimtrees verify {} --reference`", file.display());
        return Ok(4);
    }
    // Object encodings are defined on the canonical labeling of the
    // recognized shape; the other formats translate back to input labels.
    let (pg, shape) = if format == Format::Object {
        let tag = detect_shape(&g);
        if tag.kind == ShapeKind::Generic {
            anyhow::bail!(Error::UnsupportedShape(
                "graph matches no encodable shape; use --format=parents".into()
            ));
        }
        (PeoGraph::new(shape_canonical_graph(&g, &tag))?, Some(tag.kind))
    } else {
        (certify(g)?, None)
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut gen = Generator::new(&pg);
    let mut first: Option<ElimForest> = None;
    let mut last: Option<ElimForest> = None;
    let mut produced = 0usize;
    let mut truncated = false;
    while gen.step() {
        let f = gen.current();
        let mut line = match format {
            Format::Parents => {
                let parents = pg.translate_parents(&f.key());
                join_nums(&parents)
            }
            Format::Sigma => {
                let sigma = pg.translate_perm(&sigma_encode(f)?);
                join_nums(&sigma)
            }
            Format::Object => encode(shape.unwrap(), f)?,
            Format::Json => {
                let parents = pg.translate_parents(&f.key());
                let sigma = pg.translate_perm(&sigma_encode(f)?);
                let mut obj = serde_json::json!({
                    "parents": parents,
                    "sigma": sigma,
                });
                if annotate {
                    obj["rotation"] =
                        serde_json::json!(rotation_string(&pg, gen.last_rotation()));
                }
                serde_json::to_string(&obj)?
            }
        };
        if annotate && format != Format::Json {
            write!(line, "\t{}", rotation_string(&pg, gen.last_rotation()))?;
        }
        out.write_all(line.as_bytes())?;
        out.write_all(b"\n")?;
        if first.is_none() {
            first = Some(f.clone());
        }
        last = Some(f.clone());
        produced += 1;
        if limit.is_some_and(|l| produced >= l) {
            truncated = true;
            break;
        }
    }
    out.flush()?;
    if truncated {
        return Ok(0);
    }
    let cyclic = match (&first, &last) {
        (Some(a), Some(b)) if produced >= 2 => differ_by_one_rotation(pg.graph(), b, a),
        _ => false,
    };
    Ok(if cyclic { 0 } else { 3 })
}

fn join_nums(values: &[usize]) -> String {
    let strs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    strs.join(" ")
}

fn cmd_count(file: &Path) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    println!("{}", count_forests(&g)?);
    Ok(0)
}

fn cmd_cyclicity(file: &Path) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    let pg = certify(g)?;
    let verdict = predict_cyclic(&pg)?;
    let parities: Vec<serde_json::Value> = verdict
        .parities_even
        .iter()
        .enumerate()
        .map(|(i, &even)| serde_json::json!({ "nu": i + 2, "even": even }))
        .collect();
    let reasons: Vec<&str> = verdict.rules.iter().map(|r| r.as_str()).collect();
    let report = serde_json::json!({
        "count": verdict.count.to_string(),
        "parities": parities,
        "predicted": if verdict.cyclic { "cyclic" } else { "acyclic" },
        "reasons": reasons,
    });
    println!("{report}");
    Ok(if verdict.cyclic { 0 } else { 3 })
}

fn cmd_verify(file: &Path, reference: bool) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    if reference {
        let order: Vec<usize> = (1..=g.n()).collect();
        let f0 = ElimForest::from_ordering(&g, &order)?;
        let report = run_algorithm_r(&g, &f0)?;
        let total = report
            .total
            .as_ref()
            .map(|t| t.to_string())
            .unwrap_or_else(|| "?".into());
        println!("visited: {} of {}", report.visited(), total);
        let cause = match report.termination {
            Termination::Exhausted => "exhausted",
            Termination::Stuck => "stuck",
            Termination::Ambiguous => "ambiguous",
        };
        println!("termination: {cause}");
        println!(
            "rotations: {} up, {} down",
            report.up_rotations, report.down_rotations
        );
        return Ok(0);
    }
    let pg = certify(g)?;
    let mut gen = Generator::new(&pg);
    let mut seq = Vec::new();
    while let Some(f) = gen.next_forest() {
        seq.push(f.clone());
    }
    let report = verify_gray_code(pg.graph(), &seq)?;
    let pf = |ok: bool| if ok { "pass" } else { "FAIL" };
    println!("valid: {}", pf(report.all_valid));
    println!("distinct: {}", pf(report.all_distinct));
    println!("adjacent: {}", pf(report.consecutive_adjacent));
    println!("complete: {}", pf(report.complete));
    println!("cyclic: {}", if report.cyclic { "yes" } else { "no" });
    for d in &report.details {
        println!("detail: {d}");
    }
    if !report.all_checks_pass() {
        return Ok(1);
    }
    Ok(if report.cyclic { 0 } else { 3 })
}

fn cmd_encode(file: &Path, limit: Option<usize>) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    let tag = detect_shape(&g);
    if tag.kind == ShapeKind::Generic {
        anyhow::bail!(Error::UnsupportedShape("graph matches no encodable shape".into()));
    }
    println!("shape: {}", tag.kind.as_str());
    let pg = PeoGraph::new(shape_canonical_graph(&g, &tag))?;
    let mut gen = Generator::new(&pg);
    let mut produced = 0;
    while gen.step() {
        println!("{}", encode(tag.kind, gen.current())?);
        produced += 1;
        if limit.is_some_and(|l| produced >= l) {
            break;
        }
    }
    Ok(0)
}

fn cmd_export_dot(file: &Path, dot_out: Option<&Path>, highlight: bool) -> anyhow::Result<u8> {
    let g = load_graph(file)?;
    let fg = build_flip_graph(&g)?;
    let tag = detect_shape(&g);
    let label = |key: &Vec<usize>| -> String {
        if tag.kind != ShapeKind::Generic {
            // Object labels live on the canonical labeling; only use them
            // when the input already is canonical.
            let canonical = shape_canonical_graph(&g, &tag);
            if canonical.edges() == g.edges() {
                let f = elimtrees::verification::forest_from_parents(g.n(), &prefixed(key));
                if let Ok(s) = encode(tag.kind, &f) {
                    return s;
                }
            }
        }
        join_nums(key)
    };
    let path_keys: Option<Vec<Vec<usize>>> = if highlight && g.is_chordal() {
        let pg = PeoGraph::from_chordal(g.clone())?;
        let mut gen = Generator::new(&pg);
        let mut keys = Vec::new();
        while let Some(f) = gen.next_forest() {
            // Keys in the flip graph refer to the input labeling.
            keys.push(pg.translate_parents(&f.key()));
        }
        Some(keys)
    } else {
        None
    };
    let dot = fg.to_dot(label, path_keys.as_deref());
    match dot_out {
        Some(path) => std::fs::write(path, dot)?,
        None => print!("{dot}"),
    }
    Ok(0)
}

fn prefixed(key: &[usize]) -> Vec<usize> {
    let mut parent = vec![0usize];
    parent.extend_from_slice(key);
    parent
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<u8> {
    println!("family n sigma forests steps max_ops mean_ops ns_per_forest");
    if let Some(file) = &args.file {
        let g = load_graph(file)?;
        let pg = certify(g)?;
        bench_one("file", pg.n(), &pg, args.limit);
        return Ok(0);
    }
    let family = args.family.unwrap_or(Family::RandomTree);
    for &n in &args.sizes {
        let g = match family {
            Family::Complete => families::complete(n),
            Family::Path => families::path(n),
            Family::Star => families::star(n),
            Family::RandomTree => families::random_tree(n, args.seed),
            Family::RandomChordal => {
                families::random_ktree(n, 3.min(n.saturating_sub(1)).max(1), args.seed)
            }
        };
        let name = match family {
            Family::Complete => "complete",
            Family::Path => "path",
            Family::Star => "star",
            Family::RandomTree => "random-tree",
            Family::RandomChordal => "random-chordal",
        };
        let pg = PeoGraph::from_chordal(g)?;
        bench_one(name, n, &pg, args.limit);
    }
    Ok(0)
}

fn bench_one(name: &str, n: usize, pg: &PeoGraph, limit: Option<u64>) {
    let mut gen = Generator::new(pg);
    let start = Instant::now();
    let mut forests = 0u64;
    while gen.next_forest().is_some() {
        forests += 1;
        if limit.is_some_and(|l| forests >= l) {
            break;
        }
    }
    let elapsed = start.elapsed().max(Duration::from_nanos(1));
    let stats = gen.stats();
    let mean = if stats.steps == 0 {
        0.0
    } else {
        stats.total_ops as f64 / stats.steps as f64
    };
    println!(
        "{name} {n} {} {forests} {} {} {mean:.2} {}",
        pg.sigma_star(),
        stats.steps,
        stats.max_step_ops,
        elapsed.as_nanos() as u64 / forests.max(1),
    );
}
