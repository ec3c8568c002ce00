//! Command-line front end: construction generators, drawing analysis, the
//! bounds table, the extremal search, geometric verification, and SVG
//! rendering.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use starsimple::bounds;
use starsimple::construct::{self, ConstructionKind};
use starsimple::drawing::{EEnd, HittingMode, SpiralMode, TwoEdgeDrawing};
use starsimple::geo;
use starsimple::render;
use starsimple::search::{Checkpoint, MaxSearch, SearchOptions};
use starsimple::ted;

#[derive(Parser)]
#[command(
    name = "starsimple",
    version,
    about = "Crossing patterns of two independent edges in star-simple drawings: \
             constructions, predicates, extremal search, bounds, geometric verification, rendering"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Twist,
    Spiral,
    Doubling,
    Enhanced,
}

impl From<Kind> for ConstructionKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Twist => ConstructionKind::Twist,
            Kind::Spiral => ConstructionKind::Spiral,
            Kind::Doubling => ConstructionKind::Doubling,
            Kind::Enhanced => ConstructionKind::Enhanced,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a construction and write it as a .ted file.
    Construct(ConstructArgs),
    /// Analyze a .ted drawing: faces, bags, lenses, forest, predicates.
    Analyze(AnalyzeArgs),
    /// Print the crossing-bound table.
    Bounds(BoundsArgs),
    /// Maximize crossings over admissible drawings for a hitting number.
    Search(SearchArgs),
    /// Verify a geometric .gdr drawing against the star-simple conditions.
    Verify(VerifyArgs),
    /// Render a drawing as a meander-style SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Doubling steps (doubling/enhanced families).
    #[arg(long, default_value_t = 2)]
    k: u64,
    /// Crossing count for twists.
    #[arg(long, default_value_t = 3)]
    m: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BoundsArgs {
    /// Hitting number: print c_upper(0..=k) with the lower bounds.
    #[arg(long)]
    k: Option<u64>,
    /// Vertex count: print the per-pair and total bounds.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    /// Node budget, e.g. 1e6.
    #[arg(long, default_value = "1e6")]
    budget: String,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Cap on the crossing count (defaults to the recurrence bound).
    #[arg(long)]
    n_cap: Option<usize>,
    /// Checkpoint file: resumed when present, written after every level.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Do not seed the search with the construction families.
    #[arg(long)]
    no_seed: bool,
    /// Require the hitting number to equal k instead of at most k.
    #[arg(long)]
    exact_k: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Write the full JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also test every two-sided cell for emptiness.
    #[arg(long)]
    all_lenses: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    /// Input .ted file; alternatively use --kind.
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long, default_value_t = 2)]
    k: u64,
    #[arg(long, default_value_t = 3)]
    m: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Construct(args) => construct_cmd(args),
        Cmd::Analyze(args) => analyze_cmd(args),
        Cmd::Bounds(args) => bounds_cmd(args),
        Cmd::Search(args) => search_cmd(args),
        Cmd::Verify(args) => verify_cmd(args),
        Cmd::Render(args) => render_cmd(args),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn generate(kind: Kind, k: u64, m: u64) -> Result<TwoEdgeDrawing, String> {
    let param = match kind {
        Kind::Twist => m,
        Kind::Doubling | Kind::Enhanced => k,
        Kind::Spiral => 0,
    };
    construct::recipe(kind.into(), param)
        .generate()
        .map_err(|e| e.to_string())
}

fn construct_cmd(args: ConstructArgs) -> Result<ExitCode, String> {
    let d = generate(args.kind, args.k, args.m)?;
    emit(args.out.as_ref(), &ted::serialize(&d))?;
    Ok(ExitCode::SUCCESS)
}

fn analyze_cmd(args: AnalyzeArgs) -> Result<ExitCode, String> {
    let text = fs::read_to_string(&args.file).map_err(|e| e.to_string())?;
    let d = ted::parse(&text).map_err(|e| e.to_string())?;
    let deadlock = d.is_deadlock();
    let mut value = json!({
        "n": d.n(),
        "faces": d.map().faces().len(),
        "face_keys": d.map().face_keys().map(|f| f.0).collect::<Vec<_>>(),
        "deadlock": deadlock,
        "canonical": d.canonical_form(),
        "points": d.points().iter().map(|f| f.0).collect::<Vec<_>>(),
    });
    if let Ok(outer) = d.outer() {
        value["outer"] = json!(outer.0);
        let bags = d.bags().map_err(|e| e.to_string())?;
        let forest = d.laminar_forest().map_err(|e| e.to_string())?;
        let lenses = d.lens_indices().map_err(|e| e.to_string())?;
        let (hitting, hit_ok) = d.check_hitting().map_err(|e| e.to_string())?;
        value["bags"] = json!(bags
            .iter()
            .map(|b| json!({
                "index": b.index,
                "lens": b.is_lens(),
                "parent": forest.parent[b.index as usize - 1],
                "interior_faces": b.interior.len(),
            }))
            .collect::<Vec<_>>());
        value["lenses"] = json!(lenses);
        value["hitting_number"] = json!(hitting);
        value["all_lenses_hit"] = json!(hit_ok);
        value["empty_lenses"] = json!(d
            .empty_lenses()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|f| f.0)
            .collect::<Vec<_>>());
        if !deadlock {
            let spiral = d.is_spiral(SpiralMode::Either).map_err(|e| e.to_string())?;
            value["spiral"] = json!(spiral);
            value["admissible_at_hitting_number"] = json!(d
                .admissible(hitting, HittingMode::AtMost)
                .map_err(|e| e.to_string())?);
            if !spiral {
                let routes: Vec<_> = lenses
                    .iter()
                    .map(|&l| {
                        d.minimal_curve(l, EEnd::End)
                            .map(|r| json!({"lens": l, "gaps": r.gaps}))
                            .map_err(|e| e.to_string())
                    })
                    .collect::<Result<_, _>>()?;
                value["minimal_curves"] = json!(routes);
            }
        }
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Format::Text => {
            println!("crossings:        {}", value["n"]);
            println!("faces:            {}", value["faces"]);
            println!("deadlock:         {}", value["deadlock"]);
            if let Some(l) = value.get("lenses") {
                println!("lenses:           {l}");
                println!("hitting number:   {}", value["hitting_number"]);
                println!("all lenses hit:   {}", value["all_lenses_hit"]);
            }
            if let Some(s) = value.get("spiral") {
                println!("spiral:           {s}");
                println!(
                    "admissible(k=h):  {}",
                    value["admissible_at_hitting_number"]
                );
            }
            println!("canonical:        {}", value["canonical"].as_str().unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bounds_cmd(args: BoundsArgs) -> Result<ExitCode, String> {
    let mut rows = Vec::new();
    if let Some(k) = args.k {
        for i in 0..=k {
            let (dl, el) = bounds::lower_bounds(i);
            rows.push(json!({
                "k": i,
                "c_upper": bounds::c_upper(i).to_string(),
                "doubling_lower": dl.to_string(),
                "enhanced_lower": el.map(|e| e.to_string()),
            }));
        }
    }
    let n_row = args.n.map(|n| {
        if n >= 4 {
            let (pair, total) = bounds::bounds_for_n(n);
            json!({"n": n, "pair_bound": pair.to_string(), "total_bound": total.to_string()})
        } else {
            json!({"n": n, "pair_bound": null, "total_bound": bounds::factorial(n).to_string()})
        }
    });
    match args.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"table": rows, "for_n": n_row})).unwrap()
            );
        }
        Format::Text => {
            if !rows.is_empty() {
                println!(
                    "{:>4} {:>20} {:>16} {:>16}",
                    "k", "c_upper", "2^k", "2^k+2^(k-2)"
                );
                for r in &rows {
                    println!(
                        "{:>4} {:>20} {:>16} {:>16}",
                        r["k"],
                        r["c_upper"].as_str().unwrap(),
                        r["doubling_lower"].as_str().unwrap(),
                        r["enhanced_lower"].as_str().unwrap_or("-")
                    );
                }
            }
            if let Some(r) = n_row {
                println!(
                    "n = {}: per-pair bound {}, total bound {}",
                    r["n"],
                    r["pair_bound"].as_str().unwrap_or("-"),
                    r["total_bound"].as_str().unwrap()
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_budget(text: &str) -> Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = text.parse().map_err(|_| format!("bad budget {text:?}"))?;
    if !v.is_finite() || v < 0.0 || v > u64::MAX as f64 {
        return Err(format!("bad budget {text:?}"));
    }
    Ok(v as u64)
}

fn search_cmd(args: SearchArgs) -> Result<ExitCode, String> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let opts = SearchOptions {
        budget: parse_budget(&args.budget)?,
        hitting: if args.exact_k {
            HittingMode::Exact
        } else {
            HittingMode::AtMost
        },
        seed_constructions: !args.no_seed,
        n_cap: args.n_cap,
    };
    let mut driver = match &args.checkpoint {
        Some(path) if path.exists() => {
            let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
            let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            if cp.k != args.k {
                return Err(format!("checkpoint is for k = {}, not {}", cp.k, args.k));
            }
            MaxSearch::from_checkpoint(cp, &opts).map_err(|e| e.to_string())?
        }
        _ => MaxSearch::new(args.k, &opts).map_err(|e| e.to_string())?,
    };
    loop {
        let more = driver.step_level().map_err(|e| e.to_string())?;
        if let Some(path) = &args.checkpoint {
            let cp = driver.checkpoint();
            fs::write(path, serde_json::to_string(&cp).unwrap()).map_err(|e| e.to_string())?;
        }
        if !more {
            break;
        }
    }
    let report = driver.report();
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Text => {
            println!(
                "k = {}: max crossings found = {} ({})",
                report.k,
                report.best,
                if report.exhaustive {
                    "exhaustive"
                } else {
                    "budget exhausted"
                }
            );
            if let Some(w) = &report.witness {
                println!("witness: {w}");
            }
            println!(
                "levels: {}/{}  nodes: {}  wall: {} ms",
                report.levels_completed, report.n_cap, report.nodes_expanded, report.wall_ms
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, String> {
    let text = fs::read_to_string(&args.file).map_err(|e| e.to_string())?;
    let gd = match geo::parse_geometric(&text) {
        Ok(gd) => gd,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let report = geo::verify(
        &gd,
        geo::VerifyOptions {
            all_lenses: args.all_lenses,
        },
    )
    .map_err(|e| e.to_string())?;
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report).unwrap())
            .map_err(|e| e.to_string())?;
    }
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Text => {
            println!(
                "n = {}, edges = {}, complete = {}",
                report.n, report.edge_count, report.complete
            );
            println!("star-simple:     {}", report.star_simple);
            println!(
                "total crossings: {} (bound {})",
                report.total_crossings, report.total_bound
            );
            if let Some(pb) = &report.pair_bound {
                let worst = report.pairs.iter().map(|p| p.crossings).max().unwrap_or(0);
                println!("max pair:        {worst} (bound {pb})");
            }
            for v in &report.violations {
                println!("VIOLATION: {v:?}");
            }
            println!(
                "verdict:         {}",
                if report.pass { "pass" } else { "violation" }
            );
        }
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn render_cmd(args: RenderArgs) -> Result<ExitCode, String> {
    let d = match (&args.file, args.kind) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
            ted::parse(&text).map_err(|e| e.to_string())?
        }
        (None, Some(kind)) => generate(kind, args.k, args.m)?,
        _ => return Err("pass either a .ted file or --kind".into()),
    };
    let svg = render::render_svg(&d).map_err(|e| e.to_string())?;
    emit(args.out.as_ref(), &svg)?;
    Ok(ExitCode::SUCCESS)
}
