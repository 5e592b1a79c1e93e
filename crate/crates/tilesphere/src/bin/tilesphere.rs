//! Command-line driver: vertex/AVC enumeration, classification, catalog
//! verification, realization, and JSON/SVG export.
//!
//! Exit codes: 0 success, 2 classification mismatch, 3 numeric anchor
//! failure, 4 search incomplete.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tilesphere::avc::{classify_remainders_opt, enumerate_avcs_opt, enumerate_vertex_types_opt, EnumOptions};
use tilesphere::catalog::{entry_by_id, entry_json, entry_svg, verify_all};
use tilesphere::search::{classify, SearchOptions};

const EXIT_MISMATCH: u8 = 2;
const EXIT_ANCHOR: u8 = 3;
const EXIT_INCOMPLETE: u8 = 4;

#[derive(Parser)]
#[command(name = "tilesphere", version, about = "Dihedral spherical tiling classifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// List admissible vertex types for one m.
    Vertices {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// List anglewise vertex combinations (AVCs) for one m.
    Avcs {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Exhaustively classify the tilings for one m.
    Classify {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 100)]
        max_tiles: u32,
        /// Restrict the model to one quadrilateral chirality.
        #[arg(long)]
        single_chirality: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Classify m = 3…M and match the results against the catalog.
    Verify {
        #[arg(long)]
        up_to: u32,
        #[arg(long)]
        single_chirality: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Metrically realize one catalog entry.
    Realize {
        #[arg(long)]
        id: String,
        /// Override the free β parameter (radians), where the entry has one.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Export a catalog entry (json|svg) or a classification (`classify:<m>`, json).
    Export {
        #[arg(long)]
        id: String,
        #[arg(long, value_enum)]
        format: OutFormat,
        #[arg(long)]
        out: String,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("TILESPHERE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match command {
        Command::Vertices { m, max_degree, format } => {
            let opts = EnumOptions { max_degree, ..EnumOptions::default() };
            let types = enumerate_vertex_types_opt(m, &opts);
            let slices = classify_remainders_opt(m, &opts);
            if format == OutFormat::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "m": m,
                        "types": types.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "beta2": slices.beta2.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "gamma2": slices.gamma2.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "betagamma": slices.betagamma.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("admissible vertex types for m = {m} (degree ≤ {max_degree}):");
                for v in &types {
                    println!("  {v}  (degree {})", v.degree());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Avcs { m, format } => {
            let avcs = enumerate_avcs_opt(m, &EnumOptions::default());
            if format == OutFormat::Json {
                let arr: Vec<_> = avcs
                    .iter()
                    .map(|avc| {
                        serde_json::json!({
                            "members": avc.members.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                            "free_parameters": avc.solution.num_params,
                            "solution_radians": avc.solution.radians().map(|(a, b, g)| vec![a, b, g]),
                        })
                    })
                    .collect();
                println!("{}", serde_json::json!({ "m": m, "avcs": arr }));
            } else {
                println!("{} AVCs for m = {m}:", avcs.len());
                for avc in &avcs {
                    let members: Vec<String> = avc.members.iter().map(|v| v.to_string()).collect();
                    let sol = match avc.solution.radians() {
                        Some((a, b, g)) => format!("α={a:.6} β={b:.6} γ={g:.6}"),
                        None => format!("{} free parameter(s)", avc.solution.num_params),
                    };
                    println!("  {{{}}}  {}", members.join(", "), sol);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { m, max_tiles, single_chirality, format } => {
            let opts = SearchOptions {
                max_tiles,
                allow_mirrored_quads: !single_chirality,
                ..SearchOptions::default()
            };
            let result = classify(m, &opts);
            if format == OutFormat::Json {
                println!("{}", classification_json(&result));
            } else {
                println!(
                    "m = {m}: {} tiling(s), search {}",
                    result.tilings.len(),
                    if result.complete { "complete" } else { "INCOMPLETE (budget hit)" }
                );
                for (code, t) in &result.tilings {
                    let realized: Vec<String> =
                        t.realized_vertex_types().iter().map(|v| v.to_string()).collect();
                    println!(
                        "  {} faces, vertices {{{}}}, code {}",
                        t.face_count(),
                        realized.join(", "),
                        code
                    );
                }
            }
            Ok(if result.complete { ExitCode::SUCCESS } else { ExitCode::from(EXIT_INCOMPLETE) })
        }
        Command::Verify { up_to, single_chirality, format } => {
            let opts = SearchOptions {
                allow_mirrored_quads: !single_chirality,
                ..SearchOptions::default()
            };
            let report = verify_all(up_to, &opts);
            if format == OutFormat::Json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for r in &report.per_m {
                    println!(
                        "m = {}: found {}, matched [{}], missing [{}], extra {}, {}",
                        r.m,
                        r.found,
                        r.matched.join(", "),
                        r.missing.join(", "),
                        r.extra,
                        if r.complete { "complete" } else { "INCOMPLETE" }
                    );
                    for f in &r.anchor_failures {
                        println!("  anchor failure: {f}");
                    }
                }
            }
            Ok(if !report.complete() {
                ExitCode::from(EXIT_INCOMPLETE)
            } else if !report.classification_ok() {
                ExitCode::from(EXIT_MISMATCH)
            } else if !report.anchors_ok() {
                ExitCode::from(EXIT_ANCHOR)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Realize { id, beta, format } => {
            let entry = entry_by_id(&id)?;
            let realization = match beta {
                Some(b) => entry.realize_with_beta(b),
                None => entry.realize(),
            };
            match realization {
                Ok(r) => {
                    if format == OutFormat::Json {
                        println!("{}", r.to_json());
                    } else {
                        println!(
                            "{id}: α={:.9} β={:.9} γ={:.9} x={:.9} y={:.9}",
                            r.alpha, r.beta, r.gamma, r.x, r.y
                        );
                        println!(
                            "  max vertex residual {:.3e}, Gauss–Bonnet residual {:.3e}{}{}",
                            r.max_vertex_residual(),
                            r.gauss_bonnet_residual,
                            if r.degenerate_xy { ", x = y (degenerate)" } else { "" },
                            if r.flat_quad { ", flat quadrilateral (y = 0)" } else { "" },
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("realization failed: {e}");
                    Ok(ExitCode::from(EXIT_ANCHOR))
                }
            }
        }
        Command::Export { id, format, out } => {
            let payload = if let Some(rest) = id.strip_prefix("classify:") {
                let m: u32 = rest.parse()?;
                if format == OutFormat::Svg {
                    return Err("classification export supports json only".into());
                }
                let result = classify(m, &SearchOptions::default());
                if !result.complete {
                    return Ok(ExitCode::from(EXIT_INCOMPLETE));
                }
                serde_json::to_string_pretty(&classification_json(&result))?
            } else {
                let entry = entry_by_id(&id)?;
                match format {
                    OutFormat::Svg => entry_svg(&entry.tiling),
                    _ => serde_json::to_string_pretty(&entry_json(&entry))?,
                }
            };
            let mut file = std::fs::File::create(&out)?;
            file.write_all(payload.as_bytes())?;
            println!("wrote {out}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn classification_json(result: &tilesphere::search::ClassificationResult) -> serde_json::Value {
    let tilings: Vec<_> = result
        .tilings
        .iter()
        .map(|(code, t)| {
            serde_json::json!({
                "canonical_code": code.to_string(),
                "realized_vertices": t
                    .realized_vertex_types()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>(),
                "tiling": t.to_json(),
            })
        })
        .collect();
    serde_json::json!({
        "m": result.m,
        "complete": result.complete,
        "tilings": tilings,
    })
}
