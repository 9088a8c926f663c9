//! Command-line front end: catalog listing, builds with mesh/report export,
//! analysis, and the uniform-vertex search.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{self, UniformSearch};
use crate::catalog;
use crate::group::Window;
use crate::mesh;
use crate::report::AnalysisReport;
use crate::wythoff::{self, IndexSet, WythoffError};
use crate::Vec3;

/// Exit codes: 0 success, 1 usage, 2 no admissible vertex, 3 validation
/// failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_VERTEX: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "wythoffian",
    about = "Construct and analyze Wythoffians of regular skeletal polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Catalog name, e.g. "{6,4}_3" or "{4,4}#{inf}"
    #[arg(long)]
    poly: String,
    /// Index set digits, e.g. 0, 02, 012
    #[arg(long)]
    iset: String,
    /// Component scale for blend entries (each blend is a one-parameter
    /// family; the catalog ships scale 1)
    #[arg(long)]
    blend_scale: Option<f64>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    target: Target,
    /// Initial-vertex coordinates in the admissible hull, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    param: Option<Vec<f64>>,
    /// Window radius in model units
    #[arg(long, default_value_t = 4.0)]
    window: f64,
    /// OFF output path (open faces go to a sibling .paths file)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report output path
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog entries with types and mirror vectors
    List,
    /// Build a Wythoffian and export mesh and/or report
    Build(BuildArgs),
    /// Build and report without mesh export
    Analyze(BuildArgs),
    /// Search for an initial vertex making the Wythoffian uniform
    SearchUniform {
        #[command(flatten)]
        target: Target,
    },
}

/// Run the command line; returns the process exit code.
pub fn cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version through the error path with status 0
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::List => list(),
        Command::Build(args) => build_cmd(args, true),
        Command::Analyze(args) => build_cmd(args, false),
        Command::SearchUniform { target } => search_uniform(target),
    }
}

fn list() -> i32 {
    println!("{:<18} {:<10} {:<6} mirror", "name", "type", "finite");
    for spec in catalog::entries() {
        println!(
            "{:<18} {:<10} {:<6} ({},{},{})",
            spec.name(),
            spec.schlafli_type(),
            spec.finite,
            spec.mirror_vector[0],
            spec.mirror_vector[1],
            spec.mirror_vector[2]
        );
    }
    EXIT_OK
}

fn parse_target(target: &Target) -> Result<(catalog::PolyhedronSpec, IndexSet), i32> {
    let spec = match catalog::lookup_scaled(&target.poly, target.blend_scale) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_USAGE);
        }
    };
    let iset = match IndexSet::parse(&target.iset) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(EXIT_USAGE);
        }
    };
    Ok((spec, iset))
}

fn wythoff_exit(e: &WythoffError) -> i32 {
    match e {
        WythoffError::NoAdmissibleVertex => EXIT_NO_VERTEX,
        WythoffError::ValidationFailed(_) => EXIT_VALIDATION,
        WythoffError::PlacementViolation(_) | WythoffError::SeedOnMirror => EXIT_NO_VERTEX,
        _ => EXIT_USAGE,
    }
}

fn build_cmd(args: BuildArgs, export_mesh: bool) -> i32 {
    let (spec, iset) = match parse_target(&args.target) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let params = match &args.param {
        Some(p) => p.clone(),
        None => match wythoff::default_params(&spec, iset) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                if let Some(path) = &args.report {
                    let report = AnalysisReport::unrealizable(&spec, iset);
                    if let Err(io) = crate::report::export_report(&report, path) {
                        eprintln!("error: {io}");
                    }
                }
                return wythoff_exit(&e);
            }
        },
    };
    let window = Window::new(Vec3::zero(), args.window);
    let built = match wythoff::build(&spec, iset, &params, window) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, WythoffError::NoAdmissibleVertex) {
                if let Some(path) = &args.report {
                    let report = AnalysisReport::unrealizable(&spec, iset);
                    if let Err(io) = crate::report::export_report(&report, path) {
                        eprintln!("error: {io}");
                    }
                }
            }
            return wythoff_exit(&e);
        }
    };
    let report = match AnalysisReport::from_build(&built, &params) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VALIDATION;
        }
    };
    println!(
        "{} P^{}: V={} E={} F={} symbol={} uniform={}",
        report.name,
        report.iset,
        report.counts.v,
        report.counts.e,
        report.counts.f_by_type.values().sum::<usize>(),
        report.vertex_symbol,
        report.uniform
    );
    if export_mesh {
        if let Some(path) = &args.out {
            match mesh::export_off(&built, path) {
                Ok(doc) => {
                    println!(
                        "wrote {} ({} vertices, {} polygons, {} open paths)",
                        path.display(),
                        doc.vertices.len(),
                        doc.polygons.len(),
                        doc.polylines.len()
                    );
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_VALIDATION;
                }
            }
        }
    }
    if let Some(path) = &args.report {
        if let Err(e) = crate::report::export_report(&report, path) {
            eprintln!("error: {e}");
            return EXIT_VALIDATION;
        }
        println!("wrote {}", path.display());
    }
    EXIT_OK
}

fn search_uniform(target: Target) -> i32 {
    let (spec, iset) = match parse_target(&target) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match analysis::find_uniform_vertex(&spec, iset) {
        Ok(UniformSearch::Uniform {
            params,
            vertex,
            spread,
            symbol,
        }) => {
            let rendered: Vec<String> = params.iter().map(|p| format!("{p:.12}")).collect();
            println!(
                "uniform: params [{}] vertex ({:.12}, {:.12}, {:.12}) spread {spread:.3e} symbol {}",
                rendered.join(", "),
                vertex.x,
                vertex.y,
                vertex.z,
                symbol.canonical
            );
            EXIT_OK
        }
        Ok(UniformSearch::NotUniformizable { best_spread }) => {
            println!("not uniformizable: best edge spread {best_spread:.3e}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            wythoff_exit(&e)
        }
    }
}
