//! Command-line driver: polytope inspection, single-polytope verification,
//! and census-scale batch runs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use lgtoric::census::{
    batch_verify, emit_report, emit_simple, parse_any, BatchOptions, CensusEntry, EntryOutcome,
    ReportFormat,
};
use lgtoric::diamond::{verify_mirror, VerificationRecord};
use lgtoric::hodge;
use lgtoric::sphere::{boundary_complex, sphere_check};
use lgtoric::{convex_hull, is_reflexive, DualPair, LatticePolytope, Side};

#[derive(Parser)]
#[command(
    name = "lgtoric",
    version,
    about = "Hodge numbers of Landau-Ginzburg mirrors of toric threefolds, from reflexive polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ReportFormatArg {
    #[default]
    Csv,
    Json,
}

impl From<ReportFormatArg> for ReportFormat {
    fn from(value: ReportFormatArg) -> Self {
        match value {
            ReportFormatArg::Csv => ReportFormat::Csv,
            ReportFormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Point counts, reflexivity, and the per-face table of each polytope.
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Emit the polar dual of each polytope in the simple JSON format.
    Dual { file: PathBuf },
    /// The numerical invariants feeding both Hodge diamonds.
    Hodge { file: PathBuf },
    /// Render both Hodge diamonds.
    Diamond {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Full verification of one file; exit code 0 iff every entry passes.
    Verify { file: PathBuf },
    /// Homology certificate for the boundary triangulation of the dual.
    SphereCheck { file: PathBuf },
    /// Batch verification of a census file with a CSV/JSON report.
    Batch {
        census_file: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormatArg,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    // Die quietly when the reader side of a pipe goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Info { file, format } => cmd_info(&file, format),
        Command::Dual { file } => cmd_dual(&file),
        Command::Hodge { file } => cmd_hodge(&file),
        Command::Diamond { file, format } => cmd_diamond(&file, format),
        Command::Verify { file } => cmd_verify(&file),
        Command::SphereCheck { file } => cmd_sphere_check(&file),
        Command::Batch {
            census_file,
            out,
            format,
            jobs,
        } => cmd_batch(&census_file, out.as_deref(), format.into(), jobs),
    }
}

fn read_entries(path: &Path) -> Result<Vec<CensusEntry>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let entries = parse_any(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    if entries.is_empty() {
        bail!("{} contains no polytopes", path.display());
    }
    Ok(entries)
}

fn entry_label(entry: &CensusEntry) -> String {
    match &entry.comment {
        Some(c) => format!("#{} ({c})", entry.id),
        None => format!("#{}", entry.id),
    }
}

fn build_polytope(entry: &CensusEntry) -> Result<LatticePolytope> {
    convex_hull(&entry.vertices)
        .with_context(|| format!("entry {}: hull construction failed", entry.id))
}

fn cmd_info(path: &Path, format: OutputFormat) -> Result<ExitCode> {
    let entries = read_entries(path)?;
    let mut json_out = Vec::new();
    for entry in &entries {
        let poly = build_polytope(entry)?;
        let reflexive = is_reflexive(&poly);
        match format {
            OutputFormat::Text => {
                println!("polytope {}", entry_label(entry));
                println!(
                    "  vertices: {}  facets: {}  lattice points: {}  interior points: {}",
                    poly.vertices().len(),
                    poly.facets().len(),
                    poly.point_count(),
                    poly.interior_lattice_points()?.len()
                );
                println!("  reflexive: {reflexive}");
                if reflexive {
                    let pair = DualPair::new(poly)?;
                    let faces = pair.faces(Side::Primal);
                    println!(
                        "  face counts: {} vertices, {} edges, {} facets (Euler {})",
                        faces.vertices().len(),
                        faces.edges().len(),
                        faces.facets().len(),
                        faces.euler_characteristic()
                    );
                    println!("  faces (dim, vertex ids, l, l*):");
                    for face in faces.all_faces() {
                        println!(
                            "    dim {}  {:?}  l = {}  l* = {}",
                            face.dim(),
                            face.vertex_ids(),
                            face.ell(),
                            face.ell_star()
                        );
                    }
                }
            }
            OutputFormat::Json => {
                let faces_json = if reflexive {
                    let pair = DualPair::new(poly.clone())?;
                    let faces = pair.faces(Side::Primal);
                    Some(
                        faces
                            .all_faces()
                            .map(|f| {
                                serde_json::json!({
                                    "dim": f.dim(),
                                    "vertex_ids": f.vertex_ids(),
                                    "l": f.ell(),
                                    "l_star": f.ell_star(),
                                })
                            })
                            .collect::<Vec<_>>(),
                    )
                } else {
                    None
                };
                json_out.push(serde_json::json!({
                    "id": entry.id,
                    "name": entry.comment,
                    "vertices": poly.vertices().iter().map(|v| v.coords()).collect::<Vec<_>>(),
                    "facet_count": poly.facets().len(),
                    "lattice_points": poly.point_count(),
                    "reflexive": reflexive,
                    "faces": faces_json,
                }));
            }
        }
    }
    if format == OutputFormat::Json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dual(path: &Path) -> Result<ExitCode> {
    let entries = read_entries(path)?;
    let mut duals = Vec::new();
    for entry in &entries {
        let poly = build_polytope(entry)?;
        let dual = lgtoric::polar_dual(&poly)
            .with_context(|| format!("entry {}: polar dual failed", entry.id))?;
        duals.push(dual);
    }
    print!("{}", emit_simple(&duals.iter().collect::<Vec<_>>()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_hodge(path: &Path) -> Result<ExitCode> {
    let entries = read_entries(path)?;
    for entry in &entries {
        let poly = build_polytope(entry)?;
        let pair = DualPair::new(poly)
            .with_context(|| format!("entry {}: not a reflexive polytope", entry.id))?;
        let data = hodge::toric_hodge_data(&pair, Side::Primal);
        println!("polytope {}", entry_label(entry));
        println!(
            "  l(D) = {}  l(D*) = {}",
            data.ell_delta, data.ell_delta_dual
        );
        println!(
            "  h11_x = {}  h21_z = {}  h11_z = {}  pic_toric = {}  ph = {}  k = {}",
            data.h11_x, data.h21_z, data.h11_z, data.pic_toric_fiber, data.ph, data.k
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_diamond(path: &Path, format: OutputFormat) -> Result<ExitCode> {
    let entries = read_entries(path)?;
    let mut json_out = Vec::new();
    for entry in &entries {
        let poly = build_polytope(entry)?;
        let pair = DualPair::new(poly)
            .with_context(|| format!("entry {}: not a reflexive polytope", entry.id))?;
        let rec = verify_mirror(&pair, entry.id)?;
        match format {
            OutputFormat::Text => {
                println!("polytope {}", entry_label(entry));
                print!("{}", rec.fano_diamond);
                match &rec.lg_diamond {
                    Some(lg) => print!("{lg}"),
                    None => println!("mirror diamond undefined: ph = {} < 2", rec.data.ph),
                }
            }
            OutputFormat::Json => {
                json_out.push(serde_json::json!({
                    "id": entry.id,
                    "name": entry.comment,
                    "h_pq": rec.fano_diamond.entries(),
                    "f_pq": rec.lg_diamond.as_ref().map(|d| *d.entries()),
                }));
            }
        }
    }
    if format == OutputFormat::Json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn print_verification(rec: &VerificationRecord, label: &str) {
    println!(
        "polytope {label}: {}",
        if rec.overall_pass() { "PASS" } else { "FAIL" }
    );
    println!(
        "  mirror pairing h^(p,q) = f^(3-q,p): {} of 16 entries match",
        rec.mirror_entries.iter().filter(|e| e.passes()).count()
    );
    for entry in &rec.mirror_entries {
        if !entry.passes() {
            println!(
                "    mismatch at (p,q) = ({},{}): h = {}, f = {}",
                entry.p, entry.q, entry.fano, entry.lg
            );
        }
    }
    for check in &rec.identities {
        println!(
            "  {:<28} {}  (lhs = {}, rhs = {})",
            check.name,
            if check.passes() { "ok" } else { "FAIL" },
            check.lhs,
            check.rhs
        );
    }
    println!(
        "  sphere: betti = ({}, {}, {})  torsion-free = {}  euler = {}  unimodular = {}",
        rec.sphere.b0,
        rec.sphere.b1,
        rec.sphere.b2,
        rec.sphere.torsion_free,
        rec.sphere.euler,
        rec.sphere.all_unimodular
    );
}

fn cmd_verify(path: &Path) -> Result<ExitCode> {
    let entries = read_entries(path)?;
    let mut all_pass = true;
    for entry in &entries {
        let poly = build_polytope(entry)?;
        if !is_reflexive(&poly) {
            println!(
                "polytope {}: SKIP (not reflexive; nothing to verify)",
                entry_label(entry)
            );
            all_pass = false;
            continue;
        }
        let pair = DualPair::new(poly)?;
        let rec = verify_mirror(&pair, entry.id)?;
        print_verification(&rec, &entry_label(entry));
        all_pass &= rec.overall_pass();
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_sphere_check(path: &Path) -> Result<ExitCode> {
    let entries = read_entries(path)?;
    for entry in &entries {
        let poly = build_polytope(entry)?;
        let pair = DualPair::new(poly)
            .with_context(|| format!("entry {}: not a reflexive polytope", entry.id))?;
        let dual = pair.polytope(Side::Dual);
        let surface = boundary_complex(dual, pair.faces(Side::Dual))?;
        let check = sphere_check(&surface)?;
        println!("polytope {} (dual boundary complex)", entry_label(entry));
        println!(
            "  vertices: {}  edges: {}  triangles: {}  per-facet: {:?}",
            check.vertices,
            check.edges,
            check.triangles,
            surface.facet_triangle_counts()
        );
        println!(
            "  betti = ({}, {}, {})  euler = {}  torsion-free = {}  unimodular = {}  sphere = {}",
            check.b0,
            check.b1,
            check.b2,
            check.euler,
            check.torsion_free,
            check.all_unimodular,
            check.is_sphere()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_batch(
    census: &Path,
    out: Option<&Path>,
    format: ReportFormat,
    jobs: Option<usize>,
) -> Result<ExitCode> {
    let entries = read_entries(census)?;
    let started = std::time::Instant::now();
    let result = batch_verify(&entries, BatchOptions { jobs });
    let elapsed = started.elapsed();

    let report = emit_report(&result.records(), format);
    match out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            file.write_all(&report)?;
            println!("report written to {}", path.display());
        }
        None => {
            std::io::stdout().write_all(&report)?;
        }
    }

    for outcome in &result.outcomes {
        if let EntryOutcome::Skipped { id, reason } = outcome {
            println!("entry {id}: skipped ({reason})");
        }
    }
    println!("{}", result.summary);
    println!("elapsed: {:.3}s", elapsed.as_secs_f64());

    Ok(if result.summary.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
