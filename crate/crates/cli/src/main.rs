use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cusp_census::census::render_census_records;
use cusp_census::export::{census_document, invariants_document, read_complexes, render_pretty};
use cusp_census::hypervol::{fixed12, v3, v8};
use cusp_census::invariants::{adams_lower_bound, guts_volume_bound};
use cusp_census::verify::verify_paper;
use cusp_census::{canonical_signature, enumerate, CensusQuery, Error, GluingComplex, InvariantRecord, PolyhedronKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cusp-census",
    version,
    about = "Census of cusped hyperbolic 3-manifolds glued from ideal regular polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate accepted gluings up to isomorphism.
    Census(CensusArgs),
    /// Invariants of the complexes in a gluing file or structured export.
    Invariants(InputArgs),
    /// Canonical signatures of the complexes in a file.
    Signature(SignatureArgs),
    /// Check the two-octahedron, four-cusp classification.
    VerifyPaper(VerifyArgs),
    /// Volume constants and lower bounds.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Polyhedron {
    Tet,
    Oct,
}

impl From<Polyhedron> for PolyhedronKind {
    fn from(p: Polyhedron) -> Self {
        match p {
            Polyhedron::Tet => PolyhedronKind::Tetrahedron,
            Polyhedron::Oct => PolyhedronKind::Octahedron,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Csv,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1024))]
    jobs: Option<u32>,
}

impl Jobs {
    fn get(&self) -> usize {
        match self.jobs {
            Some(j) => j as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    polyhedron: Polyhedron,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    count: u32,
    /// Keep only classes with this many cusps.
    #[arg(long)]
    cusps: Option<usize>,
    #[command(flatten)]
    jobs: Jobs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SignatureArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Also check the signature against this many random relabelings.
    #[arg(long, default_value_t = 0)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    jobs: Jobs,
    /// Write the structured report to this file.
    #[arg(long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Cusp count for the n·V3 bound.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    cusps: Option<u64>,
    /// Euler characteristic (≤ 0) for the (V8/2)·|chi| bound.
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            Error::NotAccepted(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_input(path: &Path) -> std::result::Result<Vec<GluingComplex>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    read_complexes(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn census(args: &CensusArgs) -> Outcome {
    let mut query = CensusQuery::new(args.polyhedron.into(), args.count as usize);
    if let Some(c) = args.cusps {
        query = query.with_cusps(c);
    }
    let classes = enumerate(&query, args.jobs.get())?;
    let text = match args.output.format {
        Format::Text => render_census_records(&classes),
        Format::Structured => render_pretty(&census_document(&query, &classes)?),
        Format::Csv => {
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| {
                    vec![
                        c.signature.to_string(),
                        c.report.cusp_count.to_string(),
                        cusp_census::gluing::render_distribution(&c.report.cusp_vertex_distribution),
                    ]
                })
                .collect();
            csv_text(&["signature", "cusp_count", "distribution"], &rows)
        }
    };
    emit(&args.output.out, &text)
}

fn invariants(args: &InputArgs) -> Outcome {
    let complexes = read_input(&args.input)?;
    let text = match args.output.format {
        Format::Structured => render_pretty(&invariants_document(&complexes)?),
        format => {
            let records = complexes.iter().map(InvariantRecord::compute).collect::<Result<Vec<_>, _>>()?;
            if format == Format::Text {
                records.iter().map(|r| r.render_row() + "\n").collect()
            } else {
                let rows: Vec<Vec<String>> = records
                    .iter()
                    .map(|r| {
                        vec![
                            r.signature.to_string(),
                            r.cusp_count.to_string(),
                            r.distribution_text(),
                            r.h1.to_string(),
                            r.volume_text(),
                        ]
                    })
                    .collect();
                csv_text(&["signature", "cusp_count", "distribution", "h1", "volume"], &rows)
            }
        }
    };
    emit(&args.output.out, &text)
}

fn random_relabel(complex: &GluingComplex, rng: &mut ChaCha8Rng) -> GluingComplex {
    let mut perm: Vec<usize> = (0..complex.count()).collect();
    perm.shuffle(rng);
    let group = complex.template().rotations.len();
    let rotations: Vec<usize> = (0..complex.count()).map(|_| rng.gen_range(0..group)).collect();
    complex.relabel(&perm, &rotations)
}

fn signature(args: &SignatureArgs) -> Outcome {
    let complexes = read_input(&args.io.input)?;
    let signatures: Vec<String> = complexes.iter().map(|c| canonical_signature(c).to_string()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for (c, sig) in complexes.iter().zip(&signatures) {
        for trial in 0..args.trials {
            let relabeled = canonical_signature(&random_relabel(c, &mut rng));
            if relabeled.as_str() != sig {
                return Err(Failure::Verification(format!(
                    "trial {trial} (seed {}): {sig} became {relabeled}",
                    args.seed
                )));
            }
        }
    }
    let text = match args.io.output.format {
        Format::Text => signatures.iter().map(|s| format!("{s}\n")).collect(),
        Format::Structured => render_pretty(&serde_json::json!({ "signatures": signatures })),
        Format::Csv => csv_text(&["signature"], &signatures.iter().map(|s| vec![s.clone()]).collect::<Vec<_>>()),
    };
    emit(&args.io.output.out, &text)
}

fn verify(args: &VerifyArgs) -> Outcome {
    let report = verify_paper(args.jobs.get())?;
    print!("{}", report.render_text());
    if let Some(path) = &args.out {
        fs::write(path, report.render_json()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if report.overall {
        Ok(())
    } else {
        Err(Failure::Verification("classification check failed".into()))
    }
}

fn bounds(args: &BoundsArgs) -> Outcome {
    if let Some(chi) = args.chi {
        if chi > 0 {
            return Err(Failure::Usage(format!("--chi must be non-positive, got {chi}")));
        }
    }
    let mut rows = vec![
        ("V3".to_string(), v3()),
        ("V8".to_string(), v8()),
        ("2V3".to_string(), 2.0 * v3()),
        ("2V8".to_string(), 2.0 * v8()),
    ];
    if let Some(n) = args.cusps {
        rows.push((format!("nV3 (n={n})"), adams_lower_bound(n as usize)));
    }
    if let Some(chi) = args.chi {
        rows.push((format!("(V8/2)|chi| (chi={chi})"), guts_volume_bound(chi)));
    }
    let text = match args.format {
        Format::Text => rows.iter().map(|(k, v)| format!("{k} = {}\n", fixed12(*v))).collect(),
        Format::Structured => {
            let map: serde_json::Map<String, serde_json::Value> =
                rows.iter().map(|(k, v)| (k.clone(), fixed12(*v).into())).collect();
            render_pretty(&serde_json::Value::Object(map))
        }
        Format::Csv => csv_text(
            &["quantity", "value"],
            &rows.iter().map(|(k, v)| vec![k.clone(), fixed12(*v)]).collect::<Vec<_>>(),
        ),
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Census(a) => census(a),
        Command::Invariants(a) => invariants(a),
        Command::Signature(a) => signature(a),
        Command::VerifyPaper(a) => verify(a),
        Command::Bounds(a) => bounds(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFICATION)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(EXIT_RESOURCE)
        }
    }
}
