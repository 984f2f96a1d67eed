use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use polycurv::dot::{export_dot, DotLabels};
use polycurv::families::FamilySpec;
use polycurv::planar_code::{looks_like_planar_code, parse_planar_code, write_planar_code};
use polycurv::report::{open_output, write_curvature_reports, CurvatureReport, Format, RecordWriter};
use polycurv::scan::{scan_corpus, Predicate, ScanOptions};
use polycurv::skeleton::{faces_from_rotation, planar_dual, SkeletonDoc, TwoSkeleton};
use polycurv::tube_spectral::verify_tube;
use polycurv::{forman_profile, resistance_profile};

#[derive(Parser)]
#[command(name = "polycurv", version, about = "Forman and resistance curvature of polytope skeletons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curvature profiles for a skeleton JSON file or every graph of a planar_code file.
    Curv(CurvArgs),
    /// Scan planar_code corpora for positive graphs.
    Scan(ScanArgs),
    /// Emit a generated skeleton as JSON.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Planar dual of a 3-polytope skeleton.
    Dual {
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// Check tube closed forms against the numeric solver.
    TubeVerify {
        #[arg(long, default_value_t = 50)]
        k_max: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Graphviz export.
    Dot {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DotLabels::Forman)]
        label: DotLabels,
    },
}

#[derive(Args)]
struct CurvArgs {
    #[arg(long, default_value = "-")]
    input: PathBuf,
    #[arg(long)]
    forman: bool,
    #[arg(long)]
    resistance: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Predicate::FormanPositive)]
    predicate: Predicate,
    #[arg(long)]
    jobs: Option<usize>,
    /// Per-graph records; omitted means summary only.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the accepted graphs here as planar_code.
    #[arg(long)]
    positives: Option<PathBuf>,
    #[arg(long, default_value_t = 4096)]
    batch: usize,
}

#[derive(Subcommand)]
enum GenFamily {
    Simplex {
        #[arg(long)]
        dim: usize,
    },
    Hypercube {
        #[arg(long)]
        dim: usize,
    },
    Polygon {
        #[arg(long)]
        n: usize,
    },
    Prism {
        #[arg(long)]
        n: usize,
    },
    Pyramid {
        #[arg(long)]
        n: usize,
    },
    Cupola,
    Tube {
        #[arg(long)]
        k: usize,
    },
    DeltaExpand {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        io::stdin().lock().read_to_end(&mut bytes).context("reading stdin")?;
    } else {
        bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(bytes)
}

/// Loads skeleton JSON or every graph of a planar_code stream.
fn load_skeletons(path: &Path) -> Result<Vec<TwoSkeleton>> {
    let bytes = read_input(path)?;
    if looks_like_planar_code(&bytes) {
        parse_planar_code(&bytes[..])
            .enumerate()
            .map(|(i, rot)| {
                let rot = rot.context("parse_planar_code")?;
                faces_from_rotation(&rot).with_context(|| format!("faces_from_rotation: graph {i}"))
            })
            .collect()
    } else {
        let doc: SkeletonDoc = serde_json::from_slice(&bytes).context("parsing skeleton JSON")?;
        Ok(vec![doc.to_skeleton().context("building skeleton")?])
    }
}

fn load_one(path: &Path) -> Result<TwoSkeleton> {
    let mut all = load_skeletons(path)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        n => bail!("expected one skeleton in {}, found {n}", path.display()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn curv(args: CurvArgs) -> Result<()> {
    let (forman, resistance) = match (args.forman, args.resistance) {
        (false, false) => (true, true),
        flags => flags,
    };
    let mut reports = Vec::new();
    for (i, sk) in load_skeletons(&args.input)?.iter().enumerate() {
        let fp = forman.then(|| forman_profile(sk));
        let rp = if resistance {
            Some(resistance_profile(sk.graph()).with_context(|| format!("resistance_profile: graph {i}"))?)
        } else {
            None
        };
        reports.push(CurvatureReport::new(i, sk, fp.as_ref(), rp.as_ref()));
    }
    write_curvature_reports(open_output(&args.out)?, &reports, args.format)?;
    Ok(())
}

fn scan(args: ScanArgs) -> Result<()> {
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let sources = args
        .input
        .iter()
        .map(|p| -> Result<Box<dyn BufRead>> {
            if p.as_os_str() == "-" {
                return Ok(Box::new(BufReader::new(io::stdin())));
            }
            let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            Ok(Box::new(BufReader::with_capacity(1 << 20, f)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut writer = match &args.out {
        Some(path) => Some(RecordWriter::new(open_output(path)?, args.format)?),
        None => None,
    };
    let opts = ScanOptions { predicate: args.predicate, jobs, batch: args.batch };
    let out = scan_corpus(sources, opts, |r| {
        if let Some(w) = writer.as_mut() {
            w.write(r)?;
        }
        Ok(())
    })
    .context("scan_corpus")?;
    if let Some(w) = writer {
        w.finish()?;
    }
    if let Some(path) = &args.positives {
        let file = open_output(path)?;
        write_planar_code(file, out.positives.iter().map(|(_, rot)| rot), true)?;
    }
    let to_stdout = args.out.as_deref().is_none_or(|p| p.as_os_str() != "-")
        && args.positives.as_deref().is_none_or(|p| p.as_os_str() != "-");
    let lines = out.summary.lines().join("\n");
    if to_stdout {
        println!("{lines}");
    } else {
        eprintln!("{lines}");
    }
    Ok(())
}

fn gen(family: GenFamily) -> Result<()> {
    let spec = match family {
        GenFamily::Simplex { dim } => FamilySpec::Simplex { dim },
        GenFamily::Hypercube { dim } => FamilySpec::Hypercube { dim },
        GenFamily::Polygon { n } => FamilySpec::Polygon { n },
        GenFamily::Prism { n } => FamilySpec::Prism { n },
        GenFamily::Pyramid { n } => FamilySpec::Pyramid { n },
        GenFamily::Cupola => FamilySpec::SquareCupola,
        GenFamily::Tube { k } => FamilySpec::Tube { k },
        GenFamily::DeltaExpand { input, vertex } => {
            let base = load_one(&input)?;
            let sk = polycurv::families::delta_expansion(&base, vertex)
                .with_context(|| format!("delta_expansion at vertex {vertex}"))?;
            return print_json(&SkeletonDoc::from_skeleton(&sk));
        }
    };
    let generated = spec.generate().with_context(|| format!("generating {spec:?}"))?;
    print_json(&SkeletonDoc::from_skeleton(&generated.skeleton))
}

fn tube_verify(k_max: usize, tol: f64) -> Result<()> {
    let mut failed = Vec::new();
    println!("k,resistance_error,curvature_error,reconstruction_error,min_curvature,cap_curvature,status");
    for k in 1..=k_max {
        let c = verify_tube(k).with_context(|| format!("verify_tube: k = {k}"))?;
        let ok = c.passes(tol);
        println!(
            "{k},{:.3e},{:.3e},{:.3e},{:.6e},{:.12},{}",
            c.resistance_error,
            c.curvature_error,
            c.reconstruction_error,
            c.min_curvature,
            c.cap_curvature,
            if ok { "ok" } else { "FAIL" }
        );
        if !ok {
            failed.push(k);
        }
    }
    if !failed.is_empty() {
        bail!("tube-verify: closed form and numeric values disagree for k = {failed:?} (tol {tol:e})");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Curv(args) => curv(args),
        Command::Scan(args) => scan(args),
        Command::Gen { family } => gen(family),
        Command::Dual { input } => {
            let sk = load_one(&input)?;
            let dual = planar_dual(&sk).context("planar_dual")?;
            print_json(&SkeletonDoc::from_skeleton(&dual.skeleton))
        }
        Command::TubeVerify { k_max, tol } => tube_verify(k_max, tol),
        Command::Dot { input, label } => {
            let sk = load_one(&input)?;
            let doc = export_dot(&sk, label).context("export_dot")?;
            io::stdout().lock().write_all(doc.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polycurv: {e:#}");
            ExitCode::FAILURE
        }
    }
}
