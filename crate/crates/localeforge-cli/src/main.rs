//! Command-line frontend.
//!
//! Exit codes: 0 when every mathematical check passes, 1 when a check
//! fails (a genuine property violation), 2 on input errors such as
//! malformed JSON or an exceeded size cap.

use clap::{Parser, Subcommand};
use localeforge::config::Caps;
use localeforge::coproduct;
use localeforge::error::Error;
use localeforge::frame::{boolean_frame, chain_frame, Frame, FrameRef};
use localeforge::json;
use localeforge::maps::LocalicMap;
use localeforge::nucleus;
use localeforge::report::Report;
use localeforge::stone;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "localeforge",
    about = "Finite frames, nuclei, localic maps, and the subobject functor into compact Hausdorff locales"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the downset cap (also via LOCALEFORGE_MAXCAP).
    #[arg(long, global = true)]
    maxcap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Frame-level operations.
    Frame {
        #[command(subcommand)]
        command: FrameCommand,
    },
    /// Localic-map operations.
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Finite-set pretopos axioms.
    Pretopos {
        #[command(subcommand)]
        command: PretoposCommand,
    },
    /// The subobject functor into compact Hausdorff locales.
    Functor {
        #[command(subcommand)]
        command: FunctorCommand,
    },
    /// Emit canonical JSON for standard structures.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
}

#[derive(Subcommand)]
enum FrameCommand {
    /// Property report: compact, regular, normal, subfit, Hausdorff,
    /// Stone, Boolean.
    Check { file: PathBuf },
    /// List all nuclei with open/closed decomposition witnesses.
    Nuclei {
        file: PathBuf,
        /// Emit the nucleus lattice as a DOT Hasse diagram instead.
        #[arg(long)]
        dot: bool,
    },
    /// Closed-diagonal Hausdorff check.
    Hausdorff { file: PathBuf },
    /// Binary coproduct of two frames.
    Coproduct {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Report injection/surjection/dense/closed/proper for a localic map.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum PretoposCommand {
    /// Run the pretopos axiom sweep over all finite sets up to a size.
    Audit {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FunctorCommand {
    /// Verify the embedding checks over all objects and maps up to a size.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The n-element chain frame.
    Chain { n: usize },
    /// The Boolean frame with n atoms.
    Boolean { n: usize },
    /// The downset lattice of a poset file.
    DownsetsOf { file: PathBuf },
}

/// Writes to stdout, ignoring broken pipes so `localeforge ... | head`
/// exits quietly.
fn emit(text: impl AsRef<str>) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_ref().as_bytes());
}

fn emitln(text: impl AsRef<str>) {
    emit(text);
    emit("\n");
}

fn caps_with_override(maxcap: Option<usize>) -> Caps {
    let mut caps = Caps::from_env();
    if let Some(c) = maxcap {
        caps.downset_cap = c;
    }
    caps
}

/// Input-shaped errors exit 2, mathematical failures exit 1.
fn input_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn read_file(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn load_frame(path: &PathBuf, caps: &Caps) -> Result<FrameRef, ExitCode> {
    let text = read_file(path)?;
    json::parse_frame(&text, caps).map_err(|e| input_error(&e))
}

fn frame_check(frame: &FrameRef, caps: &Caps) -> Result<Report, Error> {
    let mut report = Report::new("frame property report");
    let (compact, method) = frame.check_compact(caps);
    let method = match method {
        localeforge::frame::CompactMethod::Literal => "literal directed-subset enumeration",
        localeforge::frame::CompactMethod::FiniteMaximum => {
            "finite-maximum argument (enumeration over cap)"
        }
    };
    report.merge("compact", method, &compact);
    report.merge("regular", "frame", &frame.check_regular());
    report.merge("normal", "frame", &frame.check_normal());
    report.merge("subfit", "frame", &frame.check_subfit()?);
    report.merge("hausdorff", "frame", &coproduct::check_hausdorff(frame, caps)?);
    let stone_v = localeforge::error::Verdict::from_bool(
        stone::is_stone(frame, caps)?,
        "phi is not an order isomorphism",
    );
    report.merge("stone", "frame", &stone_v);
    let boolean = localeforge::error::Verdict::from_bool(
        stone::center_is_onto(frame),
        "some element has no complement",
    );
    report.merge("boolean", "frame", &boolean);
    Ok(report)
}

fn run() -> Result<ExitCode, ExitCode> {
    let cli = Cli::parse();
    let caps = caps_with_override(cli.maxcap);
    match cli.command {
        Command::Frame { command } => match command {
            FrameCommand::Check { file } => {
                let frame = load_frame(&file, &caps)?;
                let report = frame_check(&frame, &caps).map_err(|e| input_error(&e))?;
                emit(report.to_text());
                Ok(exit_by_report(&report))
            }
            FrameCommand::Nuclei { file, dot } => {
                let frame = load_frame(&file, &caps)?;
                let (nx, nuclei) =
                    nucleus::generate_nx(&frame, &caps).map_err(|e| input_error(&e))?;
                if dot {
                    emit(json::nucleus_lattice_dot(&nx, &nuclei, "NX"));
                } else {
                    emitln(format!("{} nuclei on a {}-element frame", nuclei.len(), frame.n()));
                    for (i, nuc) in nuclei.iter().enumerate() {
                        let (pairs, verdict) =
                            nucleus::oc_decomposition(nuc).map_err(|e| input_error(&e))?;
                        let tbl: Vec<String> =
                            nuc.table().iter().map(|v| v.to_string()).collect();
                        let gens: Vec<String> = pairs
                            .iter()
                            .map(|(u, v)| format!("(o{u},c{v})"))
                            .collect();
                        emitln(format!(
                            "  nucleus {i}: [{}]  join of {} generators: {}  {}",
                            tbl.join(","),
                            pairs.len(),
                            gens.join(" "),
                            if verdict.holds { "ok" } else { "MISMATCH" }
                        ));
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            FrameCommand::Hausdorff { file } => {
                let frame = load_frame(&file, &caps)?;
                let verdict =
                    coproduct::check_hausdorff(&frame, &caps).map_err(|e| input_error(&e))?;
                emitln(format!("hausdorff: {verdict}"));
                Ok(if verdict.holds {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            FrameCommand::Coproduct { file1, file2, out } => {
                let left = load_frame(&file1, &caps)?;
                let right = load_frame(&file2, &caps)?;
                let cp =
                    coproduct::coproduct(&left, &right, &caps).map_err(|e| input_error(&e))?;
                let gen = cp.check_generators();
                let payload = serde_json::to_string_pretty(&json::frame_to_json(&cp.carrier))
                    .expect("frame serializes");
                match out {
                    Some(path) => std::fs::write(&path, payload).map_err(|e| {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        ExitCode::from(2)
                    })?,
                    None => emitln(&payload),
                }
                eprintln!(
                    "carrier: {} elements; generator check: {gen}",
                    cp.carrier.n()
                );
                Ok(if gen.holds {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
        Command::Map { command } => match command {
            MapCommand::Check { file } => {
                let text = read_file(&file)?;
                let map: LocalicMap =
                    json::parse_map(&text, &caps).map_err(|e| input_error(&e))?;
                let mut report = Report::new("localic map report");
                report.merge(
                    "injection",
                    "map",
                    &map.is_injection().map_err(|e| input_error(&e))?,
                );
                report.merge(
                    "surjection",
                    "map",
                    &map.is_surjection().map_err(|e| input_error(&e))?,
                );
                report.merge("dense", "map", &map.is_dense());
                report.merge("closed", "map", &map.is_closed());
                report.merge("proper", "map", &map.is_proper(&caps));
                emit(report.to_text());
                Ok(exit_by_report(&report))
            }
        },
        Command::Pretopos { command } => match command {
            PretoposCommand::Audit { max_size, json: as_json } => {
                let rows = localeforge::finset::audit(max_size).map_err(|e| input_error(&e))?;
                let mut report = Report::new(format!("pretopos audit up to size {max_size}"));
                for (name, verdict) in rows {
                    report.merge(&name, format!("sizes ≤ {max_size}"), &verdict);
                }
                if as_json {
                    emitln(report.to_json());
                } else {
                    emit(report.to_text());
                }
                Ok(exit_by_report(&report))
            }
        },
        Command::Functor { command } => match command {
            FunctorCommand::Verify { max_size, json: as_json, text: _ } => {
                let report = localeforge::functor::verify_embedding(max_size, &caps)
                    .map_err(|e| input_error(&e))?;
                if as_json {
                    emitln(report.to_json());
                } else {
                    emit(report.to_text());
                }
                Ok(exit_by_report(&report))
            }
        },
        Command::Gen { command } => {
            let frame = match command {
                GenCommand::Chain { n } => chain_frame(n, &caps).map_err(|e| input_error(&e))?,
                GenCommand::Boolean { n } => {
                    boolean_frame(n, &caps).map_err(|e| input_error(&e))?
                }
                GenCommand::DownsetsOf { file } => {
                    let text = read_file(&file)?;
                    let poset = json::parse_poset(&text).map_err(|e| input_error(&e))?;
                    Frame::downsets_of(&poset, &caps).map_err(|e| input_error(&e))?
                }
            };
            emitln(
                serde_json::to_string_pretty(&json::frame_to_json(&frame))
                    .expect("frame serializes"),
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_by_report(report: &Report) -> ExitCode {
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(code) => code,
    }
}
