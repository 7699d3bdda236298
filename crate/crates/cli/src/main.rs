//! Command-line front end: builders, lattice reports, niceness and
//! factorization checks, certificate verification and localization, and the
//! per-flat localization-closure check, with machine-readable reports.
//!
//! Exit codes: 0 the checked property holds, 1 it fails, 2 usage or input
//! error, 3 search budget exhausted (inconclusive).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arrfact::bitset::IndexSet;
use arrfact::catalog;
use arrfact::factorization::{
    Certificate, CertificateCheck, Engine, HereditaryCheck, NiceCheck, Partition, SearchMode,
};
use arrfact::lattice::{closure, members_containing, Flat, IntersectionLattice};
use arrfact::{Arrangement, Error, Subspace};

#[derive(Parser)]
#[command(
    name = "arrfact",
    version,
    about = "Exact computations with central hyperplane arrangements: intersection lattices, nice partitions, inductive factorization certificates and their localizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cap on search nodes; exceeding it exits with code 3.
    #[arg(long, global = true, env = "ARRFACT_BUDGET")]
    budget: Option<u64>,

    /// Worker threads for per-flat checks (default: all cores).
    #[arg(long, global = true, env = "ARRFACT_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a named arrangement and emit its JSON document.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Construct a named subspace and emit its JSON document.
    Flat {
        #[command(subcommand)]
        which: FlatKind,
    },
    /// Print the intersection lattice and characteristic polynomial.
    Lattice {
        #[command(flatten)]
        input: InputArg,
    },
    /// Check that a partition is nice (a factorization) for the arrangement.
    CheckNice {
        #[command(flatten)]
        input: InputArg,
        /// Partition file: a JSON array of arrays of hyperplane indices.
        #[arg(long)]
        partition: PathBuf,
    },
    /// Check that a partition is an inductive factorization; emits a
    /// replayable certificate on success.
    CheckIndfac {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        partition: PathBuf,
        /// Write the certificate to this file on success.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Search for an inductive factorization.
    FindIndfac {
        #[command(flatten)]
        input: InputArg,
        /// Enumerate all rank-many-block partitions instead of only the
        /// block-size multisets consistent with the characteristic polynomial.
        #[arg(long)]
        exhaustive: bool,
        /// Search the localization instead: either comma-separated hyperplane
        /// indices (the flat is their closure) or a path to a subspace JSON.
        #[arg(long)]
        localize: Option<String>,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Check membership in the inductively free class and report exponents.
    CheckIndfree {
        #[command(flatten)]
        input: InputArg,
    },
    /// Replay a certificate against an arrangement.
    VerifyCert {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Localize a certificate to a flat (the closure of the given indices).
    LocalizeCert {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        cert: PathBuf,
        /// Comma-separated hyperplane indices spanning the flat.
        #[arg(long)]
        flat: String,
        /// Write the localized certificate to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that every restriction admits an inductive factorization.
    CheckHereditary {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Find (or take) an inductive factorization, localize its certificate to
    /// every flat of the lattice, and verify each localized certificate.
    VerifyTheorem {
        #[command(flatten)]
        input: InputArg,
        /// Use this certificate instead of searching for one.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildFamily {
    /// The coordinate hyperplanes in dimension l over Q.
    Boolean(BuildBoolean),
    /// ker(x_i - x_j) for i < j over Q.
    Braid(BuildBraid),
    /// x_1 .. x_k and ker(x_i - zeta^n x_j) over Q(zeta_r).
    Intermediate(BuildIntermediate),
}

#[derive(Args)]
struct BuildBoolean {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BuildBraid {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BuildIntermediate {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FlatKind {
    /// The intersection of ker(x_i - zeta^n x_j) over k+1 <= i < j <= l.
    Example(BuildIntermediate),
}

#[derive(Args)]
struct InputArg {
    /// Arrangement file (JSON).
    #[arg(long)]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Per-flat fan-out honors the requested worker count.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExhausted(_) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> arrfact::Result<u8> {
    let mut engine = Engine::new();
    if let Some(budget) = cli.budget {
        engine = engine.with_budget(budget);
    }
    match &cli.command {
        Command::Build { family } => {
            let (arrangement, output) = match family {
                BuildFamily::Boolean(args) => {
                    (catalog::boolean_arrangement(args.l), args.output.clone())
                }
                BuildFamily::Braid(args) => {
                    if args.l < 1 {
                        return Err(Error::Unsupported(
                            "braid arrangement needs l >= 1".into(),
                        ));
                    }
                    (catalog::braid_arrangement(args.l), args.output.clone())
                }
                BuildFamily::Intermediate(args) => (
                    catalog::intermediate_arrangement(args.l, args.r, args.k)?,
                    args.output.clone(),
                ),
            };
            emit_document(&arrangement.to_json(), output.as_deref())?;
            Ok(0)
        }
        Command::Flat { which } => {
            let FlatKind::Example(args) = which;
            let subspace = catalog::example_flat(args.l, args.r, args.k)?;
            emit_document(&subspace.to_json(), args.output.as_deref())?;
            Ok(0)
        }
        Command::Lattice { input } => {
            let a = load_arrangement(&input.input)?;
            let lat = IntersectionLattice::build(&a)?;
            let flats_json: Vec<Value> = lat
                .flats()
                .iter()
                .map(|f| json!({"members": f.members.to_vec(), "rank": f.rank}))
                .collect();
            let report = json!({
                "command": "lattice",
                "input": a.to_json(),
                "flats": flats_json,
                "charpoly": charpoly_json(lat.charpoly()),
            });
            let mut text = format!(
                "{}: {} hyperplanes, rank {}, {} flats\n",
                display_name(&a),
                a.len(),
                lat.rank(),
                lat.flats().len()
            );
            for f in lat.flats() {
                text += &format!("rank {}: {{{}}}\n", f.rank, f.members);
            }
            text += &format!("charpoly: {}", lat.charpoly_string());
            emit(cli.format, &report, &text);
            Ok(0)
        }
        Command::CheckNice { input, partition } => {
            let a = load_arrangement(&input.input)?;
            let pi = load_partition(partition, a.len())?;
            let check = arrfact::factorization::is_nice(&a, &pi)?;
            let (verdict, witness, text) = match &check {
                NiceCheck::Nice => (true, Value::Null, "nice".to_string()),
                NiceCheck::DependentTransversal(w) => (
                    false,
                    json!({"dependent_transversal": w}),
                    format!("not nice: dependent transversal {:?}", w),
                ),
                NiceCheck::NoSingleton(flat) => (
                    false,
                    json!({"flat_without_singleton": flat.members.to_vec(), "rank": flat.rank}),
                    format!(
                        "not nice: induced partition at flat {{{}}} (rank {}) has no singleton block",
                        flat.members, flat.rank
                    ),
                ),
            };
            let report = json!({
                "command": "check-nice",
                "input": a.to_json(),
                "partition": pi.to_json(),
                "verdict": if verdict { "nice" } else { "not-nice" },
                "witness": witness,
            });
            emit(
                cli.format,
                &report,
                &format!("{}: {}", display_name(&a), text),
            );
            Ok(if verdict { 0 } else { 1 })
        }
        Command::CheckIndfac {
            input,
            partition,
            cert_out,
        } => {
            let a = load_arrangement(&input.input)?;
            let pi = load_partition(partition, a.len())?;
            match engine.is_inductively_factored(&a, &pi)? {
                Some(cert) => {
                    if let Some(path) = cert_out {
                        write_file(path, &pretty(&cert.to_json()))?;
                    }
                    let report = json!({
                        "command": "check-indfac",
                        "input": a.to_json(),
                        "partition": pi.to_json(),
                        "verdict": "inductively-factored",
                        "certificate": cert.to_json(),
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!(
                            "{}: the partition is an inductive factorization ({} steps)",
                            display_name(&a),
                            cert.order.len()
                        ),
                    );
                    Ok(0)
                }
                None => {
                    let report = json!({
                        "command": "check-indfac",
                        "input": a.to_json(),
                        "partition": pi.to_json(),
                        "verdict": "not-inductively-factored",
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!(
                            "{}: the partition is not an inductive factorization",
                            display_name(&a)
                        ),
                    );
                    Ok(1)
                }
            }
        }
        Command::FindIndfac {
            input,
            exhaustive,
            localize,
            cert_out,
        } => {
            let a = load_arrangement(&input.input)?;
            let mode = if *exhaustive {
                SearchMode::Exhaustive
            } else {
                SearchMode::ChiPruned
            };
            let (target, localization_json, localized_text) = match localize {
                None => (a.clone(), Value::Null, String::new()),
                Some(spec) => {
                    let members = resolve_flat_spec(&a, spec)?;
                    let local = a.subarrangement(members);
                    let lat = IntersectionLattice::build(&local)?;
                    let text = format!(
                        "localization at flat {{{}}}: {} hyperplanes, rank {}, charpoly {}\n",
                        members,
                        local.len(),
                        lat.rank(),
                        lat.charpoly_string()
                    );
                    let js = json!({
                        "flat": members.to_vec(),
                        "arrangement": local.to_json(),
                        "charpoly": charpoly_json(lat.charpoly()),
                    });
                    (local, js, text)
                }
            };
            let found = engine.find_inductive_factorization(&target, mode)?;
            let mode_name = if *exhaustive { "exhaustive" } else { "chi-pruned" };
            match found {
                Some((pi, cert)) => {
                    if let Some(path) = cert_out {
                        write_file(path, &pretty(&cert.to_json()))?;
                    }
                    let report = json!({
                        "command": "find-indfac",
                        "input": a.to_json(),
                        "localization": localization_json,
                        "mode": mode_name,
                        "verdict": "inductively-factored",
                        "partition": pi.to_json(),
                        "certificate": cert.to_json(),
                    });
                    let text = format!(
                        "{}{}: inductive factorization with block sizes {:?} ({} search mode)",
                        localized_text,
                        display_name(&target),
                        pi.sizes(),
                        mode_name
                    );
                    emit(cli.format, &report, &text);
                    Ok(0)
                }
                None => {
                    let conclusion = if localize.is_some() {
                        format!(
                            "{} is not inductively factored (by localization closure)",
                            display_name(&a)
                        )
                    } else {
                        format!(
                            "{} is not inductively factored ({} search found no factorization)",
                            display_name(&a),
                            mode_name
                        )
                    };
                    let report = json!({
                        "command": "find-indfac",
                        "input": a.to_json(),
                        "localization": localization_json,
                        "mode": mode_name,
                        "verdict": "not-inductively-factored",
                        "conclusion": conclusion,
                    });
                    emit(cli.format, &report, &format!("{}{}", localized_text, conclusion));
                    Ok(1)
                }
            }
        }
        Command::CheckIndfree { input } => {
            let a = load_arrangement(&input.input)?;
            match engine.is_inductively_free(&a)? {
                Some(exp) => {
                    let report = json!({
                        "command": "check-indfree",
                        "input": a.to_json(),
                        "verdict": "inductively-free",
                        "exponents": exp.values(),
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!("{}: inductively free, exponents {:?}", display_name(&a), exp.values()),
                    );
                    Ok(0)
                }
                None => {
                    let report = json!({
                        "command": "check-indfree",
                        "input": a.to_json(),
                        "verdict": "not-inductively-free",
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!(
                            "{}: not inductively free (search exhausted)",
                            display_name(&a)
                        ),
                    );
                    Ok(1)
                }
            }
        }
        Command::VerifyCert { input, cert } => {
            let a = load_arrangement(&input.input)?;
            let cert = load_certificate(cert, a.len())?;
            match engine.verify_certificate(&a, &cert)? {
                CertificateCheck::Valid => {
                    let report = json!({
                        "command": "verify-cert",
                        "input": a.to_json(),
                        "certificate": cert.to_json(),
                        "verdict": "valid",
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!("{}: certificate verifies", display_name(&a)),
                    );
                    Ok(0)
                }
                CertificateCheck::Invalid { step, reason } => {
                    let report = json!({
                        "command": "verify-cert",
                        "input": a.to_json(),
                        "certificate": cert.to_json(),
                        "verdict": "invalid",
                        "failing_step": step,
                        "reason": reason,
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!(
                            "{}: certificate fails at step {}: {}",
                            display_name(&a),
                            step,
                            reason
                        ),
                    );
                    Ok(1)
                }
            }
        }
        Command::LocalizeCert {
            input,
            cert,
            flat,
            output,
        } => {
            let a = load_arrangement(&input.input)?;
            let cert = load_certificate(cert, a.len())?;
            let members = parse_indices(flat, a.len())?;
            let x = closure(&a, members);
            let localized = engine.localize_certificate(&a, &cert, &x)?;
            let local = a.subarrangement(x.members);
            if let Some(path) = output {
                write_file(path, &pretty(&localized.to_json()))?;
            }
            let report = json!({
                "command": "localize-cert",
                "input": a.to_json(),
                "certificate": cert.to_json(),
                "flat": {"members": x.members.to_vec(), "rank": x.rank},
                "localized": {
                    "arrangement": local.to_json(),
                    "certificate": localized.to_json(),
                },
            });
            emit(
                cli.format,
                &report,
                &format!(
                    "localized certificate at flat {{{}}} (rank {}): {} steps",
                    x.members,
                    x.rank,
                    localized.order.len()
                ),
            );
            Ok(0)
        }
        Command::CheckHereditary { input, exhaustive } => {
            let a = load_arrangement(&input.input)?;
            let mode = if *exhaustive {
                SearchMode::Exhaustive
            } else {
                SearchMode::ChiPruned
            };
            match engine.is_hereditarily_inductively_factored(&a, mode)? {
                HereditaryCheck::Factored => {
                    let report = json!({
                        "command": "check-hereditary",
                        "input": a.to_json(),
                        "verdict": "hereditarily-inductively-factored",
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!("{}: hereditarily inductively factored", display_name(&a)),
                    );
                    Ok(0)
                }
                HereditaryCheck::FailsAt(flat) => {
                    let report = json!({
                        "command": "check-hereditary",
                        "input": a.to_json(),
                        "verdict": "fails",
                        "failing_flat": {"members": flat.members.to_vec(), "rank": flat.rank},
                    });
                    emit(
                        cli.format,
                        &report,
                        &format!(
                            "{}: restriction to flat {{{}}} (rank {}) admits no inductive factorization",
                            display_name(&a),
                            flat.members,
                            flat.rank
                        ),
                    );
                    Ok(1)
                }
            }
        }
        Command::VerifyTheorem { input, cert } => {
            let a = load_arrangement(&input.input)?;
            verify_theorem(cli, &engine, &a, cert.as_deref())
        }
    }
}

/// Localize-and-verify over every flat of the lattice.
fn verify_theorem(
    cli: &Cli,
    engine: &Engine,
    a: &Arrangement,
    cert_path: Option<&Path>,
) -> arrfact::Result<u8> {
    let (pi, cert) = match cert_path {
        Some(path) => {
            let cert = load_certificate(path, a.len())?;
            match engine.verify_certificate(a, &cert)? {
                CertificateCheck::Valid => {}
                CertificateCheck::Invalid { .. } => return Err(Error::CertificateDoesNotVerify),
            }
            (cert.partition.clone(), cert)
        }
        None => match engine.find_inductive_factorization(a, SearchMode::ChiPruned)? {
            Some(found) => found,
            None => {
                let report = json!({
                    "command": "verify-theorem",
                    "input": a.to_json(),
                    "verdict": "no-inductive-factorization",
                });
                emit(
                    cli.format,
                    &report,
                    &format!(
                        "{}: no inductive factorization found; nothing to localize",
                        display_name(a)
                    ),
                );
                return Ok(1);
            }
        },
    };

    let lat = IntersectionLattice::build(a)?;
    // Flats are checked independently; report order is the canonical flat
    // order regardless of scheduling.
    use rayon::prelude::*;
    let results: Vec<arrfact::Result<(Flat, bool, usize)>> = lat
        .flats()
        .par_iter()
        .map(|x| {
            let localized = engine.localize_certificate(a, &cert, x)?;
            let local = a.subarrangement(x.members);
            let ok = engine.verify_certificate(&local, &localized)?.is_valid();
            Ok((*x, ok, localized.order.len()))
        })
        .collect();

    let mut lines = Vec::with_capacity(results.len());
    let mut flats_json = Vec::with_capacity(results.len());
    let mut passed = 0usize;
    for res in results {
        let (flat, ok, steps) = res?;
        if ok {
            passed += 1;
        }
        lines.push(format!(
            "flat {{{}}} (rank {}): {} ({} steps)",
            flat.members,
            flat.rank,
            if ok { "pass" } else { "FAIL" },
            steps
        ));
        flats_json.push(json!({
            "flat": flat.members.to_vec(),
            "rank": flat.rank,
            "pass": ok,
            "steps": steps,
        }));
    }
    let total = lat.flats().len();
    let all_pass = passed == total;
    let report = json!({
        "command": "verify-theorem",
        "input": a.to_json(),
        "partition": pi.to_json(),
        "certificate": cert.to_json(),
        "flats": flats_json,
        "passed": passed,
        "total": total,
        "verdict": if all_pass { "pass" } else { "fail" },
    });
    let text = format!(
        "{}: localizing an inductive factorization with block sizes {:?}\n{}\nverify-theorem: {} ({}/{} flats)",
        display_name(a),
        pi.sizes(),
        lines.join("\n"),
        if all_pass { "PASS" } else { "FAIL" },
        passed,
        total
    );
    emit(cli.format, &report, &text);
    Ok(if all_pass { 0 } else { 1 })
}

fn display_name(a: &Arrangement) -> String {
    a.name()
        .map(|s| s.to_string())
        .unwrap_or_else(|| "arrangement".to_string())
}

fn charpoly_json(chi: &arrfact::exactfield::poly::ZPoly) -> Value {
    Value::Array(chi.iter().map(|c| Value::String(c.to_string())).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON reports serialize");
    s.push('\n');
    s
}

fn emit(format: Format, report: &Value, text: &str) {
    match format {
        Format::Json => print!("{}", pretty(report)),
        Format::Text => println!("{}", text),
    }
}

fn emit_document(doc: &Value, output: Option<&Path>) -> arrfact::Result<()> {
    match output {
        Some(path) => write_file(path, &pretty(doc)),
        None => {
            print!("{}", pretty(doc));
            Ok(())
        }
    }
}

fn write_file(path: &Path, contents: &str) -> arrfact::Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Parse(format!("cannot write {}: {}", path.display(), e)))
}

fn read_file(path: &Path) -> arrfact::Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {}", path.display(), e)))
}

fn load_arrangement(path: &Path) -> arrfact::Result<Arrangement> {
    Arrangement::from_json_str(&read_file(path)?)
}

fn load_partition(path: &Path, n: usize) -> arrfact::Result<Partition> {
    Partition::from_json_str(&read_file(path)?, n)
}

fn load_certificate(path: &Path, n: usize) -> arrfact::Result<Certificate> {
    Certificate::from_json_str(&read_file(path)?, n)
}

fn parse_indices(spec: &str, n: usize) -> arrfact::Result<IndexSet> {
    let mut set = IndexSet::EMPTY;
    let trimmed = spec.trim();
    if trimmed.is_empty() {
        return Ok(set);
    }
    for part in trimmed.split(',') {
        let index: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid hyperplane index {:?}", part.trim())))?;
        if index >= n {
            return Err(Error::IndexOutOfRange { index, count: n });
        }
        set.insert(index);
    }
    Ok(set)
}

/// A localization target: comma-separated indices (closure is taken) or a
/// path to a subspace JSON document.
fn resolve_flat_spec(a: &Arrangement, spec: &str) -> arrfact::Result<IndexSet> {
    let looks_like_indices = spec
        .trim()
        .chars()
        .all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace());
    if looks_like_indices && !spec.trim().is_empty() {
        let set = parse_indices(spec, a.len())?;
        return Ok(closure(a, set).members);
    }
    let subspace = Subspace::from_json_str(&read_file(Path::new(spec))?)?;
    Ok(members_containing(a, &subspace).members)
}
