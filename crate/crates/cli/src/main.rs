//! `ipo`: check, decompose, glue, dualize and enumerate finite involutive
//! po-semigroups stored as JSON documents.
//!
//! Exit status: 0 on success or an affirmative verdict, 1 on a negative
//! verdict, 2 on usage, parse or budget errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ipo_core::canon::find_isomorphism;
use ipo_core::diagram::{export_diagram, Mode};
use ipo_core::duality::{dual_isomorphic, dualize, primalize};
use ipo_core::enumerate::{enumerate, Class, EnumerateOptions, Route};
use ipo_core::glue::{extend_to_monoid, glue, glue_linear, subreduct_conditions, GlueOutcome};
use ipo_core::io::{self, AlgebraDocument, Payload};
use ipo_core::{check_ipo, decompose, enumerate::classify, FiniteIpoAlgebra, IntegralComponent};

#[derive(Parser)]
#[command(name = "ipo", version, about = "Finite involutive po-semigroups")]
struct Cli {
    /// Reject fields the document format does not define.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Report which axioms and classes an algebra satisfies.
    Check { file: PathBuf },
    /// Split a locally integral algebra into its directed system.
    Decompose { file: PathBuf },
    /// Glue a directed system, or with --linear a chain of integral monoids
    /// given bottom first.
    Glue {
        #[arg(long)]
        linear: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Decide whether a locally integral algebra embeds into one with a
    /// global identity.
    Subreduct { file: PathBuf },
    /// Embed a locally integral algebra into one with a global identity.
    Extend {
        file: PathBuf,
        /// Integral monoid placed at the new bottom node (default: 2).
        #[arg(long)]
        bottom: Option<PathBuf>,
    },
    /// Count algebras of a class up to isomorphism.
    Enumerate {
        #[arg(long)]
        class: Class,
        /// A size `n` or an inclusive range `a-b`.
        #[arg(long, value_parser = parse_sizes)]
        size: (usize, usize),
        /// Also print canonical representatives.
        #[arg(long)]
        retain: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value = "auto")]
        route: Route,
    },
    /// Dual system of an idempotent locally integral algebra.
    Dualize { file: PathBuf },
    /// Algebra described by a dual system.
    Primalize { file: PathBuf },
    /// Graphviz DOT for the order, the multiplicative order or a dual.
    Export {
        #[arg(long)]
        mode: Mode,
        file: PathBuf,
    },
    /// Decide whether two algebras (or two dual systems) are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once('-') {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {a}-{b}"));
            }
            Ok((a, b))
        }
        None => num(s).map(|n| (n, n)),
    }
}

/// What a command produced: text for stdout and the exit status.
struct Outcome {
    text: String,
    affirmative: bool,
}

impl Outcome {
    fn yes(text: String) -> Self {
        Outcome { text, affirmative: true }
    }

    fn verdict(text: String, affirmative: bool) -> Self {
        Outcome { text, affirmative }
    }
}

/// Errors that end with status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_doc(path: &Path, strict: bool) -> Result<AlgebraDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    io::parse(&text, strict).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_algebra(path: &Path, strict: bool) -> Result<FiniteIpoAlgebra, Failure> {
    io::expect_algebra(read_doc(path, strict)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn witness_json(w: &ipo_core::Witness) -> Value {
    json!(w.as_slice())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.affirmative {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let json = cli.format == Format::Json;
    let strict = cli.strict;
    match &cli.command {
        Command::Check { file } => {
            let alg = read_algebra(file, strict)?;
            let report = check_ipo(&alg)?;
            let classes: Vec<&str> = classify(&alg).into_iter().map(Class::name).collect();
            let ok = report.holds(ipo_core::Flag::IpoSemigroup);
            let text = if json {
                let mut flags = serde_json::Map::new();
                let mut witnesses = serde_json::Map::new();
                for (flag, verdict) in report.iter() {
                    flags.insert(flag.name().into(), json!(verdict.is_ok()));
                    if let Err(w) = verdict {
                        witnesses.insert(flag.name().into(), witness_json(w));
                    }
                }
                let v = json!({
                    "flags": flags,
                    "witnesses": witnesses,
                    "global_identity": report.global_identity(),
                    "classes": classes,
                });
                format!("{}\n", serde_json::to_string_pretty(&v)?)
            } else {
                format!("{report}\nclasses                {}\n", classes.join(" "))
            };
            Ok(Outcome::verdict(text, ok))
        }
        Command::Decompose { file } => {
            let alg = read_algebra(file, strict)?;
            match decompose(&alg) {
                Ok(sys) => {
                    if json {
                        Ok(Outcome::yes(io::serialize(&AlgebraDocument::system(sys))))
                    } else {
                        let mut s = format!("nodes {}\n", sys.d());
                        for p in 0..sys.d() {
                            let c = sys.component(p);
                            let _ = writeln!(
                                s,
                                "node {p}: identity {} zero {} carrier {:?}",
                                c.carrier()[c.one()],
                                c.carrier()[c.zero()],
                                c.carrier()
                            );
                        }
                        for (p, q, map) in sys.phi_entries() {
                            let images: Vec<usize> = map.iter().map(|&x| sys.component(q).carrier()[x]).collect();
                            let _ = writeln!(s, "phi {p}->{q}: {images:?}");
                        }
                        Ok(Outcome::yes(s))
                    }
                }
                Err(e) => Ok(Outcome::verdict(format!("{e}\n"), false)),
            }
        }
        Command::Glue { linear, files } => {
            let outcome: GlueOutcome = if *linear {
                let comps = files
                    .iter()
                    .map(|f| {
                        let alg = read_algebra(f, strict)?;
                        IntegralComponent::from_algebra(alg).map_err(|e| Failure(format!("{}: {e}", f.display())))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                glue_linear(&comps)?
            } else {
                if files.len() != 1 {
                    return Err(Failure("glue takes one system document (or --linear with several algebras)".into()));
                }
                let sys = io::expect_system(read_doc(&files[0], strict)?)?;
                glue(&sys)
            };
            emit_glue(outcome, json)
        }
        Command::Subreduct { file } => {
            let alg = read_algebra(file, strict)?;
            let report = match subreduct_conditions(&alg) {
                Ok(r) => r,
                Err(e) => return Ok(Outcome::verdict(format!("{e}\n"), false)),
            };
            let holds = report.zeros_below_identities.is_ok();
            let rows = [
                ("zeros_multiply", &report.zeros_multiply),
                ("positive_zeros_multiply", &report.positive_zeros_multiply),
                ("zeros_below_identities", &report.zeros_below_identities),
            ];
            let text = if json {
                let conds: serde_json::Map<String, Value> = rows
                    .iter()
                    .map(|(k, v)| {
                        let val = match v {
                            Ok(()) => json!({"holds": true}),
                            Err(w) => json!({"holds": false, "witness": witness_json(w)}),
                        };
                        ((*k).to_string(), val)
                    })
                    .collect();
                format!("{}\n", serde_json::to_string_pretty(&json!({"subreduct": holds, "conditions": conds}))?)
            } else {
                let mut s = format!("subreduct {holds}\n");
                for (k, v) in rows {
                    match v {
                        Ok(()) => {
                            let _ = writeln!(s, "{k:<24} true");
                        }
                        Err(w) => {
                            let _ = writeln!(s, "{k:<24} false  witness {w}");
                        }
                    }
                }
                s
            };
            Ok(Outcome::verdict(text, holds))
        }
        Command::Extend { file, bottom } => {
            let alg = read_algebra(file, strict)?;
            let bottom_alg = match bottom {
                Some(b) => read_algebra(b, strict)?,
                None => ipo_core::fixtures::two(),
            };
            let bottom = IntegralComponent::from_algebra(bottom_alg).map_err(|e| Failure(format!("bottom: {e}")))?;
            match extend_to_monoid(&alg, &bottom) {
                Ok(ext) => {
                    let mut doc = AlgebraDocument::algebra(ext.algebra);
                    doc.metadata.insert("embedding".into(), json!(ext.embedding));
                    doc.metadata.insert("adjoined_bottom".into(), json!(ext.adjoined));
                    Ok(Outcome::yes(io::serialize(&doc)))
                }
                Err(e) => Ok(Outcome::verdict(format!("{e}\n"), false)),
            }
        }
        Command::Enumerate {
            class,
            size,
            retain,
            workers,
            route,
        } => run_enumerate(*class, *size, *retain, *workers, *route, json),
        Command::Dualize { file } => {
            let alg = read_algebra(file, strict)?;
            match dualize(&alg) {
                Ok(d) => Ok(Outcome::yes(io::serialize(&AlgebraDocument::dual(d)))),
                Err(e) => Ok(Outcome::verdict(format!("{e}\n"), false)),
            }
        }
        Command::Primalize { file } => {
            let dual = io::expect_dual(read_doc(file, strict)?)?;
            match primalize(&dual) {
                Ok(a) => Ok(Outcome::yes(io::serialize(&AlgebraDocument::algebra(a)))),
                Err(e) => Ok(Outcome::verdict(format!("{e}\n"), false)),
            }
        }
        Command::Export { mode, file } => {
            let doc = read_doc(file, strict)?;
            Ok(Outcome::yes(export_diagram(&doc.payload, *mode)?))
        }
        Command::Iso { first, second } => {
            let (a, b) = (read_doc(first, strict)?, read_doc(second, strict)?);
            let (found, perm) = match (&a.payload, &b.payload) {
                (Payload::Algebra(x), Payload::Algebra(y)) => {
                    let perm = find_isomorphism(x, y);
                    (perm.is_some(), perm)
                }
                (Payload::Dual(x), Payload::Dual(y)) => (dual_isomorphic(x, y), None),
                (x, y) => {
                    return Err(Failure(format!(
                        "cannot compare a {} with a {}",
                        x.kind(),
                        y.kind()
                    )))
                }
            };
            let text = if json {
                format!("{}\n", serde_json::to_string_pretty(&json!({"isomorphic": found, "map": perm}))?)
            } else {
                match &perm {
                    Some(p) => format!("isomorphic {p:?}\n"),
                    None => format!("{}\n", if found { "isomorphic" } else { "not isomorphic" }),
                }
            };
            Ok(Outcome::verdict(text, found))
        }
    }
}

fn emit_glue(out: GlueOutcome, json: bool) -> Result<Outcome, Failure> {
    if out.is_defect_free() {
        return Ok(Outcome::yes(io::serialize(&AlgebraDocument::algebra(out.algebra))));
    }
    let text = if json {
        let defects: Vec<Value> = out
            .defects
            .iter()
            .map(|d| json!({"condition": d.condition, "witness": witness_json(&d.witness)}))
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&json!({ "defects": defects }))?)
    } else {
        out.defects
            .iter()
            .map(|d| format!("defect {} witness {}\n", d.condition.name(), d.witness))
            .collect()
    };
    Ok(Outcome::verdict(text, false))
}

fn run_enumerate(
    class: Class,
    (lo, hi): (usize, usize),
    retain: bool,
    workers: usize,
    route: Route,
    json: bool,
) -> Result<Outcome, Failure> {
    let opts = EnumerateOptions { retain, workers, route };
    let mut results = Vec::new();
    for n in lo..=hi {
        results.push(enumerate(class, n, opts)?);
    }
    if json {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| {
                let mut row = json!({"class": r.class, "size": r.size, "count": r.count, "route": r.route});
                if let Some(reps) = &r.representatives {
                    let docs: Vec<Value> = reps
                        .iter()
                        .map(|a| serde_json::from_str(&io::serialize(&AlgebraDocument::algebra(a.clone()))).expect("valid JSON"))
                        .collect();
                    row["representatives"] = Value::Array(docs);
                }
                row
            })
            .collect();
        return Ok(Outcome::yes(format!("{}\n", serde_json::to_string_pretty(&rows)?)));
    }
    let mut s = String::from("class,size,count\n");
    for r in &results {
        let _ = writeln!(s, "{},{},{}", r.class, r.size, r.count);
    }
    // the same counts laid out as a table row
    let width = results.iter().map(|r| r.count.to_string().len().max(r.size.to_string().len())).collect::<Vec<_>>();
    let label = class.name().len().max("Number of elements =".len());
    let _ = write!(s, "\n{:<label$} |", "Number of elements =");
    for (r, w) in results.iter().zip(&width) {
        let _ = write!(s, " {:>w$}", r.size);
    }
    let _ = write!(s, "\n{:<label$} |", class.name());
    for (r, w) in results.iter().zip(&width) {
        let _ = write!(s, " {:>w$}", r.count);
    }
    s.push('\n');
    for r in &results {
        for (i, a) in r.representatives.iter().flatten().enumerate() {
            let doc = AlgebraDocument::algebra(a.clone()).named(&format!("{}-{}-{i}", r.class, r.size));
            let _ = write!(s, "\n{}", io::serialize(&doc));
        }
    }
    Ok(Outcome::yes(s))
}
