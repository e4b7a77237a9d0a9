//! `resalg`: command-line front end.
//!
//! Exit codes: 0 true/pass, 1 false/fail, 2 usage, 3 invalid algebra input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use resalg::algebra::{validate_axioms, Elem, FiniteAlgebra, Signature};
use resalg::catalog::{Catalog, ENTRIES};
use resalg::constructions::{all_subalgebras, diamond, direct_product};
use resalg::document::{self, LoadError};
use resalg::enumeration::{enumerate_algebras, EnumFilter};
use resalg::morphisms::{
    homomorphisms, is_absolute_retract_relative, is_injective_relative, is_retract_of,
    SearchConstraint, SearchMode, SearchResult,
};
use resalg::set::ElementSet;
use resalg::structure::{all_filters, filter_from_members, quotient, radical_report};
use resalg::suite::{paper_suite, unknown_selectors};
use resalg::varieties::{classify, EquationId, Variety};

#[derive(Parser)]
#[command(
    name = "resalg",
    version,
    about = "Finite residuated lattices and bounded hoops as operation tables"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of the declared signature.
    Validate { algebra: String },
    /// Equations that hold and the varieties they imply.
    Classify { algebra: String },
    /// Implicative filters.
    Filters {
        algebra: String,
        /// Only the maximal proper filters.
        #[arg(long)]
        maximal: bool,
    },
    /// Radical, dense elements and principal unity.
    Radical { algebra: String },
    /// Quotient by the filter with the given members.
    Quotient {
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        filter: Vec<Elem>,
        #[command(flatten)]
        out: OutFile,
    },
    /// Direct product.
    Product {
        left: String,
        right: String,
        #[command(flatten)]
        out: OutFile,
    },
    /// The diamond extension on pairs a <= b.
    Diamond {
        algebra: String,
        #[command(flatten)]
        out: OutFile,
    },
    /// All subalgebras, as member lists.
    Subalgebras { algebra: String },
    /// Homomorphism search.
    Hom(HomArgs),
    /// Is A a retract of C?
    Retract { algebra: String, host: String },
    /// Is A a retract of each of its extensions in the class?
    Absretract {
        algebra: String,
        #[arg(long)]
        class: PathBuf,
    },
    /// Does every map into A extend along every mono in the class?
    Injective {
        algebra: String,
        #[arg(long)]
        class: PathBuf,
    },
    /// All algebras of a given size up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Named algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the acceptance battery.
    PaperSuite {
        /// Check id, name or group; repeatable.
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Args)]
struct OutFile {
    /// Write the algebra document here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HomArgs {
    source: String,
    target: String,
    #[arg(long, group = "mode")]
    mono: bool,
    #[arg(long, group = "mode")]
    iso: bool,
    #[arg(long, group = "mode")]
    count: bool,
    #[arg(long, group = "mode")]
    exists: bool,
    /// Require source element s to map to t.
    #[arg(long = "pin", value_parser = parse_pin)]
    pins: Vec<(Elem, Elem)>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    size: usize,
    /// Keep only members of this variety; repeatable.
    #[arg(long = "variety")]
    varieties: Vec<Variety>,
    /// rl, bounded_hoop or hoop.
    #[arg(long, default_value = "rl", value_parser = parse_signature)]
    signature: Signature,
    /// Only linearly ordered algebras.
    #[arg(long)]
    chains: bool,
    #[arg(long)]
    count_only: bool,
    /// Directory for one document per class plus index.json.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Get {
        name: String,
        #[command(flatten)]
        out: OutFile,
    },
}

fn parse_pin(s: &str) -> Result<(Elem, Elem), String> {
    let (a, b) = s.split_once('=').ok_or("expected s=t")?;
    Ok((
        a.trim().parse().map_err(|_| "bad source index")?,
        b.trim().parse().map_err(|_| "bad target index")?,
    ))
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    [
        Signature::ResiduatedLattice,
        Signature::BoundedHoop,
        Signature::Hoop,
    ]
    .into_iter()
    .find(|sig| sig.tag() == s)
    .ok_or_else(|| format!("unknown signature {s:?}"))
}

/// A failure that ends the command with the given exit code.
struct Exit(u8, String);

const TRUE: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const INVALID: u8 = 3;

type Outcome = Result<u8, Exit>;

fn load_error(arg: &str, e: LoadError) -> Exit {
    let kind = if e.is_validation() {
        "validation error"
    } else {
        "parse error"
    };
    Exit(INVALID, format!("{arg}: {kind}: {e}"))
}

/// A document path, or failing that a catalog name.
fn resolve(arg: &str) -> Result<FiniteAlgebra, Exit> {
    let path = Path::new(arg);
    if path.is_file() {
        let loaded = document::load(path).map_err(|e| load_error(arg, e))?;
        if let Some(notice) = loaded.notice {
            eprintln!("notice: {arg}: {notice}");
        }
        return Ok(loaded.algebra);
    }
    Catalog::standard()
        .get(arg)
        .map_err(|e| Exit(INVALID, format!("{arg}: not a readable file, and {e}")))
}

fn load_class(dir: &Path) -> Result<Vec<(String, FiniteAlgebra)>, Exit> {
    let entries =
        fs::read_dir(dir).map_err(|e| Exit(INVALID, format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json")
                && p.file_name().is_some_and(|n| n != "index.json")
        })
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            resolve(&p.to_string_lossy()).map(|a| (name, a))
        })
        .collect()
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("json values serialize")
        );
    } else {
        print!("{text}");
    }
}

fn write_document(a: &FiniteAlgebra, out: &OutFile, json: bool) -> Outcome {
    let text = document::to_json_string(a);
    match &out.output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Exit(USAGE, format!("{}: {e}", path.display())))?;
            emit(
                json,
                json!({ "written": path }),
                format!("wrote {}\n", path.display()),
            );
        }
        None => print!("{text}"),
    }
    Ok(TRUE)
}

fn set_text(s: &ElementSet) -> String {
    s.to_string()
}

fn verdict(b: bool) -> u8 {
    if b {
        TRUE
    } else {
        FALSE
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Validate { algebra } => {
            let a = match resolve(&algebra) {
                Err(Exit(_, msg)) if msg.contains("validation error") => {
                    eprintln!("{msg}");
                    emit(
                        json,
                        json!({ "valid": false, "error": msg }),
                        "invalid\n".into(),
                    );
                    return Ok(FALSE);
                }
                other => other?,
            };
            let report = validate_axioms(&a);
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({ "axiom": v.axiom.to_string(), "witness": v.witness }))
                .collect();
            let text = if report.is_valid() {
                "valid\n".to_string()
            } else {
                format!("invalid\n{report}\n")
            };
            emit(
                json,
                json!({ "valid": report.is_valid(), "violations": violations }),
                text,
            );
            Ok(verdict(report.is_valid()))
        }
        Command::Classify { algebra } => {
            let a = resolve(&algebra)?;
            let p = classify(&a);
            let mut text = format!("{} ({}, {} elements)\n", a.label(), a.signature(), a.size());
            for eq in EquationId::ALL {
                match p.flag(eq) {
                    Some(true) => text.push_str(&format!("  {:<7} ✓\n", eq.name())),
                    Some(false) => text.push_str(&format!("  {:<7} ✗\n", eq.name())),
                    None => text.push_str(&format!("  {:<7} n/a\n", eq.name())),
                }
            }
            text.push_str(&format!(
                "linearly ordered: {}\n",
                if p.linearly_ordered { "yes" } else { "no" }
            ));
            let names: Vec<&str> = p.memberships.iter().map(|v| v.name()).collect();
            text.push_str(&format!("varieties: {}\n", names.join(" ")));
            let flags: serde_json::Map<String, Value> = p
                .equation_flags
                .iter()
                .map(|(k, v)| (k.name().to_string(), json!(v)))
                .collect();
            emit(
                json,
                json!({ "name": a.label(), "equations": flags, "linearly_ordered": p.linearly_ordered, "varieties": names }),
                text,
            );
            Ok(TRUE)
        }
        Command::Filters { algebra, maximal } => {
            let a = resolve(&algebra)?;
            let filters = all_filters(&a, maximal);
            let text: String = filters.iter().map(|f| format!("{f}\n")).collect();
            emit(json, json!({ "filters": filters }), text);
            Ok(TRUE)
        }
        Command::Radical { algebra } => {
            let a = resolve(&algebra)?;
            let r = radical_report(&a).map_err(|e| Exit(USAGE, format!("{algebra}: {e}")))?;
            let text = format!(
                "radical: {}\ndense: {}\nprincipal unity: {}\nsemisimple: {}\nradical = dense: {}\n",
                r.radical,
                r.dense,
                r.principal_unity.map_or("none".to_string(), |u| u.to_string()),
                r.semisimple,
                r.radical_dense
            );
            emit(
                json,
                serde_json::to_value(&r).expect("report serializes"),
                text,
            );
            Ok(TRUE)
        }
        Command::Quotient {
            algebra,
            filter,
            out,
        } => {
            let a = resolve(&algebra)?;
            let f = filter_from_members(&a, &filter).ok_or_else(|| {
                Exit(
                    USAGE,
                    format!("{filter:?} is not a filter of {}", a.label()),
                )
            })?;
            write_document(&quotient(&a, &f).algebra, &out, json)
        }
        Command::Product { left, right, out } => {
            let (a, b) = (resolve(&left)?, resolve(&right)?);
            let p = direct_product(&a, &b).map_err(|e| Exit(USAGE, e.to_string()))?;
            write_document(&p, &out, json)
        }
        Command::Diamond { algebra, out } => {
            let a = resolve(&algebra)?;
            let d = diamond(&a).map_err(|e| Exit(USAGE, e.to_string()))?;
            write_document(&d.algebra, &out, json)
        }
        Command::Subalgebras { algebra } => {
            let a = resolve(&algebra)?;
            let subs = all_subalgebras(&a);
            let text: String = subs.iter().map(|s| format!("{}\n", set_text(s))).collect();
            emit(json, json!({ "subalgebras": subs }), text);
            Ok(TRUE)
        }
        Command::Hom(args) => {
            let (a, b) = (resolve(&args.source)?, resolve(&args.target)?);
            let mode = if args.mono {
                SearchMode::Mono
            } else if args.iso {
                SearchMode::Iso
            } else if args.count {
                SearchMode::Count
            } else if args.exists {
                SearchMode::Exists
            } else {
                SearchMode::All
            };
            let c = SearchConstraint {
                pins: args.pins,
                mode,
            };
            let result = homomorphisms(&a, &b, &c).map_err(|e| Exit(USAGE, e.to_string()))?;
            let found = result.count() > 0;
            let text = match &result {
                SearchResult::Count(n) => format!("{n}\n"),
                SearchResult::Exists(w) => match w {
                    Some(f) => format!("yes {f}\n"),
                    None => "no\n".into(),
                },
                SearchResult::Morphisms(v) => v.iter().map(|f| format!("{f}\n")).collect(),
            };
            let value = match &result {
                SearchResult::Count(n) => json!({ "count": n }),
                SearchResult::Exists(w) => json!({ "exists": w.is_some(), "witness": w }),
                SearchResult::Morphisms(v) => json!({ "count": v.len(), "morphisms": v }),
            };
            emit(json, value, text);
            Ok(verdict(found))
        }
        Command::Retract { algebra, host } => {
            let (b, a) = (resolve(&algebra)?, resolve(&host)?);
            let w = is_retract_of(&b, &a);
            let text = match &w {
                Some(w) => format!(
                    "yes\nembedding: {}\nretraction: {}\n",
                    w.embedding, w.retraction
                ),
                None => "no\n".into(),
            };
            emit(json, json!({ "retract": w.is_some(), "witness": w }), text);
            Ok(verdict(w.is_some()))
        }
        Command::Absretract { algebra, class } => {
            let a = resolve(&algebra)?;
            let members = load_class(&class)?;
            let algebras: Vec<FiniteAlgebra> = members.iter().map(|(_, m)| m.clone()).collect();
            let outcome = is_absolute_retract_relative(&a, &algebras);
            let text = match &outcome {
                Ok(()) => format!(
                    "yes, relative to class {} ({} members)\n",
                    class.display(),
                    members.len()
                ),
                Err(f) => format!(
                    "no: embedding {} into {} has no retraction\n",
                    f.embedding, members[f.class_index].0
                ),
            };
            let value = match &outcome {
                Ok(()) => {
                    json!({ "absolute_retract": true, "relative_to_class": class, "class_size": members.len() })
                }
                Err(f) => json!({
                    "absolute_retract": false,
                    "relative_to_class": class,
                    "failing_member": members[f.class_index].0,
                    "embedding": f.embedding,
                }),
            };
            emit(json, value, text);
            Ok(verdict(outcome.is_ok()))
        }
        Command::Injective { algebra, class } => {
            let a = resolve(&algebra)?;
            let members = load_class(&class)?;
            let algebras: Vec<FiniteAlgebra> = members.iter().map(|(_, m)| m.clone()).collect();
            let outcome = is_injective_relative(&a, &algebras);
            let text = match &outcome {
                Ok(()) => format!(
                    "yes, relative to class {} ({} members)\n",
                    class.display(),
                    members.len()
                ),
                Err(f) => format!(
                    "no: map {} from {} does not extend along mono {} into {}\n",
                    f.map, members[f.domain_index].0, f.mono, members[f.codomain_index].0
                ),
            };
            let value = match &outcome {
                Ok(()) => {
                    json!({ "injective": true, "relative_to_class": class, "class_size": members.len() })
                }
                Err(f) => json!({
                    "injective": false,
                    "relative_to_class": class,
                    "domain": members[f.domain_index].0,
                    "codomain": members[f.codomain_index].0,
                    "mono": f.mono,
                    "map": f.map,
                }),
            };
            emit(json, value, text);
            Ok(verdict(outcome.is_ok()))
        }
        Command::Enumerate(args) => {
            let filter = EnumFilter {
                varieties: args.varieties,
                chains_only: args.chains,
            };
            let found = enumerate_algebras(args.size, args.signature, &filter)
                .map_err(|e| Exit(USAGE, e.to_string()))?;
            if let Some(dir) = &args.output {
                if !args.count_only {
                    write_enumeration(dir, &found)?;
                }
            }
            if args.count_only {
                emit(
                    json,
                    json!({ "count": found.len() }),
                    format!("{}\n", found.len()),
                );
            } else {
                let names: Vec<String> = found.iter().map(|a| a.label()).collect();
                let text: String = names.iter().map(|n| format!("{n}\n")).collect();
                emit(
                    json,
                    json!({ "count": found.len(), "algebras": names }),
                    text,
                );
            }
            Ok(TRUE)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let text: String = ENTRIES
                    .iter()
                    .map(|e| format!("{:<10} {}\n", e.name, e.description))
                    .collect();
                let value: Vec<Value> = ENTRIES
                    .iter()
                    .map(|e| json!({ "name": e.name, "parameterized": e.parameterized, "description": e.description }))
                    .collect();
                emit(json, json!(value), text);
                Ok(TRUE)
            }
            CatalogAction::Get { name, out } => {
                let a = Catalog::standard()
                    .get(&name)
                    .map_err(|e| Exit(USAGE, e.to_string()))?;
                write_document(&a, &out, json)
            }
        },
        Command::PaperSuite { only } => {
            let unknown = unknown_selectors(&only);
            if !unknown.is_empty() {
                return Err(Exit(
                    USAGE,
                    format!("unknown checks: {}", unknown.join(", ")),
                ));
            }
            let report = paper_suite(&Catalog::standard(), &only);
            emit(
                json,
                serde_json::to_value(&report).expect("report serializes"),
                report.to_string(),
            );
            Ok(verdict(report.passed))
        }
    }
}

fn write_enumeration(dir: &Path, found: &[FiniteAlgebra]) -> Result<(), Exit> {
    let fail = |e: std::io::Error| Exit(USAGE, format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(fail)?;
    let mut index = Vec::new();
    for a in found {
        let file = format!("{}.json", a.label());
        document::save(a, &dir.join(&file)).map_err(fail)?;
        let p = classify(a);
        let varieties: Vec<&str> = p.memberships.iter().map(|v| v.name()).collect();
        index.push(json!({ "name": a.label(), "file": file, "varieties": varieties, "chain": p.linearly_ordered }));
    }
    let text = serde_json::to_string_pretty(&json!({ "count": found.len(), "algebras": index }))
        .expect("serializes");
    fs::write(dir.join("index.json"), text + "\n").map_err(fail)
}

fn configure_threads() {
    let n = std::env::var("RESALG_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if n > 0 {
        // a pool that is already built keeps its size
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { TRUE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
