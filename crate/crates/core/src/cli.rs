//! Command-line front end. Exit codes: 0 success / holds, 1 checked and
//! false, 2 usage or I/O error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{self, Element, FiniteAiSemiring, Morphism};
use crate::catalog::{self, ListFilter, Status};
use crate::constructions::{self, FiniteSemigroup, WordKind, WordSemiringSpec};
use crate::criteria::Lemma;
use crate::derivation;
use crate::enumerate::{self, EnumerateOptions};
use crate::eval::{self, Evaluator, IdentityVerdict};
use crate::iso;
use crate::json::{SemiringJson, VerdictJson};
use crate::par::{self, Execution};
use crate::term::{self, Identity, SimpleIdentity};

pub const SUCCESS: i32 = 0;
pub const FALSE: i32 = 1;
pub const ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "aisemiring", version, about = "Finite additively idempotent semiring workbench")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run on the current thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the semiring laws for a table file or reference.
    Validate { semiring: String },
    /// List all ai-semirings of a given order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        height1: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check identities in a semiring.
    Check(CheckArgs),
    /// Find an isomorphism.
    Iso { a: String, b: String },
    /// Find an embedding of the first semiring into the second.
    Embed { small: String, big: String },
    /// Find a subdirect embedding of S into A×B.
    Subdirect { s: String, a: String, b: String },
    /// Build a semiring; prints semiring JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Decide a simple identity with a syntactic criterion.
    Criteria {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        identity: String,
        /// Also evaluate by brute force and report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Look for the noncyclic-ideal plus S7 witness of nonfinite basability.
    NfbCheck { semiring: String },
    /// Named semirings.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Derivation certificates.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["identity", "basis", "file"])))]
struct CheckArgs {
    #[arg(long)]
    semiring: String,
    #[arg(long)]
    identity: Option<String>,
    /// Check the catalogued basis of this name.
    #[arg(long)]
    basis: Option<String>,
    /// One identity per line; `#` starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ConstructKind {
    S(WordsArg),
    Sc(WordsArg),
    M(WordsArg),
    Mc(WordsArg),
    /// Flat extension of a cyclic group `zN` or of a semigroup table file.
    FlatExt {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        group: Option<String>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    Ne { semiring: String },
    Ie { semiring: String },
    Dual { semiring: String },
    Product { a: String, b: String },
}

#[derive(Debug, Args)]
struct WordsArg {
    /// Comma-separated words, e.g. "ab,a^2".
    #[arg(long)]
    words: String,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        height1: bool,
        #[arg(long, value_enum)]
        status: Option<StatusArg>,
        #[arg(long)]
        flat: bool,
    },
    Show { name: String },
    Verify,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StatusArg {
    FinitelyBased,
    NonfinitelyBased,
    External,
}

impl From<StatusArg> for Status {
    fn from(s: StatusArg) -> Self {
        match s {
            StatusArg::FinitelyBased => Status::FinitelyBased,
            StatusArg::NonfinitelyBased => Status::NonfinitelyBased,
            StatusArg::External => Status::External,
        }
    }
}

#[derive(Debug, Subcommand)]
enum CertAction {
    Verify {
        file: PathBuf,
        /// Also evaluate the conclusion in every catalogue model of the axioms.
        #[arg(long)]
        soundness: bool,
    },
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(i32, Value, String), Failure>;

fn verdict_code(holds: bool) -> i32 {
    if holds {
        SUCCESS
    } else {
        FALSE
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    SUCCESS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    ERROR
                }
            };
        }
    };
    par::init_thread_pool();
    let execution = if cli.sequential { Execution::Sequential } else { Execution::available() };
    match dispatch(cli.command, execution) {
        Ok((code, value, text)) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serialisable"))
            } else {
                write!(out, "{text}")
            };
            if written.is_err() {
                return ERROR;
            }
            code
        }
        Err(Failure(msg)) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": msg }));
            }
            let _ = writeln!(err, "error: {msg}");
            ERROR
        }
    }
}

/// A semiring JSON file if `arg` names one, otherwise a catalogue reference.
pub fn load_semiring(arg: &str) -> Result<FiniteAiSemiring, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return crate::json::semiring_from_json(&text).map_err(|e| format!("{arg}: {e}"));
    }
    catalog::resolve(arg).map_err(|e| e.to_string())
}

fn dispatch(command: Command, execution: Execution) -> Outcome {
    match command {
        Command::Validate { semiring } => validate(&semiring),
        Command::Enumerate { order, height1, count_only, out } => {
            enumerate_cmd(order, height1, count_only, out.as_deref(), execution)
        }
        Command::Check(args) => check(args, execution),
        Command::Iso { a, b } => {
            let (a, b) = (load_semiring(&a)?, load_semiring(&b)?);
            Ok(morphism_outcome("isomorphism", iso::find_isomorphism(&a, &b)))
        }
        Command::Embed { small, big } => {
            let (a, b) = (load_semiring(&small)?, load_semiring(&big)?);
            Ok(morphism_outcome("embedding", iso::find_embedding(&a, &b)))
        }
        Command::Subdirect { s, a, b } => {
            let (s, a, b) = (load_semiring(&s)?, load_semiring(&a)?, load_semiring(&b)?);
            Ok(morphism_outcome("subdirect embedding", iso::find_subdirect_embedding(&s, &a, &b)))
        }
        Command::Construct { kind } => construct(kind),
        Command::Criteria { lemma, identity, oracle } => criteria(&lemma, &identity, oracle, execution),
        Command::NfbCheck { semiring } => nfb_check(&semiring),
        Command::Catalog { action } => catalog_cmd(action),
        Command::Cert { action: CertAction::Verify { file, soundness } } => cert_verify(&file, soundness),
    }
}

fn validate(arg: &str) -> Outcome {
    let path = Path::new(arg);
    let raw: SemiringJson = if path.is_file() {
        serde_json::from_str(&fs::read_to_string(path)?)?
    } else {
        SemiringJson::from(&catalog::resolve(arg)?)
    };
    let report = algebra::validate(&raw.add, &raw.mul)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let names: Vec<&str> = v.witness.iter().map(|&a| raw.elements.get(a).map_or("?", String::as_str)).collect();
            json!({ "law": v.law.name(), "witness": names })
        })
        .collect();
    let valid = report.is_valid();
    let text = if valid { format!("{}: valid ai-semiring\n", raw.name) } else { format!("{}: {report}\n", raw.name) };
    Ok((verdict_code(valid), json!({ "name": raw.name, "valid": valid, "violations": violations }), text))
}

fn enumerate_cmd(order: usize, height1: bool, count_only: bool, out: Option<&Path>, execution: Execution) -> Outcome {
    if order == 0 || order > enumerate::MAX_SEMILATTICE_ORDER {
        return Err(Failure(format!("order must be between 1 and {}", enumerate::MAX_SEMILATTICE_ORDER)));
    }
    let census = enumerate::enumerate_ai_semirings(order, EnumerateOptions { height1_only: height1, execution });
    if let Some(dir) = out {
        enumerate::write_census(dir, &census)?;
    }
    let count = census.count();
    let mut text = format!("{count}\n");
    let mut value = json!({ "order": order, "height1": height1, "count": count });
    if !count_only {
        for e in &census.algebras {
            text.push_str(&format!("{} {}\n", e.semiring.name(), e.key.to_hex()));
        }
        value["algebras"] = census
            .algebras
            .iter()
            .map(|e| json!({ "name": e.semiring.name(), "key": e.key.to_hex(), "height": e.height }))
            .collect();
    }
    Ok((SUCCESS, value, text))
}

fn check(args: CheckArgs, execution: Execution) -> Outcome {
    let s = load_semiring(&args.semiring)?;
    let ids: Vec<Identity> = if let Some(text) = &args.identity {
        vec![text.parse()?]
    } else if let Some(name) = &args.basis {
        catalog::basis(name).ok_or_else(|| Failure(format!("no catalogued basis for {name}")))?
    } else if let Some(file) = &args.file {
        term::parse_identities(&fs::read_to_string(file)?)?
    } else {
        unreachable!("clap requires one source")
    };
    let evaluator = Evaluator { execution, ..Evaluator::default() };
    let report = evaluator.check_basis(&s, &ids)?;
    let verdicts: Vec<VerdictJson> = report.results.iter().map(|v| VerdictJson::new(&s, v)).collect();
    let holds = report.all_hold();
    let text: String = report.results.iter().map(|v| verdict_line(&s, v)).collect();
    let value = if ids.len() == 1 && args.identity.is_some() {
        serde_json::to_value(&verdicts[0])?
    } else {
        json!({ "semiring": s.name(), "holds": holds, "results": verdicts })
    };
    Ok((verdict_code(holds), value, text))
}

fn verdict_line(s: &FiniteAiSemiring, v: &IdentityVerdict) -> String {
    match &v.witness {
        None => format!("holds: {}\n", v.identity),
        Some(w) => {
            let asg: Vec<String> = w.iter().map(|(x, &a)| format!("{x}={}", s.element_name(a))).collect();
            format!("fails: {} at {}\n", v.identity, asg.join(", "))
        }
    }
}

fn morphism_json(m: &Morphism) -> Value {
    let s = m.source();
    let t = m.target();
    let map: BTreeMap<&str, &str> = (0..s.order()).map(|a| (s.element_name(a), t.element_name(m.apply(a)))).collect();
    json!({ "source": s.name(), "target": t.name(), "map": map })
}

fn morphism_outcome(what: &str, m: Option<Morphism>) -> (i32, Value, String) {
    match m {
        Some(m) => {
            let value = morphism_json(&m);
            let pairs: Vec<String> = (0..m.source().order())
                .map(|a| format!("{}→{}", m.source().element_name(a), m.target().element_name(m.apply(a))))
                .collect();
            (SUCCESS, json!({ "found": true, "morphism": value }), format!("{what}: {}\n", pairs.join(" ")))
        }
        None => (FALSE, json!({ "found": false, "morphism": null }), format!("no {what}\n")),
    }
}

/// A semigroup table file: `{"elements": [...], "mul": [[...]]}`.
#[derive(Debug, Deserialize, Serialize)]
struct SemigroupJson {
    elements: Vec<String>,
    mul: Vec<Vec<Element>>,
}

fn construct(kind: ConstructKind) -> Outcome {
    let word = |kind, w: &WordsArg| -> Result<FiniteAiSemiring, Failure> {
        Ok(constructions::word_semiring(&WordSemiringSpec::parse(kind, &w.words)?)?)
    };
    let s = match kind {
        ConstructKind::S(w) => word(WordKind::S, &w)?,
        ConstructKind::Sc(w) => word(WordKind::Sc, &w)?,
        ConstructKind::M(w) => word(WordKind::M, &w)?,
        ConstructKind::Mc(w) => word(WordKind::Mc, &w)?,
        ConstructKind::FlatExt { group: Some(g), .. } => catalog::resolve(&format!("@flatext:{g}"))?,
        ConstructKind::FlatExt { table: Some(path), .. } => {
            let raw: SemigroupJson = serde_json::from_str(&fs::read_to_string(&path)?)?;
            constructions::flat_extension(&FiniteSemigroup::new(raw.elements, raw.mul)?)?
        }
        ConstructKind::FlatExt { .. } => return Err(Failure("flat-ext needs --group or --table".into())),
        ConstructKind::Ne { semiring } => constructions::null_extension(&load_semiring(&semiring)?)?,
        ConstructKind::Ie { semiring } => constructions::idempotent_extension(&load_semiring(&semiring)?)?,
        ConstructKind::Dual { semiring } => load_semiring(&semiring)?.dual(),
        ConstructKind::Product { a, b } => load_semiring(&a)?.direct_product(&load_semiring(&b)?),
    };
    let value = serde_json::to_value(SemiringJson::from(&s))?;
    let text = crate::json::semiring_to_json(&s) + "\n";
    Ok((SUCCESS, value, text))
}

fn criteria(lemma: &str, identity: &str, oracle: bool, execution: Execution) -> Outcome {
    let lemma: Lemma = lemma.parse()?;
    let si: SimpleIdentity = identity.parse()?;
    let v = lemma.check(&si);
    let mut value = json!({ "lemma": lemma.name(), "identity": si.to_string(), "holds": v.holds, "rule": v.rule });
    let mut text = format!("{}: {} in {} ({})\n", if v.holds { "holds" } else { "fails" }, si, lemma.name(), v.rule);
    let mut code = verdict_code(v.holds);
    if oracle {
        let evaluator = Evaluator { execution, ..Evaluator::default() };
        let brute = evaluator.satisfies(&lemma.semiring(), &si.as_identity())?;
        let agree = brute == v.holds;
        value["oracle"] = json!(brute);
        value["agree"] = json!(agree);
        text.push_str(&format!("brute force: {}; {}\n", brute, if agree { "agree" } else { "DISAGREE" }));
        if !agree {
            code = FALSE;
        }
    }
    Ok((code, value, text))
}

fn nfb_check(arg: &str) -> Outcome {
    let s = load_semiring(arg)?;
    let r = constructions::nfb_witness(&s);
    let cyclic: Vec<&str> = constructions::cyclic_elements(&s).into_iter().map(|a| s.element_name(a)).collect();
    let value = json!({
        "semiring": s.name(),
        "witness": r.conclusion,
        "noncyclic_order_ideal": r.noncyclic_order_ideal,
        "cyclic_elements": cyclic,
        "index": constructions::semiring_index(&s),
        "s7_embedding": r.s7_embedding.as_ref().map(morphism_json),
    });
    let text = format!(
        "{}: noncyclic elements {}form an order ideal; S7 {}; witness {}\n",
        s.name(),
        if r.noncyclic_order_ideal { "" } else { "do not " },
        if r.s7_embedding.is_some() { "embeds" } else { "does not embed" },
        if r.conclusion { "found" } else { "absent" },
    );
    Ok((verdict_code(r.conclusion), value, text))
}

fn catalog_cmd(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List { order, height1, status, flat } => {
            let filter = ListFilter {
                order,
                height1: height1.then_some(true),
                status: status.map(Into::into),
                flat: flat.then_some(true),
            };
            let entries = catalog::list(&filter);
            let text = entries
                .iter()
                .map(|e| format!("{:<10} order {} height {} {}{}\n", e.name, e.order, e.height, e.status, if e.flat { " flat" } else { "" }))
                .collect();
            Ok((SUCCESS, serde_json::to_value(&entries)?, text))
        }
        CatalogAction::Show { name } => {
            let e = catalog::entry(&name)?;
            let basis: Option<Vec<String>> = e.basis.as_ref().map(|b| b.iter().map(Identity::to_string).collect());
            let claims: Vec<String> = e.claims.iter().map(ToString::to_string).collect();
            let value = json!({
                "name": e.name,
                "status": e.status,
                "semiring": SemiringJson::from(&e.semiring),
                "basis": basis,
                "claims": claims,
            });
            let mut text = format!("{} ({})\n{}\n", e.name, e.status, crate::json::semiring_to_json(&e.semiring));
            if let Some(b) = &basis {
                text.push_str("basis:\n");
                b.iter().for_each(|id| text.push_str(&format!("  {id}\n")));
            }
            Ok((SUCCESS, value, text))
        }
        CatalogAction::Verify => {
            let results = catalog::verify_all_claims();
            let all = results.iter().all(|r| r.holds);
            let text = results
                .iter()
                .map(|r| {
                    let extra = r.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
                    format!("{} {}{extra}\n", if r.holds { "ok  " } else { "FAIL" }, r.description)
                })
                .collect();
            Ok((verdict_code(all), json!({ "all_hold": all, "claims": results }), text))
        }
    }
}

fn cert_verify(path: &Path, soundness: bool) -> Outcome {
    let cert = derivation::certificate_from_json(&fs::read_to_string(path)?)?;
    let v = cert.verify()?;
    let mut value = serde_json::to_value(&v)?;
    let mut text = match (&v.failed_step, &v.failure) {
        (Some(i), Some(f)) => format!("invalid at step {i}: {f}\n"),
        _ => format!("valid: {}\n", v.conclusion),
    };
    let mut ok = v.valid;
    if soundness {
        let algebras: Vec<FiniteAiSemiring> = catalog::names().iter().filter_map(|n| catalog::get(n).ok()).collect();
        let r = derivation::soundness_check(&cert, &algebras)?;
        text.push_str(&format!("models of the axioms: {}; counterexamples: {}\n", r.models.len(), r.counterexamples.len()));
        ok &= r.sound();
        value["soundness"] = serde_json::to_value(&r)?;
    }
    Ok((verdict_code(ok), value, text))
}

/// Evaluates one identity, for callers that want a single verdict.
pub fn check_identity(semiring: &str, identity: &str) -> Result<VerdictJson, String> {
    let s = load_semiring(semiring)?;
    let id: Identity = identity.parse().map_err(|e: term::TermError| e.to_string())?;
    let witness = eval::counterexample(&s, &id).map_err(|e| e.to_string())?;
    Ok(VerdictJson::new(&s, &IdentityVerdict { identity: id, witness }))
}
