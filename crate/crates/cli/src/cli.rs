use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use invcomp_core::check::{check_implication, search_joint_model, CheckError, CheckOptions};
use invcomp_core::geometry::{Interpretation, Sampler, SamplerId};
use invcomp_core::logic::{parse, Decider, LogicError, DEFAULT_ATOM_CAP};
use invcomp_core::schema::{
    check_composition_law, compose, invert, refine_to_xor, validate_generating_set,
    ExclusivityEvidence, SchemaError,
};
use invcomp_core::Formula;
use serde_json::json;

use crate::report::{emit_report, Format};
use crate::schema_file::{read_schema_file, write_schema_file, SchemaFile, SchemaFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "invcomp", version, about = "Compose, invert and model-check problem schemas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Number of sampled configurations
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_ATOM_CAP)]
    pub atom_cap: usize,
    #[arg(long, global = true, default_value_t = 10)]
    pub max_counterexamples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the truth table of a formula
    Table { formula: String },
    /// Decide whether two formulas are equivalent
    Equiv { left: String, right: String },
    /// Compose generating schemas (files or directories of *.schema)
    Compose {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Refine the disjunction to exactly-one once exclusivity is established
        #[arg(long)]
        xor: bool,
        /// With --xor, accept exclusivity on trust when it cannot be shown
        #[arg(long, requires = "xor")]
        assume_exclusive: bool,
    },
    /// Emit the inverse of a composed schema
    Invert { path: PathBuf },
    /// Check a schema against sampled configurations
    Verify {
        path: PathBuf,
        #[arg(long)]
        sampler: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    File(#[from] SchemaFileError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Output already written; exit with the falsified status.
    #[error("{0}")]
    Falsified(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Falsified(_) => EXIT_FALSIFIED,
            Failure::Schema(SchemaError::ExclusivityContradicted(_))
            | Failure::Schema(SchemaError::CompositionLawFailed(_)) => EXIT_FALSIFIED,
            _ => EXIT_USAGE,
        }
    }
}

struct Outcome {
    body: Vec<u8>,
    code: i32,
}

impl Outcome {
    fn new(body: impl Into<Vec<u8>>, passed: bool) -> Self {
        Outcome { body: body.into(), code: if passed { EXIT_OK } else { EXIT_FALSIFIED } }
    }
}

/// Runs the tool on `argv` (program name first), writing to `stdout` and
/// `stderr`. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome.body, stdout) {
            Ok(()) => outcome.code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, body: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|source| Failure::Io { path: path.display().to_string(), source }),
        None => stdout
            .write_all(body)
            .map_err(|source| Failure::Io { path: "<stdout>".into(), source }),
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let decider = Decider::with_atom_cap(cli.atom_cap);
    match &cli.command {
        Command::Table { formula: text } => table(cli, &decider, &formula(text)?),
        Command::Equiv { left, right } => equiv(cli, &decider, &formula(left)?, &formula(right)?),
        Command::Compose { paths, xor, assume_exclusive } => {
            compose_files(cli, &decider, paths, *xor, *assume_exclusive)
        }
        Command::Invert { path } => {
            let file = read_schema_file(path, &decider)?;
            let inverse = invert(&file.schema)?;
            Ok(Outcome::new(write_schema_file(&inverse, &file.interpretation), true))
        }
        Command::Verify { path, sampler } => {
            let id = SamplerId::from_id(sampler)
                .ok_or_else(|| Failure::Usage(format!("unknown sampler `{sampler}`")))?;
            let file = read_schema_file(path, &decider)?;
            let options = CheckOptions {
                sampler: Sampler::default(),
                counterexample_cap: cli.max_counterexamples,
            };
            let report =
                check_implication(&file.schema, &file.interpretation, id, cli.samples, cli.seed, &options)?;
            Ok(Outcome::new(emit_report(&report, cli.format), report.all_passed()))
        }
    }
}

fn bit(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

fn table(cli: &Cli, decider: &Decider, f: &Formula) -> Result<Outcome, Failure> {
    let t = decider.truth_table(f)?;
    let body = match cli.format {
        Format::Json => {
            let rows: Vec<_> = (0..t.len())
                .map(|i| {
                    let v = t.valuation(i);
                    let values: Vec<bool> = t.atoms().iter().map(|a| v.get(a) == Some(true)).collect();
                    json!({ "values": values, "result": t.value(i) })
                })
                .collect();
            let doc = json!({
                "formula": f.to_string(),
                "atoms": t.atoms(),
                "rows": rows,
                "true_rows": t.true_count(),
                "tautology": t.all_true(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} | {}", t.atoms().join(" "), f);
            for (v, value) in t.rows() {
                let cells: Vec<String> = t
                    .atoms()
                    .iter()
                    .map(|a| format!("{:<width$}", bit(v.get(a) == Some(true)), width = a.len()))
                    .collect();
                let _ = writeln!(s, "{} | {}", cells.join(" "), bit(value));
            }
            let _ = writeln!(s, "rows: {}, true: {}", t.len(), t.true_count());
            s
        }
    };
    Ok(Outcome::new(body, true))
}

fn equiv(cli: &Cli, decider: &Decider, f: &Formula, g: &Formula) -> Result<Outcome, Failure> {
    let t = decider.truth_table(&Formula::iff(f.clone(), g.clone()))?;
    let equivalent = t.all_true();
    let witness = t.first_false();
    let body = match cli.format {
        Format::Json => {
            let witness = witness.map(|v| {
                v.iter().map(|(a, b)| (a.to_string(), json!(b))).collect::<serde_json::Map<_, _>>()
            });
            let doc = json!({
                "left": f.to_string(),
                "right": g.to_string(),
                "equivalent": equivalent,
                "rows": t.len(),
                "witness": witness,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", if equivalent { "EQUIVALENT" } else { "NOT EQUIVALENT" });
            let _ = writeln!(s, "rows: {}", t.len());
            if let Some(v) = witness {
                let _ = writeln!(s, "differs at: {v}");
            }
            s
        }
    };
    Ok(Outcome::new(body, equivalent))
}

fn schema_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            let entries = std::fs::read_dir(path)
                .map_err(|source| Failure::Io { path: path.display().to_string(), source })?;
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "schema"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(path.clone());
        }
    }
    Ok(out)
}

/// Union of the files' bindings; conflicting bindings are an error.
fn merged_interpretation(files: &[SchemaFile]) -> Result<Interpretation, Failure> {
    let mut merged = Interpretation::new();
    for f in files {
        for (atom, p) in f.interpretation.iter() {
            if let Some(prev) = merged.bind(atom, p) {
                if prev != p {
                    return Err(Failure::Usage(format!(
                        "atom `{atom}` bound to both {prev} and {p}"
                    )));
                }
            }
        }
    }
    Ok(merged)
}

fn compose_files(
    cli: &Cli,
    decider: &Decider,
    paths: &[PathBuf],
    xor: bool,
    assume_exclusive: bool,
) -> Result<Outcome, Failure> {
    let files = schema_paths(paths)?
        .iter()
        .map(|p| read_schema_file(Path::new(p), decider))
        .collect::<Result<Vec<_>, _>>()?;
    let interp = merged_interpretation(&files)?;
    let set = validate_generating_set(files.into_iter().map(|f| f.schema).collect())?;
    let law = check_composition_law(decider, &set)?;
    let mut schema = compose(decider, &set)?;

    let mut notes = String::new();
    let _ = writeln!(
        notes,
        "# composition law: {}/{} rows true",
        law.true_count(),
        law.len()
    );
    if xor {
        let evidence = exclusivity(cli, decider, &schema, &interp, assume_exclusive, &mut notes)?;
        let _ = writeln!(notes, "# exclusivity: {evidence}");
        match refine_to_xor(&schema, evidence) {
            Ok(refined) => schema = refined,
            Err(e @ SchemaError::ExclusivityContradicted(_)) => {
                return Ok(Outcome::new(format!("{notes}# refinement refused: {e}\n"), false));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::new(notes + &write_schema_file(&schema, &interp), true))
}

/// Propositional evidence when available, otherwise a joint-model search
/// over every pair of disjuncts, otherwise (if allowed) an assertion.
fn exclusivity(
    cli: &Cli,
    decider: &Decider,
    schema: &invcomp_core::ProblemSchema,
    interp: &Interpretation,
    assume: bool,
    notes: &mut String,
) -> Result<ExclusivityEvidence, Failure> {
    if let Some(ev) = ExclusivityEvidence::propositional(decider, schema.context(), schema.disjuncts())? {
        return Ok(ev);
    }
    let disjuncts = schema.disjuncts();
    let group = disjuncts
        .iter()
        .chain([schema.context()])
        .flat_map(|f| f.atoms())
        .map(|a| interp.get(&a).map(|p| p.group()))
        .collect::<Option<Vec<_>>>()
        .and_then(|groups| {
            let first = *groups.first()?;
            groups.iter().all(|&g| g == first).then_some(first)
        });
    let Some(group) = group else {
        if assume {
            return Ok(ExclusivityEvidence::asserted());
        }
        return Err(Failure::Falsified(
            "exclusivity is not propositional and the disjuncts are not bound to one geometry group"
                .into(),
        ));
    };
    let sampler = Sampler::default();
    let mut total = 0;
    for (i, f) in disjuncts.iter().enumerate() {
        for g in &disjuncts[i + 1..] {
            let p = Formula::and(schema.context().clone(), f.clone());
            let search = search_joint_model(&p, g, interp, group, cli.samples, cli.seed, &sampler)?;
            total += search.samples;
            if let Some(w) = &search.witness {
                let cfg = crate::report::configuration_json(w);
                let _ = writeln!(notes, "# joint model of `{f}` and `{g}`: {cfg}");
                return Ok(ExclusivityEvidence::empirical(total, 1));
            }
        }
    }
    Ok(ExclusivityEvidence::empirical(total, 0))
}
