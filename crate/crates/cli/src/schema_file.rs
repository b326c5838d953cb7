//! Line-oriented schema files.
//!
//! ```text
//! # median and parallel cases, inverted
//! [problem]
//! name = group1
//! kind = inverse
//! context = t
//! disjunct = median: p1
//! disjunct = parallel: p2
//! conclusion = r
//! evidence = empirical 10000
//!
//! [interpretation]
//! t = group1.triangle_line_point
//! p1 = group1.median
//! ```
//!
//! `disjunct` repeats; an optional `label:` prefix names the branch. `kind`
//! defaults to `generating` for one disjunct and `composed` otherwise.
//! `evidence` is one of `propositional`, `asserted`, `empirical <samples>`.

use std::fmt::Write as _;
use std::path::Path;

use invcomp_core::geometry::{Interpretation, PredicateId};
use invcomp_core::logic::{is_atom_name, parse, Decider, Formula, LogicError};
use invcomp_core::schema::{EvidenceStatus, ExclusivityEvidence, ProblemSchema, SchemaError, SchemaKind};

#[derive(Debug, thiserror::Error)]
pub enum SchemaFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: LogicError },
    #[error("missing `{0}` in [problem]")]
    Missing(&'static str),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    InFile { path: String, source: Box<SchemaFileError> },
}

/// A schema together with the predicate bindings of its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaFile {
    pub schema: ProblemSchema,
    pub interpretation: Interpretation,
}

#[derive(PartialEq, Eq)]
enum Section {
    None,
    Problem,
    Interpretation,
}

fn syntax(line: usize, message: impl Into<String>) -> SchemaFileError {
    SchemaFileError::Syntax { line, message: message.into() }
}

fn is_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

pub fn parse_schema_file(text: &str, decider: &Decider) -> Result<SchemaFile, SchemaFileError> {
    let mut section = Section::None;
    let mut name = None;
    let mut kind = None;
    let mut context = None;
    let mut conclusion = None;
    let mut evidence = None;
    let mut disjuncts = Vec::new();
    let mut labels = Vec::new();
    let mut interpretation = Interpretation::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            section = match header.trim() {
                "problem" => Section::Problem,
                "interpretation" => Section::Interpretation,
                other => return Err(syntax(line, format!("unknown section [{other}]"))),
            };
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(syntax(line, "expected `key = value`"));
        };
        let (key, value) = (key.trim(), value.trim());
        let formula = |text: &str| parse(text).map_err(|source| SchemaFileError::Formula { line, source });
        let once = |taken: bool| {
            if taken {
                Err(syntax(line, format!("duplicate key `{key}`")))
            } else {
                Ok(())
            }
        };
        match section {
            Section::None => return Err(syntax(line, "key outside of a section")),
            Section::Problem => match key {
                "name" => {
                    once(name.is_some())?;
                    if value.is_empty() {
                        return Err(syntax(line, "empty name"));
                    }
                    name = Some(value.to_string());
                }
                "kind" => {
                    once(kind.is_some())?;
                    kind = Some(
                        SchemaKind::from_name(value)
                            .ok_or_else(|| syntax(line, format!("unknown kind `{value}`")))?,
                    );
                }
                "context" => {
                    once(context.is_some())?;
                    context = Some(formula(value)?);
                }
                "conclusion" => {
                    once(conclusion.is_some())?;
                    conclusion = Some(formula(value)?);
                }
                "disjunct" => {
                    let (label, body) = match value.split_once(':') {
                        Some((label, body)) => {
                            let label = label.trim();
                            if !is_label(label) {
                                return Err(syntax(line, format!("invalid label `{label}`")));
                            }
                            (Some(label.to_string()), body.trim())
                        }
                        None => (None, value),
                    };
                    let f = formula(body)?;
                    labels.push(label.unwrap_or_else(|| f.to_string()));
                    disjuncts.push(f);
                }
                "evidence" => {
                    once(evidence.is_some())?;
                    evidence = Some((line, value.to_string()));
                }
                other => return Err(syntax(line, format!("unknown key `{other}` in [problem]"))),
            },
            Section::Interpretation => {
                if !is_atom_name(key) {
                    return Err(syntax(line, format!("invalid atom name `{key}`")));
                }
                let p = PredicateId::from_id(value)
                    .ok_or_else(|| syntax(line, format!("unknown predicate `{value}`")))?;
                if interpretation.bind(key, p).is_some() {
                    return Err(syntax(line, format!("atom `{key}` bound twice")));
                }
            }
        }
    }

    let name = name.ok_or(SchemaFileError::Missing("name"))?;
    let context = context.ok_or(SchemaFileError::Missing("context"))?;
    let conclusion = conclusion.ok_or(SchemaFileError::Missing("conclusion"))?;
    if disjuncts.is_empty() {
        return Err(SchemaFileError::Missing("disjunct"));
    }
    let kind = kind.unwrap_or(if disjuncts.len() == 1 {
        SchemaKind::Generating
    } else {
        SchemaKind::Composed
    });
    let evidence = evidence
        .map(|(line, text)| parse_evidence(line, &text, decider, &context, &disjuncts))
        .transpose()?;

    let mut schema =
        ProblemSchema::new(name.clone(), context, disjuncts, conclusion, kind)?.with_labels(labels)?;
    if let Some(ev) = evidence {
        schema = schema.with_evidence(ev);
    }
    if kind == SchemaKind::Inverse {
        let origin_name = name.strip_suffix("-inverse").unwrap_or(&name).to_string();
        let origin_kind = if schema.evidence().is_some() {
            SchemaKind::ComposedXor
        } else {
            SchemaKind::Composed
        };
        let mut origin = ProblemSchema::new(
            origin_name,
            schema.context().clone(),
            schema.disjuncts().to_vec(),
            schema.conclusion().clone(),
            origin_kind,
        )?
        .with_labels(schema.labels().to_vec())?;
        if let Some(ev) = schema.evidence() {
            origin = origin.with_evidence(ev.clone());
        }
        schema = schema.with_origin(origin);
    }
    Ok(SchemaFile { schema, interpretation })
}

fn parse_evidence(
    line: usize,
    text: &str,
    decider: &Decider,
    context: &Formula,
    disjuncts: &[Formula],
) -> Result<ExclusivityEvidence, SchemaFileError> {
    let mut words = text.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("propositional"), None, _) => {
            ExclusivityEvidence::propositional(decider, context, disjuncts)?
                .ok_or_else(|| syntax(line, "disjuncts are not propositionally exclusive"))
        }
        (Some("asserted"), None, _) => Ok(ExclusivityEvidence::asserted()),
        (Some("empirical"), Some(n), None) => n
            .parse()
            .map(|n| ExclusivityEvidence::empirical(n, 0))
            .map_err(|_| syntax(line, format!("invalid sample count `{n}`"))),
        _ => Err(syntax(line, format!("invalid evidence `{text}`"))),
    }
}

pub fn read_schema_file(path: &Path, decider: &Decider) -> Result<SchemaFile, SchemaFileError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| SchemaFileError::Io { path: display.clone(), source })?;
    parse_schema_file(&text, decider)
        .map_err(|e| SchemaFileError::InFile { path: display, source: Box::new(e) })
}

/// Serializes a schema (and bindings, if any) in the file format.
pub fn write_schema_file(schema: &ProblemSchema, interpretation: &Interpretation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# structure: {}", schema.structural_formula());
    out.push_str("[problem]\n");
    let _ = writeln!(out, "name = {}", schema.name());
    let _ = writeln!(out, "kind = {}", schema.kind());
    let _ = writeln!(out, "context = {}", schema.context());
    for (d, label) in schema.disjuncts().iter().zip(schema.labels()) {
        let text = d.to_string();
        if *label == text {
            let _ = writeln!(out, "disjunct = {text}");
        } else {
            let _ = writeln!(out, "disjunct = {label}: {text}");
        }
    }
    let _ = writeln!(out, "conclusion = {}", schema.conclusion());
    if let Some(ev) = schema.evidence() {
        let text = match ev.status() {
            EvidenceStatus::Empirical => format!("empirical {}", ev.samples().unwrap_or(0)),
            status => status.as_str().to_string(),
        };
        let _ = writeln!(out, "evidence = {text}");
    }
    if !interpretation.is_empty() {
        out.push_str("\n[interpretation]\n");
        for (atom, p) in interpretation.iter() {
            let _ = writeln!(out, "{atom} = {p}");
        }
    }
    out
}
