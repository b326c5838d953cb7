//! Text and JSON renderings of verification reports. Rationals are always
//! written as `"num/den"` strings.

use std::fmt::Write as _;

use invcomp_core::check::{Counterexample, VerificationReport};
use invcomp_core::geometry::{Configuration, Point, Rat};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn point(p: &Point) -> Value {
    json!([rat(&p.x), rat(&p.y)])
}

pub fn configuration_json(config: &Configuration) -> Value {
    match config {
        Configuration::GroupI(c) => json!({
            "group": "group1",
            "A": point(c.a()),
            "B": point(c.b()),
            "C": point(c.c()),
            "d": point(c.d()),
            "s": rat(c.s()),
            "M": point(&c.m()),
            "area_AMC": rat(&c.area_amc()),
            "area_BMC": rat(&c.area_bmc()),
        }),
        Configuration::GroupII(q) => {
            let (o, rr) = q.diagonal_intersection();
            json!({
                "group": "group2",
                "A": point(q.a()),
                "B": point(q.b()),
                "C": point(q.c()),
                "D": point(q.d()),
                "O": point(&o),
                "AO_OC": rat(&rr.ao_oc()),
                "BO_OD": rat(&rr.bo_od()),
            })
        }
    }
}

fn counterexample_json(cx: &Counterexample) -> Value {
    json!({
        "index": cx.index,
        "failure": cx.kind.as_str(),
        "disjuncts": cx.disjuncts,
        "configuration": configuration_json(&cx.config),
    })
}

pub fn report_json(report: &VerificationReport) -> Value {
    let branches: Map<String, Value> =
        report.branches.iter().map(|(label, n)| (label.clone(), json!(n))).collect();
    json!({
        "schema": report.schema,
        "kind": report.kind.as_str(),
        "sampler": report.sampler.id(),
        "seed": report.seed,
        "samples": report.samples,
        "passes": report.passes,
        "failures": report.failures,
        "precondition_failures": report.precondition_failures,
        "branches": branches,
        "multiple": report.multiple,
        "none": report.none,
        "counterexamples": report.counterexamples.iter().map(counterexample_json).collect::<Vec<_>>(),
    })
}

fn describe(config: &Configuration) -> String {
    match config {
        Configuration::GroupI(c) => format!(
            "A={} B={} C={} d={} s={} M={}",
            c.a(),
            c.b(),
            c.c(),
            c.d(),
            c.s(),
            c.m()
        ),
        Configuration::GroupII(q) => {
            format!("A={} B={} C={} D={}", q.a(), q.b(), q.c(), q.d())
        }
    }
}

pub fn report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "schema: {}", report.schema);
    let _ = writeln!(out, "kind: {}", report.kind);
    let _ = writeln!(out, "sampler: {}", report.sampler);
    let _ = writeln!(out, "seed: {}", report.seed);
    let _ = writeln!(out, "samples: {}", report.samples);
    let _ = writeln!(out, "passes: {}", report.passes);
    let _ = writeln!(out, "failures: {}", report.failures);
    let _ = writeln!(out, "precondition_failures: {}", report.precondition_failures);
    for (label, n) in &report.branches {
        let _ = writeln!(out, "branch {label}: {n}");
    }
    let _ = writeln!(out, "multiple: {}", report.multiple);
    let _ = writeln!(out, "none: {}", report.none);
    let _ = writeln!(out, "counterexamples: {}", report.counterexamples.len());
    for cx in &report.counterexamples {
        let _ = writeln!(
            out,
            "  #{} {} {}",
            cx.index,
            cx.kind.as_str(),
            describe(&cx.config)
        );
    }
    let _ = writeln!(out, "result: {}", if report.all_passed() { "PASS" } else { "FAIL" });
    out
}

/// Report bytes in the requested format; JSON is pretty-printed with a
/// trailing newline.
pub fn emit_report(report: &VerificationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Text => report_text(report).into_bytes(),
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(&report_json(report)).expect("json values serialize");
            bytes.push(b'\n');
            bytes
        }
    }
}
