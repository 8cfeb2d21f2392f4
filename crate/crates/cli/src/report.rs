use std::fmt::Write;

use lmv_core::regularity::{FamilyReport, RegularityVerdict, SignificantLabelReport, TypeClass};
use lmv_core::search::{ExhaustionReport, FailureReason};

fn braces(labels: &std::collections::BTreeSet<u32>) -> String {
    let inner: Vec<String> = labels.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn verdict_lines(verdict: &RegularityVerdict) -> Vec<String> {
    let mut lines = vec![format!("cube: {}", verdict.cube)];
    for (ty, class) in &verdict.per_type {
        let detail = match class {
            TypeClass::High => String::new(),
            TypeClass::ConstantLow { value } => format!(" value={value}"),
            TypeClass::Neither { first, second } => format!(" first={first} second={second}"),
        };
        lines.push(format!("type {ty}: {}{detail}", class.tag()));
    }
    lines.push(format!("significant-count: {}", verdict.significant.len()));
    lines.push(format!(
        "significant-labels: {}",
        braces(&verdict.significant)
    ));
    lines.push(format!(
        "regressively-regular: {}",
        verdict.regressively_regular
    ));
    lines
}

pub fn significant_text(scope: &str, report: &SignificantLabelReport) -> String {
    let mut out = String::new();
    writeln!(out, "scope: {scope}").unwrap();
    writeln!(out, "scope-size: {}", report.scope_size).unwrap();
    writeln!(out, "significant-count: {}", report.labels.len()).unwrap();
    writeln!(out, "significant-labels: {}", braces(&report.labels)).unwrap();
    for (v, label) in &report.vertices {
        writeln!(out, "vertex {v} label {label}").unwrap();
    }
    out
}

pub fn family_text(report: &FamilyReport) -> String {
    let mut out = String::new();
    writeln!(out, "family: {}", report.family).unwrap();
    writeln!(out, "k: {}", report.k).unwrap();
    writeln!(out, "seed: {}", report.seed).unwrap();
    writeln!(out, "trials-requested: {}", report.trials_requested).unwrap();
    writeln!(out, "scenarios-checked: {}", report.scenarios_checked).unwrap();
    writeln!(out, "attempts: {}", report.attempts).unwrap();
    writeln!(out, "discarded: {}", report.discarded).unwrap();
    writeln!(out, "equal-cone: {}", report.equal_cone).unwrap();
    writeln!(out, "exhausted: {}", report.exhausted).unwrap();
    writeln!(out, "full: {}", report.full).unwrap();
    writeln!(
        out,
        "reflexive: {} ({} violations)",
        report.reflexive(),
        report.reflexive_violations.len()
    )
    .unwrap();
    writeln!(
        out,
        "jump-free: {} ({} counterexamples)",
        report.jump_free(),
        report.counterexamples.len()
    )
    .unwrap();
    for r in &report.reflexive_violations {
        writeln!(
            out,
            "reflexive-violation attempt={} vertex={} label={}",
            r.attempt, r.vertex, r.label
        )
        .unwrap();
    }
    for c in &report.counterexamples {
        let s = &c.scenario;
        writeln!(
            out,
            "counterexample attempt={} x={} label-a={} label-b={} theta-seed={} theta-density={} A={} B={}",
            c.attempt,
            s.x,
            c.label_a,
            c.label_b,
            s.theta_seed,
            s.theta_density,
            join(&s.a),
            join(&s.b)
        )
        .unwrap();
    }
    out
}

pub fn exhaustion_text(report: &ExhaustionReport) -> String {
    let mut out = String::new();
    writeln!(out, "outcome: exhausted").unwrap();
    writeln!(out, "labeling: {}", report.labeling).unwrap();
    writeln!(
        out,
        "k: {} p: {} max-axis: {}",
        report.k, report.p, report.max_axis
    )
    .unwrap();
    writeln!(out, "candidates-examined: {}", report.candidates_examined).unwrap();
    writeln!(out, "note: {}", report.note).unwrap();
    for f in &report.failures {
        let axis = f
            .axis
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        match &f.reason {
            FailureReason::NotInDomain { point } => {
                writeln!(out, "candidate {{{axis}}}: not-in-domain point={point}").unwrap()
            }
            FailureReason::Irregular {
                order_type,
                first,
                second,
            } => writeln!(
                out,
                "candidate {{{axis}}}: NEITHER type={order_type} first={first} second={second}"
            )
            .unwrap(),
        }
    }
    out
}
