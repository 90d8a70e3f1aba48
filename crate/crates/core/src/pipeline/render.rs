use std::fmt::Write;

use serde_json::{json, Map, Value};

use super::{ClaimReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn render_report(r: &ClaimReport, format: Format) -> String {
    match format {
        Format::Text => text(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json_value(r)).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn overall(r: &ClaimReport) -> &'static str {
    if r.overall_pass() {
        "pass"
    } else {
        "fail"
    }
}

fn json_value(r: &ClaimReport) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            let mut w = Map::new();
            if let Status::Skipped(reason) = &s.status {
                w.insert("reason".into(), Value::String(reason.clone()));
            }
            for (k, v) in &s.witnesses {
                w.insert(k.clone(), Value::String(v.clone()));
            }
            json!({
                "id": s.id,
                "claim": s.claim,
                "anchor": s.anchor,
                "status": s.status.name(),
                "witnesses": w,
            })
        })
        .collect();
    json!({ "seed": r.seed, "budget": r.budget, "steps": steps, "overall": overall(r) })
}

fn text(r: &ClaimReport) -> String {
    let mut out = String::new();
    for s in &r.steps {
        let status = match &s.status {
            Status::Skipped(reason) => format!("SKIPPED ({reason})"),
            other => other.name().to_uppercase(),
        };
        writeln!(out, "{} {}: {}", s.id, status, s.claim).unwrap();
        writeln!(out, "    anchor: {}", s.anchor).unwrap();
        for (k, v) in &s.witnesses {
            writeln!(out, "    {k} = {v}").unwrap();
        }
    }
    writeln!(out, "overall: {} (seed {}, budget {})", overall(r).to_uppercase(), r.seed, r.budget).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Step;

    fn step(status: Status) -> Step {
        Step { id: "X1".into(), claim: "c".into(), anchor: "a".into(), status, witnesses: vec![("k".into(), "v".into())] }
    }

    fn report(steps: Vec<Step>) -> ClaimReport {
        ClaimReport { seed: 7, budget: 10, steps }
    }

    #[test]
    fn empty_report_passes() {
        let r = report(vec![]);
        assert!(r.overall_pass());
        let v: Value = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        assert_eq!(v["overall"], "pass");
        assert_eq!(v["steps"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn assumed_does_not_fail() {
        let r = report(vec![step(Status::Assumed)]);
        assert!(r.overall_pass());
        assert!(render_report(&r, Format::Text).contains("overall: PASS"));
    }

    #[test]
    fn failed_step_fails() {
        let r = report(vec![step(Status::Pass), step(Status::Fail)]);
        assert!(!r.overall_pass());
        let v: Value = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        assert_eq!(v["overall"], "fail");
        assert_eq!(v["steps"][1]["status"], "fail");
        assert_eq!(v["steps"][0]["witnesses"]["k"], "v");
    }

    #[test]
    fn skipped_reason_is_kept() {
        let r = report(vec![step(Status::Skipped("partial-table".into()))]);
        let v: Value = serde_json::from_str(&render_report(&r, Format::Json)).unwrap();
        assert_eq!(v["steps"][0]["witnesses"]["reason"], "partial-table");
        assert!(render_report(&r, Format::Text).contains("SKIPPED (partial-table)"));
    }
}
