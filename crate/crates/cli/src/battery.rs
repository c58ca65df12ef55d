//! Directory batteries. `NAME.graph` is classified, `NAME.cert.json` is
//! verified against `NAME.graph` and run on every input graph with at most
//! four vertices, `NAME.pins` must parse and point into `NAME.graph`.

use std::path::{Path, PathBuf};

use parhom::gadget::verify_hardness_gadget;
use parhom::symmetry::catalog::graphs_up_to;
use parhom::symmetry::InvolutionPolicy;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{classify_graph, labelled, load_certificate, parity_run};
use crate::report::InputDigest;
use crate::{CliError, Context, Done, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    Graph,
    Certificate,
    Pinning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum EntryStatus {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

#[derive(Debug, Clone, Serialize)]
struct Entry {
    file: String,
    kind: Kind,
    status: EntryStatus,
    detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    result: Value,
}

struct Job {
    path: PathBuf,
    kind: Kind,
    /// Path of the companion `.graph` file for certificates and pinnings.
    host: Option<PathBuf>,
}

fn jobs(dir: &Path) -> Result<Vec<Job>, CliError> {
    let listing = std::fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let companion = |p: &Path, suffix: &str| {
        let name = p.file_name()?.to_str()?;
        let stem = name.strip_suffix(suffix)?;
        Some(p.with_file_name(format!("{stem}.graph")))
    };
    Ok(files
        .into_iter()
        .filter_map(|path| {
            let name = path.file_name()?.to_str()?.to_string();
            let (kind, host) = if name.ends_with(".cert.json") {
                (Kind::Certificate, companion(&path, ".cert.json"))
            } else if name.ends_with(".pins") {
                (Kind::Pinning, companion(&path, ".pins"))
            } else if name.ends_with(".graph") {
                (Kind::Graph, None)
            } else {
                return None;
            };
            Some(Job { path, kind, host })
        })
        .collect())
}

fn entry_status(s: Status) -> EntryStatus {
    match s {
        Status::Ok => EntryStatus::Pass,
        Status::Reject => EntryStatus::Fail,
        Status::Inconclusive => EntryStatus::Inconclusive,
    }
}

fn run_graph(ctx: &mut Context, job: &Job) -> Result<Done, CliError> {
    let h = ctx.graph("host", &job.path)?;
    classify_graph(ctx, &h, InvolutionPolicy::default())
}

fn run_certificate(ctx: &mut Context, job: &Job) -> Result<Done, CliError> {
    let text = ctx.read("certificate", &job.path)?;
    let (gadget, named) = load_certificate(&job.path, &text)?;
    let host = job.host.as_deref().expect("certificates have a companion");
    let h = ctx.graph("host", host)?;
    let actual = ctx.inputs.last().map(|d| d.sha256.clone());
    let verdict = verify_hardness_gadget(&gadget, &h);
    if !verdict.is_accepted() {
        return Ok(Done {
            status: Status::Reject,
            summary: "gadget rejected by the verifier".into(),
            result: json!({ "gadget_verdict": verdict }),
        });
    }
    let inputs = labelled(graphs_up_to(4), "small");
    let run = parity_run(ctx, &gadget, &h, &inputs)?;
    Ok(Done {
        status: run.status,
        summary: format!(
            "gadget accepted, parity matched on {} of {} graphs",
            run.accepted,
            inputs.len()
        ),
        result: json!({
            "gadget_verdict": verdict,
            "host_digest_matches": named.map(|d| Some(d) == actual),
            "rejected": run.rejected,
        }),
    })
}

fn run_pinning(ctx: &mut Context, job: &Job) -> Result<Done, CliError> {
    let pins = ctx.pinning("pinning", &job.path)?;
    let host = job.host.as_deref().expect("pinnings have a companion");
    let h = ctx.graph("host", host)?;
    let missing: Vec<&String> = pins.values().filter(|t| !h.contains(t)).collect();
    let status = if missing.is_empty() { Status::Ok } else { Status::Reject };
    Ok(Done {
        status,
        summary: format!("{} pins, {} targets missing from the host", pins.len(), missing.len()),
        result: json!({ "pins": pins.len(), "missing_targets": missing }),
    })
}

fn run_job(base: &Context, job: &Job) -> (Entry, Vec<InputDigest>) {
    let mut ctx = Context {
        budget: base.budget,
        limits: base.limits,
        inputs: Vec::new(),
    };
    let outcome = match job.kind {
        Kind::Graph => run_graph(&mut ctx, job),
        Kind::Certificate => run_certificate(&mut ctx, job),
        Kind::Pinning => run_pinning(&mut ctx, job),
    };
    let file = job.path.display().to_string();
    let entry = match outcome {
        Ok(done) => Entry {
            file,
            kind: job.kind,
            status: entry_status(done.status),
            detail: done.summary,
            result: done.result,
        },
        Err(e) => Entry {
            file,
            kind: job.kind,
            status: EntryStatus::Error,
            detail: match e {
                CliError::Input(m) | CliError::Failed(m) => m,
            },
            result: Value::Null,
        },
    };
    (entry, ctx.inputs)
}

fn failing(e: &Entry) -> bool {
    matches!(e.status, EntryStatus::Fail | EntryStatus::Error)
}

pub(crate) fn run_battery(ctx: &mut Context, dir: &Path, fail_fast: bool) -> Result<Done, CliError> {
    let jobs = jobs(dir)?;
    // fail-fast runs in order so the stopping point is reproducible
    let results: Vec<(Entry, Vec<InputDigest>)> = if fail_fast {
        let mut out = Vec::new();
        for job in &jobs {
            let r = run_job(ctx, job);
            let stop = failing(&r.0);
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        jobs.par_iter().map(|job| run_job(ctx, job)).collect()
    };
    let mut entries = Vec::with_capacity(results.len());
    for (entry, inputs) in results {
        ctx.inputs.extend(inputs);
        entries.push(entry);
    }
    let count = |s: EntryStatus| entries.iter().filter(|e| e.status == s).count();
    let (pass, fail, inconclusive, error) = (
        count(EntryStatus::Pass),
        count(EntryStatus::Fail),
        count(EntryStatus::Inconclusive),
        count(EntryStatus::Error),
    );
    let status = if fail + error > 0 {
        Status::Reject
    } else if inconclusive > 0 {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    let flagged: Vec<&str> = entries
        .iter()
        .filter(|e| e.status != EntryStatus::Pass)
        .map(|e| e.file.as_str())
        .collect();
    let mut summary = format!(
        "{} entries: {pass} pass, {fail} fail, {inconclusive} inconclusive, {error} error",
        entries.len()
    );
    if !flagged.is_empty() {
        summary.push_str(&format!("; flagged: {}", flagged.join(", ")));
    }
    if entries.len() < jobs.len() {
        summary.push_str(&format!("; stopped after {} of {}", entries.len(), jobs.len()));
    }
    Ok(Done {
        status,
        summary,
        result: json!({
            "entries": entries,
            "skipped": jobs.len() - entries.len(),
            "pass": pass,
            "fail": fail,
            "inconclusive": inconclusive,
            "error": error,
            "flagged": flagged,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_are_sorted_and_paired_with_their_graph() {
        let dir = std::env::temp_dir().join(format!("parhom-battery-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        for name in ["b.graph", "a.cert.json", "a.pins", "readme.md", "a.graph"] {
            std::fs::write(dir.join(name), "").unwrap();
        }
        let found = jobs(&dir).unwrap();
        std::fs::remove_dir_all(&dir).unwrap();
        let kinds: Vec<Kind> = found.iter().map(|j| j.kind).collect();
        assert_eq!(kinds, [Kind::Certificate, Kind::Graph, Kind::Pinning, Kind::Graph]);
        assert!(found[0].host.as_ref().unwrap().ends_with("a.graph"));
        assert!(found[2].host.as_ref().unwrap().ends_with("a.graph"));
    }
}
