use std::path::{Path, PathBuf};

use parhom::compile::{check_parity, classify_with, compile_is_instance, compile_unchecked, CompileError, DichotomyVerdict, ParityVerdict};
use parhom::gadget::{find_hardness_gadget, verify_hardness_gadget, GadgetError, GadgetVerdict, HardnessGadget};
use parhom::generate::{battery_graphs, random_graph, seeded};
use parhom::hom::{count_pinned_homs, count_pinned_parity};
use parhom::structure::{cycle_census, degree_profile, is_bipartite, is_square_free, odd_girth};
use parhom::symmetry::catalog::graphs_up_to;
use parhom::symmetry::{
    find_distinguisher, find_involution, involution_free_reduction_with, DistinguisherOutcome,
    InvolutionPolicy, SymmetryLimits,
};
use parhom::{DistinguishedGraph, Graph, PartiallyLabelledGraph};
use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{BatterySize, Command, Policy};
use crate::{failed, CliError, Context, Done, Status};

pub(crate) fn dispatch(command: &Command, ctx: &mut Context) -> Result<Done, CliError> {
    match command {
        Command::Analyze { host } => analyze(ctx, host),
        Command::Reduce { host, policy } => reduce(ctx, host, *policy),
        Command::Distinguish {
            first,
            second,
            first_tuple,
            second_tuple,
            connected,
        } => distinguish(ctx, first, second, first_tuple, second_tuple, *connected),
        Command::Gadget { host, verify: None, .. } => gadget(ctx, host),
        Command::Gadget {
            host,
            verify: Some(cert),
            ..
        } => gadget_verify(ctx, host, cert),
        Command::Compile {
            graph, gadget, host, ..
        } => compile(ctx, graph, gadget, host),
        Command::Verify {
            gadget,
            host,
            graph,
            battery,
            seed,
        } => verify(ctx, gadget, host, graph, *battery, *seed),
        Command::Classify { host } => classify(ctx, host, InvolutionPolicy::default()),
        Command::Count {
            pattern,
            host,
            pinning,
            mod2,
            ..
        } => count(ctx, pattern, host, pinning.as_deref(), *mod2),
        Command::Battery { dir, fail_fast } => crate::battery::run_battery(ctx, dir, *fail_fast),
    }
}

pub(crate) fn out_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Gadget { out, .. } | Command::Compile { out, .. } => out.as_deref(),
        _ => None,
    }
}

fn to_value(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

fn analyze(ctx: &mut Context, host: &Path) -> Result<Done, CliError> {
    let h = ctx.graph("host", host)?;
    let profile = degree_profile(&h);
    let census = cycle_census(&h);
    let involution = find_involution(&h).map(|a| a.named(&h));
    let summary = format!(
        "{} vertices, {} edges, {} odd-degree, odd girth {}, {}",
        h.vertex_count(),
        h.edge_count(),
        profile.odd.len(),
        census.as_ref().map_or("none".to_string(), |c| c.length.to_string()),
        if involution.is_some() { "has an involution" } else { "involution-free" },
    );
    let census = census.map(|c| {
        json!({
            "length": c.length,
            "cycles": c.cycles,
            "edge_counts": c.edge_counts.iter()
                .map(|((u, v), n)| json!({"u": u, "v": v, "cycles": n}))
                .collect::<Vec<_>>(),
        })
    });
    Ok(Done {
        status: Status::Ok,
        summary,
        result: json!({
            "vertices": h.vertex_count(),
            "edges": h.edge_count(),
            "connected": h.is_connected(),
            "bipartite": is_bipartite(&h),
            "square_free": is_square_free(&h),
            "odd_girth": odd_girth(&h),
            "degree_profile": to_value(&profile),
            "cycle_census": census,
            "involution": involution,
        }),
    })
}

fn policy_of(p: Policy) -> InvolutionPolicy {
    match p {
        Policy::LexLeast => InvolutionPolicy::LexLeast,
        Policy::LexGreatest => InvolutionPolicy::LexGreatest,
    }
}

fn reduce(ctx: &mut Context, host: &Path, policy: Policy) -> Result<Done, CliError> {
    let h = ctx.graph("host", host)?;
    let chain = involution_free_reduction_with(&h, policy_of(policy));
    let summary = format!(
        "{} step(s), reduced host has vertices [{}]",
        chain.steps.len(),
        chain.result.vertices().join(", ")
    );
    Ok(Done {
        status: Status::Ok,
        summary,
        result: to_value(&chain),
    })
}

fn distinguish(
    ctx: &mut Context,
    first: &Path,
    second: &Path,
    first_tuple: &[String],
    second_tuple: &[String],
    connected: bool,
) -> Result<Done, CliError> {
    let g1 = ctx.graph("first", first)?;
    let g2 = ctx.graph("second", second)?;
    let d1 = DistinguishedGraph::new(g1, first_tuple.to_vec()).map_err(failed)?;
    let d2 = DistinguishedGraph::new(g2, second_tuple.to_vec()).map_err(failed)?;
    let mut budget = ctx.budget;
    budget.connected |= connected;
    let outcome = find_distinguisher(&d1, &d2, &budget, &SymmetryLimits::default()).map_err(failed)?;
    let (status, summary) = match &outcome {
        DistinguisherOutcome::Found { graph, .. } => (
            Status::Ok,
            format!(
                "distinguisher on {} vertices, {} edges",
                graph.graph().vertex_count(),
                graph.graph().edge_count()
            ),
        ),
        DistinguisherOutcome::Isomorphic => (Status::Ok, "hosts are isomorphic".to_string()),
        DistinguisherOutcome::Exhausted { candidates } => (
            Status::Inconclusive,
            format!("budget exhausted after {candidates} candidates"),
        ),
    };
    Ok(Done {
        status,
        summary,
        result: to_value(&outcome),
    })
}

fn gadget_failure(e: GadgetError) -> Result<Done, CliError> {
    match e {
        GadgetError::BudgetExhausted { candidates } => Ok(Done {
            status: Status::Inconclusive,
            summary: format!("gadget search exhausted after {candidates} candidates"),
            result: json!({ "reason": e.to_string() }),
        }),
        other => Err(failed(other)),
    }
}

fn gadget(ctx: &mut Context, host: &Path) -> Result<Done, CliError> {
    let h = ctx.graph("host", host)?;
    let routed = match find_hardness_gadget(&h, &ctx.budget) {
        Ok(r) => r,
        Err(e) => return gadget_failure(e),
    };
    let verdict = verify_hardness_gadget(&routed.gadget, &h);
    let status = if verdict.is_accepted() { Status::Ok } else { Status::Reject };
    let route = to_value(&routed.route);
    let summary = format!(
        "{} gadget, {} vertices, i = {}, s = {}",
        route["route"].as_str().unwrap_or("?"),
        routed.gadget.total_vertices(),
        routed.gadget.i,
        routed.gadget.s
    );
    Ok(Done {
        status,
        summary,
        result: json!({
            "host_sha256": host_digest(ctx),
            "route": route,
            "gadget": to_value(&routed.gadget),
            "verdict": to_value(&verdict),
        }),
    })
}

/// Digest of the most recently read file, which is the host in every caller.
fn host_digest(ctx: &Context) -> String {
    ctx.inputs.last().map(|d| d.sha256.clone()).unwrap_or_default()
}

/// A certificate is a `gadget` report, an object with a `gadget` field, or
/// a bare gadget. Returns the gadget and the host digest it names, if any.
pub(crate) fn load_certificate(path: &Path, text: &str) -> Result<(HardnessGadget, Option<String>), CliError> {
    let bad = |e: serde_json::Error| CliError::Input(format!("{}:{}: {e}", path.display(), e.line()));
    let doc: Value = serde_json::from_str(text).map_err(bad)?;
    let holder = if doc.pointer("/result/gadget").is_some() { &doc["result"] } else { &doc };
    let body = holder.get("gadget").unwrap_or(holder);
    let gadget = HardnessGadget::deserialize(body)
        .map_err(|e| CliError::Input(format!("{}: not a gadget certificate: {e}", path.display())))?;
    let digest = holder.get("host_sha256").and_then(Value::as_str).map(str::to_string);
    Ok((gadget, digest))
}

fn read_certificate(ctx: &mut Context, cert: &Path) -> Result<(HardnessGadget, Option<String>), CliError> {
    let text = ctx.read("certificate", cert)?;
    load_certificate(cert, &text)
}

fn gadget_summary(verdict: &GadgetVerdict) -> String {
    match verdict {
        GadgetVerdict::Accepted => "certificate accepted".to_string(),
        GadgetVerdict::Rejected { property, .. } => match property {
            Some(p) => format!("certificate rejected, property {p} fails"),
            None => "certificate rejected, malformed gadget".to_string(),
        },
    }
}

fn gadget_verify(ctx: &mut Context, host: &Path, cert: &Path) -> Result<Done, CliError> {
    let (gadget, named) = read_certificate(ctx, cert)?;
    let h = ctx.graph("host", host)?;
    let actual = host_digest(ctx);
    let verdict = verify_hardness_gadget(&gadget, &h);
    let status = if verdict.is_accepted() { Status::Ok } else { Status::Reject };
    Ok(Done {
        status,
        summary: gadget_summary(&verdict),
        result: json!({
            "verdict": to_value(&verdict),
            "host_digest_matches": named.map(|d| d == actual),
        }),
    })
}

fn compile(ctx: &mut Context, graph: &Path, cert: &Path, host: &Path) -> Result<Done, CliError> {
    let g = ctx.graph("graph", graph)?;
    let (gadget, _) = read_certificate(ctx, cert)?;
    let h = ctx.graph("host", host)?;
    match compile_is_instance(&g, &gadget, &h) {
        Ok(compiled) => {
            let j = compiled.instance.graph();
            Ok(Done {
                status: Status::Ok,
                summary: format!(
                    "instance with {} vertices, {} edges, {} pins",
                    j.vertex_count(),
                    j.edge_count(),
                    compiled.instance.pinning().len()
                ),
                result: to_value(&compiled),
            })
        }
        Err(CompileError::UnverifiedGadget(verdict)) => Ok(Done {
            status: Status::Reject,
            summary: gadget_summary(&verdict),
            result: json!({ "verdict": to_value(&verdict) }),
        }),
        Err(e) => Err(failed(e)),
    }
}

fn small_battery(seed: u64) -> Vec<Graph> {
    let mut out = graphs_up_to(4);
    let mut rng = seeded(seed);
    for _ in 0..20 {
        let n = rng.gen_range(5..=6);
        let p = rng.gen_range(0.2..0.7);
        out.push(random_graph(&mut rng, n, p));
    }
    out
}

pub(crate) struct ParityRun {
    pub status: Status,
    pub accepted: usize,
    pub rejected: Vec<Value>,
    pub inconclusive: usize,
}

/// Compiled parity against independent-set parity on every input; the
/// gadget must already have passed the verifier.
pub(crate) fn parity_run(
    ctx: &Context,
    gadget: &HardnessGadget,
    h: &Graph,
    inputs: &[(String, Graph)],
) -> Result<ParityRun, CliError> {
    let mut run = ParityRun {
        status: Status::Ok,
        accepted: 0,
        rejected: Vec::new(),
        inconclusive: 0,
    };
    for (label, g) in inputs {
        let compiled = compile_unchecked(g, gadget).map_err(failed)?;
        match check_parity(g, &compiled.instance, h, &ctx.limits) {
            ParityVerdict::Accepted { .. } => run.accepted += 1,
            v @ ParityVerdict::Rejected { .. } => {
                run.rejected.push(json!({ "graph": label, "edges": g.edge_names(), "verdict": to_value(&v) }))
            }
            ParityVerdict::Inconclusive { .. } => run.inconclusive += 1,
        }
    }
    run.status = if !run.rejected.is_empty() {
        Status::Reject
    } else if run.inconclusive > 0 {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(run)
}

pub(crate) fn labelled(graphs: Vec<Graph>, prefix: &str) -> Vec<(String, Graph)> {
    graphs
        .into_iter()
        .enumerate()
        .map(|(k, g)| (format!("{prefix}#{k}"), g))
        .collect()
}

fn verify(
    ctx: &mut Context,
    cert: &Path,
    host: &Path,
    graphs: &[PathBuf],
    battery: Option<BatterySize>,
    seed: u64,
) -> Result<Done, CliError> {
    let (gadget, named) = read_certificate(ctx, cert)?;
    let h = ctx.graph("host", host)?;
    let actual = host_digest(ctx);
    let mut inputs = Vec::new();
    for path in graphs {
        let g = ctx.graph("graph", path)?;
        inputs.push((path.display().to_string(), g));
    }
    let battery = battery.or(if graphs.is_empty() { Some(BatterySize::Small) } else { None });
    match battery {
        Some(BatterySize::Small) => inputs.extend(labelled(small_battery(seed), "small")),
        Some(BatterySize::Full) => inputs.extend(labelled(battery_graphs(seed, 100), "full")),
        None => {}
    }
    let verdict = verify_hardness_gadget(&gadget, &h);
    if !verdict.is_accepted() {
        return Ok(Done {
            status: Status::Reject,
            summary: gadget_summary(&verdict),
            result: json!({ "gadget_verdict": to_value(&verdict) }),
        });
    }
    let run = parity_run(ctx, &gadget, &h, &inputs)?;
    let summary = format!(
        "{} accepted, {} rejected, {} inconclusive of {} graphs",
        run.accepted,
        run.rejected.len(),
        run.inconclusive,
        inputs.len()
    );
    Ok(Done {
        status: run.status,
        summary,
        result: json!({
            "gadget_verdict": to_value(&verdict),
            "host_digest_matches": named.map(|d| d == actual),
            "graphs": inputs.len(),
            "accepted": run.accepted,
            "inconclusive": run.inconclusive,
            "rejected": run.rejected,
        }),
    })
}

pub(crate) fn classify(ctx: &mut Context, host: &Path, policy: InvolutionPolicy) -> Result<Done, CliError> {
    let h = ctx.graph("host", host)?;
    classify_graph(ctx, &h, policy)
}

pub(crate) fn classify_graph(ctx: &Context, h: &Graph, policy: InvolutionPolicy) -> Result<Done, CliError> {
    let verdict = classify_with(h, &ctx.budget, policy).map_err(failed)?;
    let reduced = verdict.chain().result.vertices().join(", ");
    let (status, summary) = match &verdict {
        DichotomyVerdict::Polynomial { .. } => (Status::Ok, format!("polynomial, reduced host [{reduced}]")),
        DichotomyVerdict::Hard { certificate, .. } => (
            Status::Ok,
            format!(
                "parity-p-complete, {} gadget",
                to_value(&certificate.route)["route"].as_str().unwrap_or("?")
            ),
        ),
        DichotomyVerdict::Inconclusive { reason, .. } => (Status::Inconclusive, reason.clone()),
        DichotomyVerdict::OutOfScope { note, .. } => (Status::Ok, format!("out-of-scope, {note}")),
    };
    let mut result = to_value(&verdict);
    result["kind"] = json!(verdict.kind());
    Ok(Done {
        status,
        summary,
        result,
    })
}

fn count(ctx: &mut Context, pattern: &Path, host: &Path, pinning: Option<&Path>, mod2: bool) -> Result<Done, CliError> {
    let g = ctx.graph("pattern", pattern)?;
    let h = ctx.graph("host", host)?;
    let pins = match pinning {
        Some(p) => ctx.pinning("pinning", p)?,
        None => Default::default(),
    };
    let j = PartiallyLabelledGraph::new(g, pins).map_err(failed)?;
    if mod2 {
        let parity = count_pinned_parity(&j, &h).map_err(failed)? as u8;
        Ok(Done {
            status: Status::Ok,
            summary: format!("parity {parity}"),
            result: json!({ "parity": parity }),
        })
    } else {
        let n = count_pinned_homs(&j, &h).map_err(failed)?;
        Ok(Done {
            status: Status::Ok,
            summary: format!("{n} homomorphisms, parity {}", n.parity()),
            result: json!({ "count": to_value(&n) }),
        })
    }
}
