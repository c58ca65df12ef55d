//! The `parhom` command line: argument handling, reports and the battery
//! runner. `run` is the whole program minus process exit.

mod args;
mod battery;
mod commands;
mod report;

use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use parhom::compile::VerifyLimits;
use parhom::format::{parse_graph, parse_pinning, ParseError};
use parhom::symmetry::SearchBudget;
use parhom::Graph;
use serde_json::Value;

pub use args::{BatterySize, Cli, Command};
pub use report::{RunReport, Status, SCHEMA};

use report::{digest, Budget, InputDigest, Payload};

/// What a finished invocation prints and returns.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
    /// A library precondition failed on well-formed input; exit code 1.
    Failed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failed(m) => m,
        }
    }
}

pub(crate) fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

pub(crate) struct Done {
    pub status: Status,
    pub summary: String,
    pub result: Value,
}

pub(crate) struct Context {
    pub budget: SearchBudget,
    pub limits: VerifyLimits,
    pub inputs: Vec<InputDigest>,
}

impl Context {
    fn new(cli: &Cli) -> Self {
        let mut budget = SearchBudget::default();
        if let Some(n) = cli.budget.budget_vertices {
            budget.max_candidate_vertices = n;
        }
        if let Some(n) = cli.budget.budget_candidates {
            budget.max_candidates = n;
        }
        let mut limits = VerifyLimits::default();
        if let Some(n) = cli.budget.budget_instance {
            limits.max_instance_vertices = n;
        }
        Context {
            budget,
            limits,
            inputs: Vec::new(),
        }
    }

    fn budget_report(&self) -> Budget {
        Budget {
            max_candidate_vertices: self.budget.max_candidate_vertices,
            max_candidates: self.budget.max_candidates,
            max_input_vertices: self.limits.max_input_vertices,
            max_instance_vertices: self.limits.max_instance_vertices,
            max_host_vertices: self.limits.max_host_vertices,
        }
    }

    /// Reads a file and records its digest under `role`.
    pub fn read(&mut self, role: &str, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.inputs.push(digest(role, path, &bytes));
        String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))
    }

    pub fn graph(&mut self, role: &str, path: &Path) -> Result<Graph, CliError> {
        let text = self.read(role, path)?;
        parse_graph(&text).map_err(|e| parse_failure(path, &e))
    }

    pub fn pinning(
        &mut self,
        role: &str,
        path: &Path,
    ) -> Result<std::collections::BTreeMap<String, String>, CliError> {
        let text = self.read(role, path)?;
        parse_pinning(&text).map_err(|e| parse_failure(path, &e))
    }
}

pub(crate) fn parse_failure(path: &Path, e: &ParseError) -> CliError {
    // the error text already carries the line number when there is one
    CliError::Input(format!("{}: {e}", path.display()))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Reduce { .. } => "reduce",
        Command::Distinguish { .. } => "distinguish",
        Command::Gadget { verify: None, .. } => "gadget",
        Command::Gadget { verify: Some(_), .. } => "gadget-verify",
        Command::Compile { .. } => "compile",
        Command::Verify { .. } => "verify",
        Command::Classify { .. } => "classify",
        Command::Count { .. } => "count",
        Command::Battery { .. } => "battery",
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let start = Instant::now();
    let mut ctx = Context::new(&cli);
    let name = command_name(&cli.command);
    let done = match commands::dispatch(&cli.command, &mut ctx) {
        Ok(done) => done,
        Err(e) => {
            return Outcome {
                code: e.code(),
                stdout: String::new(),
                stderr: format!("parhom {name}: {}\n", e.message()),
            }
        }
    };
    let report = RunReport::new(
        Payload {
            schema: SCHEMA,
            command: name,
            inputs: ctx.inputs.clone(),
            budget: ctx.budget_report(),
            status: done.status,
            result: done.result,
        },
        start.elapsed().as_millis(),
    );
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let mut stderr = String::new();
    if let Some(out) = commands::out_path(&cli.command) {
        if let Err(e) = std::fs::write(out, format!("{json}\n")) {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("parhom {name}: {}: {e}\n", out.display()),
            };
        }
        stderr.push_str(&format!("wrote {}\n", out.display()));
    }
    let stdout = if cli.json {
        format!("{json}\n")
    } else {
        format!("{name}: {:?}: {}\n", done.status, done.summary).replacen(
            &format!("{:?}", done.status),
            status_word(done.status),
            1,
        )
    };
    Outcome {
        code: done.status.exit_code(),
        stdout,
        stderr,
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Reject => "reject",
        Status::Inconclusive => "inconclusive",
    }
}
