use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "parhom.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Inconclusive,
    Reject,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Reject => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Budget {
    pub max_candidate_vertices: usize,
    pub max_candidates: usize,
    pub max_input_vertices: usize,
    pub max_instance_vertices: usize,
    pub max_host_vertices: usize,
}

/// Everything that must be identical across reruns.
#[derive(Debug, Clone, Serialize)]
pub struct Payload {
    pub schema: &'static str,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub budget: Budget,
    pub status: Status,
    pub result: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    #[serde(flatten)]
    pub payload: Payload,
    pub payload_sha256: String,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(payload: Payload, wall_time_ms: u128) -> Self {
        let bytes = serde_json::to_vec(&payload).expect("payload serializes");
        RunReport {
            payload_sha256: sha256_hex(&bytes),
            payload,
            wall_time_ms,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest(role: &str, path: &Path, bytes: &[u8]) -> InputDigest {
    InputDigest {
        role: role.to_string(),
        path: path.display().to_string(),
        sha256: sha256_hex(bytes),
    }
}
