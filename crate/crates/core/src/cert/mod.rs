//! Certificates: claim records with verdicts and witnesses, the run
//! configuration, the verification pipelines and a markdown renderer.
//!
//! A certificate splits into an unsigned [`Header`] (timestamp, timings,
//! thread count) and a deterministic [`Body`]. For a fixed configuration and
//! tool version the body serializes to the same bytes on every run.

mod config;
mod pipelines;
mod registry;
mod render;

pub use config::{ControlGenerator, ControlRep, NegativeControl, RunConfig};
pub use pipelines::{
    classify, classify_file, search, verify, verify_claim_ids, ClassifyDomain, Inputs, SearchRequest, Target,
};
pub use registry::{registry, statement, ClaimSpec};
pub use render::render_markdown;

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fpgroup::GroupError;
use crate::matrep::MatrepError;
use crate::polymap::PolymapError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Falsified,
    Inconclusive,
    AssumedLemma,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimTiming {
    pub id: String,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool_version: String,
    pub timestamp_unix: u64,
    pub threads: usize,
    pub timings: Vec<ClaimTiming>,
    pub body_sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Body {
    pub tool_version: String,
    pub command: String,
    pub config_digest: String,
    pub claims: Vec<ClaimRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub header: Header,
    pub body: Body,
}

#[derive(Debug, Error)]
pub enum CertError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Polymap(#[from] PolymapError),
    #[error(transparent)]
    Matrep(#[from] MatrepError),
    #[error("configuration: {0}")]
    Config(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CertError {
    /// Errors that mean "ran out of room" rather than "the claim is wrong".
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            CertError::Resource(_)
                | CertError::Group(GroupError::SizeGuard { .. })
                | CertError::Polymap(PolymapError::Guard { .. })
                | CertError::Matrep(MatrepError::Guard { .. })
                | CertError::Matrep(MatrepError::Group(GroupError::SizeGuard { .. }))
                | CertError::Matrep(MatrepError::Polymap(PolymapError::Guard { .. }))
        )
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_json(v: &Value) -> String {
    sha256_hex(v.to_string().as_bytes())
}

/// A claim as produced by a pipeline, before assembly.
#[derive(Clone, Debug)]
pub struct Recorded {
    pub record: ClaimRecord,
    pub wall_ms: u64,
}

impl Certificate {
    /// Orders claims by registry position (then id) and seals the body.
    pub fn assemble(command: &str, config_digest: String, mut claims: Vec<Recorded>, threads: usize) -> Self {
        let pos = |id: &str| registry().iter().position(|c| c.id == id).unwrap_or(usize::MAX);
        claims.sort_by(|x, y| {
            (pos(&x.record.id), &x.record.id).cmp(&(pos(&y.record.id), &y.record.id))
        });
        let body = Body {
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            config_digest,
            claims: claims.iter().map(|c| c.record.clone()).collect(),
        };
        let header = Header {
            tool_version: TOOL_VERSION.into(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            threads,
            timings: claims
                .iter()
                .map(|c| ClaimTiming {
                    id: c.record.id.clone(),
                    wall_ms: c.wall_ms,
                })
                .collect(),
            body_sha256: body.sha256(),
        };
        Certificate { header, body }
    }

    pub fn falsified(&self) -> bool {
        self.body.claims.iter().any(|c| c.verdict == Verdict::Falsified)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.body.claims.iter().find(|c| c.id == id)
    }

    /// Whether `header.body_sha256` matches the body.
    pub fn seal_ok(&self) -> bool {
        self.header.body_sha256 == self.body.sha256()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

impl Body {
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("body serializes")
    }

    pub fn sha256(&self) -> String {
        sha256_hex(self.canonical_json().as_bytes())
    }
}
