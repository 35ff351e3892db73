//! Run manifests: every invocation emits one JSON line describing the
//! command, an input digest, the parameters, and the result summary.
//! Reruns with identical inputs produce identical summaries; only the wall
//! time varies.

use serde::Serialize;
use std::time::Instant;

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_digest: String,
    pub parameters: serde_json::Value,
    pub result_summary: String,
    pub wall_time_ms: u128,
}

impl RunManifest {
    pub fn new(
        command: &str,
        digest_material: &[u8],
        parameters: serde_json::Value,
        result_summary: String,
        started: Instant,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            input_digest: fnv1a64(digest_material),
            parameters,
            result_summary,
            wall_time_ms: started.elapsed().as_millis(),
        }
    }

    /// One-line JSON on stdout.
    pub fn emit(&self) {
        println!(
            "{}",
            serde_json::to_string(self).expect("manifest serialization cannot fail")
        );
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialization cannot fail")
    }
}

/// FNV-1a, 64-bit, rendered as `fnv1a:<hex>`.
pub fn fnv1a64(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{hash:016x}")
}
