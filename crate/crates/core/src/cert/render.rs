use std::fmt::Write;

use serde_json::Value;

use super::{Certificate, Verdict};

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::Falsified => "FALSIFIED",
        Verdict::Inconclusive => "inconclusive",
        Verdict::AssumedLemma => "assumed-lemma",
    }
}

/// Compact one-line rendering of a witness field.
fn short(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let s = s.replace('\n', " ");
    if s.chars().count() > 120 {
        let head: String = s.chars().take(117).collect();
        format!("{head}...")
    } else {
        s
    }
}

pub fn render_markdown(c: &Certificate) -> String {
    let mut out = String::new();
    let b = &c.body;
    let _ = writeln!(out, "# polcert certificate\n");
    let _ = writeln!(out, "- command: `{}`", b.command);
    let _ = writeln!(out, "- tool version: {}", b.tool_version);
    let _ = writeln!(out, "- config digest: `{}`", b.config_digest);
    let _ = writeln!(out, "- body sha256: `{}`{}", c.header.body_sha256, if c.seal_ok() { "" } else { " (MISMATCH)" });
    let _ = writeln!(out, "- timestamp (unix): {}", c.header.timestamp_unix);
    let _ = writeln!(out, "- threads: {}\n", c.header.threads);
    let _ = writeln!(out, "| claim | verdict | ms |");
    let _ = writeln!(out, "|---|---|---|");
    for (r, t) in b.claims.iter().zip(&c.header.timings) {
        let _ = writeln!(out, "| `{}` | {} | {} |", r.id, verdict_str(r.verdict), t.wall_ms);
    }
    for r in &b.claims {
        let _ = writeln!(out, "\n## {} ({})\n", r.id, verdict_str(r.verdict));
        let _ = writeln!(out, "{}\n", r.statement);
        let _ = writeln!(out, "- inputs digest: `{}`", r.inputs_digest);
        match &r.witness {
            Value::Object(m) => {
                for (k, v) in m {
                    let _ = writeln!(out, "- {k}: {}", short(v));
                }
            }
            v => {
                let _ = writeln!(out, "- witness: {}", short(v));
            }
        }
    }
    out
}
