//! Construction log as JSON lines, one object per candidate tried.

use ldpc_core::builder::{LogEntry, Rejection};
use ldpc_core::galois::LogAlpha;
use serde::Serialize;

use crate::wcsv::NEG_INF;

#[derive(Debug, Serialize)]
struct Line<'a> {
    restart: usize,
    stage: usize,
    row: usize,
    candidate: String,
    accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [u32]>,
}

pub fn to_jsonl(runs: &[Vec<LogEntry>]) -> String {
    let mut out = String::new();
    for (restart, log) in runs.iter().enumerate() {
        for e in log {
            let quad;
            let witness = match &e.rejected {
                Some(Rejection::Pattern { vars, .. }) | Some(Rejection::Codeword(vars)) => Some(&vars[..]),
                Some(Rejection::FourCycle(q)) => {
                    quad = [q.i1 as u32, q.i2 as u32, q.j1 as u32, q.j2 as u32];
                    Some(&quad[..])
                }
                _ => None,
            };
            let line = Line {
                restart,
                stage: e.stage,
                row: e.row,
                candidate: match e.candidate {
                    LogAlpha::NegInfinity => NEG_INF.to_string(),
                    LogAlpha::Exp(t) => t.to_string(),
                },
                accepted: e.rejected.is_none(),
                reason: e.rejected.as_ref().map(Rejection::label),
                witness,
            };
            out.push_str(&serde_json::to_string(&line).unwrap());
            out.push('\n');
        }
    }
    out
}
