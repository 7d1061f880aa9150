//! Proof files: JSON lines. The first line is `{"system": {...}}`, then one
//! step per line.

use crate::{ProofStep, SystemSpec};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Header {
    system: SystemSpec,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("empty proof file")]
    Empty,
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
}

pub fn write_proof(sys: &SystemSpec, steps: &[ProofStep]) -> String {
    let mut out = serde_json::to_string(&Header { system: sys.clone() }).expect("serializable");
    out.push('\n');
    for s in steps {
        out.push_str(&serde_json::to_string(s).expect("serializable"));
        out.push('\n');
    }
    out
}

pub fn read_proof(text: &str) -> Result<(SystemSpec, Vec<ProofStep>), FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (i, head) = lines.next().ok_or(FormatError::Empty)?;
    let json = |line: usize| move |source| FormatError::Json { line: line + 1, source };
    let header: Header = serde_json::from_str(head).map_err(json(i))?;
    let steps = lines
        .map(|(i, l)| serde_json::from_str(l).map_err(json(i)))
        .collect::<Result<Vec<ProofStep>, _>>()?;
    Ok((header.system, steps))
}
