//! Append-only JSON-lines store of finished verification cases.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use jspairs::localcurve::{CaseReport, VerifyMode};
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Serialize, Deserialize)]
struct Line {
    mode: VerifyMode,
    #[serde(flatten)]
    case: CaseReport,
}

pub struct Checkpoint {
    mode: VerifyMode,
    done: BTreeMap<(i64, i64), CaseReport>,
    file: File,
}

impl Checkpoint {
    /// Opens or creates the file; lines from a different mode are ignored.
    pub fn open(path: &Path, mode: VerifyMode) -> Result<Self, Failure> {
        let mut done = BTreeMap::new();
        if path.exists() {
            let f = File::open(path)
                .map_err(|e| Failure::Usage(format!("cannot read checkpoint {}: {e}", path.display())))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| Failure::Usage(format!("checkpoint read error: {e}")))?;
                if line.trim().is_empty() {
                    continue;
                }
                let l: Line = serde_json::from_str(&line).map_err(|e| {
                    Failure::Usage(format!("checkpoint {} line {}: {e}", path.display(), i + 1))
                })?;
                if l.mode == mode {
                    done.insert((l.case.n, l.case.d), l.case);
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Failure::Usage(format!("cannot open checkpoint {}: {e}", path.display())))?;
        Ok(Checkpoint { mode, done, file })
    }

    pub fn get(&self, n: i64, d: i64) -> Option<&CaseReport> {
        self.done.get(&(n, d))
    }

    pub fn append(&mut self, case: &CaseReport) -> Result<(), Failure> {
        let line = Line {
            mode: self.mode,
            case: case.clone(),
        };
        let text = serde_json::to_string(&line).expect("serializable");
        writeln!(self.file, "{text}")
            .and_then(|_| self.file.flush())
            .map_err(|e| Failure::Internal(format!("checkpoint write failed: {e}")))?;
        self.done.insert((case.n, case.d), case.clone());
        Ok(())
    }
}
