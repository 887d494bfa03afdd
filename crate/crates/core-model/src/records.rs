//! Line-delimited record files: one JSON object per line, UTF-8, with a `kind`
//! tag distinguishing dialogues from opening lines. Serialization is lossless;
//! interior newlines in content are escaped by the JSON encoding.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, RecordParseError};
use crate::types::{Dialogue, OpeningLine};

/// Any record the pipeline stores in a pool or output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Dialogue(Dialogue),
    OpeningLine(OpeningLine),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    Dialogue,
    OpeningLine,
}

impl Record {
    pub fn kind(&self) -> RecordKind {
        match self {
            Record::Dialogue(_) => RecordKind::Dialogue,
            Record::OpeningLine(_) => RecordKind::OpeningLine,
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Record::Dialogue(d) => &d.id,
            Record::OpeningLine(o) => &o.id,
        }
    }
}

/// Encode one record as a single line (no trailing newline).
pub fn serialize_record(record: &Record) -> String {
    serde_json::to_string(record).expect("records serialize infallibly")
}

/// Decode one line. `line_number` is 1-based and carried into the error.
pub fn deserialize_record(line: &str, line_number: usize) -> Result<Record, RecordParseError> {
    serde_json::from_str(line).map_err(|e| RecordParseError {
        line: line_number,
        reason: e.to_string(),
    })
}

/// Read a whole record file, failing on the first malformed line.
pub fn read_records(path: &Path) -> Result<Vec<Record>, ModelError> {
    let file = std::fs::File::open(path)?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(deserialize_record(&line, idx + 1)?);
    }
    Ok(records)
}

/// Write records one per line, replacing the file atomically.
pub fn write_records(path: &Path, records: &[Record]) -> Result<(), ModelError> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = std::fs::File::create(&tmp)?;
        for record in records {
            file.write_all(serialize_record(record).as_bytes())?;
            file.write_all(b"\n")?;
        }
        file.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
