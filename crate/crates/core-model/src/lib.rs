//! Domain types shared by every stage of the dialogue pipeline: roles, sectors,
//! turns, opening lines, dialogues, material categories, plus validation and
//! line-delimited record serialization.
//!
//! Everything here is immutable after construction and safe to share across
//! threads without synchronization.

mod error;
mod ids;
mod material;
mod records;
mod text;
mod tokenize;
mod types;
mod validate;

pub use error::{ModelError, RecordParseError};
pub use ids::{content_id, seed_split};
pub use material::{MaterialCatalog, MaterialType, MATERIAL_TYPE_COUNT};
pub use records::{
    deserialize_record, read_records, serialize_record, write_records, Record, RecordKind,
};
pub use text::normalize_for_dedup;
pub use tokenize::{Tokenizer, WhitespaceTokenizer};
pub use types::{Dialogue, LineageStep, OpeningLine, Role, Sector, Turn};
pub use validate::{
    lineage_vocabulary, validate_dialogue, validate_opening, Validation, ValidationOptions,
    Violation, DEFAULT_MAX_TURNS,
};
