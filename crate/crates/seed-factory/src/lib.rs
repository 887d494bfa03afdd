//! Opening-line pools for the three data sectors.
//!
//! Sector 1 (world questions) fans a fixed list of 30 meta-topics out into
//! subtopics, questions, and question expansions, and derives meta/specific/
//! extended questions from a frequency-ranked entity list. Sector 2 (creation)
//! generates writing instructions per material type, refining a configurable
//! fraction through a second pass. Sector 3 (material assistance) classifies
//! corpus pieces by URL keywords, generates instructions per piece, and
//! concatenates piece and instruction through one of seven fixed templates.

mod entities;
mod error;
mod generate;
mod materials;
pub mod prompts;
mod sampling;
mod topics;
mod writing;

pub use entities::{
    entity_questions, load_entities, sample_entities, EntityFanout, EntityQuestions, EntitySeed,
    FanoutReading, MAX_ENTITY_RANK,
};
pub use error::SeedError;
pub use materials::{
    classify_piece, concat_material, concat_templates, load_corpus, material_instructions,
    pick_template, render_template, sample_corpus, ConcatTemplate, TextPiece,
};
pub use sampling::sample_openings;
pub use topics::{
    expand_question, expand_topic, generate_questions, meta_topics, world_questions_for_topic,
    TopicDepth, TopicNode, SUBTOPIC_FANOUT_RANGE,
};
pub use writing::{writing_instructions, WritingInstruction};
