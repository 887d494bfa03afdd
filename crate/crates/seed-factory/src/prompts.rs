//! Versioned prompt catalog for opening-line generation. Templates live in
//! `data/prompts/` and use `{slot}` placeholders; every list-producing prompt
//! carries an explicit "exactly {n} lines" directive that the parsing side
//! relies on.

pub const EXPAND_TOPIC: &str = include_str!("../data/prompts/expand_topic.txt");
pub const GENERATE_QUESTIONS: &str = include_str!("../data/prompts/generate_questions.txt");
pub const EXPAND_QUESTION: &str = include_str!("../data/prompts/expand_question.txt");
pub const ENTITY_META: &str = include_str!("../data/prompts/entity_meta.txt");
pub const ENTITY_SPECIFIC: &str = include_str!("../data/prompts/entity_specific.txt");
pub const ENTITY_EXTENDED: &str = include_str!("../data/prompts/entity_extended.txt");
pub const WRITING_INSTRUCTION: &str = include_str!("../data/prompts/writing_instruction.txt");
pub const REFINE_INSTRUCTION: &str = include_str!("../data/prompts/refine_instruction.txt");
pub const MATERIAL_INSTRUCTIONS: &str = include_str!("../data/prompts/material_instructions.txt");

/// Fill `{slot}` placeholders. Slots absent from the template are ignored.
pub fn render(template: &str, slots: &[(&str, &str)]) -> String {
    let mut out = template.to_string();
    for (name, value) in slots {
        out = out.replace(&format!("{{{name}}}"), value);
    }
    out
}
