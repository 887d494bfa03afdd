//! Vendored judge prompt templates. Rendering only inserts content lines
//! after the `[Question]` marker and between the answer start/end markers;
//! every template line survives byte-for-byte, which the fidelity tests
//! check by deleting the inserted lines and comparing with the template.

pub const COMPARISON_TEMPLATE: &str = include_str!("../data/comparison_prompt.txt");
pub const INDEPENDENT_TEMPLATE: &str = include_str!("../data/independent_prompt.txt");

const QUESTION_MARKER: &str = "[Question]";

/// Insert `content` lines immediately after the line equal to `marker`.
fn insert_after(lines: &mut Vec<String>, marker: &str, content: &str) {
    let pos = lines
        .iter()
        .position(|l| l == marker)
        .unwrap_or_else(|| panic!("template is missing marker {marker:?}"));
    for (offset, content_line) in content.lines().enumerate() {
        lines.insert(pos + 1 + offset, content_line.to_string());
    }
}

/// Render the two-assistant comparison prompt.
pub fn render_comparison(question: &str, answer_1: &str, answer_2: &str) -> String {
    let mut lines: Vec<String> = COMPARISON_TEMPLATE.lines().map(str::to_string).collect();
    insert_after(&mut lines, QUESTION_MARKER, question);
    insert_after(&mut lines, "[The Start of Assistant 1's Answer]", answer_1);
    insert_after(&mut lines, "[The Start of Assistant 2's Answer]", answer_2);
    lines.join("\n")
}

/// Render the single-assistant scoring prompt.
pub fn render_independent(question: &str, answer: &str) -> String {
    let mut lines: Vec<String> = INDEPENDENT_TEMPLATE.lines().map(str::to_string).collect();
    insert_after(&mut lines, QUESTION_MARKER, question);
    insert_after(
        &mut lines,
        "[The Start of the AI Assistant's Answer]",
        answer,
    );
    lines.join("\n")
}
