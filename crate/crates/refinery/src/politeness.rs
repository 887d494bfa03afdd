//! Politeness stripping. User sentences opening with a listed phrase are
//! removed (the opening turn is seed-derived and left untouched); when a
//! removal happens, a leading "you're welcome" sentence is removed from the
//! assistant reply that follows. Rounds emptied by stripping are deleted
//! whole to preserve alternation.

use core_model::{Dialogue, Role, Tokenizer, Turn};

/// Phrase lists, loaded from the shipped data file or a custom one.
#[derive(Debug, Clone)]
pub struct PolitenessPhrases {
    user: Vec<String>,
    assistant: Vec<String>,
}

impl PolitenessPhrases {
    pub fn builtin() -> PolitenessPhrases {
        Self::parse(include_str!("../data/politeness_phrases.txt"))
            .expect("embedded phrase file is valid")
    }

    pub fn parse(raw: &str) -> Result<PolitenessPhrases, String> {
        let mut user = Vec::new();
        let mut assistant = Vec::new();
        for (idx, line) in raw.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (side, phrase) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: expected side<TAB>phrase", idx + 1))?;
            let phrase = phrase.trim().to_lowercase();
            match side {
                "user" => user.push(phrase),
                "assistant" => assistant.push(phrase),
                other => return Err(format!("line {}: unknown side {other:?}", idx + 1)),
            }
        }
        if user.is_empty() {
            return Err("no user phrases".into());
        }
        Ok(PolitenessPhrases { user, assistant })
    }

    fn matches_head(phrases: &[String], sentence: &str) -> bool {
        let lowered = sentence
            .trim_start_matches(|c: char| !c.is_alphanumeric())
            .to_lowercase();
        phrases.iter().any(|phrase| {
            lowered.strip_prefix(phrase).is_some_and(|rest| {
                // word boundary: "thanksgiving" must not match "thanks"
                rest.chars().next().is_none_or(|c| !c.is_alphanumeric())
            })
        })
    }

    pub fn user_sentence(&self, sentence: &str) -> bool {
        Self::matches_head(&self.user, sentence)
    }

    pub fn assistant_sentence(&self, sentence: &str) -> bool {
        Self::matches_head(&self.assistant, sentence)
    }
}

/// Split on terminal punctuation followed by whitespace, keeping the
/// punctuation with its sentence.
pub fn segment_sentences(text: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut current = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        current.push(c);
        if matches!(c, '.' | '?' | '!') {
            // consume any run of terminal punctuation
            while let Some(&next) = chars.peek() {
                if matches!(next, '.' | '?' | '!') {
                    current.push(next);
                    chars.next();
                } else {
                    break;
                }
            }
            if chars.peek().is_none_or(|c| c.is_whitespace()) {
                let sentence = current.trim();
                if !sentence.is_empty() {
                    sentences.push(sentence.to_string());
                }
                current.clear();
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
            }
        }
    }
    let tail = current.trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}

#[derive(Debug, Clone)]
pub struct StripOutcome {
    pub dialogue: Dialogue,
    pub removed_sentences: u64,
    pub removed_rounds: u64,
    /// Stripping reduced the dialogue below the minimum round count.
    pub rejected_below_min: bool,
    pub changed: bool,
}

/// Apply the politeness rules to one dialogue. Idempotent: re-running on the
/// output changes nothing.
pub fn strip_politeness(
    dialogue: &Dialogue,
    min_rounds: usize,
    phrases: &PolitenessPhrases,
    tokenizer: &dyn Tokenizer,
) -> StripOutcome {
    let mut removed_sentences = 0u64;
    let mut edited: Vec<Option<String>> = Vec::with_capacity(dialogue.turns.len());

    // pass 1: sentence-level removals
    let mut thanks_removed_at: Vec<usize> = Vec::new();
    for (i, turn) in dialogue.turns.iter().enumerate() {
        if i == 0 || turn.role != Role::User {
            edited.push(None);
            continue;
        }
        let sentences = segment_sentences(&turn.content);
        let kept: Vec<&String> = sentences
            .iter()
            .filter(|s| !phrases.user_sentence(s))
            .collect();
        if kept.len() == sentences.len() {
            edited.push(None);
            continue;
        }
        removed_sentences += (sentences.len() - kept.len()) as u64;
        thanks_removed_at.push(i);
        edited.push(Some(
            kept.iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        ));
    }

    // pass 2: leading "you're welcome" in the assistant turn that follows a
    // removed thanks
    for &i in &thanks_removed_at {
        let j = i + 1;
        if j >= dialogue.turns.len() || dialogue.turns[j].role != Role::Assistant {
            continue;
        }
        let content = edited[j]
            .clone()
            .unwrap_or_else(|| dialogue.turns[j].content.clone());
        let sentences = segment_sentences(&content);
        if let Some(first) = sentences.first() {
            if phrases.assistant_sentence(first) {
                removed_sentences += 1;
                edited[j] = Some(
                    sentences[1..]
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>()
                        .join(" "),
                );
            }
        }
    }

    // pass 3: rebuild rounds, dropping any round with an emptied member
    let mut new_turns: Vec<Turn> = Vec::with_capacity(dialogue.turns.len());
    let mut removed_rounds = 0u64;
    let mut idx = 0;
    while idx < dialogue.turns.len() {
        let user_content = match &edited[idx] {
            Some(c) => c.clone(),
            None => dialogue.turns[idx].content.clone(),
        };
        let assistant = dialogue.turns.get(idx + 1);
        let assistant_content = assistant.map(|t| match &edited[idx + 1] {
            Some(c) => c.clone(),
            None => t.content.clone(),
        });

        // only stripping-induced emptiness deletes the round; pre-existing
        // empty turns are the quality gate's concern
        let user_emptied = edited[idx].is_some() && user_content.trim().is_empty();
        let assistant_emptied = assistant.is_some()
            && edited[idx + 1].is_some()
            && assistant_content
                .as_deref()
                .is_some_and(|c| c.trim().is_empty());
        if user_emptied || assistant_emptied {
            removed_rounds += 1;
        } else {
            push_turn(
                &mut new_turns,
                &dialogue.turns[idx],
                user_content,
                tokenizer,
                &edited[idx],
            );
            if let (Some(original), Some(content)) = (assistant, assistant_content) {
                push_turn(
                    &mut new_turns,
                    original,
                    content,
                    tokenizer,
                    &edited[idx + 1],
                );
            }
        }
        idx += 2;
    }

    let changed = removed_sentences > 0 || removed_rounds > 0;
    let mut result = dialogue.clone();
    if changed {
        result.turns = new_turns;
        result.id = Dialogue::compute_id(result.sector, &result.turns);
    }
    let rejected_below_min = result.rounds() < min_rounds;
    StripOutcome {
        dialogue: result,
        removed_sentences,
        removed_rounds,
        rejected_below_min,
        changed,
    }
}

fn push_turn(
    out: &mut Vec<Turn>,
    original: &Turn,
    content: String,
    tokenizer: &dyn Tokenizer,
    edit: &Option<String>,
) {
    if edit.is_some() {
        out.push(Turn::new(original.role, content, tokenizer));
    } else {
        out.push(original.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_model::{Sector, WhitespaceTokenizer};

    fn dialogue(contents: &[&str]) -> Dialogue {
        let turns: Vec<Turn> = contents
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let role = if i % 2 == 0 {
                    Role::User
                } else {
                    Role::Assistant
                };
                Turn::new(role, *c, &WhitespaceTokenizer)
            })
            .collect();
        Dialogue::new(Sector::WorldQuestions, "op", "p", "mock", turns)
    }

    fn strip(d: &Dialogue) -> StripOutcome {
        strip_politeness(d, 1, &PolitenessPhrases::builtin(), &WhitespaceTokenizer)
    }

    #[test]
    fn sentence_segmentation() {
        assert_eq!(
            segment_sentences("Thanks! Can you expand on point 2?"),
            vec!["Thanks!", "Can you expand on point 2?"]
        );
        assert_eq!(
            segment_sentences("One. Two... Three"),
            vec!["One.", "Two...", "Three"]
        );
        assert_eq!(
            segment_sentences("No terminal punct"),
            vec!["No terminal punct"]
        );
        assert!(segment_sentences("   ").is_empty());
    }

    #[test]
    fn leading_thanks_removed_from_user_turn() {
        let d = dialogue(&[
            "What is X?",
            "X is a thing.",
            "Thanks! Can you expand on point 2?",
            "Point 2 means more.",
        ]);
        let out = strip(&d);
        assert_eq!(out.dialogue.turns[2].content, "Can you expand on point 2?");
        assert_eq!(out.removed_sentences, 1);
        assert!(!out.rejected_below_min);
    }

    #[test]
    fn untouched_dialogue_is_identity() {
        let d = dialogue(&["What is X?", "X is a thing.", "And Y?", "Y too."]);
        let out = strip(&d);
        assert!(!out.changed);
        assert_eq!(out.dialogue, d);
    }

    #[test]
    fn trailing_thanks_round_removed_whole() {
        let d = dialogue(&[
            "What is X?",
            "X is a thing.",
            "Thank you.",
            "You're welcome!",
        ]);
        let out = strip(&d);
        assert_eq!(out.dialogue.turns.len(), 2);
        assert_eq!(out.dialogue.rounds(), 1);
        assert_eq!(out.removed_rounds, 1);
    }

    #[test]
    fn youre_welcome_head_removed_after_thanks() {
        let d = dialogue(&[
            "What is X?",
            "X is a thing.",
            "Thanks. And what is Y?",
            "You're welcome! Y is another thing.",
        ]);
        let out = strip(&d);
        assert_eq!(out.dialogue.turns[2].content, "And what is Y?");
        assert_eq!(out.dialogue.turns[3].content, "Y is another thing.");
        assert_eq!(out.removed_sentences, 2);
    }

    #[test]
    fn youre_welcome_without_preceding_thanks_stays() {
        let d = dialogue(&[
            "What is X?",
            "You're welcome to ask! X is a thing.",
            "And Y?",
            "Y too.",
        ]);
        let out = strip(&d);
        assert!(!out.changed);
    }

    #[test]
    fn opening_turn_never_stripped() {
        let d = dialogue(&["Thanks for the recipe text. Summarize it.", "Sure thing."]);
        let out = strip(&d);
        assert!(!out.changed);
        assert_eq!(
            out.dialogue.turns[0].content,
            "Thanks for the recipe text. Summarize it."
        );
    }

    #[test]
    fn thanksgiving_is_not_thanks() {
        let d = dialogue(&[
            "What is X?",
            "X is a thing.",
            "Thanksgiving is coming. What should I cook?",
            "A feast.",
        ]);
        let out = strip(&d);
        assert!(!out.changed);
    }

    #[test]
    fn reduction_below_min_rounds_is_flagged() {
        let d = dialogue(&[
            "What is X?",
            "X is a thing.",
            "Thank you!",
            "You're welcome.",
        ]);
        let out = strip_politeness(&d, 2, &PolitenessPhrases::builtin(), &WhitespaceTokenizer);
        assert_eq!(out.dialogue.rounds(), 1);
        assert!(out.rejected_below_min);
    }

    #[test]
    fn stripping_is_idempotent_on_examples() {
        let samples = [
            dialogue(&["What is X?", "X.", "Thanks! More?", "You're welcome! More."]),
            dialogue(&["What is X?", "X.", "Thank you. Thanks. Why?", "Because."]),
            dialogue(&["What is X?", "X.", "Thanks!", "You're welcome."]),
        ];
        for d in &samples {
            let once = strip(d);
            let twice = strip(&once.dialogue);
            assert!(!twice.changed, "second pass changed {:?}", once.dialogue);
            assert_eq!(once.dialogue, twice.dialogue);
        }
    }
}
