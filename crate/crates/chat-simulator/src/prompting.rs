//! Request construction for both sides of the loop. The user model sees the
//! dialogue from the human's perspective: its own past messages arrive as
//! assistant-role messages and the interlocutor's replies as user-role ones.

use core_model::{Role, Sector, Turn};
use llm_gateway::{ChatMessage, ChatRequest};

use crate::config::SimulationConfig;
use crate::error::SimError;
use crate::persona::Persona;

/// Sentinel the user model is told to emit when the conversation has naturally
/// concluded; stripped before storage.
pub const TERMINATION_MARKER: &str = "<<DIALOGUE_COMPLETE>>";

const USER_SYSTEM: &str = include_str!("../data/prompts/user_system.txt");
const CONCISE_CLAUSE: &str = include_str!("../data/prompts/concise_clause.txt");
const OBJECTIVE_CLAUSE: &str = include_str!("../data/prompts/objective_clause.txt");
pub(crate) const ROLE_RETRY_NUDGE: &str = include_str!("../data/prompts/role_retry_nudge.txt");

/// Render the user-model system prompt for a persona and config.
pub(crate) fn user_system_prompt(
    persona: &Persona,
    cfg: &SimulationConfig,
    objective: &str,
) -> String {
    let mut clauses = String::new();
    if cfg.sector == Sector::WorldQuestions {
        clauses.push_str(CONCISE_CLAUSE.trim_end());
        clauses.push('\n');
    }
    if cfg.effective_reinforce() {
        clauses.push_str(
            OBJECTIVE_CLAUSE
                .trim_end()
                .replace("{objective}", objective)
                .as_str(),
        );
        clauses.push('\n');
    }
    USER_SYSTEM
        .replace("{persona}", &persona.description)
        .replace("{context_clauses}", clauses.trim_end())
        .replace("{termination_marker}", TERMINATION_MARKER)
}

/// Build the next user-model request. `history` must end with an assistant
/// turn; the empty case is the opening injection, which never calls this.
pub fn build_user_prompt(
    history: &[Turn],
    persona: &Persona,
    cfg: &SimulationConfig,
    objective: &str,
    model_name: &str,
) -> Result<ChatRequest, SimError> {
    match history.last() {
        None => {
            return Err(SimError::InvalidHistory(
                "user prompt needs a non-empty history; openings bypass this operation".into(),
            ))
        }
        Some(turn) if turn.role != Role::Assistant => {
            return Err(SimError::InvalidHistory(
                "user prompt requires history ending with an assistant turn".into(),
            ))
        }
        Some(_) => {}
    }

    let mut messages = vec![ChatMessage::system(user_system_prompt(
        persona, cfg, objective,
    ))];
    for turn in history {
        messages.push(match turn.role {
            // role flip: the simulated user sees its own lines as its output
            Role::User => ChatMessage::assistant(turn.content.clone()),
            Role::Assistant => ChatMessage::user(turn.content.clone()),
        });
    }
    Ok(ChatRequest::new(
        messages,
        cfg.user_temperature,
        cfg.max_output_tokens,
        model_name,
    )?)
}

/// Build the assistant-model request. `history` must end with a user turn.
pub fn build_assistant_prompt(
    history: &[Turn],
    cfg: &SimulationConfig,
    model_name: &str,
) -> Result<ChatRequest, SimError> {
    match history.last() {
        Some(turn) if turn.role == Role::User => {}
        _ => {
            return Err(SimError::InvalidHistory(
                "assistant prompt requires history ending with a user turn".into(),
            ))
        }
    }
    let mut messages = Vec::with_capacity(history.len() + 1);
    if let Some(system) = &cfg.assistant_system_prompt {
        messages.push(ChatMessage::system(system.clone()));
    }
    for turn in history {
        messages.push(match turn.role {
            Role::User => ChatMessage::user(turn.content.clone()),
            Role::Assistant => ChatMessage::assistant(turn.content.clone()),
        });
    }
    Ok(ChatRequest::new(
        messages,
        cfg.assistant_temperature,
        cfg.max_output_tokens,
        model_name,
    )?)
}
