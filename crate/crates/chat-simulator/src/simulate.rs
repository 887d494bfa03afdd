//! The dialogue loop itself: inject the opening as the first user turn, then
//! alternate assistant and user completions until max rounds, a termination
//! marker, or two consecutive role-exchange detections.

use core_model::{Dialogue, OpeningLine, Role, Tokenizer, Turn};
use llm_gateway::ChatBackend;
use serde::{Deserialize, Serialize};

use crate::config::SimulationConfig;
use crate::detector::RoleExchangeDetector;
use crate::persona::Persona;
use crate::prompting::{
    build_assistant_prompt, build_user_prompt, ROLE_RETRY_NUDGE, TERMINATION_MARKER,
};

/// Why a dialogue was routed to the rejects channel instead of the output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RejectReason {
    /// Fewer completed rounds than the configured minimum.
    TooShort { rounds: usize, min_rounds: usize },
    /// A backend call failed mid-dialogue; the partial dialogue is preserved.
    BackendError { message: String },
}

impl std::fmt::Display for RejectReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectReason::TooShort { rounds, min_rounds } => {
                write!(f, "too short: {rounds} rounds, minimum {min_rounds}")
            }
            RejectReason::BackendError { message } => write!(f, "backend error: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedDialogue {
    pub dialogue: Dialogue,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SimulationOutcome {
    Kept(Dialogue),
    Rejected(RejectedDialogue),
}

impl SimulationOutcome {
    pub fn dialogue(&self) -> &Dialogue {
        match self {
            SimulationOutcome::Kept(d) => d,
            SimulationOutcome::Rejected(r) => &r.dialogue,
        }
    }
}

enum UserStep {
    Spoke(String),
    Concluded,
    RoleExchangeTwice,
    Failed(String),
}

/// Wires the two backends, the detector, and the tokenizer together.
pub struct Simulator<'a> {
    pub user_backend: &'a dyn ChatBackend,
    pub assistant_backend: &'a dyn ChatBackend,
    pub detector: &'a RoleExchangeDetector,
    pub tokenizer: &'a dyn Tokenizer,
}

impl Simulator<'_> {
    /// Run one dialogue. Backend failures never panic or get dropped: they
    /// produce a rejected outcome carrying the partial dialogue.
    pub async fn simulate_dialogue(
        &self,
        opening: &OpeningLine,
        persona: &Persona,
        cfg: &SimulationConfig,
    ) -> Result<SimulationOutcome, crate::SimError> {
        cfg.validate()?;

        let mut turns = vec![Turn::new(Role::User, opening.text.clone(), self.tokenizer)];
        let mut rounds = 0usize;
        let mut failure: Option<String> = None;

        for round in 1..=cfg.max_rounds {
            let request =
                build_assistant_prompt(&turns, cfg, &self.assistant_backend.model_name())?;
            match self.assistant_backend.complete(&request).await {
                Ok(text) => turns.push(Turn::new(
                    Role::Assistant,
                    text.trim().to_string(),
                    self.tokenizer,
                )),
                Err(err) => {
                    failure = Some(err.to_string());
                    break;
                }
            }
            rounds = round;
            if round == cfg.max_rounds {
                break;
            }
            match self
                .next_user_turn(&turns, persona, cfg, &opening.text)
                .await
            {
                UserStep::Spoke(text) => {
                    turns.push(Turn::new(Role::User, text, self.tokenizer));
                }
                UserStep::Concluded => break,
                // truncate at the last good assistant turn, which is already last
                UserStep::RoleExchangeTwice => break,
                UserStep::Failed(message) => {
                    failure = Some(message);
                    break;
                }
            }
        }

        let dialogue = self.assemble(opening, persona, cfg, turns);
        if let Some(message) = failure {
            return Ok(SimulationOutcome::Rejected(RejectedDialogue {
                dialogue,
                reason: RejectReason::BackendError { message },
            }));
        }
        if rounds < cfg.min_rounds {
            return Ok(SimulationOutcome::Rejected(RejectedDialogue {
                dialogue,
                reason: RejectReason::TooShort {
                    rounds,
                    min_rounds: cfg.min_rounds,
                },
            }));
        }
        Ok(SimulationOutcome::Kept(dialogue))
    }

    /// Ask the user model for the next turn, retrying once with an extra
    /// anti-role-exchange nudge when the detector fires.
    async fn next_user_turn(
        &self,
        turns: &[Turn],
        persona: &Persona,
        cfg: &SimulationConfig,
        objective: &str,
    ) -> UserStep {
        let model = self.user_backend.model_name();
        let request = match build_user_prompt(turns, persona, cfg, objective, &model) {
            Ok(r) => r,
            Err(e) => return UserStep::Failed(e.to_string()),
        };
        let first = match self.user_backend.complete(&request).await {
            Ok(t) => t,
            Err(e) => return UserStep::Failed(e.to_string()),
        };
        match self.classify_user_reply(&first) {
            Reply::Concluded => return UserStep::Concluded,
            Reply::Ok(text) => return UserStep::Spoke(text),
            Reply::RoleExchange => {}
        }

        tracing::debug!("role exchange detected, retrying with nudge");
        let mut nudged = request;
        nudged.messages[0].content.push_str("\n\n");
        nudged.messages[0]
            .content
            .push_str(ROLE_RETRY_NUDGE.trim_end());
        let second = match self.user_backend.complete(&nudged).await {
            Ok(t) => t,
            Err(e) => return UserStep::Failed(e.to_string()),
        };
        match self.classify_user_reply(&second) {
            Reply::Concluded => UserStep::Concluded,
            Reply::Ok(text) => UserStep::Spoke(text),
            Reply::RoleExchange => UserStep::RoleExchangeTwice,
        }
    }

    fn classify_user_reply(&self, raw: &str) -> Reply {
        if raw.contains(TERMINATION_MARKER) {
            return Reply::Concluded;
        }
        let text = raw.trim();
        if text.is_empty() {
            return Reply::Concluded;
        }
        if self.detector.detect(text) {
            return Reply::RoleExchange;
        }
        Reply::Ok(text.to_string())
    }

    fn assemble(
        &self,
        opening: &OpeningLine,
        persona: &Persona,
        cfg: &SimulationConfig,
        turns: Vec<Turn>,
    ) -> Dialogue {
        let fingerprint = format!(
            "user={};assistant={};user_temp={};assistant_temp={}",
            self.user_backend.fingerprint(),
            self.assistant_backend.fingerprint(),
            cfg.user_temperature,
            cfg.assistant_temperature,
        );
        Dialogue::new(
            opening.sector,
            opening.id.clone(),
            persona.id.clone(),
            fingerprint,
            turns,
        )
    }
}

enum Reply {
    Ok(String),
    Concluded,
    RoleExchange,
}
