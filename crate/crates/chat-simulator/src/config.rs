use core_model::Sector;
use serde::{Deserialize, Serialize};

use crate::error::SimError;

fn default_assistant_system() -> Option<String> {
    Some("You are a helpful and detailed assistant.".to_string())
}

/// Per-sector simulation settings. A round is one user message plus the
/// assistant reply; stored turns are individual messages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub sector: Sector,
    pub max_rounds: usize,
    pub min_rounds: usize,
    pub user_temperature: f64,
    pub assistant_temperature: f64,
    /// Restate the opening's writing objective in every user prompt. Always on
    /// for the creation sector.
    pub reinforce_objective: bool,
    /// System prompt for the assistant side; `None` disables it entirely.
    pub assistant_system_prompt: Option<String>,
    pub max_output_tokens: u32,
}

impl SimulationConfig {
    pub fn for_sector(sector: Sector) -> SimulationConfig {
        SimulationConfig {
            sector,
            max_rounds: 8,
            min_rounds: 2,
            user_temperature: 1.0,
            assistant_temperature: 0.7,
            reinforce_objective: sector == Sector::CreationGeneration,
            assistant_system_prompt: default_assistant_system(),
            max_output_tokens: 512,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.min_rounds == 0 {
            return Err(SimError::InvalidConfig(
                "min_rounds must be at least 1".into(),
            ));
        }
        if self.min_rounds > self.max_rounds {
            return Err(SimError::InvalidConfig(format!(
                "min_rounds {} exceeds max_rounds {}",
                self.min_rounds, self.max_rounds
            )));
        }
        if self.max_output_tokens == 0 {
            return Err(SimError::InvalidConfig(
                "max_output_tokens must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Objective reinforcement is implied for the creation sector.
    pub fn effective_reinforce(&self) -> bool {
        self.reinforce_objective || self.sector == Sector::CreationGeneration
    }
}
