//! The iterative two-agent loop that turns one opening line into a multi-turn
//! dialogue: one backend plays a persona-prompted human user, the other plays
//! the assistant, and the loop alternates between them until a stop condition.

mod config;
mod detector;
mod error;
mod persona;
mod prompting;
mod simulate;

pub use config::SimulationConfig;
pub use detector::{detect_role_exchange, RoleExchangeDetector};
pub use error::SimError;
pub use persona::{persona_catalog, Persona};
pub use prompting::{build_assistant_prompt, build_user_prompt, TERMINATION_MARKER};
pub use simulate::{RejectReason, RejectedDialogue, SimulationOutcome, Simulator};
