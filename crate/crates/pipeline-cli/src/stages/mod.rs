pub mod eval;
pub mod filter;
pub mod seeds;
pub mod simulate;
pub mod stats;
