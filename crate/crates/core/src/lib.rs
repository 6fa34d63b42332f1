//! Multimodal adjoint type theory: mode theories, a bidirectional checker,
//! and finite verification of the co-dextrification construction.

pub mod bundled;
pub mod checker;
pub mod codex;
pub mod fincat;
pub mod mode_theory;
pub mod syntax;
