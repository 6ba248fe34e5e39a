//! Diagonal quantum discord.
//!
//! Diagonal discord measures the global entropy increase when subsystem `A` of a
//! bipartite state is dephased in an eigenbasis of its own marginal. This crate
//! provides the dense linear algebra it needs, state constructors and samplers,
//! local channels and their classification against the eigenbasis-dephasing map,
//! discord measures with continuity bounds, and the reproducible numerical
//! experiments built on top of them.

pub mod channels;
pub mod discord;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod optim;
pub mod states;

pub use error::{Error, Result};
