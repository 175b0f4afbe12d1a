//! Emotion-driven mental state transition network with adaptive transition
//! costs.
//!
//! The pipeline, module by module:
//!
//! - [`emotion`]: 28 named emotions in 9 groups, max-aggregated into an
//!   [`EmotionVector`](emotion::EmotionVector).
//! - [`mstn`]: the 7-state network, costs from counts, stimulus-driven and
//!   spontaneous transitions.
//! - [`profit_sharing`]: detour removal and geometric reward sharing over
//!   `(state, group)` rules.
//! - [`rnn`]: a recurrent network trained by backpropagation through time.
//! - [`frequency`]: exhaustive firing-pattern read-back into a stochastic matrix.
//! - [`traits`]: Big Five scores from the learned matrix.
//! - [`io`], [`fixtures`], [`render`]: scenario files, bundles, the baseline
//!   table and table output.
//! - [`pipeline`]: the simulate / train / freq / traits / check operations.

pub mod emotion;
pub mod error;
pub mod fixtures;
pub mod frequency;
pub mod io;
pub mod mstn;
pub mod pipeline;
pub mod profit_sharing;
pub mod render;
pub mod rnn;
pub mod traits;

pub use error::{Error, Result};
