//! Repair protocols executed as message passing over a rooted tree.

mod adapters;
mod engine;
mod multi;
mod transcript;
mod verify;

pub use adapters::{CoopStepAdapter, DmAdapter, PmAdapter};
pub use engine::{run, run_af, run_ip, CodeAdapter, Protocol, RepairOutcome};
pub use multi::{run_multi_ip, MultiOutcome};
pub use transcript::{EdgeLog, Transcript};
pub use verify::{verify_transcript, EdgeViolation, VerifyReport};
