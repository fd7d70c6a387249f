//! Verification checks and benchmark sweeps shared by the CLI and the tests.

mod bench;
mod verify;

pub use bench::{bench, BenchFamily, BenchOptions, BenchReport, BenchRow};
pub use verify::{verify, Check, VerifyOptions, VerifyReport};
