//! Doc-test harness for the guide in `book/`.
//!
//! mdbook renders the chapters but cannot run their code against this
//! workspace's crates, so each chapter is also included here as a module
//! doc; `cargo test --doc -p phason-book` compiles and runs every Rust
//! snippet in the book. One module per chapter keeps test failures
//! traceable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/units.md")]
pub mod units {}

#[doc = include_str!("../../../book/src/pulse-dynamics.md")]
pub mod pulse_dynamics {}

#[doc = include_str!("../../../book/src/gates-from-pulses.md")]
pub mod gates_from_pulses {}

#[doc = include_str!("../../../book/src/dressed-states.md")]
pub mod dressed_states {}

#[doc = include_str!("../../../book/src/photon-budgets.md")]
pub mod photon_budgets {}

#[doc = include_str!("../../../book/src/qft-schedule.md")]
pub mod qft_schedule {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/numerical-notes.md")]
pub mod numerical_notes {}
